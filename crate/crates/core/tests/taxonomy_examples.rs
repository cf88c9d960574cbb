use ngcl_core::lang::{all_predicates, parse_program, Predicate, StateSpace};
use ngcl_core::par::Exec;
use ngcl_core::taxonomy::{
    catalog_claims, check_theorem, classify, corpus, find_counterexample, holds, Bound, CheckMode,
    ClaimId, CorpusSpec, Flag, GenerateConfig, LogicId, Mode, SearchOutcome, TheoremId,
    DEFAULT_BUDGET,
};
use ngcl_core::transformers::{ProgramModel, TransformerKind as K};

fn space(m: u32) -> StateSpace {
    StateSpace::new(&["x"], m).unwrap()
}

fn pred(sp: &StateSpace, states: &[usize]) -> Predicate {
    Predicate::from_indices(sp.size(), states.iter().copied())
}

#[test]
fn partial_correctness_of_a_branch() {
    let sp = space(3);
    let p = parse_program("if x = 0 { x := 1 } else { x := 2 }", &sp).unwrap();
    let l: LogicId = "partial-correctness".parse().unwrap();
    assert_eq!(l, LogicId::Bound(K::Dwlp, Bound::Lower));
    assert!(holds(l, &pred(&sp, &[0]), &p, &sp, &pred(&sp, &[1])).unwrap());
}

#[test]
fn incorrectness_needs_reachability() {
    let sp = space(2);
    let p = parse_program("x := 0", &sp).unwrap();
    let all = Predicate::full(2);
    assert!(!holds(
        "incorrectness".parse().unwrap(),
        &all,
        &p,
        &sp,
        &pred(&sp, &[1])
    )
    .unwrap());
}

#[test]
fn lisbon_is_angelic_total_correctness_demonic() {
    let sp = space(2);
    let p = parse_program("{ x := 0 } [] { x := 1 }", &sp).unwrap();
    let (b, c) = (Predicate::full(2), pred(&sp, &[0]));
    assert!(holds("lisbon".parse().unwrap(), &b, &p, &sp, &c).unwrap());
    assert!(!holds("dwpLB".parse().unwrap(), &b, &p, &sp, &c).unwrap());
}

#[test]
fn eighteen_logics_with_conditions() {
    let all = LogicId::all();
    assert_eq!(all.len(), 18);
    for l in &all {
        assert_eq!(l.name().parse::<LogicId>().unwrap(), *l);
        assert!(!l.condition().is_empty());
    }
    let json = serde_json::to_string(&all).unwrap();
    let back: Vec<LogicId> = serde_json::from_str(&json).unwrap();
    assert_eq!(back, all);
}

#[test]
fn classify_skip() {
    let sp = space(3);
    let p = parse_program("skip", &sp).unwrap();
    let m = ProgramModel::new(&p, &sp).unwrap();
    let full = Predicate::full(3);
    let set = classify(&p, &m, &full, &full);
    for f in [
        set.termination,
        set.reachability,
        set.determinism,
        set.reversibility,
        set.no_branching_divergence,
    ] {
        assert_eq!(f, Flag::Holds);
    }
}

#[test]
fn classify_binary_choice() {
    let sp = space(3);
    let p = parse_program("{ x := 0 } [] { x := 1 }", &sp).unwrap();
    let m = ProgramModel::new(&p, &sp).unwrap();
    let full = Predicate::full(3);
    let set = classify(&p, &m, &full, &full);
    assert_eq!(set.termination, Flag::Holds);
    assert!(!set.determinism.holds());
    assert_eq!(set.reversibility, Flag::Fails(Some(0)));
    assert_eq!(m.preimage(0).count(), 3);
    assert_eq!(set.reachability, Flag::Fails(Some(2)));
    assert_eq!(set.no_branching_divergence, Flag::Holds);
}

#[test]
fn classify_branching_divergence() {
    let sp = space(3);
    let p = parse_program("{ x := 0 } [] { diverge }", &sp).unwrap();
    let m = ProgramModel::new(&p, &sp).unwrap();
    let full = Predicate::full(3);
    assert!(m.may_diverge().is_full() && m.must_diverge().is_empty());
    assert_eq!(
        classify(&p, &m, &full, &full).no_branching_divergence,
        Flag::Fails(Some(0))
    );
    let scoped = classify(&p, &m, &Predicate::empty(3), &full);
    assert_eq!(scoped.no_branching_divergence, Flag::Holds);
    assert_eq!(scoped.termination, Flag::Holds);
}

#[test]
fn ordering_on_the_small_exhaustive_corpus() {
    let c = CorpusSpec::SMALL_EXHAUSTIVE
        .build(0, Exec::Parallel)
        .unwrap();
    let v = check_theorem(TheoremId::Ordering, &c, CheckMode::Scoped, Exec::Parallel).unwrap();
    assert!(v.holds, "{:?}", v.witness);
    assert!(v.witness.is_none());
    assert_eq!(v.stats.items, 84_505);
}

#[test]
fn terminating_countdown_collapses_for_every_postcondition() {
    let sp = space(3);
    let p = parse_program("while x != 0 { x := x - 1 }", &sp).unwrap();
    let m = ProgramModel::new(&p, &sp).unwrap();
    assert!(m.may_diverge().is_empty());
    for c in all_predicates(3) {
        assert_eq!(m.transform(K::Dwp, &c), m.transform(K::Dwlp, &c));
        assert_eq!(m.transform(K::Awp, &c), m.transform(K::Awlp, &c));
    }
}

#[test]
fn galois_pc_on_ten_thousand_loop_programs() {
    let c = CorpusSpec::LOOPS.build(7, Exec::Parallel).unwrap();
    assert_eq!(c.items.len(), 10_000);
    assert!(c.items.iter().any(|i| i.program.has_loops()));
    let v = check_theorem(TheoremId::GaloisPc, &c, CheckMode::Scoped, Exec::Parallel).unwrap();
    assert!(v.holds, "{:?}", v.witness);
}

#[test]
fn strict_mode_agrees_on_sound_collapses() {
    let c = "exhaustive:2:2"
        .parse::<CorpusSpec>()
        .unwrap()
        .build(0, Exec::Sequential)
        .unwrap();
    for id in TheoremId::COLLAPSES
        .into_iter()
        .filter(|t| *t != TheoremId::MayTermination)
    {
        let v = check_theorem(id, &c, CheckMode::Strict, Exec::Sequential).unwrap();
        assert!(v.holds, "{id}: {:?}", v.witness);
        assert!(v.stats.filtered_in > 0, "{id} filter is empty");
    }
}

#[test]
fn branching_divergence_separates_dwp_from_the_intersection() {
    match find_counterexample(ClaimId::DwpNeqIntersection, DEFAULT_BUDGET, Exec::Parallel).unwrap()
    {
        SearchOutcome::Found { witness, .. } => {
            assert!(witness.program.contains("diverge"));
            assert!(witness.program.contains("[]"));
        }
        other => panic!("no witness: {other:?}"),
    }
}

#[test]
fn union_logic_is_not_angelic_partial_correctness() {
    let out = find_counterexample(ClaimId::AwlpNeqUnion, DEFAULT_BUDGET, Exec::Parallel).unwrap();
    assert!(out.witness().is_some());
    let sp = space(3);
    let p = parse_program("if x = 0 { { x := 1 } [] { diverge } } else { skip }", &sp).unwrap();
    let (b, c) = (pred(&sp, &[0]), pred(&sp, &[2]));
    assert!(holds("awlpLB".parse().unwrap(), &b, &p, &sp, &c).unwrap());
    assert!(!holds(LogicId::Union, &b, &p, &sp, &c).unwrap());
}

#[test]
fn galois_connections_have_no_witness() {
    for claim in [ClaimId::GaloisPc, ClaimId::GaloisPi] {
        let out = find_counterexample(claim, DEFAULT_BUDGET, Exec::Parallel).unwrap();
        assert_eq!(
            out,
            SearchOutcome::NotFound {
                examined: DEFAULT_BUDGET,
                budget_exhausted: true
            }
        );
    }
}

#[test]
fn every_catalog_pair_is_separated() {
    for claim in catalog_claims() {
        let out = find_counterexample(claim, DEFAULT_BUDGET, Exec::Parallel).unwrap();
        assert!(out.witness().is_some(), "{claim}");
        assert!(out.examined() <= DEFAULT_BUDGET);
    }
}

#[test]
fn small_budgets_are_reported_as_exhausted() {
    let out = find_counterexample(ClaimId::GaloisPc, 10, Exec::Sequential).unwrap();
    assert_eq!(
        out,
        SearchOutcome::NotFound {
            examined: 10,
            budget_exhausted: true
        }
    );
}

#[test]
fn enumeration_base_and_reproducibility() {
    let base = GenerateConfig {
        vars: 1,
        modulus: 2,
        max_depth: 1,
        loops: false,
        mode: Mode::Exhaustive,
    };
    let sp = space(2);
    let rendered: Vec<String> = corpus::generate_programs(&base)
        .unwrap()
        .iter()
        .map(|p| p.render(&sp))
        .collect();
    for want in ["skip", "diverge", "x := 0", "x := 1", "x := x"] {
        assert!(rendered.iter().any(|r| r == want), "{want}");
    }
    let random = GenerateConfig {
        max_depth: 4,
        loops: true,
        mode: Mode::Random {
            seed: 7,
            count: 200,
        },
        ..base
    };
    assert_eq!(
        corpus::generate_programs(&random).unwrap(),
        corpus::generate_programs(&random).unwrap()
    );
}

#[test]
fn awlp_of_false_is_may_divergence_not_must_termination() {
    let sp = space(2);
    let p = parse_program("{ x := 0 } [] { diverge }", &sp).unwrap();
    let m = ProgramModel::new(&p, &sp).unwrap();
    let (full, empty) = (Predicate::full(2), Predicate::empty(2));
    assert!(m.transform(K::Awp, &full).is_full());
    assert_eq!(m.transform(K::Awlp, &empty), *m.may_diverge());
    assert!(m.transform(K::Awlp, &empty).is_full());
    let c = pred(&sp, &[1]);
    assert!(!m.transform(K::Awp, &c).contains(0));
    assert!(m.transform(K::Awlp, &c).contains(0));
    assert_eq!(m.transform(K::Dwlp, &empty), m.must_diverge());
    assert!(m.transform(K::Dwlp, &empty).is_empty());
    assert!(!m.may_diverge().is_empty());
}

#[test]
fn may_termination_claim_is_refuted_by_the_survey() {
    let c = "exhaustive:2:2"
        .parse::<CorpusSpec>()
        .unwrap()
        .build(0, Exec::Sequential)
        .unwrap();
    let v = check_theorem(
        TheoremId::MayTermination,
        &c,
        CheckMode::Scoped,
        Exec::Sequential,
    )
    .unwrap();
    assert!(!v.holds);
    let w = v.witness.unwrap();
    assert_eq!(w.program, "{ skip } [] { diverge }");
}
