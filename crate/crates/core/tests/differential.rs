use ngcl_core::lang::{parse_program, Predicate, Program, StateSpace};
use ngcl_core::semantics::{build_graph, collecting, denote_relation, DEFAULT_NODE_BUDGET};
use ngcl_core::taxonomy::corpus::{random_program, standard_space};
use ngcl_core::topkat::{compile_kat, eval_kat, random_predicate};
use ngcl_core::transformers::{
    inductive_transform, transform_by_classes, ProgramModel, TransformerKind as K,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug)]
struct Case {
    space: StateSpace,
    program: Program,
    q: Predicate,
    r: Predicate,
}

fn case(seed: u64, vars: usize, m: u32, depth: usize, loops: bool) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let space = standard_space(vars, m).unwrap();
    let program = random_program(&mut rng, &space, depth, loops);
    let q = random_predicate(&mut rng, space.size());
    let r = random_predicate(&mut rng, space.size());
    Case {
        space,
        program,
        q,
        r,
    }
}

fn cases() -> impl Strategy<Value = Case> {
    (
        any::<u64>(),
        1usize..=2,
        2u32..=3,
        1usize..=4,
        any::<bool>(),
    )
        .prop_map(|(s, v, m, d, l)| case(s, v, m, d, l))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn oracle_matches_inductive(c in cases()) {
        let model = ProgramModel::new(&c.program, &c.space).unwrap();
        for kind in K::ALL {
            let oracle = model.transform(kind, &c.q);
            prop_assert_eq!(&oracle, &inductive_transform(kind, &c.program, &c.space, &c.q), "{}", kind);
            prop_assert_eq!(&oracle, &transform_by_classes(&model, kind, &c.q).unwrap(), "{}", kind);
        }
    }

    #[test]
    fn graph_agrees_with_collecting(c in cases()) {
        let n = c.space.size();
        let g = build_graph(&c.program, &c.space, &Predicate::full(n), DEFAULT_NODE_BUDGET).unwrap();
        for s in 0..n {
            let single = Predicate::singleton(n, s);
            prop_assert_eq!(g.terminal_states(s), collecting(&c.program, &c.space, &single));
        }
        let model = ProgramModel::new(&c.program, &c.space).unwrap();
        prop_assert_eq!(&g.may_diverge(), model.may_diverge());
        prop_assert!(model.must_diverge().is_subset(model.may_diverge()));
    }

    #[test]
    fn compiled_term_denotes_the_program(c in cases()) {
        let term = compile_kat(&c.program, &c.space);
        prop_assert_eq!(eval_kat(&term, c.space.size()).unwrap(), denote_relation(&c.program, &c.space));
    }

    #[test]
    fn rendering_round_trips(c in cases()) {
        let text = c.program.render(&c.space);
        let back = parse_program(&text, &c.space).unwrap();
        prop_assert_eq!(back.render(&c.space), text);
        prop_assert_eq!(denote_relation(&back, &c.space), denote_relation(&c.program, &c.space));
    }

    #[test]
    fn transformers_are_monotone(c in cases()) {
        let model = ProgramModel::new(&c.program, &c.space).unwrap();
        let big = c.q.union(&c.r);
        for kind in K::ALL {
            prop_assert!(model.transform(kind, &c.q).is_subset(&model.transform(kind, &big)), "{}", kind);
        }
    }

    #[test]
    fn liberal_and_strict_duals(c in cases()) {
        let model = ProgramModel::new(&c.program, &c.space).unwrap();
        let t = |k| model.transform(k, &c.q);
        let not_t = |k| model.transform(k, &c.q.complement()).complement();
        prop_assert_eq!(t(K::Dwp), not_t(K::Awlp));
        prop_assert_eq!(t(K::Dwlp), not_t(K::Awp));
        prop_assert!(t(K::Awp).is_subset(&t(K::Awlp)));
        prop_assert!(t(K::Dwp).is_subset(&t(K::Dwlp)));
        prop_assert_eq!(t(K::Asp), collecting(&c.program, &c.space, &c.q));
    }

    #[test]
    fn collecting_distributes_over_union(c in cases()) {
        let whole = collecting(&c.program, &c.space, &c.q.union(&c.r));
        let parts = collecting(&c.program, &c.space, &c.q).union(&collecting(&c.program, &c.space, &c.r));
        prop_assert_eq!(whole, parts);
    }
}
