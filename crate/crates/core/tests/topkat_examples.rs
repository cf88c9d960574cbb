use ngcl_core::lang::{parse_program, Predicate, Program, StateSpace};
use ngcl_core::semantics::{denote_relation, Relation};
use ngcl_core::topkat::{
    check_equation, codomain, compile_kat, domain, eval_kat, EquationId, KatTerm,
};

/// Five states named 1..=5, stored at indices 0..=4.
const N: usize = 5;

fn set(states: &[usize]) -> Predicate {
    Predicate::from_indices(N, states.iter().map(|s| s - 1))
}

fn rel(pairs: &[(usize, usize)]) -> Relation {
    Relation::from_pairs(N, pairs.iter().map(|&(a, b)| (a - 1, b - 1)))
}

fn example() -> (Predicate, Relation, Predicate) {
    (
        set(&[1, 2, 3]),
        rel(&[(1, 1), (2, 2), (3, 2), (4, 3), (4, 4)]),
        set(&[2, 3, 4]),
    )
}

fn bpc() -> KatTerm {
    let (b, p, c) = example();
    KatTerm::product([KatTerm::test(&b), KatTerm::Prim(p), KatTerm::test(&c)])
}

#[test]
fn composition_selects_paths() {
    assert_eq!(eval_kat(&bpc(), N).unwrap(), rel(&[(2, 2), (3, 2)]));
}

#[test]
fn top_on_the_left_keeps_the_codomain() {
    let t = KatTerm::dot(KatTerm::Top, bpc());
    let all_to_2: Vec<_> = (1..=5).map(|s| (s, 2)).collect();
    assert_eq!(eval_kat(&t, N).unwrap(), rel(&all_to_2));
    assert_eq!(codomain(&eval_kat(&bpc(), N).unwrap()), set(&[2]));
}

#[test]
fn top_on_the_right_keeps_the_domain() {
    let t = KatTerm::dot(bpc(), KatTerm::Top);
    let pairs: Vec<_> = [2, 3]
        .into_iter()
        .flat_map(|s| (1..=5).map(move |t| (s, t)))
        .collect();
    assert_eq!(eval_kat(&t, N).unwrap(), rel(&pairs));
    assert_eq!(domain(&eval_kat(&bpc(), N).unwrap()), set(&[2, 3]));
}

#[test]
fn partial_correctness_fails_on_the_example() {
    let (b, p, c) = example();
    assert!(!EquationId::PartialCorrectness
        .check_relation(&b, &p, &c)
        .unwrap());
    let lhs = KatTerm::product([KatTerm::Top, KatTerm::test(&b), KatTerm::Prim(p.clone())]);
    assert_eq!(codomain(&eval_kat(&lhs, N).unwrap()), set(&[1, 2]));
}

#[test]
fn simple_equations() {
    let sp = StateSpace::new(&["x"], 3).unwrap();
    let b = Predicate::from_indices(3, [0, 2]);
    assert!(check_equation(EquationId::Lisbon, &b, &Program::Skip, &sp, &b).unwrap());
    let empty = Predicate::empty(3);
    assert!(check_equation(
        EquationId::Incorrectness,
        &b,
        &Program::Diverge,
        &sp,
        &empty
    )
    .unwrap());
    assert!(!check_equation(EquationId::Incorrectness, &b, &Program::Diverge, &sp, &b).unwrap());
}

#[test]
fn domain_and_codomain() {
    assert!(domain(&Relation::identity(4)).is_full());
    assert!(codomain(&Relation::empty(4)).is_empty());
}

#[test]
fn compilation() {
    let sp = StateSpace::new(&["x"], 3).unwrap();
    assert_eq!(compile_kat(&Program::Skip, &sp), KatTerm::One);
    assert_eq!(compile_kat(&Program::Diverge, &sp), KatTerm::Zero);
    let w = parse_program("while x != 0 { x := x - 1 }", &sp).unwrap();
    let t = compile_kat(&w, &sp);
    assert!(
        matches!(&t, KatTerm::Dot(l, r) if matches!(**l, KatTerm::Star(_)) && matches!(**r, KatTerm::Not(_)))
    );
    assert_eq!(eval_kat(&t, 3).unwrap(), denote_relation(&w, &sp));
}

#[test]
fn complement_needs_a_test() {
    let bad = KatTerm::not(KatTerm::Top);
    assert!(eval_kat(&bad, 3).is_err());
    let ok = KatTerm::not(KatTerm::plus(KatTerm::One, KatTerm::Zero));
    assert!(eval_kat(&ok, 3).unwrap().is_empty());
}

#[test]
fn equation_ids_round_trip() {
    for e in EquationId::ALL {
        assert_eq!(e.id().parse::<EquationId>().unwrap(), e);
    }
    assert!("NOPE".parse::<EquationId>().is_err());
}
