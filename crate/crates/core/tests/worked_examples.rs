use ngcl_core::lang::{parse_guard, parse_program, Predicate, Program, StateSpace};
use ngcl_core::semantics::{
    build_graph, collecting, denote_relation, inverse, may_diverge, must_diverge, Relation,
};
use ngcl_core::transformers::{
    coreachability_class, inductive_transform, oracle_transform, reachability_class, ProgramModel,
    TransformerKind as K,
};

fn space(vars: &[&str], m: u32) -> StateSpace {
    StateSpace::new(vars, m).unwrap()
}

fn prog(src: &str, sp: &StateSpace) -> Program {
    parse_program(src, sp).unwrap()
}

fn pred(src: &str, sp: &StateSpace) -> Predicate {
    parse_guard(src, sp).unwrap().to_predicate(sp)
}

fn both(kind: K, p: &Program, sp: &StateSpace, q: &Predicate) -> Predicate {
    let o = oracle_transform(kind, p, sp, q).unwrap();
    let i = inductive_transform(kind, p, sp, q);
    assert_eq!(o, i, "{kind} engines disagree on {}", p.render(sp));
    o
}

#[test]
fn guards_denote_predicates() {
    let x3 = space(&["x"], 3);
    assert!(pred("true", &x3).is_full());
    assert_eq!(pred("x = 0", &x3), Predicate::singleton(3, 0));
    let xy = space(&["x", "y"], 2);
    // states: (0,0) (0,1) (1,0) (1,1)
    assert_eq!(pred("x < y", &xy), Predicate::singleton(4, 1));
    let g = parse_guard("x < y || x = 1", &xy).unwrap();
    let ng = parse_guard("!(x < y || x = 1)", &xy).unwrap();
    assert_eq!(ng.to_predicate(&xy), g.to_predicate(&xy).complement());
}

#[test]
fn collecting_examples() {
    let x3 = space(&["x"], 3);
    let s = Predicate::from_indices(3, [1, 2]);
    assert_eq!(collecting(&Program::Skip, &x3, &s), s);
    let ch = prog("{ x := 0 } [] { x := 1 }", &x3);
    assert_eq!(
        collecting(&ch, &x3, &Predicate::singleton(3, 2)),
        Predicate::from_indices(3, [0, 1])
    );
    let sd = prog("{ skip } [] { while true { skip } }", &x3);
    assert_eq!(collecting(&sd, &x3, &s), s);
}

#[test]
fn inverse_examples() {
    let x3 = space(&["x"], 3);
    let t = Predicate::from_indices(3, [0, 2]);
    assert_eq!(inverse(&Program::Skip, &x3, &t), t);
    let a0 = prog("x := 0", &x3);
    assert!(inverse(&a0, &x3, &Predicate::singleton(3, 0)).is_full());
    assert!(inverse(&a0, &x3, &Predicate::singleton(3, 1)).is_empty());
}

#[test]
fn graph_examples() {
    let x3 = space(&["x"], 3);
    let g = build_graph(&Program::Skip, &x3, &Predicate::singleton(3, 0), 10).unwrap();
    assert_eq!(g.node_count(), 2);
    let d = build_graph(&Program::Diverge, &x3, &Predicate::singleton(3, 0), 10).unwrap();
    assert_eq!(d.node_count(), 1);
    assert_eq!(d.may_diverge(), Predicate::singleton(3, 0));
    let w = prog("while x != 0 { x := x - 1 }", &x3);
    let wg = build_graph(&w, &x3, &Predicate::full(3), 100).unwrap();
    assert!(wg.is_acyclic());
    for s in 0..3 {
        assert_eq!(wg.terminal_states(s), Predicate::singleton(3, 0));
    }
}

#[test]
fn divergence_examples() {
    let x3 = space(&["x"], 3);
    assert!(may_diverge(&Program::Skip, &x3).unwrap().is_empty());
    let sd = prog("{ skip } [] { while true { skip } }", &x3);
    assert!(may_diverge(&sd, &x3).unwrap().is_full());
    let w = prog("while x != 0 { x := x - 1 }", &x3);
    assert!(may_diverge(&w, &x3).unwrap().is_empty());

    assert!(must_diverge(&Program::Diverge, &x3).is_full());
    assert!(must_diverge(&prog("{ skip } [] { diverge }", &x3), &x3).is_empty());
    let x2 = space(&["x"], 2);
    assert_eq!(
        must_diverge(&prog("if x = 0 { diverge } else { skip }", &x2), &x2),
        Predicate::singleton(2, 0)
    );
}

#[test]
fn relation_examples() {
    let x3 = space(&["x"], 3);
    assert_eq!(denote_relation(&Program::Skip, &x3), Relation::identity(3));
    assert_eq!(denote_relation(&Program::Diverge, &x3), Relation::empty(3));
    assert_eq!(
        denote_relation(&prog("{ skip } [] { diverge }", &x3), &x3),
        denote_relation(&Program::Skip, &x3)
    );
}

#[test]
fn transformer_examples() {
    let x3 = space(&["x"], 3);
    let c = Predicate::from_indices(3, [0, 2]);
    assert_eq!(both(K::Awp, &Program::Skip, &x3, &c), c);
    assert!(both(K::Asp, &Program::Diverge, &x3, &c).is_empty());

    let ch = prog("{ x := 0 } [] { x := 1 }", &x3);
    let x0 = pred("x = 0", &x3);
    assert!(both(K::Dwp, &ch, &x3, &x0).is_empty());
    assert!(both(K::Awp, &ch, &x3, &x0).is_full());
    assert_eq!(both(K::Dslp, &ch, &x3, &x0), Predicate::singleton(3, 2));
    assert!(both(K::Dsp, &ch, &x3, &x0).is_empty());
    assert!(both(K::Aslp, &ch, &x3, &x0).is_full());
    assert_eq!(
        both(K::Asp, &ch, &x3, &x0),
        Predicate::from_indices(3, [0, 1])
    );

    assert!(both(K::Dwlp, &Program::Diverge, &x3, &Predicate::empty(3)).is_full());
    let a = prog("x := x + 1", &x3);
    assert_eq!(both(K::Awp, &a, &x3, &x0), Predicate::singleton(3, 2));

    let x4 = space(&["x"], 4);
    let w = prog("while x != 0 { x := x - 1 }", &x4);
    assert!(both(K::Dwp, &w, &x4, &pred("x = 0", &x4)).is_full());
}

#[test]
fn class_examples() {
    let x3 = space(&["x"], 3);
    let c = Predicate::singleton(3, 0);
    let skip = ProgramModel::new(&Program::Skip, &x3).unwrap();
    assert_eq!(coreachability_class(&skip, &c, 0).unwrap(), 1);
    let div = ProgramModel::new(&Program::Diverge, &x3).unwrap();
    for s in 0..3 {
        assert_eq!(coreachability_class(&div, &c, s).unwrap(), 4);
    }
    let sd = ProgramModel::new(&prog("{ skip } [] { diverge }", &x3), &x3).unwrap();
    assert_eq!(coreachability_class(&sd, &c, 0).unwrap(), 2);

    assert_eq!(reachability_class(&skip, &c, 0), 1);
    let x2 = space(&["x"], 2);
    let a0 = ProgramModel::new(&prog("x := 0", &x2), &x2).unwrap();
    assert_eq!(reachability_class(&a0, &Predicate::singleton(2, 0), 1), 3);
    let ch = ProgramModel::new(&prog("{ x := 0 } [] { x := 1 }", &x3), &x3).unwrap();
    assert_eq!(reachability_class(&ch, &Predicate::singleton(3, 0), 0), 2);
}
