//! Extensional checks of the KA / KAT / TopKAT axioms in the relational model.

use rand::Rng;

use crate::error::Result;
use crate::semantics::Relation;

use super::term::{eval_kat, random_term, random_test, KatTerm};

/// Axiom names that failed on one instance, empty if all held.
pub fn check_axioms(
    a: &KatTerm,
    b: &KatTerm,
    c: &KatTerm,
    p: &KatTerm,
    q: &KatTerm,
    r: &KatTerm,
    n: usize,
) -> Result<Vec<&'static str>> {
    let ev = |t: &KatTerm| eval_kat(t, n);
    let (ra, rb, rc) = (ev(a)?, ev(b)?, ev(c)?);
    let zero = Relation::empty(n);
    let one = Relation::identity(n);
    let top = Relation::top(n);
    let star = |x: &Relation| x.star();
    let le = |x: &Relation, y: &Relation| x.is_subset(y);
    let mut failed = Vec::new();
    let mut check = |name: &'static str, ok: bool| {
        if !ok {
            failed.push(name);
        }
    };

    check(
        "plus-assoc",
        ra.union(&rb.union(&rc)) == ra.union(&rb).union(&rc),
    );
    check("plus-comm", ra.union(&rb) == rb.union(&ra));
    check("plus-zero", ra.union(&zero) == ra);
    check("plus-idem", ra.union(&ra) == ra);
    check(
        "dot-assoc",
        ra.compose(&rb.compose(&rc)) == ra.compose(&rb).compose(&rc),
    );
    check("dot-one-left", one.compose(&ra) == ra);
    check("dot-one-right", ra.compose(&one) == ra);
    check(
        "distrib-left",
        ra.compose(&rb.union(&rc)) == ra.compose(&rb).union(&ra.compose(&rc)),
    );
    check(
        "distrib-right",
        ra.union(&rb).compose(&rc) == ra.compose(&rc).union(&rb.compose(&rc)),
    );
    check("zero-left", zero.compose(&ra).is_empty());
    check("zero-right", ra.compose(&zero).is_empty());

    let sa = star(&ra);
    check("star-unfold-left", le(&one.union(&ra.compose(&sa)), &sa));
    check("star-unfold-right", le(&one.union(&sa.compose(&ra)), &sa));
    // induction rules, on the given c and on solutions built from it
    for x in [
        rc.clone(),
        sa.compose(&rb),
        top.clone(),
        rc.union(&sa.compose(&rb)),
    ] {
        if le(&rb.union(&ra.compose(&x)), &x) {
            check("star-induct-left", le(&sa.compose(&rb), &x));
        }
    }
    for x in [
        rc.clone(),
        rb.compose(&sa),
        top.clone(),
        rc.union(&rb.compose(&sa)),
    ] {
        if le(&rb.union(&x.compose(&ra)), &x) {
            check("star-induct-right", le(&rb.compose(&sa), &x));
        }
    }

    let (tp, tq, tr) = (ev(p)?, ev(q)?, ev(r)?);
    let np = ev(&KatTerm::not(p.clone()))?;
    check("test-below-one", le(&tp, &one));
    check("test-excluded-middle", tp.union(&np) == one);
    check("test-contradiction", tp.compose(&np).is_empty());
    check("test-comm", tp.compose(&tq) == tq.compose(&tp));
    check("test-idem", tp.compose(&tp) == tp);
    check(
        "test-double-neg",
        ev(&KatTerm::not(KatTerm::not(p.clone())))? == tp,
    );
    check(
        "test-distrib",
        tp.union(&tq.compose(&tr)) == tp.union(&tq).compose(&tp.union(&tr)),
    );
    check(
        "test-de-morgan",
        ev(&KatTerm::not(KatTerm::plus(p.clone(), q.clone())))?
            == np.compose(&ev(&KatTerm::not(q.clone()))?),
    );

    check("top-greatest", le(&ra, &top));
    check("top-idem", top.compose(&top) == top);
    Ok(failed)
}

/// Outcome of a randomized axiom sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSweep {
    pub instances: usize,
    pub failures: Vec<(usize, &'static str)>,
}

/// Checks all axioms on `count` random instances over spaces of 1..=`max_states` states.
pub fn sweep_axioms<R: Rng>(rng: &mut R, count: usize, max_states: usize) -> Result<AxiomSweep> {
    let mut failures = Vec::new();
    for i in 0..count {
        let n = rng.gen_range(1..=max_states);
        let a = random_term(rng, n, 3);
        let b = random_term(rng, n, 3);
        let c = random_term(rng, n, 3);
        let p = random_test(rng, n, 2);
        let q = random_test(rng, n, 2);
        let r = random_test(rng, n, 2);
        for name in check_axioms(&a, &b, &c, &p, &q, &r, n)? {
            failures.push((i, name));
        }
    }
    Ok(AxiomSweep {
        instances: count,
        failures,
    })
}
