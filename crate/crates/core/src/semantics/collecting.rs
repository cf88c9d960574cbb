use crate::lang::{Expr, Predicate, Program, StateSpace};

use super::relation::Relation;

/// `⟦x := e⟧ S`.
pub fn assign_image(space: &StateSpace, var: usize, e: &Expr, s: &Predicate) -> Predicate {
    let mut out = Predicate::empty(space.size());
    for i in s.iter() {
        out.insert(space.update_index(i, var, e.eval(space, i)));
    }
    out
}

/// Collecting semantics `⟦p⟧ S`: all final states of terminating runs from `S`.
pub fn collecting(p: &Program, space: &StateSpace, s: &Predicate) -> Predicate {
    match p {
        Program::Skip => s.clone(),
        Program::Diverge => Predicate::empty(space.size()),
        Program::Assign(x, e) => assign_image(space, *x, e, s),
        Program::Seq(a, b) => collecting(b, space, &collecting(a, space, s)),
        Program::Choice(a, b) => collecting(a, space, s).union(&collecting(b, space, s)),
        Program::Ite(g, a, b) => {
            let gp = g.to_predicate(space);
            let t = collecting(a, space, &s.intersection(&gp));
            t.union(&collecting(b, space, &s.difference(&gp)))
        }
        Program::While(g, body) => {
            let gp = g.to_predicate(space);
            // lfp X. S ∪ ⟦body⟧(X ∩ g), then exit through ¬g
            let mut x = Predicate::empty(space.size());
            loop {
                let next = s.union(&collecting(body, space, &x.intersection(&gp)));
                if next == x {
                    break;
                }
                x = next;
            }
            x.difference(&gp)
        }
    }
}

/// `⟦p⟧⁻¹ T = {σ | ⟦p⟧(σ) ∩ T ≠ ∅}`, straight from the definition.
pub fn inverse(p: &Program, space: &StateSpace, t: &Predicate) -> Predicate {
    let n = space.size();
    Predicate::from_fn(n, |i| {
        !collecting(p, space, &Predicate::singleton(n, i)).is_disjoint(t)
    })
}

/// `{(σ, τ) | τ ∈ ⟦p⟧{σ}}`.
pub fn denote_relation(p: &Program, space: &StateSpace) -> Relation {
    let n = space.size();
    Relation::from_rows(
        (0..n)
            .map(|i| collecting(p, space, &Predicate::singleton(n, i)))
            .collect(),
    )
}

/// States whose image is empty: every run diverges.
pub fn must_diverge(p: &Program, space: &StateSpace) -> Predicate {
    let r = denote_relation(p, space);
    r.domain().complement()
}
