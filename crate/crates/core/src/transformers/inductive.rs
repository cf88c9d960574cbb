//! Structural rules, with loops solved by Kleene iteration.

use crate::lang::{Expr, Predicate, Program, StateSpace};

use super::kind::TransformerKind;

/// Least fixpoint of a monotone `f`, iterated from `∅`.
pub fn lfp(size: usize, mut f: impl FnMut(&Predicate) -> Predicate) -> Predicate {
    let mut x = Predicate::empty(size);
    loop {
        let next = f(&x);
        if next == x {
            return x;
        }
        x = next;
    }
}

/// Greatest fixpoint of a monotone `f`, iterated from `Σ`.
pub fn gfp(size: usize, mut f: impl FnMut(&Predicate) -> Predicate) -> Predicate {
    let mut x = Predicate::full(size);
    loop {
        let next = f(&x);
        if next == x {
            return x;
        }
        x = next;
    }
}

/// The transformer computed by structural recursion. `dsp` and `aslp` are
/// combined from `asp` and `dslp`.
pub fn inductive_transform(
    kind: TransformerKind,
    p: &Program,
    space: &StateSpace,
    q: &Predicate,
) -> Predicate {
    use TransformerKind::*;
    match kind {
        Awp | Dwp | Awlp | Dwlp => backward(kind, p, space, q),
        Asp => asp(p, space, q),
        Dslp => dslp(p, space, q),
        Dsp => asp(p, space, q).intersection(&dslp(p, space, q)),
        Aslp => asp(p, space, q).union(&dslp(p, space, q)),
    }
}

/// `c[x/e] = {σ | σ[x ↦ σ(e)] ∈ c}`.
fn substitute(space: &StateSpace, x: usize, e: &Expr, c: &Predicate) -> Predicate {
    Predicate::from_fn(space.size(), |i| {
        c.contains(space.update_index(i, x, e.eval(space, i)))
    })
}

fn backward(kind: TransformerKind, p: &Program, space: &StateSpace, c: &Predicate) -> Predicate {
    use TransformerKind::*;
    let n = space.size();
    let angelic = matches!(kind, Awp | Awlp);
    let liberal = matches!(kind, Awlp | Dwlp);
    match p {
        Program::Skip => c.clone(),
        Program::Diverge => {
            if liberal {
                Predicate::full(n)
            } else {
                Predicate::empty(n)
            }
        }
        Program::Assign(x, e) => substitute(space, *x, e, c),
        Program::Seq(a, b) => backward(kind, a, space, &backward(kind, b, space, c)),
        Program::Choice(a, b) => {
            let l = backward(kind, a, space, c);
            let r = backward(kind, b, space, c);
            if angelic {
                l.union(&r)
            } else {
                l.intersection(&r)
            }
        }
        Program::Ite(g, a, b) => {
            let gp = g.to_predicate(space);
            let l = gp.intersection(&backward(kind, a, space, c));
            l.union(&gp.complement().intersection(&backward(kind, b, space, c)))
        }
        Program::While(g, body) => {
            let gp = g.to_predicate(space);
            let exit = gp.complement().intersection(c);
            let step =
                |x: &Predicate| exit.union(&gp.intersection(&backward(kind, body, space, x)));
            if liberal {
                gfp(n, step)
            } else {
                lfp(n, step)
            }
        }
    }
}

/// `∃α. x = e[x/α] ∧ b[x/α]`, as a disjunction over `α ∈ Z_m`.
fn asp_assign(space: &StateSpace, x: usize, e: &Expr, b: &Predicate) -> Predicate {
    Predicate::from_fn(space.size(), |t| {
        (0..space.modulus()).any(|alpha| {
            let prev = space.update_index(t, x, alpha);
            space.decode_var(t, x) == e.eval(space, prev) && b.contains(prev)
        })
    })
}

/// `∀α. x ≠ e[x/α] ∨ b[x/α]`.
fn dslp_assign(space: &StateSpace, x: usize, e: &Expr, b: &Predicate) -> Predicate {
    Predicate::from_fn(space.size(), |t| {
        (0..space.modulus()).all(|alpha| {
            let prev = space.update_index(t, x, alpha);
            space.decode_var(t, x) != e.eval(space, prev) || b.contains(prev)
        })
    })
}

fn asp(p: &Program, space: &StateSpace, b: &Predicate) -> Predicate {
    let n = space.size();
    match p {
        Program::Skip => b.clone(),
        Program::Diverge => Predicate::empty(n),
        Program::Assign(x, e) => asp_assign(space, *x, e, b),
        Program::Seq(p1, p2) => asp(p2, space, &asp(p1, space, b)),
        Program::Choice(p1, p2) => asp(p1, space, b).union(&asp(p2, space, b)),
        Program::Ite(g, p1, p2) => {
            let gp = g.to_predicate(space);
            let l = asp(p1, space, &gp.intersection(b));
            l.union(&asp(p2, space, &gp.complement().intersection(b)))
        }
        Program::While(g, body) => {
            let gp = g.to_predicate(space);
            let inv = lfp(n, |y| b.union(&asp(body, space, &gp.intersection(y))));
            gp.complement().intersection(&inv)
        }
    }
}

fn dslp(p: &Program, space: &StateSpace, b: &Predicate) -> Predicate {
    let n = space.size();
    match p {
        Program::Skip => b.clone(),
        Program::Diverge => Predicate::full(n),
        Program::Assign(x, e) => dslp_assign(space, *x, e, b),
        Program::Seq(p1, p2) => dslp(p2, space, &dslp(p1, space, b)),
        Program::Choice(p1, p2) => dslp(p1, space, b).intersection(&dslp(p2, space, b)),
        Program::Ite(g, p1, p2) => {
            let gp = g.to_predicate(space);
            let l = dslp(p1, space, &gp.complement().union(b));
            l.intersection(&dslp(p2, space, &gp.union(b)))
        }
        Program::While(g, body) => {
            let gp = g.to_predicate(space);
            let not_g = gp.complement();
            let inv = gfp(n, |z| b.intersection(&dslp(body, space, &not_g.union(z))));
            gp.union(&inv)
        }
    }
}
