use rand::Rng;

use crate::error::{Error, Result};
use crate::lang::{Predicate, Program, StateSpace};
use crate::semantics::{denote_relation, Relation};

/// Terms of Kleene algebra with top and tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KatTerm {
    Zero,
    One,
    Top,
    Test(Predicate),
    Prim(Relation),
    Plus(Box<KatTerm>, Box<KatTerm>),
    Dot(Box<KatTerm>, Box<KatTerm>),
    Star(Box<KatTerm>),
    /// Boolean complement; only defined on tests.
    Not(Box<KatTerm>),
}

#[allow(clippy::should_implement_trait)]
impl KatTerm {
    pub fn test(b: &Predicate) -> Self {
        KatTerm::Test(b.clone())
    }

    pub fn plus(a: KatTerm, b: KatTerm) -> Self {
        KatTerm::Plus(Box::new(a), Box::new(b))
    }

    pub fn dot(a: KatTerm, b: KatTerm) -> Self {
        KatTerm::Dot(Box::new(a), Box::new(b))
    }

    /// Left-nested product of a nonempty sequence of factors.
    pub fn product<I: IntoIterator<Item = KatTerm>>(factors: I) -> Self {
        let mut it = factors.into_iter();
        let first = it.next().expect("product of at least one factor");
        it.fold(first, KatTerm::dot)
    }

    pub fn star(a: KatTerm) -> Self {
        KatTerm::Star(Box::new(a))
    }

    pub fn not(a: KatTerm) -> Self {
        KatTerm::Not(Box::new(a))
    }

    /// True for members of the Boolean subalgebra.
    pub fn is_test(&self) -> bool {
        match self {
            KatTerm::Zero | KatTerm::One | KatTerm::Test(_) => true,
            KatTerm::Not(t) => t.is_test(),
            KatTerm::Plus(a, b) | KatTerm::Dot(a, b) => a.is_test() && b.is_test(),
            KatTerm::Top | KatTerm::Prim(_) | KatTerm::Star(_) => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            KatTerm::Plus(a, b) | KatTerm::Dot(a, b) => 1 + a.size() + b.size(),
            KatTerm::Star(a) | KatTerm::Not(a) => 1 + a.size(),
            _ => 1,
        }
    }
}

/// Relational interpretation over a state space with `n` states.
pub fn eval_kat(t: &KatTerm, n: usize) -> Result<Relation> {
    Ok(match t {
        KatTerm::Zero => Relation::empty(n),
        KatTerm::One => Relation::identity(n),
        KatTerm::Top => Relation::top(n),
        KatTerm::Test(b) => {
            check_size(b.universe(), n)?;
            Relation::test(b)
        }
        KatTerm::Prim(r) => {
            check_size(r.size(), n)?;
            r.clone()
        }
        KatTerm::Plus(a, b) => eval_kat(a, n)?.union(&eval_kat(b, n)?),
        KatTerm::Dot(a, b) => {
            if a.is_test() {
                eval_kat(b, n)?.restrict_domain(&eval_test(a, n)?)
            } else if b.is_test() {
                eval_kat(a, n)?.restrict_codomain(&eval_test(b, n)?)
            } else if **a == KatTerm::Top {
                let r = eval_kat(b, n)?;
                Relation::product(&Predicate::full(n), &r.codomain())
            } else if **b == KatTerm::Top {
                let r = eval_kat(a, n)?;
                Relation::product(&r.domain(), &Predicate::full(n))
            } else {
                eval_kat(a, n)?.compose(&eval_kat(b, n)?)
            }
        }
        KatTerm::Star(a) => eval_kat(a, n)?.star(),
        KatTerm::Not(_) => Relation::test(&eval_test(t, n)?),
    })
}

/// The set of states a test term keeps.
fn eval_test(t: &KatTerm, n: usize) -> Result<Predicate> {
    Ok(match t {
        KatTerm::Zero => Predicate::empty(n),
        KatTerm::One => Predicate::full(n),
        KatTerm::Test(b) => {
            check_size(b.universe(), n)?;
            b.clone()
        }
        KatTerm::Not(a) => eval_test(a, n)?.complement(),
        KatTerm::Plus(a, b) => eval_test(a, n)?.union(&eval_test(b, n)?),
        KatTerm::Dot(a, b) => eval_test(a, n)?.intersection(&eval_test(b, n)?),
        KatTerm::Top | KatTerm::Prim(_) | KatTerm::Star(_) => {
            return Err(Error::MalformedTerm(
                "complement applied to a non-test".into(),
            ))
        }
    })
}

fn check_size(got: usize, n: usize) -> Result<()> {
    if got == n {
        Ok(())
    } else {
        Err(Error::MalformedTerm(format!(
            "operand over {got} states used in a {n}-state term"
        )))
    }
}

/// Program to KAT term: `while g do p` becomes `(g p)* ¬g`.
pub fn compile_kat(p: &Program, space: &StateSpace) -> KatTerm {
    match p {
        Program::Skip => KatTerm::One,
        Program::Diverge => KatTerm::Zero,
        Program::Assign(..) => KatTerm::Prim(denote_relation(p, space)),
        Program::Seq(a, b) => KatTerm::dot(compile_kat(a, space), compile_kat(b, space)),
        Program::Choice(a, b) => KatTerm::plus(compile_kat(a, space), compile_kat(b, space)),
        Program::Ite(g, a, b) => {
            let t = KatTerm::Test(g.to_predicate(space));
            KatTerm::plus(
                KatTerm::dot(t.clone(), compile_kat(a, space)),
                KatTerm::dot(KatTerm::not(t), compile_kat(b, space)),
            )
        }
        Program::While(g, body) => {
            let t = KatTerm::Test(g.to_predicate(space));
            KatTerm::dot(
                KatTerm::star(KatTerm::dot(t.clone(), compile_kat(body, space))),
                KatTerm::not(t),
            )
        }
    }
}

/// A random relation with roughly the given density.
pub fn random_relation<R: Rng>(rng: &mut R, n: usize, density: f64) -> Relation {
    let mut r = Relation::empty(n);
    for a in 0..n {
        for b in 0..n {
            if rng.gen_bool(density) {
                r.insert(a, b);
            }
        }
    }
    r
}

pub fn random_predicate<R: Rng>(rng: &mut R, n: usize) -> Predicate {
    Predicate::from_fn(n, |_| rng.gen_bool(0.5))
}

/// A random test term over `n` states.
pub fn random_test<R: Rng>(rng: &mut R, n: usize, depth: usize) -> KatTerm {
    let pick = if depth == 0 {
        rng.gen_range(0..3)
    } else {
        rng.gen_range(0..6)
    };
    match pick {
        0 => KatTerm::Zero,
        1 => KatTerm::One,
        2 => KatTerm::Test(random_predicate(rng, n)),
        3 => KatTerm::not(random_test(rng, n, depth - 1)),
        4 => KatTerm::plus(
            random_test(rng, n, depth - 1),
            random_test(rng, n, depth - 1),
        ),
        _ => KatTerm::dot(
            random_test(rng, n, depth - 1),
            random_test(rng, n, depth - 1),
        ),
    }
}

/// A random term over `n` states, nested at most `depth` deep.
pub fn random_term<R: Rng>(rng: &mut R, n: usize, depth: usize) -> KatTerm {
    let pick = if depth == 0 {
        rng.gen_range(0..5)
    } else {
        rng.gen_range(0..9)
    };
    match pick {
        0 => KatTerm::Zero,
        1 => KatTerm::One,
        2 => KatTerm::Top,
        3 => random_test(rng, n, 1),
        4 => KatTerm::Prim(random_relation(rng, n, 0.3)),
        5 | 6 => KatTerm::plus(
            random_term(rng, n, depth - 1),
            random_term(rng, n, depth - 1),
        ),
        7 => KatTerm::dot(
            random_term(rng, n, depth - 1),
            random_term(rng, n, depth - 1),
        ),
        _ => KatTerm::star(random_term(rng, n, depth - 1)),
    }
}
