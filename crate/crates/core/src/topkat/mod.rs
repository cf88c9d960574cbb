//! Kleene algebra with top and tests, interpreted over relations on `Σ`.

mod axioms;
mod equations;
mod term;

pub use axioms::{check_axioms, sweep_axioms, AxiomSweep};
pub use equations::{check_equation, Constraint, EquationId};
pub use term::{
    compile_kat, eval_kat, random_predicate, random_relation, random_term, random_test, KatTerm,
};

use crate::lang::Predicate;
use crate::semantics::Relation;

/// `{σ | ∃τ. (σ, τ) ∈ R}`; `R⊤ = domain(R) × Σ`.
pub fn domain(r: &Relation) -> Predicate {
    r.domain()
}

/// `{τ | ∃σ. (σ, τ) ∈ R}`; `⊤R = Σ × codomain(R)`.
pub fn codomain(r: &Relation) -> Predicate {
    r.codomain()
}
