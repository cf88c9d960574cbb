use serde::{Deserialize, Serialize};

use crate::lang::{Predicate, Program};
use crate::transformers::ProgramModel;

/// Tri-state outcome of an assumption check. `Fails` carries the lowest
/// offending state when the criterion is semantic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status", content = "witness")]
pub enum Flag {
    Holds,
    Fails(Option<usize>),
    NotEvaluated,
}

impl Flag {
    pub fn holds(self) -> bool {
        self == Flag::Holds
    }

    fn from_witness(w: Option<usize>) -> Flag {
        match w {
            None => Flag::Holds,
            Some(s) => Flag::Fails(Some(s)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionSet {
    pub termination: Flag,
    pub reachability: Flag,
    pub determinism: Flag,
    pub reversibility: Flag,
    pub no_branching_divergence: Flag,
}

/// Must-termination on `scope_pre`: no state there can diverge.
pub fn terminates_on(model: &ProgramModel, scope_pre: &Predicate) -> Flag {
    Flag::from_witness(scope_pre.intersection(model.may_diverge()).iter().next())
}

/// Every state of `scope_post` is reachable from some initial state.
pub fn reaches(model: &ProgramModel, scope_post: &Predicate) -> Flag {
    Flag::from_witness(scope_post.first_outside(&model.relation().codomain()))
}

/// No `[]` anywhere in the program.
pub fn syntactically_deterministic(p: &Program) -> Flag {
    if p.is_choice_free() {
        Flag::Holds
    } else {
        Flag::Fails(None)
    }
}

/// At most one outcome per state, and no outcome at all where divergence is possible.
pub fn semantically_deterministic(model: &ProgramModel) -> Flag {
    let n = model.relation().size();
    Flag::from_witness((0..n).find(|&s| {
        let k = model.image(s).count();
        k > 1 || (k == 1 && model.may_diverge().contains(s))
    }))
}

/// Every state of `scope_post` has at most one predecessor.
pub fn reversible_on(model: &ProgramModel, scope_post: &Predicate) -> Flag {
    Flag::from_witness(scope_post.iter().find(|&t| model.preimage(t).count() > 1))
}

/// Every state of `scope_pre` either always diverges or always terminates.
pub fn no_branching_divergence_on(model: &ProgramModel, scope_pre: &Predicate) -> Flag {
    let must = model.must_diverge();
    Flag::from_witness(
        scope_pre
            .iter()
            .find(|&s| model.may_diverge().contains(s) && !must.contains(s)),
    )
}

/// Evaluates all five assumptions, restricting termination and branching
/// divergence to `scope_pre` and reachability and reversibility to `scope_post`.
pub fn classify(
    p: &Program,
    model: &ProgramModel,
    scope_pre: &Predicate,
    scope_post: &Predicate,
) -> AssumptionSet {
    AssumptionSet {
        termination: terminates_on(model, scope_pre),
        reachability: reaches(model, scope_post),
        determinism: syntactically_deterministic(p),
        reversibility: reversible_on(model, scope_post),
        no_branching_divergence: no_branching_divergence_on(model, scope_pre),
    }
}

/// [`classify`] with both scopes set to all of `Σ`.
pub fn classify_global(p: &Program, model: &ProgramModel) -> AssumptionSet {
    let all = Predicate::full(model.relation().size());
    classify(p, model, &all, &all)
}
