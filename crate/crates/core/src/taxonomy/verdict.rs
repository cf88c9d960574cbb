use serde::{Deserialize, Serialize};

use crate::lang::{Predicate, Program, StateSpace};

/// A concrete triple (plus optional state) refuting or illustrating a claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub space: String,
    pub program: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other_program: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pre: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub post: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<String>,
    pub detail: String,
}

impl Witness {
    pub fn new(space: &StateSpace, program: &Program, detail: impl Into<String>) -> Self {
        Witness {
            space: space.header(),
            program: program.render(space),
            other_program: None,
            pre: None,
            post: None,
            state: None,
            detail: detail.into(),
        }
    }

    pub fn triple(mut self, space: &StateSpace, b: &Predicate, c: &Predicate) -> Self {
        self.pre = Some(b.render(space));
        self.post = Some(c.render(space));
        self
    }

    pub fn pre(mut self, space: &StateSpace, b: &Predicate) -> Self {
        self.pre = Some(b.render(space));
        self
    }

    pub fn post(mut self, space: &StateSpace, c: &Predicate) -> Self {
        self.post = Some(c.render(space));
        self
    }

    pub fn state(mut self, space: &StateSpace, s: Option<usize>) -> Self {
        self.state = s.map(|s| space.render_state(s));
        self
    }

    pub fn other(mut self, space: &StateSpace, p: &Program) -> Self {
        self.other_program = Some(p.render(space));
        self
    }
}

/// Counters gathered while checking a claim.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    /// Corpus items (programs) visited.
    pub items: u64,
    /// Individual checks performed.
    pub checks: u64,
    /// Checks whose assumption filter held.
    pub filtered_in: u64,
    pub filtered_out: u64,
    /// Checks outside the filter where the collapse equality failed.
    pub outside_violations: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outside_witness: Option<Witness>,
    /// Candidate triples examined by a counterexample search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub examined: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget_exhausted: Option<bool>,
}

impl Stats {
    /// Adds `other` into `self`; witnesses keep the first one seen.
    pub fn merge(&mut self, other: Stats) {
        self.items += other.items;
        self.checks += other.checks;
        self.filtered_in += other.filtered_in;
        self.filtered_out += other.filtered_out;
        self.outside_violations += other.outside_violations;
        if self.outside_witness.is_none() {
            self.outside_witness = other.outside_witness;
        }
    }

    /// At least one violation exists outside the assumption filter.
    pub fn non_vacuous(&self) -> bool {
        self.outside_violations > 0
    }
}

/// Outcome of checking one claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub stats: Stats,
}
