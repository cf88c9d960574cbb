use crate::error::Result;
use crate::lang::{Predicate, Program, StateSpace};
use crate::semantics::{denote_relation, may_diverge, Relation};

use super::kind::TransformerKind;

/// Everything the quantifier definitions need about one program: its
/// input/output relation and its may-divergence set.
#[derive(Debug, Clone)]
pub struct ProgramModel {
    size: usize,
    relation: Relation,
    converse: Relation,
    may: Predicate,
}

impl ProgramModel {
    pub fn new(p: &Program, space: &StateSpace) -> Result<Self> {
        let relation = denote_relation(p, space);
        let may = may_diverge(p, space)?;
        Ok(Self::from_parts(relation, may))
    }

    pub fn from_parts(relation: Relation, may: Predicate) -> Self {
        ProgramModel {
            size: relation.size(),
            converse: relation.converse(),
            relation,
            may,
        }
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn may_diverge(&self) -> &Predicate {
        &self.may
    }

    pub fn must_diverge(&self) -> Predicate {
        self.relation.domain().complement()
    }

    /// `⟦p⟧(σ)`.
    pub fn image(&self, s: usize) -> &Predicate {
        self.relation.image_of(s)
    }

    /// `⟦p⟧⁻¹(τ)`.
    pub fn preimage(&self, t: usize) -> &Predicate {
        self.converse.image_of(t)
    }

    /// Evaluates a transformer state by state from its quantifier definition.
    pub fn transform(&self, kind: TransformerKind, q: &Predicate) -> Predicate {
        use TransformerKind::*;
        let some = |set: &Predicate| !set.is_disjoint(q);
        let all = |set: &Predicate| set.is_subset(q);
        Predicate::from_fn(self.size, |i| match kind {
            Awp => some(self.image(i)),
            Dwp => !self.may.contains(i) && all(self.image(i)),
            Awlp => self.may.contains(i) || some(self.image(i)),
            Dwlp => all(self.image(i)),
            Asp => some(self.preimage(i)),
            Dslp => all(self.preimage(i)),
            Dsp => !self.preimage(i).is_empty() && all(self.preimage(i)),
            Aslp => self.preimage(i).is_empty() || some(self.preimage(i)),
        })
    }
}

/// The transformer computed from its semantic definition.
pub fn oracle_transform(
    kind: TransformerKind,
    p: &Program,
    space: &StateSpace,
    q: &Predicate,
) -> Result<Predicate> {
    Ok(ProgramModel::new(p, space)?.transform(kind, q))
}
