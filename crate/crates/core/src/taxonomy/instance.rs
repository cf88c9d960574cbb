use crate::error::Result;
use crate::lang::{Predicate, Program, StateSpace};
use crate::transformers::{Direction, ProgramModel, TransformerKind as K};

use super::logic::LogicId;

/// A program together with a pool of predicates and every oracle transformer
/// value over that pool.
pub struct Instance<'a> {
    pub space: &'a StateSpace,
    pub program: &'a Program,
    pub preds: &'a [Predicate],
    pub model: ProgramModel,
    table: Vec<Vec<Predicate>>,
    complements: Vec<Option<usize>>,
}

impl<'a> Instance<'a> {
    pub fn new(
        space: &'a StateSpace,
        program: &'a Program,
        preds: &'a [Predicate],
    ) -> Result<Self> {
        let model = ProgramModel::new(program, space)?;
        Ok(Self::with_model(space, program, preds, model))
    }

    pub fn with_model(
        space: &'a StateSpace,
        program: &'a Program,
        preds: &'a [Predicate],
        model: ProgramModel,
    ) -> Self {
        let table = preds
            .iter()
            .map(|q| K::ALL.iter().map(|&k| model.transform(k, q)).collect())
            .collect();
        let complements = preds
            .iter()
            .map(|q| {
                let nq = q.complement();
                preds.iter().position(|r| *r == nq)
            })
            .collect();
        Instance {
            space,
            program,
            preds,
            model,
            table,
            complements,
        }
    }

    pub fn len(&self) -> usize {
        self.preds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.preds.is_empty()
    }

    /// Oracle value of `kind` at the `q`-th predicate.
    pub fn value(&self, kind: K, q: usize) -> &Predicate {
        &self.table[q][kind.index()]
    }

    pub fn complement_of(&self, q: usize) -> Option<usize> {
        self.complements[q]
    }

    pub fn failure(&self, logic: LogicId, b: usize, c: usize) -> Option<usize> {
        logic.failure_with(&self.preds[b], &self.preds[c], |k| match k.direction() {
            Direction::Backward => self.value(k, c),
            Direction::Forward => self.value(k, b),
        })
    }

    pub fn holds(&self, logic: LogicId, b: usize, c: usize) -> bool {
        self.failure(logic, b, c).is_none()
    }
}

/// Decides a logic for one triple using the oracle transformers.
pub fn holds(
    logic: LogicId,
    b: &Predicate,
    p: &Program,
    space: &StateSpace,
    c: &Predicate,
) -> Result<bool> {
    let preds = [b.clone(), c.clone()];
    let inst = Instance::new(space, p, &preds)?;
    Ok(inst.holds(logic, 0, 1))
}
