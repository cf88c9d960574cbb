//! Coreachability and reachability classes of single states.

use crate::error::{Error, Result};
use crate::lang::Predicate;

use super::kind::TransformerKind;
use super::oracle::ProgramModel;

/// Class of an initial state from (terminates in `c`, terminates in `¬c`,
/// may diverge).
pub fn coreachability_class(model: &ProgramModel, c: &Predicate, s: usize) -> Result<u8> {
    let img = model.image(s);
    let in_c = !img.is_disjoint(c);
    let in_not_c = img.first_outside(c).is_some();
    let div = model.may_diverge().contains(s);
    Ok(match (in_c, in_not_c, div) {
        (true, false, false) => 1,
        (true, false, true) => 2,
        (true, true, false) => 3,
        (false, false, true) => 4,
        (true, true, true) => 5,
        (false, true, true) => 6,
        (false, true, false) => 7,
        (false, false, false) => {
            return Err(Error::Invariant(format!(
                "state {s} neither terminates nor diverges"
            )))
        }
    })
}

/// Class of a final state: 1 reachable only from `b`, 2 from both `b` and
/// `¬b`, 3 unreachable, 4 reachable only from `¬b`.
pub fn reachability_class(model: &ProgramModel, b: &Predicate, t: usize) -> u8 {
    let pre = model.preimage(t);
    match (!pre.is_disjoint(b), pre.first_outside(b).is_some()) {
        (true, false) => 1,
        (true, true) => 2,
        (false, false) => 3,
        (false, true) => 4,
    }
}

/// Classes whose members make up the transformer's result.
pub fn classes_of(kind: TransformerKind) -> &'static [u8] {
    use TransformerKind::*;
    match kind {
        Awp => &[1, 2, 3, 5],
        Dwp => &[1],
        Awlp => &[1, 2, 3, 4, 5, 6],
        Dwlp => &[1, 2, 4],
        Asp => &[1, 2],
        Dsp => &[1],
        Aslp => &[1, 2, 3],
        Dslp => &[1, 3],
    }
}

/// The transformer result read off the class anatomy.
pub fn transform_by_classes(
    model: &ProgramModel,
    kind: TransformerKind,
    q: &Predicate,
) -> Result<Predicate> {
    let n = q.universe();
    let wanted = classes_of(kind);
    let mut out = Predicate::empty(n);
    for s in 0..n {
        let class = match kind.direction() {
            super::Direction::Backward => coreachability_class(model, q, s)?,
            super::Direction::Forward => reachability_class(model, q, s),
        };
        if wanted.contains(&class) {
            out.insert(s);
        }
    }
    Ok(out)
}
