use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lang::{Predicate, Program, StateSpace};
use crate::semantics::{denote_relation, Relation};

use super::term::{eval_kat, KatTerm};

/// Catalog of TopKAT equations (and systems of them) for program logics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EquationId {
    Lisbon,
    PartialCorrectness,
    PcContra,
    DwlpUb,
    Incorrectness,
    AngelicPartialIncorrectness,
    DemonicPartialIncorrectness,
    DslpUb,
    DspUb,
    InBetween,
    DemonicIncorrectness,
    OutcomeConjunction,
}

/// One member of an equation system: `lhs = rhs`, or `lhs ≠ rhs` when
/// `negated`.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub lhs: KatTerm,
    pub rhs: KatTerm,
    pub negated: bool,
}

impl EquationId {
    pub const ALL: [EquationId; 12] = [
        EquationId::Lisbon,
        EquationId::PartialCorrectness,
        EquationId::PcContra,
        EquationId::DwlpUb,
        EquationId::Incorrectness,
        EquationId::AngelicPartialIncorrectness,
        EquationId::DemonicPartialIncorrectness,
        EquationId::DslpUb,
        EquationId::DspUb,
        EquationId::InBetween,
        EquationId::DemonicIncorrectness,
        EquationId::OutcomeConjunction,
    ];

    pub fn id(self) -> &'static str {
        match self {
            EquationId::Lisbon => "LISBON",
            EquationId::PartialCorrectness => "PARTIAL_CORRECTNESS",
            EquationId::PcContra => "PC_CONTRA",
            EquationId::DwlpUb => "DWLP_UB",
            EquationId::Incorrectness => "INCORRECTNESS",
            EquationId::AngelicPartialIncorrectness => "ANGELIC_PARTIAL_INCORRECTNESS",
            EquationId::DemonicPartialIncorrectness => "DEMONIC_PARTIAL_INCORRECTNESS",
            EquationId::DslpUb => "DSLP_UB",
            EquationId::DspUb => "DSP_UB",
            EquationId::InBetween => "IN_BETWEEN",
            EquationId::DemonicIncorrectness => "DEMONIC_INCORRECTNESS",
            EquationId::OutcomeConjunction => "OUTCOME_CONJUNCTION",
        }
    }

    /// Human-readable form; `~` marks complement and `T` top.
    pub fn formula(self) -> &'static str {
        match self {
            EquationId::Lisbon => "b p c T = b T",
            EquationId::PartialCorrectness => "T b p c = T b p",
            EquationId::PcContra => "~b p ~c T = p ~c T",
            EquationId::DwlpUb => "~b p ~c T = ~b T",
            EquationId::Incorrectness => "T b p c = T c",
            EquationId::AngelicPartialIncorrectness => "T b p c = T p c",
            EquationId::DemonicPartialIncorrectness => "b p c T = p c T",
            EquationId::DslpUb => "T ~b p ~c = T ~c",
            EquationId::DspUb => "T ~b p ~c = T p ~c",
            EquationId::InBetween => "b p c T = b p T",
            EquationId::DemonicIncorrectness => "b p c T = p c T  and  T c = T p c",
            EquationId::OutcomeConjunction => "b p c != 0  and  b p ~c = 0",
        }
    }

    /// The members of the equation (system) instantiated at `b`, `p`, `c`.
    pub fn constraints(self, b: &Predicate, p: &Relation, c: &Predicate) -> Vec<Constraint> {
        let tb = || KatTerm::test(b);
        let nb = || KatTerm::not(KatTerm::test(b));
        let tc = || KatTerm::test(c);
        let nc = || KatTerm::not(KatTerm::test(c));
        let pp = || KatTerm::Prim(p.clone());
        let top = || KatTerm::Top;
        let eq = |l: Vec<KatTerm>, r: Vec<KatTerm>| Constraint {
            lhs: KatTerm::product(l),
            rhs: KatTerm::product(r),
            negated: false,
        };
        match self {
            EquationId::Lisbon => vec![eq(vec![tb(), pp(), tc(), top()], vec![tb(), top()])],
            EquationId::PartialCorrectness => {
                vec![eq(vec![top(), tb(), pp(), tc()], vec![top(), tb(), pp()])]
            }
            EquationId::PcContra => {
                vec![eq(vec![nb(), pp(), nc(), top()], vec![pp(), nc(), top()])]
            }
            EquationId::DwlpUb => vec![eq(vec![nb(), pp(), nc(), top()], vec![nb(), top()])],
            EquationId::Incorrectness => vec![eq(vec![top(), tb(), pp(), tc()], vec![top(), tc()])],
            EquationId::AngelicPartialIncorrectness => {
                vec![eq(vec![top(), tb(), pp(), tc()], vec![top(), pp(), tc()])]
            }
            EquationId::DemonicPartialIncorrectness => {
                vec![eq(vec![tb(), pp(), tc(), top()], vec![pp(), tc(), top()])]
            }
            EquationId::DslpUb => vec![eq(vec![top(), nb(), pp(), nc()], vec![top(), nc()])],
            EquationId::DspUb => vec![eq(vec![top(), nb(), pp(), nc()], vec![top(), pp(), nc()])],
            EquationId::InBetween => {
                vec![eq(vec![tb(), pp(), tc(), top()], vec![tb(), pp(), top()])]
            }
            EquationId::DemonicIncorrectness => vec![
                eq(vec![tb(), pp(), tc(), top()], vec![pp(), tc(), top()]),
                eq(vec![top(), tc()], vec![top(), pp(), tc()]),
            ],
            EquationId::OutcomeConjunction => vec![
                Constraint {
                    lhs: KatTerm::product([tb(), pp(), tc()]),
                    rhs: KatTerm::Zero,
                    negated: true,
                },
                eq(vec![tb(), pp(), nc()], vec![KatTerm::Zero]),
            ],
        }
    }

    /// Decides the equation in the relational model for a given denotation.
    pub fn check_relation(self, b: &Predicate, p: &Relation, c: &Predicate) -> Result<bool> {
        let n = p.size();
        for k in self.constraints(b, p, c) {
            let same = eval_kat(&k.lhs, n)? == eval_kat(&k.rhs, n)?;
            if same == k.negated {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Decides `eq` for `(b, p, c)` over the relational denotation of `p`.
pub fn check_equation(
    eq: EquationId,
    b: &Predicate,
    p: &Program,
    space: &StateSpace,
    c: &Predicate,
) -> Result<bool> {
    eq.check_relation(b, &denote_relation(p, space), c)
}

impl fmt::Display for EquationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for EquationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|e| e.id() == norm)
            .ok_or(Error::UnknownId {
                kind: "equation",
                id: s.to_string(),
            })
    }
}
