use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::lang::Predicate;
use crate::topkat::EquationId;
use crate::transformers::{Direction, TransformerKind as K};

/// Which side of the inclusion the user-supplied predicate sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    /// `b ⊆ T(p, c)` for backward, `c ⊆ T(p, b)` for forward transformers.
    Lower,
    /// `T(p, c) ⊆ b` for backward, `T(p, b) ⊆ c` for forward transformers.
    Upper,
}

/// One of the eighteen triple semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LogicId {
    Bound(K, Bound),
    /// `b ⊆ awp(p, c) ∪ dwlp(p, c)`.
    Union,
    /// `b ⊆ awp(p, c) ∩ dwlp(p, c)`.
    Intersection,
}

use Bound::{Lower, Upper};
use LogicId::Bound as B;

/// Implications between single-transformer logics.
pub const IMPLICATIONS: [(LogicId, LogicId); 16] = [
    (B(K::Dwp, Lower), B(K::Awp, Lower)),
    (B(K::Dwp, Lower), B(K::Dwlp, Lower)),
    (B(K::Awp, Lower), B(K::Awlp, Lower)),
    (B(K::Dwlp, Lower), B(K::Awlp, Lower)),
    (B(K::Awlp, Upper), B(K::Awp, Upper)),
    (B(K::Awlp, Upper), B(K::Dwlp, Upper)),
    (B(K::Awp, Upper), B(K::Dwp, Upper)),
    (B(K::Dwlp, Upper), B(K::Dwp, Upper)),
    (B(K::Dsp, Lower), B(K::Asp, Lower)),
    (B(K::Dsp, Lower), B(K::Dslp, Lower)),
    (B(K::Asp, Lower), B(K::Aslp, Lower)),
    (B(K::Dslp, Lower), B(K::Aslp, Lower)),
    (B(K::Aslp, Upper), B(K::Asp, Upper)),
    (B(K::Aslp, Upper), B(K::Dslp, Upper)),
    (B(K::Asp, Upper), B(K::Dsp, Upper)),
    (B(K::Dslp, Upper), B(K::Dsp, Upper)),
];

/// Implications through the two in-between logics.
pub const IN_BETWEEN_IMPLICATIONS: [(LogicId, LogicId); 6] = [
    (B(K::Dwp, Lower), LogicId::Intersection),
    (LogicId::Intersection, B(K::Awp, Lower)),
    (LogicId::Intersection, B(K::Dwlp, Lower)),
    (B(K::Awp, Lower), LogicId::Union),
    (B(K::Dwlp, Lower), LogicId::Union),
    (LogicId::Union, B(K::Awlp, Lower)),
];

/// Pairs of logics that agree on every triple.
pub const GALOIS: [(LogicId, LogicId); 2] = [
    (B(K::Dwlp, Lower), B(K::Asp, Upper)),
    (B(K::Awp, Upper), B(K::Dslp, Lower)),
];

/// The seven logics whose pairwise (and contrapositive) distinctness is
/// established by explicit counterexamples.
pub const DISTINCT_BASE: [LogicId; 7] = [
    B(K::Dwlp, Lower),
    B(K::Dwp, Lower),
    B(K::Awp, Lower),
    B(K::Awlp, Lower),
    B(K::Asp, Lower),
    B(K::Dsp, Lower),
    B(K::Aslp, Lower),
];

/// Equation-to-logic equivalences in the relational model.
pub const BRIDGES: [(EquationId, LogicId); 13] = [
    (EquationId::Lisbon, B(K::Awp, Lower)),
    (EquationId::PartialCorrectness, B(K::Dwlp, Lower)),
    (EquationId::PartialCorrectness, B(K::Asp, Upper)),
    (EquationId::PcContra, B(K::Dwlp, Lower)),
    (EquationId::DwlpUb, B(K::Dwlp, Upper)),
    (EquationId::Incorrectness, B(K::Asp, Lower)),
    (EquationId::AngelicPartialIncorrectness, B(K::Aslp, Lower)),
    (EquationId::DemonicPartialIncorrectness, B(K::Dslp, Lower)),
    (EquationId::DemonicPartialIncorrectness, B(K::Awp, Upper)),
    (EquationId::DslpUb, B(K::Dslp, Upper)),
    (EquationId::DspUb, B(K::Dsp, Upper)),
    (EquationId::InBetween, LogicId::Union),
    (EquationId::DemonicIncorrectness, B(K::Dsp, Lower)),
];

const ALIASES: [(&str, LogicId); 14] = [
    ("lisbon", B(K::Awp, Lower)),
    ("angelic-total-correctness", B(K::Awp, Lower)),
    ("sufficient-incorrectness", B(K::Awp, Lower)),
    ("total-correctness", B(K::Dwp, Lower)),
    ("partial-correctness", B(K::Dwlp, Lower)),
    ("angelic-partial-correctness", B(K::Awlp, Lower)),
    ("incorrectness", B(K::Asp, Lower)),
    ("reverse-hoare", B(K::Asp, Lower)),
    ("partial-incorrectness", B(K::Dslp, Lower)),
    ("demonic-incorrectness", B(K::Dsp, Lower)),
    ("angelic-partial-incorrectness", B(K::Aslp, Lower)),
    ("in-between", LogicId::Union),
    ("outcome", LogicId::Intersection),
    ("conjunction", LogicId::Intersection),
];

impl LogicId {
    /// All eighteen logics: the sixteen single-transformer ones, then union
    /// and intersection.
    pub fn all() -> Vec<LogicId> {
        let mut out: Vec<LogicId> = K::ALL
            .into_iter()
            .flat_map(|k| [B(k, Lower), B(k, Upper)])
            .collect();
        out.push(LogicId::Union);
        out.push(LogicId::Intersection);
        out
    }

    /// The logic `L'` with `L(b, p, c) ⟺ L'(¬b, p, ¬c)`.
    pub fn contrapositive(self) -> Option<LogicId> {
        match self {
            B(k, Lower) => Some(B(k.contrapositive(), Upper)),
            B(k, Upper) => Some(B(k.contrapositive(), Lower)),
            _ => None,
        }
    }

    pub fn name(self) -> String {
        match self {
            B(k, Lower) => format!("{}LB", k.name()),
            B(k, Upper) => format!("{}UB", k.name()),
            LogicId::Union => "union".into(),
            LogicId::Intersection => "intersection".into(),
        }
    }

    /// The inclusion that defines the logic.
    pub fn condition(self) -> String {
        match self {
            B(k, bound) => {
                let (arg, other) = match k.direction() {
                    Direction::Backward => ("c", "b"),
                    Direction::Forward => ("b", "c"),
                };
                let t = format!("{}(p, {arg})", k.name());
                match bound {
                    Lower => format!("{other} ⊆ {t}"),
                    Upper => format!("{t} ⊆ {other}"),
                }
            }
            LogicId::Union => "b ⊆ awp(p, c) ∪ dwlp(p, c)".into(),
            LogicId::Intersection => "b ⊆ awp(p, c) ∩ dwlp(p, c)".into(),
        }
    }

    pub fn colloquial(self) -> Option<&'static str> {
        Some(match self {
            B(K::Awp, Lower) => "Lisbon logic (angelic total correctness)",
            B(K::Dwp, Lower) => "total correctness",
            B(K::Awlp, Lower) => "angelic partial correctness",
            B(K::Dwlp, Lower) | B(K::Asp, Upper) => "partial correctness",
            B(K::Awp, Upper) | B(K::Dslp, Lower) => "partial incorrectness",
            B(K::Dsp, Lower) => "demonic incorrectness",
            B(K::Aslp, Lower) => "angelic partial incorrectness",
            B(K::Asp, Lower) => "incorrectness logic",
            LogicId::Union => "in-between (union)",
            LogicId::Intersection => "in-between (intersection)",
            _ => return None,
        })
    }

    /// The TopKAT equation characterizing this logic, when one exists.
    pub fn equation(self) -> Option<EquationId> {
        BRIDGES.iter().find(|(_, l)| *l == self).map(|(e, _)| *e)
    }

    /// Evaluates the logic given the relevant transformer results. `t` maps
    /// a transformer to its value at `c` (backward) or `b` (forward).
    pub fn holds_with<'p>(
        self,
        b: &Predicate,
        c: &Predicate,
        t: impl Fn(K) -> &'p Predicate,
    ) -> bool {
        self.failure_with(b, c, t).is_none()
    }

    /// A state witnessing failure of the inclusion, if any.
    pub fn failure_with<'p>(
        self,
        b: &Predicate,
        c: &Predicate,
        t: impl Fn(K) -> &'p Predicate,
    ) -> Option<usize> {
        match self {
            B(k, bound) => {
                let val = t(k);
                let other = match k.direction() {
                    Direction::Backward => b,
                    Direction::Forward => c,
                };
                match bound {
                    Lower => other.first_outside(val),
                    Upper => val.first_outside(other),
                }
            }
            LogicId::Union => b.first_outside(&t(K::Awp).union(t(K::Dwlp))),
            LogicId::Intersection => b.first_outside(&t(K::Awp).intersection(t(K::Dwlp))),
        }
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for LogicId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        if let Some(base) = norm.strip_suffix("-contra") {
            return base
                .parse::<LogicId>()?
                .contrapositive()
                .ok_or(Error::UnknownId {
                    kind: "logic",
                    id: s.to_string(),
                });
        }
        if let Some((_, l)) = ALIASES.iter().find(|(a, _)| *a == norm) {
            return Ok(*l);
        }
        let compact = norm.replace('-', "");
        LogicId::all()
            .into_iter()
            .find(|l| l.name().to_ascii_lowercase() == compact)
            .ok_or(Error::UnknownId {
                kind: "logic",
                id: s.to_string(),
            })
    }
}

impl Serialize for LogicId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for LogicId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
