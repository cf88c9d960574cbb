//! Bounded search for refutations of negative claims.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lang::{all_predicates, Predicate, Program, StateSpace};
use crate::par::Exec;
use crate::semantics::Relation;
use crate::topkat::{compile_kat, eval_kat, EquationId};
use crate::transformers::{inductive_transform, Direction, ProgramModel, TransformerKind as K};

use super::corpus::{exhaustive_programs, standard_space};
use super::instance::Instance;
use super::logic::{Bound, LogicId, DISTINCT_BASE, GALOIS};
use super::verdict::Witness;

/// Candidate triples examined before giving up.
pub const DEFAULT_BUDGET: u64 = 100_000;

/// Enumeration stages: `(modulus, depth, exact)`. Exact stages only visit
/// programs of exactly that depth.
const STAGES: [(u32, usize, bool); 4] = [(2, 2, false), (3, 2, false), (2, 3, true), (3, 3, true)];

/// Claims a search can refute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaimId {
    /// Some triple separates `dwpLB` from the intersection logic.
    DwpNeqIntersection,
    /// Some triple separates `awlpLB` from the union logic.
    AwlpNeqUnion,
    /// Two programs with the same relation disagree on `dwpLB`.
    TotalCorrectnessInexpressible,
    /// The outcome-conjunction equation differs from the intersection logic.
    OutcomeConjunction,
    /// Searches for a triple separating `dwlpLB` and `aspUB`.
    GaloisPc,
    /// Searches for a triple separating `awpUB` and `dslpLB`.
    GaloisPi,
    /// Two logics of the fourteen-logic catalog that differ.
    CatalogPair(LogicId, LogicId),
}

/// The seven distinct logics followed by their contrapositives.
pub fn catalog_logics() -> Vec<LogicId> {
    DISTINCT_BASE
        .iter()
        .copied()
        .chain(DISTINCT_BASE.iter().filter_map(|l| l.contrapositive()))
        .collect()
}

/// All 91 pairs of [`catalog_logics`], in catalog order.
pub fn catalog_claims() -> Vec<ClaimId> {
    let ls = catalog_logics();
    let mut out = Vec::new();
    for i in 0..ls.len() {
        for j in i + 1..ls.len() {
            out.push(ClaimId::CatalogPair(ls[i], ls[j]));
        }
    }
    out
}

fn catalog_label(l: LogicId) -> String {
    if DISTINCT_BASE.contains(&l) {
        l.name()
    } else {
        match l.contrapositive() {
            Some(base) if DISTINCT_BASE.contains(&base) => format!("{}-contra", base.name()),
            _ => l.name(),
        }
    }
}

impl ClaimId {
    /// The named claims, then the catalog pairs.
    pub fn all() -> Vec<ClaimId> {
        let mut v = vec![
            ClaimId::DwpNeqIntersection,
            ClaimId::AwlpNeqUnion,
            ClaimId::TotalCorrectnessInexpressible,
            ClaimId::OutcomeConjunction,
            ClaimId::GaloisPc,
            ClaimId::GaloisPi,
        ];
        v.extend(catalog_claims());
        v
    }

    pub fn id(self) -> String {
        match self {
            ClaimId::DwpNeqIntersection => "dwp-neq-intersection".into(),
            ClaimId::AwlpNeqUnion => "awlp-neq-union".into(),
            ClaimId::TotalCorrectnessInexpressible => "total-correctness-inexpressible".into(),
            ClaimId::OutcomeConjunction => "outcome-conjunction".into(),
            ClaimId::GaloisPc => "galois-pc".into(),
            ClaimId::GaloisPi => "galois-pi".into(),
            ClaimId::CatalogPair(a, b) => {
                format!("appendixC:{}-vs-{}", catalog_label(a), catalog_label(b))
            }
        }
    }

    /// The two logics a witness must separate, for logic-pair claims.
    pub fn logic_pair(self) -> Option<(LogicId, LogicId)> {
        Some(match self {
            ClaimId::DwpNeqIntersection => {
                (LogicId::Bound(K::Dwp, Bound::Lower), LogicId::Intersection)
            }
            ClaimId::AwlpNeqUnion => (LogicId::Bound(K::Awlp, Bound::Lower), LogicId::Union),
            ClaimId::GaloisPc => GALOIS[0],
            ClaimId::GaloisPi => GALOIS[1],
            ClaimId::CatalogPair(a, b) => (a, b),
            _ => return None,
        })
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownId {
            kind: "claim",
            id: s.to_string(),
        };
        let t = s.trim();
        if let Some(rest) = t
            .strip_prefix("appendixC:")
            .or_else(|| t.strip_prefix("appendixc:"))
        {
            let (a, b) = rest.split_once("-vs-").ok_or_else(unknown)?;
            let (a, b): (LogicId, LogicId) = (a.parse()?, b.parse()?);
            let ls = catalog_logics();
            let (i, j) = match (
                ls.iter().position(|l| *l == a),
                ls.iter().position(|l| *l == b),
            ) {
                (Some(i), Some(j)) if i != j => (i, j),
                _ => return Err(unknown()),
            };
            return Ok(ClaimId::CatalogPair(ls[i.min(j)], ls[i.max(j)]));
        }
        let norm = t.to_ascii_lowercase().replace('_', "-");
        ClaimId::all()
            .into_iter()
            .take(6)
            .find(|c| c.id() == norm)
            .ok_or_else(unknown)
    }
}

impl Serialize for ClaimId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.id())
    }
}

impl<'de> Deserialize<'de> for ClaimId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "result")]
pub enum SearchOutcome {
    Found {
        witness: Witness,
        examined: u64,
    },
    NotFound {
        examined: u64,
        budget_exhausted: bool,
    },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SearchOutcome::Found { witness, .. } => Some(witness),
            SearchOutcome::NotFound { .. } => None,
        }
    }

    pub fn examined(&self) -> u64 {
        match self {
            SearchOutcome::Found { examined, .. } | SearchOutcome::NotFound { examined, .. } => {
                *examined
            }
        }
    }
}

/// A raw hit: program index within the stage, pre and post indices, and for
/// relational claims the index of the earlier, relationally equal program.
struct Hit {
    program: usize,
    b: usize,
    c: usize,
    other: Option<usize>,
}

struct Stage {
    space: StateSpace,
    programs: Vec<Program>,
    preds: Vec<Predicate>,
}

impl Stage {
    fn build(modulus: u32, depth: usize, exact: bool, max_programs: usize) -> Result<Stage> {
        let space = standard_space(1, modulus)?;
        let programs: Vec<Program> = exhaustive_programs(&space, depth, false)
            .into_iter()
            .filter(|p| !exact || p.depth() == depth)
            .take(max_programs)
            .collect();
        let preds = all_predicates(space.size()).collect();
        Ok(Stage {
            space,
            programs,
            preds,
        })
    }

    fn per_program(&self) -> u64 {
        (self.preds.len() * self.preds.len()) as u64
    }
}

/// Searches stages in canonical order for a triple refuting `claim`,
/// examining at most `budget` candidate triples. Every hit is re-checked
/// with the inductive transformers and the compiled KAT term.
pub fn find_counterexample(claim: ClaimId, budget: u64, exec: Exec) -> Result<SearchOutcome> {
    let mut offset = 0u64;
    for (modulus, depth, exact) in STAGES {
        if offset >= budget {
            break;
        }
        let np = 1u64 << (modulus as u64);
        let per = np * np;
        let remaining = budget - offset;
        let max_programs = remaining.div_ceil(per) as usize;
        let stage = Stage::build(modulus, depth, exact, max_programs)?;
        if let Some(hit) = search_stage(claim, &stage, remaining, exec)? {
            let examined =
                offset + hit.program as u64 * per + (hit.b as u64) * np + hit.c as u64 + 1;
            let witness = verify(claim, &stage, &hit)?;
            return Ok(SearchOutcome::Found { witness, examined });
        }
        let total = stage.programs.len() as u64 * stage.per_program();
        offset += total.min(remaining);
    }
    Ok(SearchOutcome::NotFound {
        examined: offset.min(budget),
        budget_exhausted: offset >= budget,
    })
}

fn search_stage(claim: ClaimId, stage: &Stage, remaining: u64, exec: Exec) -> Result<Option<Hit>> {
    let np = stage.preds.len();
    let per = stage.per_program();
    let firsts = match claim {
        ClaimId::TotalCorrectnessInexpressible => Some(first_by_relation(stage, exec)?),
        _ => None,
    };
    let found = exec.find_first(stage.programs.len(), |i| {
        let p = &stage.programs[i];
        let inst = match Instance::new(&stage.space, p, &stage.preds) {
            Ok(inst) => inst,
            Err(e) => return Some(Err(e)),
        };
        let earlier = match &firsts {
            Some((ids, models)) => {
                let j = ids[i];
                if j == i {
                    return None;
                }
                Some((
                    j,
                    Instance::with_model(
                        &stage.space,
                        &stage.programs[j],
                        &stage.preds,
                        models[j].clone(),
                    ),
                ))
            }
            None => None,
        };
        for b in 0..np {
            for c in 0..np {
                if i as u64 * per + (b * np + c) as u64 >= remaining {
                    return None;
                }
                let hit = match claim {
                    ClaimId::OutcomeConjunction => {
                        match EquationId::OutcomeConjunction.check_relation(
                            &stage.preds[b],
                            inst.model.relation(),
                            &stage.preds[c],
                        ) {
                            Ok(e) => e != inst.holds(LogicId::Intersection, b, c),
                            Err(err) => return Some(Err(err)),
                        }
                    }
                    ClaimId::TotalCorrectnessInexpressible => {
                        let (_, other) = earlier.as_ref().expect("relation index");
                        let l = LogicId::Bound(K::Dwp, Bound::Lower);
                        inst.holds(l, b, c) != other.holds(l, b, c)
                    }
                    _ => {
                        let (l1, l2) = claim.logic_pair().expect("logic claim");
                        inst.holds(l1, b, c) != inst.holds(l2, b, c)
                    }
                };
                if hit {
                    return Some(Ok(Hit {
                        program: i,
                        b,
                        c,
                        other: earlier.as_ref().map(|(j, _)| *j),
                    }));
                }
            }
        }
        None
    });
    found.map(|(_, r)| r).transpose()
}

/// For each program, the index of the first program with the same relation,
/// together with every program's model.
fn first_by_relation(stage: &Stage, exec: Exec) -> Result<(Vec<usize>, Vec<ProgramModel>)> {
    let models: Vec<ProgramModel> = exec
        .map(&stage.programs, |p| ProgramModel::new(p, &stage.space))
        .into_iter()
        .collect::<Result<_>>()?;
    let mut seen: HashMap<&Relation, usize> = HashMap::new();
    let ids = models
        .iter()
        .enumerate()
        .map(|(i, m)| *seen.entry(m.relation()).or_insert(i))
        .collect();
    Ok((ids, models))
}

/// Transformer values from the inductive rules, indexed by kind, with
/// backward kinds applied to `c` and forward kinds to `b`.
fn inductive_values(
    p: &Program,
    space: &StateSpace,
    b: &Predicate,
    c: &Predicate,
) -> Vec<Predicate> {
    K::ALL
        .iter()
        .map(|&k| {
            let arg = match k.direction() {
                Direction::Backward => c,
                Direction::Forward => b,
            };
            inductive_transform(k, p, space, arg)
        })
        .collect()
}

fn inductive_holds(l: LogicId, vals: &[Predicate], b: &Predicate, c: &Predicate) -> bool {
    l.holds_with(b, c, |k| &vals[k.index()])
}

fn inductive_failure(
    l: LogicId,
    vals: &[Predicate],
    b: &Predicate,
    c: &Predicate,
) -> Option<usize> {
    l.failure_with(b, c, |k| &vals[k.index()])
}

fn verify(claim: ClaimId, stage: &Stage, hit: &Hit) -> Result<Witness> {
    let sp = &stage.space;
    let p = &stage.programs[hit.program];
    let (b, c) = (&stage.preds[hit.b], &stage.preds[hit.c]);
    let vals = inductive_values(p, sp, b, c);
    let mismatch = || {
        Error::Invariant(format!(
            "witness for {claim} did not survive re-verification"
        ))
    };
    let base = Witness::new(sp, p, String::new()).triple(sp, b, c);
    match claim {
        ClaimId::OutcomeConjunction => {
            let rel = eval_kat(&compile_kat(p, sp), sp.size())?;
            let e = EquationId::OutcomeConjunction.check_relation(b, &rel, c)?;
            let l = inductive_holds(LogicId::Intersection, &vals, b, c);
            if e == l {
                return Err(mismatch());
            }
            let state = inductive_failure(LogicId::Intersection, &vals, b, c);
            Ok(Witness {
                detail: format!("OUTCOME_CONJUNCTION = {e} but intersection = {l}"),
                ..base.state(sp, state)
            })
        }
        ClaimId::TotalCorrectnessInexpressible => {
            let q = &stage.programs[hit.other.ok_or_else(mismatch)?];
            let rp = eval_kat(&compile_kat(p, sp), sp.size())?;
            let rq = eval_kat(&compile_kat(q, sp), sp.size())?;
            let qvals = inductive_values(q, sp, b, c);
            let l = LogicId::Bound(K::Dwp, Bound::Lower);
            let (hp, hq) = (
                inductive_holds(l, &vals, b, c),
                inductive_holds(l, &qvals, b, c),
            );
            if rp != rq || hp == hq {
                return Err(mismatch());
            }
            let state =
                inductive_failure(l, &vals, b, c).or_else(|| inductive_failure(l, &qvals, b, c));
            Ok(Witness {
                detail: format!(
                    "same relation, but dwpLB is {hp} for the program and {hq} for the other"
                ),
                ..base.other(sp, q).state(sp, state)
            })
        }
        _ => {
            let (l1, l2) = claim.logic_pair().ok_or_else(mismatch)?;
            let (h1, h2) = (
                inductive_holds(l1, &vals, b, c),
                inductive_holds(l2, &vals, b, c),
            );
            if h1 == h2 {
                return Err(mismatch());
            }
            let state =
                inductive_failure(l1, &vals, b, c).or_else(|| inductive_failure(l2, &vals, b, c));
            Ok(Witness {
                detail: format!("{l1} = {h1} but {l2} = {h2}"),
                ..base.state(sp, state)
            })
        }
    }
}
