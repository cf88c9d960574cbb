//! Corpus-wide checks of the theorem catalog.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lang::{Predicate, Program};
use crate::par::Exec;
use crate::semantics::collecting;
use crate::topkat::{compile_kat, eval_kat};
use crate::transformers::{
    inductive_transform, reachability_class, transform_by_classes, ProgramModel,
    TransformerKind as K,
};

use super::corpus::{Corpus, CorpusItem};
use super::instance::Instance;
use super::logic::{Bound, LogicId, BRIDGES, GALOIS, IMPLICATIONS, IN_BETWEEN_IMPLICATIONS};
use super::verdict::{Stats, Verdict, Witness};

type LogicPair = (LogicId, LogicId);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TheoremId {
    Ordering,
    Contrapositive,
    GaloisPc,
    GaloisPi,
    TerminationCollapse,
    MayTermination,
    ReachabilityCollapse,
    DeterminismCollapse,
    ReversibilityCollapse,
    BranchingCollapse,
    Bridges,
    ComboIdentities,
    Fig4Implications,
    RemarkDiverging,
    OracleAgreement,
    ClassConsistency,
    KatCompile,
    ForcedGalois,
}

impl TheoremId {
    pub const ALL: [TheoremId; 18] = [
        TheoremId::Ordering,
        TheoremId::Contrapositive,
        TheoremId::GaloisPc,
        TheoremId::GaloisPi,
        TheoremId::TerminationCollapse,
        TheoremId::MayTermination,
        TheoremId::ReachabilityCollapse,
        TheoremId::DeterminismCollapse,
        TheoremId::ReversibilityCollapse,
        TheoremId::BranchingCollapse,
        TheoremId::Bridges,
        TheoremId::ComboIdentities,
        TheoremId::Fig4Implications,
        TheoremId::RemarkDiverging,
        TheoremId::OracleAgreement,
        TheoremId::ClassConsistency,
        TheoremId::KatCompile,
        TheoremId::ForcedGalois,
    ];

    /// The six assumption-guarded collapse theorems.
    pub const COLLAPSES: [TheoremId; 6] = [
        TheoremId::TerminationCollapse,
        TheoremId::MayTermination,
        TheoremId::ReachabilityCollapse,
        TheoremId::DeterminismCollapse,
        TheoremId::ReversibilityCollapse,
        TheoremId::BranchingCollapse,
    ];

    pub fn id(self) -> &'static str {
        match self {
            TheoremId::Ordering => "ORDERING",
            TheoremId::Contrapositive => "CONTRAPOSITIVE",
            TheoremId::GaloisPc => "GALOIS_PC",
            TheoremId::GaloisPi => "GALOIS_PI",
            TheoremId::TerminationCollapse => "TERMINATION_COLLAPSE",
            TheoremId::MayTermination => "MAY_TERMINATION",
            TheoremId::ReachabilityCollapse => "REACHABILITY_COLLAPSE",
            TheoremId::DeterminismCollapse => "DETERMINISM_COLLAPSE",
            TheoremId::ReversibilityCollapse => "REVERSIBILITY_COLLAPSE",
            TheoremId::BranchingCollapse => "BRANCHING_COLLAPSE",
            TheoremId::Bridges => "BRIDGES",
            TheoremId::ComboIdentities => "COMBO_IDENTITIES",
            TheoremId::Fig4Implications => "FIG4_IMPLICATIONS",
            TheoremId::RemarkDiverging => "REMARK_DIVERGING",
            TheoremId::OracleAgreement => "ORACLE_AGREEMENT",
            TheoremId::ClassConsistency => "CLASS_CONSISTENCY",
            TheoremId::KatCompile => "KAT_COMPILE",
            TheoremId::ForcedGalois => "FORCED_GALOIS",
        }
    }

    pub fn is_collapse(self) -> bool {
        Self::COLLAPSES.contains(&self)
    }

    pub fn description(self) -> &'static str {
        match self {
            TheoremId::Ordering => "dwp ⊆ awp, dwlp ⊆ awlp and their sp counterparts",
            TheoremId::Contrapositive => "T(p, q) = ¬T'(p, ¬q) for contrapositive pairs",
            TheoremId::GaloisPc => "b ⊆ dwlp(p, c) iff asp(p, b) ⊆ c",
            TheoremId::GaloisPi => "awp(p, c) ⊆ b iff c ⊆ dslp(p, b)",
            TheoremId::TerminationCollapse => {
                "no divergence from b: awp/awlp and dwp/dwlp logics agree"
            }
            TheoremId::MayTermination => "may-termination on b: awp and awlp logics agree",
            TheoremId::ReachabilityCollapse => "c reachable: asp/aslp and dsp/dslp logics agree",
            TheoremId::DeterminismCollapse => "choice-free: angelic and demonic wp logics agree",
            TheoremId::ReversibilityCollapse => {
                "injective into c: angelic and demonic sp logics agree"
            }
            TheoremId::BranchingCollapse => {
                "no branching divergence on b: in-between logics collapse"
            }
            TheoremId::Bridges => "TopKAT equations decide their logics",
            TheoremId::ComboIdentities => {
                "dsp = asp ∩ dslp, aslp = asp ∪ dslp, reachability classes"
            }
            TheoremId::Fig4Implications => {
                "taxonomy implications, contrapositives and Galois pairs"
            }
            TheoremId::RemarkDiverging => {
                "p and p [] diverge share collecting semantics but not awlp"
            }
            TheoremId::OracleAgreement => "inductive rules equal the semantic definitions",
            TheoremId::ClassConsistency => "class anatomy reproduces every transformer",
            TheoremId::KatCompile => "compiled KAT term denotes the program relation",
            TheoremId::ForcedGalois => "deterministic and reversible: awlpLB iff dspUB",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|t| t.id() == norm)
            .ok_or(Error::UnknownId {
                kind: "theorem",
                id: s.to_string(),
            })
    }
}

/// How assumption filters are applied by the collapse theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    /// Per-triple filters restricted to the pre- or postcondition, comparing
    /// logics.
    #[default]
    Scoped,
    /// Whole-program filters, comparing transformer values.
    Strict,
}

/// Result of one theorem on one corpus item.
#[derive(Debug, Clone, Default)]
struct Outcome {
    stats: Stats,
    violation: Option<Witness>,
}

impl Outcome {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.stats.checks += 1;
        if !ok && self.violation.is_none() {
            self.violation = Some(witness());
        }
    }

    fn filtered(&mut self, inside: bool, ok: bool, witness: impl FnOnce() -> Witness) {
        self.stats.checks += 1;
        if inside {
            self.stats.filtered_in += 1;
            if !ok && self.violation.is_none() {
                self.violation = Some(witness());
            }
        } else {
            self.stats.filtered_out += 1;
            if !ok {
                self.stats.outside_violations += 1;
                if self.stats.outside_witness.is_none() {
                    self.stats.outside_witness = Some(witness());
                }
            }
        }
    }
}

struct Ctx<'i, 'a> {
    inst: &'i Instance<'a>,
}

impl<'i, 'a> Ctx<'i, 'a> {
    fn n(&self) -> usize {
        self.inst.len()
    }

    fn pred(&self, i: usize) -> &Predicate {
        &self.inst.preds[i]
    }

    fn v(&self, k: K, q: usize) -> &Predicate {
        self.inst.value(k, q)
    }

    fn holds(&self, l: LogicId, b: usize, c: usize) -> bool {
        self.inst.holds(l, b, c)
    }

    fn base(&self, detail: impl Into<String>) -> Witness {
        Witness::new(self.inst.space, self.inst.program, detail)
    }

    fn triple(&self, b: usize, c: usize, detail: impl Into<String>) -> Witness {
        let sp = self.inst.space;
        self.base(detail).triple(sp, self.pred(b), self.pred(c))
    }

    /// Witness for `l1 ⟺ l2` failing at `(b, c)`.
    fn pair(&self, l1: LogicId, l2: LogicId, b: usize, c: usize) -> Witness {
        let state = self
            .inst
            .failure(l1, b, c)
            .or_else(|| self.inst.failure(l2, b, c));
        self.triple(
            b,
            c,
            format!(
                "{l1} = {} but {l2} = {}",
                self.holds(l1, b, c),
                self.holds(l2, b, c)
            ),
        )
        .state(self.inst.space, state)
    }

    fn pred_witness(&self, q: usize, detail: impl Into<String>, state: Option<usize>) -> Witness {
        let sp = self.inst.space;
        self.base(detail).post(sp, self.pred(q)).state(sp, state)
    }

    fn full(&self) -> Predicate {
        Predicate::full(self.inst.space.size())
    }

    fn empty(&self) -> Predicate {
        Predicate::empty(self.inst.space.size())
    }

    fn model(&self) -> &ProgramModel {
        &self.inst.model
    }
}

fn lb(k: K) -> LogicId {
    LogicId::Bound(k, Bound::Lower)
}

fn ub(k: K) -> LogicId {
    LogicId::Bound(k, Bound::Upper)
}

const ORDER: [(K, K); 8] = [
    (K::Dwp, K::Dwlp),
    (K::Dwlp, K::Awlp),
    (K::Dwp, K::Awp),
    (K::Awp, K::Awlp),
    (K::Dsp, K::Asp),
    (K::Asp, K::Aslp),
    (K::Dsp, K::Dslp),
    (K::Dslp, K::Aslp),
];

fn check_item(id: TheoremId, cx: &Ctx, mode: CheckMode) -> Result<Outcome> {
    let mut out = Outcome::default();
    out.stats.items = 1;
    let n = cx.n();
    let sp = cx.inst.space;
    let p = cx.inst.program;
    let model = cx.model();
    match id {
        TheoremId::Ordering => {
            for q in 0..n {
                for (a, b) in ORDER {
                    let bad = cx.v(a, q).first_outside(cx.v(b, q));
                    out.check(bad.is_none(), || {
                        cx.pred_witness(q, format!("{a} ⊄ {b}"), bad)
                    });
                }
            }
        }
        TheoremId::Contrapositive => {
            for q in 0..n {
                let Some(nq) = cx.inst.complement_of(q) else {
                    continue;
                };
                for k in K::ALL {
                    let other = cx.v(k.contrapositive(), nq).complement();
                    let bad = cx.v(k, q).first_difference(&other);
                    out.check(bad.is_none(), || {
                        cx.pred_witness(q, format!("{k}(q) ≠ ¬{}(¬q)", k.contrapositive()), bad)
                    });
                }
                let (d, a) = (cx.v(K::Dsp, q), cx.v(K::Aslp, nq));
                let ok = d.is_disjoint(a) && d.union(a).is_full();
                out.check(ok, || {
                    cx.pred_witness(q, "dsp(q) and aslp(¬q) do not partition Σ", None)
                });
            }
        }
        TheoremId::GaloisPc | TheoremId::GaloisPi => {
            let (l1, l2) = GALOIS[usize::from(id == TheoremId::GaloisPi)];
            for b in 0..n {
                for c in 0..n {
                    out.check(cx.holds(l1, b, c) == cx.holds(l2, b, c), || {
                        cx.pair(l1, l2, b, c)
                    });
                }
            }
        }
        TheoremId::Fig4Implications => {
            let logics = LogicId::all();
            for b in 0..n {
                for c in 0..n {
                    for (l1, l2) in IMPLICATIONS.iter().chain(&IN_BETWEEN_IMPLICATIONS) {
                        let ok = !cx.holds(*l1, b, c) || cx.holds(*l2, b, c);
                        out.check(ok, || cx.triple(b, c, format!("{l1} does not imply {l2}")));
                    }
                    for (l1, l2) in GALOIS {
                        out.check(cx.holds(l1, b, c) == cx.holds(l2, b, c), || {
                            cx.pair(l1, l2, b, c)
                        });
                    }
                    let (Some(nb), Some(nc)) = (cx.inst.complement_of(b), cx.inst.complement_of(c))
                    else {
                        continue;
                    };
                    for l in &logics {
                        let Some(lc) = l.contrapositive() else {
                            continue;
                        };
                        let ok = cx.holds(*l, b, c) == cx.holds(lc, nb, nc);
                        out.check(ok, || {
                            cx.triple(b, c, format!("{l} differs from {lc} on complements"))
                        });
                    }
                }
            }
        }
        TheoremId::Bridges => {
            for b in 0..n {
                for c in 0..n {
                    for (eq, l) in BRIDGES {
                        let e = eq.check_relation(cx.pred(b), model.relation(), cx.pred(c))?;
                        out.check(e == cx.holds(l, b, c), || {
                            cx.triple(b, c, format!("{eq} = {e} but {l} = {}", !e))
                        });
                    }
                }
            }
        }
        TheoremId::ComboIdentities => {
            for q in 0..n {
                let (asp, dslp) = (cx.v(K::Asp, q), cx.v(K::Dslp, q));
                let (dsp, aslp) = (cx.v(K::Dsp, q), cx.v(K::Aslp, q));
                let bad = dsp.first_difference(&asp.intersection(dslp));
                out.check(bad.is_none(), || {
                    cx.pred_witness(q, "dsp ≠ asp ∩ dslp", bad)
                });
                let bad = aslp.first_difference(&asp.union(dslp));
                out.check(bad.is_none(), || {
                    cx.pred_witness(q, "aslp ≠ asp ∪ dslp", bad)
                });
                for t in 0..sp.size() {
                    let expected = if dsp.contains(t) {
                        1
                    } else if asp.contains(t) {
                        2
                    } else if dslp.contains(t) {
                        3
                    } else if !aslp.contains(t) {
                        4
                    } else {
                        0
                    };
                    let got = reachability_class(model, cx.pred(q), t);
                    out.check(got == expected, || {
                        cx.pred_witness(q, format!("class {got} read back as {expected}"), Some(t))
                    });
                }
            }
        }
        TheoremId::RemarkDiverging => {
            let q = Program::choice(p.clone(), Program::Diverge);
            let mq = ProgramModel::new(&q, sp)?;
            let other = |d: &str| cx.base(d.to_string()).other(sp, &q);
            out.check(mq.relation() == model.relation(), || {
                other("relations differ")
            });
            for b in 0..n {
                let ok = collecting(p, sp, cx.pred(b)) == collecting(&q, sp, cx.pred(b));
                out.check(ok, || {
                    other("collecting semantics differ").pre(sp, cx.pred(b))
                });
            }
            for c in 0..n {
                let awlp = mq.transform(K::Awlp, cx.pred(c));
                out.check(awlp.is_full(), || {
                    other("awlp(p [] diverge, c) ≠ Σ").post(sp, cx.pred(c))
                });
                out.filtered(false, awlp == *cx.v(K::Awlp, c), || {
                    other("awlp distinguishes the programs").post(sp, cx.pred(c))
                });
            }
        }
        TheoremId::OracleAgreement => {
            for q in 0..n {
                for k in K::ALL {
                    let ind = inductive_transform(k, p, sp, cx.pred(q));
                    let bad = ind.first_difference(cx.v(k, q));
                    out.check(bad.is_none(), || {
                        cx.pred_witness(q, format!("{k}: inductive ≠ oracle"), bad)
                    });
                }
            }
        }
        TheoremId::ClassConsistency => {
            for q in 0..n {
                for k in K::ALL {
                    let got = transform_by_classes(model, k, cx.pred(q))?;
                    let bad = got.first_difference(cx.v(k, q));
                    out.check(bad.is_none(), || {
                        cx.pred_witness(q, format!("{k}: classes ≠ oracle"), bad)
                    });
                }
            }
        }
        TheoremId::KatCompile => {
            let r = eval_kat(&compile_kat(p, sp), sp.size())?;
            out.check(&r == model.relation(), || {
                cx.base("compiled term ≠ relation")
            });
        }
        TheoremId::ForcedGalois => {
            let inside =
                p.is_choice_free() && (0..sp.size()).all(|t| model.preimage(t).count() <= 1);
            let (l1, l2) = (lb(K::Awlp), ub(K::Dsp));
            for b in 0..n {
                for c in 0..n {
                    let ok = cx.holds(l1, b, c) == cx.holds(l2, b, c);
                    out.filtered(inside, ok, || cx.pair(l1, l2, b, c));
                }
            }
        }
        _ => collapse(id, cx, mode, &mut out),
    }
    Ok(out)
}

fn collapse(id: TheoremId, cx: &Ctx, mode: CheckMode, out: &mut Outcome) {
    let n = cx.n();
    let p = cx.inst.program;
    let model = cx.model();
    let may = model.may_diverge();
    let must = model.must_diverge();
    let codomain = model.relation().codomain();
    let full = cx.full();
    let empty = cx.empty();
    let injective_on = |c: &Predicate| c.iter().all(|t| model.preimage(t).count() <= 1);

    // Pairs of logics compared per triple (scoped) and of transformers
    // compared per predicate (strict).
    let (pairs, equalities): (Vec<LogicPair>, Vec<(K, K)>) = match id {
        TheoremId::TerminationCollapse => (
            vec![(lb(K::Awp), lb(K::Awlp)), (lb(K::Dwp), lb(K::Dwlp))],
            vec![(K::Awp, K::Awlp), (K::Dwp, K::Dwlp)],
        ),
        TheoremId::MayTermination => (vec![(lb(K::Awp), lb(K::Awlp))], vec![(K::Awp, K::Awlp)]),
        TheoremId::ReachabilityCollapse => (
            vec![(lb(K::Asp), lb(K::Aslp)), (lb(K::Dsp), lb(K::Dslp))],
            vec![(K::Asp, K::Aslp), (K::Dsp, K::Dslp)],
        ),
        TheoremId::DeterminismCollapse => (
            vec![
                (lb(K::Awp), lb(K::Dwp)),
                (ub(K::Awp), ub(K::Dwp)),
                (lb(K::Awlp), lb(K::Dwlp)),
                (ub(K::Awlp), ub(K::Dwlp)),
            ],
            vec![(K::Awp, K::Dwp), (K::Awlp, K::Dwlp)],
        ),
        TheoremId::ReversibilityCollapse => (
            vec![(lb(K::Asp), lb(K::Dsp)), (lb(K::Aslp), lb(K::Dslp))],
            vec![(K::Asp, K::Dsp), (K::Aslp, K::Dslp)],
        ),
        TheoremId::BranchingCollapse => (
            vec![
                (lb(K::Dwp), LogicId::Intersection),
                (lb(K::Awlp), LogicId::Union),
            ],
            Vec::new(),
        ),
        _ => unreachable!("not a collapse theorem"),
    };

    let awp_full = model.transform(K::Awp, &full);
    let scoped_filter = |b: usize, c: usize| -> bool {
        let (b, c) = (cx.pred(b), cx.pred(c));
        match id {
            TheoremId::TerminationCollapse => b.is_disjoint(may),
            TheoremId::MayTermination => b.is_subset(&awp_full),
            TheoremId::ReachabilityCollapse => c.is_subset(&codomain),
            TheoremId::DeterminismCollapse => p.is_choice_free(),
            TheoremId::ReversibilityCollapse => injective_on(c),
            _ => b.intersection(may) == b.intersection(&must),
        }
    };

    match mode {
        CheckMode::Scoped => {
            for b in 0..n {
                for c in 0..n {
                    let inside = scoped_filter(b, c);
                    for &(l1, l2) in &pairs {
                        let ok = cx.holds(l1, b, c) == cx.holds(l2, b, c);
                        out.filtered(inside, ok, || cx.pair(l1, l2, b, c));
                    }
                }
            }
        }
        CheckMode::Strict => {
            let inside = match id {
                TheoremId::TerminationCollapse => may.is_empty(),
                TheoremId::MayTermination => awp_full.is_full(),
                TheoremId::ReachabilityCollapse => codomain.is_full(),
                TheoremId::DeterminismCollapse => p.is_choice_free(),
                TheoremId::ReversibilityCollapse => injective_on(&full),
                _ => *may == must,
            };
            for q in 0..n {
                for &(a, b) in &equalities {
                    let bad = cx.v(a, q).first_difference(cx.v(b, q));
                    out.filtered(inside, bad.is_none(), || {
                        cx.pred_witness(q, format!("{a} ≠ {b}"), bad)
                    });
                }
                if id == TheoremId::BranchingCollapse {
                    let meet = cx.v(K::Awp, q).intersection(cx.v(K::Dwlp, q));
                    let join = cx.v(K::Awp, q).union(cx.v(K::Dwlp, q));
                    let bad = cx
                        .v(K::Dwp, q)
                        .first_difference(&meet)
                        .or_else(|| cx.v(K::Awlp, q).first_difference(&join));
                    out.filtered(inside, bad.is_none(), || {
                        cx.pred_witness(q, "dwp ≠ awp ∩ dwlp or awlp ≠ awp ∪ dwlp", bad)
                    });
                }
            }
        }
    }

    // Whole-program characterizations, checked unconditionally.
    match id {
        TheoremId::TerminationCollapse => {
            let ok = model.transform(K::Dwp, &full).is_full() == may.is_empty();
            out.check(ok, || cx.base("dwp(p, Σ) = Σ disagrees with termination"));
        }
        TheoremId::MayTermination => {
            let ok = awp_full.is_full() == model.transform(K::Awlp, &empty).is_empty();
            out.check(ok, || {
                cx.base(format!(
                    "awp(p, Σ) = Σ is {} but awlp(p, ∅) = ∅ is {}",
                    awp_full.is_full(),
                    model.transform(K::Awlp, &empty).is_empty()
                ))
            });
        }
        TheoremId::ReachabilityCollapse => {
            let facts = [
                model.transform(K::Asp, &full).is_full(),
                model.transform(K::Dsp, &full).is_full(),
                model.transform(K::Dslp, &empty).is_empty(),
                model.transform(K::Aslp, &empty).is_empty(),
                codomain.is_full(),
            ];
            let ok = facts.iter().all(|&f| f == facts[0]);
            out.check(ok, || {
                cx.base(format!(
                    "reachability characterizations disagree: {facts:?}"
                ))
            });
        }
        _ => {}
    }
}

fn check_corpus_item(
    ids: &[TheoremId],
    item: &CorpusItem,
    mode: CheckMode,
) -> Result<Vec<Outcome>> {
    let inst = Instance::new(&item.space, &item.program, &item.preds)?;
    let cx = Ctx { inst: &inst };
    ids.iter().map(|&id| check_item(id, &cx, mode)).collect()
}

/// Runs every theorem in `ids` over `corpus`, one verdict per theorem in the
/// order given. Witnesses are the first violation in corpus order.
pub fn check_theorems(
    ids: &[TheoremId],
    corpus: &Corpus,
    mode: CheckMode,
    exec: Exec,
) -> Result<Vec<Verdict>> {
    let per_item = exec.map(&corpus.items, |item| check_corpus_item(ids, item, mode));
    let mut verdicts: Vec<Verdict> = ids
        .iter()
        .map(|id| Verdict {
            claim: id.id().to_string(),
            holds: true,
            witness: None,
            stats: Stats::default(),
        })
        .collect();
    for outcomes in per_item {
        for (v, o) in verdicts.iter_mut().zip(outcomes?) {
            v.stats.merge(o.stats);
            if v.witness.is_none() && o.violation.is_some() {
                v.holds = false;
                v.witness = o.violation;
            }
        }
    }
    Ok(verdicts)
}

pub fn check_theorem(
    id: TheoremId,
    corpus: &Corpus,
    mode: CheckMode,
    exec: Exec,
) -> Result<Verdict> {
    Ok(check_theorems(&[id], corpus, mode, exec)?.remove(0))
}
