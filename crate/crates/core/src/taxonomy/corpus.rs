//! Program and predicate generators.

use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lang::{all_predicates, CmpOp, Expr, Guard, Predicate, Program, StateSpace};
use crate::par::Exec;
use crate::topkat::random_predicate;

/// Seed used by randomized corpora when none is given.
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Mode {
    Exhaustive,
    Random { seed: u64, count: usize },
}

/// Parameters for [`generate_programs`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerateConfig {
    pub vars: usize,
    pub modulus: u32,
    pub max_depth: usize,
    pub loops: bool,
    pub mode: Mode,
}

fn var_names(n: usize) -> Vec<String> {
    ["x", "y", "z", "w"]
        .iter()
        .take(n)
        .map(|s| s.to_string())
        .chain((4..n).map(|i| format!("v{i}")))
        .collect()
}

/// The space with `vars` variables `x, y, ...` over `Z_modulus`.
pub fn standard_space(vars: usize, modulus: u32) -> Result<StateSpace> {
    StateSpace::new(&var_names(vars), modulus)
}

/// Atomic programs: `skip`, `diverge`, `v := k`, `v := w`.
pub fn leaves(space: &StateSpace) -> Vec<Program> {
    let n = space.vars().len();
    let mut out = vec![Program::Skip, Program::Diverge];
    for v in 0..n {
        for k in 0..space.modulus() {
            out.push(Program::assign(v, Expr::Const(k)));
        }
        for w in 0..n {
            out.push(Program::assign(v, Expr::Var(w)));
        }
    }
    out
}

/// Guards used by the exhaustive enumeration.
pub fn guards(space: &StateSpace) -> Vec<Guard> {
    let n = space.vars().len();
    let mut out = vec![Guard::True];
    for v in 0..n {
        for k in 0..space.modulus() {
            out.push(Guard::var_eq(v, k));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (Expr::Var(i), Expr::Var(j));
            out.push(Guard::cmp(CmpOp::Eq, a.clone(), b.clone()));
            out.push(Guard::cmp(CmpOp::Lt, a.clone(), b.clone()));
            out.push(Guard::cmp(CmpOp::Lt, b, a));
        }
    }
    out
}

/// All programs of depth at most `max_depth`, by depth, then constructor
/// (`;`, `[]`, `if` per guard, `while` per guard), then operands.
pub fn exhaustive_programs(space: &StateSpace, max_depth: usize, loops: bool) -> Vec<Program> {
    let mut all = Vec::new();
    if max_depth == 0 {
        return all;
    }
    all.extend(leaves(space));
    let gs = guards(space);
    for d in 2..=max_depth {
        let prev = all.clone();
        let top = d - 1;
        let pairs = || {
            prev.iter().flat_map(|a| {
                prev.iter()
                    .filter(move |b| a.depth() == top || b.depth() == top)
                    .map(move |b| (a, b))
            })
        };
        all.extend(pairs().map(|(a, b)| Program::seq(a.clone(), b.clone())));
        all.extend(pairs().map(|(a, b)| Program::choice(a.clone(), b.clone())));
        for g in &gs {
            all.extend(pairs().map(|(a, b)| Program::ite(g.clone(), a.clone(), b.clone())));
        }
        if loops {
            for g in &gs {
                all.extend(
                    prev.iter()
                        .filter(|a| a.depth() == top)
                        .map(|a| Program::while_loop(g.clone(), a.clone())),
                );
            }
        }
    }
    all
}

fn random_expr<R: Rng>(rng: &mut R, space: &StateSpace, depth: usize) -> Expr {
    let n = space.vars().len();
    let atom = |rng: &mut R| {
        if rng.gen_bool(0.5) {
            Expr::Var(rng.gen_range(0..n))
        } else {
            Expr::Const(rng.gen_range(0..space.modulus()))
        }
    };
    if depth <= 1 || rng.gen_bool(0.6) {
        return atom(rng);
    }
    let (a, b) = (atom(rng), atom(rng));
    match rng.gen_range(0..3) {
        0 => Expr::add(a, b),
        1 => Expr::sub(a, b),
        _ => Expr::mul(a, b),
    }
}

fn random_guard<R: Rng>(rng: &mut R, space: &StateSpace) -> Guard {
    if rng.gen_bool(0.05) {
        return Guard::True;
    }
    let op = *[CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Le]
        .choose(rng)
        .unwrap();
    let a = random_expr(rng, space, 2);
    let b = random_expr(rng, space, 1);
    let g = Guard::cmp(op, a, b);
    if rng.gen_bool(0.1) {
        Guard::not(g)
    } else {
        g
    }
}

/// A random program of depth at most `depth`.
pub fn random_program<R: Rng>(
    rng: &mut R,
    space: &StateSpace,
    depth: usize,
    loops: bool,
) -> Program {
    if depth <= 1 || rng.gen_bool(0.25) {
        let n = space.vars().len();
        return match rng.gen_range(0..10) {
            0 => Program::Skip,
            1 => Program::Diverge,
            _ => Program::assign(rng.gen_range(0..n), random_expr(rng, space, 2)),
        };
    }
    let arms = if loops { 4 } else { 3 };
    match rng.gen_range(0..arms) {
        0 => Program::seq(
            random_program(rng, space, depth - 1, loops),
            random_program(rng, space, depth - 1, loops),
        ),
        1 => Program::choice(
            random_program(rng, space, depth - 1, loops),
            random_program(rng, space, depth - 1, loops),
        ),
        2 => Program::ite(
            random_guard(rng, space),
            random_program(rng, space, depth - 1, loops),
            random_program(rng, space, depth - 1, loops),
        ),
        _ => Program::while_loop(
            random_guard(rng, space),
            random_program(rng, space, depth - 1, loops),
        ),
    }
}

/// The rng for item `index` of a randomized corpus with `seed`.
pub fn item_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Programs described by `config`, all over [`standard_space`].
pub fn generate_programs(config: &GenerateConfig) -> Result<Vec<Program>> {
    let space = standard_space(config.vars, config.modulus)?;
    Ok(match config.mode {
        Mode::Exhaustive => exhaustive_programs(&space, config.max_depth, config.loops),
        Mode::Random { seed, count } => (0..count)
            .map(|i| {
                random_program(
                    &mut item_rng(seed, i),
                    &space,
                    config.max_depth,
                    config.loops,
                )
            })
            .collect(),
    })
}

/// A predicate pool closed under complement, containing `∅` and `Σ`:
/// every predicate when `|Σ| ≤ 4`, otherwise `samples` random ones.
pub fn predicate_pool<R: Rng>(rng: &mut R, size: usize, samples: usize) -> Vec<Predicate> {
    if size <= 4 {
        return all_predicates(size).collect();
    }
    let mut pool = vec![Predicate::empty(size), Predicate::full(size)];
    for _ in 0..samples {
        let p = random_predicate(rng, size);
        for q in [p.complement(), p] {
            if !pool.contains(&q) {
                pool.push(q);
            }
        }
    }
    pool
}

/// One program together with its space and predicate pool.
#[derive(Debug, Clone)]
pub struct CorpusItem {
    pub space: Arc<StateSpace>,
    pub program: Program,
    pub preds: Arc<Vec<Predicate>>,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub name: String,
    pub seed: Option<u64>,
    pub items: Vec<CorpusItem>,
}

/// Named corpus configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusSpec {
    /// One variable, given modulus and maximum depth, no loops, every predicate.
    Exhaustive { modulus: u32, max_depth: usize },
    /// `count` random programs with loops, each over its own small space.
    Loops { count: usize },
}

impl CorpusSpec {
    pub const SMALL_EXHAUSTIVE: CorpusSpec = CorpusSpec::Exhaustive {
        modulus: 2,
        max_depth: 3,
    };
    pub const LOOPS: CorpusSpec = CorpusSpec::Loops { count: 10_000 };

    pub fn name(self) -> String {
        match self {
            CorpusSpec::SMALL_EXHAUSTIVE => "small-exhaustive".into(),
            CorpusSpec::Exhaustive { modulus, max_depth } => {
                format!("exhaustive:{modulus}:{max_depth}")
            }
            CorpusSpec::LOOPS => "loops".into(),
            CorpusSpec::Loops { count } => format!("loops:{count}"),
        }
    }

    pub fn is_random(self) -> bool {
        matches!(self, CorpusSpec::Loops { .. })
    }

    pub fn build(self, seed: u64, exec: Exec) -> Result<Corpus> {
        match self {
            CorpusSpec::Exhaustive { modulus, max_depth } => {
                let space = Arc::new(standard_space(1, modulus)?);
                let preds: Arc<Vec<Predicate>> = Arc::new(all_predicates(space.size()).collect());
                let items = exhaustive_programs(&space, max_depth, false)
                    .into_iter()
                    .map(|program| CorpusItem {
                        space: space.clone(),
                        program,
                        preds: preds.clone(),
                    })
                    .collect();
                Ok(Corpus {
                    name: self.name(),
                    seed: None,
                    items,
                })
            }
            CorpusSpec::Loops { count } => {
                let items = exec.map_range(count, |i| loop_item(seed, i));
                Ok(Corpus {
                    name: self.name(),
                    seed: Some(seed),
                    items: items.into_iter().collect::<Result<_>>()?,
                })
            }
        }
    }
}

fn loop_item(seed: u64, index: usize) -> Result<CorpusItem> {
    let mut rng = item_rng(seed, index);
    let vars = rng.gen_range(1..=2);
    let modulus = rng.gen_range(2..=4);
    let space = standard_space(vars, modulus)?;
    let depth = rng.gen_range(2..=4);
    let program = random_program(&mut rng, &space, depth, true);
    let preds = predicate_pool(&mut rng, space.size(), 6);
    Ok(CorpusItem {
        space: Arc::new(space),
        program,
        preds: Arc::new(preds),
    })
}

impl FromStr for CorpusSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Corpus(format!("unknown corpus `{s}`"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["small-exhaustive"] => Ok(CorpusSpec::SMALL_EXHAUSTIVE),
            ["loops"] => Ok(CorpusSpec::LOOPS),
            ["loops", n] => Ok(CorpusSpec::Loops {
                count: n.parse().map_err(|_| bad())?,
            }),
            ["exhaustive", m, d] => {
                let modulus: u32 = m.parse().map_err(|_| bad())?;
                let max_depth: usize = d.parse().map_err(|_| bad())?;
                if modulus < 1 || max_depth > 3 || (max_depth == 3 && modulus > 2) {
                    return Err(Error::Corpus(format!(
                        "exhaustive corpus too large: modulus {modulus}, depth {max_depth}"
                    )));
                }
                Ok(CorpusSpec::Exhaustive { modulus, max_depth })
            }
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_one_is_the_leaves() {
        let sp = standard_space(1, 2).unwrap();
        let ps = exhaustive_programs(&sp, 1, false);
        let rendered: Vec<String> = ps.iter().map(|p| p.render(&sp)).collect();
        assert_eq!(rendered, ["skip", "diverge", "x := 0", "x := 1", "x := x"]);
    }

    #[test]
    fn exhaustive_counts_are_stable() {
        let sp = standard_space(1, 2).unwrap();
        assert_eq!(exhaustive_programs(&sp, 2, false).len(), 130);
        assert_eq!(exhaustive_programs(&sp, 3, false).len(), 84_505);
        assert!(exhaustive_programs(&sp, 3, false)
            .iter()
            .all(|p| p.depth() <= 3));
    }

    #[test]
    fn random_streams_are_reproducible() {
        let cfg = GenerateConfig {
            vars: 2,
            modulus: 3,
            max_depth: 4,
            loops: true,
            mode: Mode::Random { seed: 7, count: 50 },
        };
        assert_eq!(
            generate_programs(&cfg).unwrap(),
            generate_programs(&cfg).unwrap()
        );
        let other = GenerateConfig {
            mode: Mode::Random { seed: 8, count: 50 },
            ..cfg
        };
        assert_ne!(
            generate_programs(&cfg).unwrap(),
            generate_programs(&other).unwrap()
        );
    }

    #[test]
    fn pools_are_closed_under_complement() {
        let mut rng = item_rng(1, 0);
        let pool = predicate_pool(&mut rng, 16, 6);
        for p in &pool {
            assert!(pool.contains(&p.complement()));
        }
        assert_eq!(predicate_pool(&mut rng, 4, 6).len(), 16);
    }

    #[test]
    fn spec_names_round_trip() {
        for s in ["small-exhaustive", "loops", "loops:12", "exhaustive:3:2"] {
            assert_eq!(s.parse::<CorpusSpec>().unwrap().name(), s);
        }
        assert!("exhaustive:4:3".parse::<CorpusSpec>().is_err());
        assert!("nope".parse::<CorpusSpec>().is_err());
    }
}
