//! `ngcl`: transformers, triple checks, theorem surveys and counterexample
//! search over finite-state guarded command programs.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ngcl_core::lang::{parse_file, parse_guard, ProgramFile, MAX_STATES};
use ngcl_core::par::Exec;
use ngcl_core::semantics::{build_graph, DEFAULT_NODE_BUDGET};
use ngcl_core::taxonomy::{
    assumptions, check_theorems, classify, find_counterexample, CheckMode, ClaimId, CorpusSpec,
    Flag, LogicId, SearchOutcome, TheoremId, DEFAULT_BUDGET, DEFAULT_SEED,
};
use ngcl_core::topkat::{sweep_axioms, EquationId};
use ngcl_core::transformers::{inductive_transform, Direction, ProgramModel};
use ngcl_core::{Error, Predicate, TransformerKind, VERSION};

use report::{ClaimReport, RunReport};

const EXIT_OK: u8 = 0;
const EXIT_FALSE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "ngcl",
    version,
    about = "Finite-state laboratory for nondeterministic guarded commands"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Record wall-clock durations in reports.
    #[arg(long, global = true)]
    timings: bool,
    /// Run corpus work on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Engine {
    Oracle,
    Inductive,
    Both,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a predicate transformer.
    Transform {
        #[arg(long)]
        kind: TransformerKind,
        #[arg(long, value_enum, default_value_t = Engine::Oracle)]
        engine: Engine,
        /// Argument predicate, as a guard.
        #[arg(long)]
        pred: String,
        #[arg(long)]
        modulus: Option<u32>,
        file: PathBuf,
    },
    /// Decide a triple under one of the eighteen logics.
    Check {
        #[arg(long)]
        logic: String,
        #[arg(long)]
        pre: String,
        #[arg(long)]
        post: String,
        #[arg(long)]
        modulus: Option<u32>,
        file: PathBuf,
    },
    /// Evaluate the assumption classifiers.
    Classify {
        #[arg(long, default_value = "true")]
        pre: String,
        #[arg(long, default_value = "true")]
        post: String,
        #[arg(long)]
        modulus: Option<u32>,
        file: PathBuf,
    },
    /// Check theorems over a corpus.
    Survey {
        /// `all` or a comma-separated list of theorem ids.
        #[arg(long, default_value = "all")]
        suite: String,
        /// `small-exhaustive`, `exhaustive:<m>:<depth>`, `loops` or `loops:<n>`.
        #[arg(long, default_value = "small-exhaustive")]
        corpus: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Use whole-program assumption filters.
        #[arg(long)]
        strict: bool,
    },
    /// Search for a witness refuting an identity or separating two logics.
    Counterexample {
        /// A claim id, or `all`.
        #[arg(long)]
        claim: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Evaluate a TopKAT equation, or sweep the axioms on random terms.
    Kat {
        #[arg(long)]
        equation: Option<String>,
        #[arg(long, default_value = "true")]
        pre: String,
        #[arg(long, default_value = "true")]
        post: String,
        #[arg(long)]
        modulus: Option<u32>,
        /// Number of random instances for an axiom sweep.
        #[arg(long)]
        axioms: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        file: Option<PathBuf>,
    },
    /// Print the small-step configuration graph.
    Graph {
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        modulus: Option<u32>,
        file: PathBuf,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget { .. } | Error::Invariant(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

struct Ctx {
    format: Format,
    timings: bool,
    exec: Exec,
    command: Vec<String>,
}

impl Ctx {
    fn claim(&self, claim: impl Into<String>, holds: bool, elapsed: Duration) -> ClaimReport {
        ClaimReport {
            claim: claim.into(),
            holds,
            witness: None,
            corpus: None,
            seed: None,
            duration_ms: self.timings.then_some(elapsed.as_millis() as u64),
            version: VERSION.to_string(),
            value: None,
            stats: None,
        }
    }

    fn report(
        &self,
        space: Option<String>,
        corpus: Option<String>,
        seed: Option<u64>,
        results: Vec<ClaimReport>,
    ) -> RunReport {
        RunReport {
            version: VERSION.to_string(),
            command: self.command.clone(),
            space,
            corpus,
            seed,
            results,
        }
    }

    fn emit_json(&self, report: &RunReport) {
        println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        );
    }
}

fn state_cap() -> Result<usize, Failure> {
    match std::env::var("NGCL_STATE_CAP") {
        Ok(v) => {
            let cap: usize = v.trim().parse().map_err(|_| {
                usage(format!(
                    "NGCL_STATE_CAP must be a positive integer, got `{v}`"
                ))
            })?;
            if cap == 0 {
                return Err(usage("NGCL_STATE_CAP must be positive"));
            }
            Ok(cap.min(MAX_STATES))
        }
        Err(_) => Ok(MAX_STATES),
    }
}

fn load(file: &PathBuf, modulus: Option<u32>) -> Result<ProgramFile, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    Ok(parse_file(&text, modulus, state_cap()?)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        format: cli.format,
        timings: cli.timings,
        exec: if cli.sequential {
            Exec::Sequential
        } else {
            Exec::Parallel
        },
        command: std::env::args().skip(1).collect(),
    };
    let outcome = match cli.command {
        Command::Transform {
            kind,
            engine,
            pred,
            modulus,
            file,
        } => cmd_transform(&ctx, kind, engine, &pred, modulus, &file),
        Command::Check {
            logic,
            pre,
            post,
            modulus,
            file,
        } => cmd_check(&ctx, &logic, &pre, &post, modulus, &file),
        Command::Classify {
            pre,
            post,
            modulus,
            file,
        } => cmd_classify(&ctx, &pre, &post, modulus, &file),
        Command::Survey {
            suite,
            corpus,
            seed,
            strict,
        } => cmd_survey(&ctx, &suite, &corpus, seed, strict),
        Command::Counterexample { claim, budget } => cmd_counterexample(&ctx, &claim, budget),
        Command::Kat {
            equation,
            pre,
            post,
            modulus,
            axioms,
            seed,
            file,
        } => cmd_kat(
            &ctx,
            equation.as_deref(),
            &pre,
            &post,
            modulus,
            axioms,
            seed,
            file.as_ref(),
        ),
        Command::Graph { dot, modulus, file } => cmd_graph(&ctx, dot, modulus, &file),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn cmd_transform(
    ctx: &Ctx,
    kind: TransformerKind,
    engine: Engine,
    pred: &str,
    modulus: Option<u32>,
    file: &PathBuf,
) -> Outcome {
    let started = Instant::now();
    let pf = load(file, modulus)?;
    let (sp, p) = (&pf.space, &pf.program);
    let q = parse_guard(pred, sp)?.to_predicate(sp);
    let oracle =
        || -> Result<Predicate, Failure> { Ok(ProgramModel::new(p, sp)?.transform(kind, &q)) };
    let value = match engine {
        Engine::Oracle => oracle()?,
        Engine::Inductive => inductive_transform(kind, p, sp, &q),
        Engine::Both => {
            let o = oracle()?;
            let i = inductive_transform(kind, p, sp, &q);
            if o != i {
                return Err(Failure {
                    code: EXIT_INTERNAL,
                    message: format!(
                        "engines disagree on {kind}: oracle {} vs inductive {}",
                        o.render(sp),
                        i.render(sp)
                    ),
                });
            }
            o
        }
    };
    let rendered = value.render(sp);
    match ctx.format {
        Format::Text => println!("{rendered}"),
        Format::Json => {
            let mut r = ctx.claim(format!("transform:{kind}"), true, started.elapsed());
            r.value = Some(rendered);
            ctx.emit_json(&ctx.report(Some(sp.header()), None, None, vec![r]));
        }
    }
    Ok(EXIT_OK)
}

fn cmd_check(
    ctx: &Ctx,
    logic: &str,
    pre: &str,
    post: &str,
    modulus: Option<u32>,
    file: &PathBuf,
) -> Outcome {
    let started = Instant::now();
    let logic: LogicId = logic.parse()?;
    let pf = load(file, modulus)?;
    let (sp, p) = (&pf.space, &pf.program);
    let b = parse_guard(pre, sp)?.to_predicate(sp);
    let c = parse_guard(post, sp)?.to_predicate(sp);
    let model = ProgramModel::new(p, sp)?;
    let vals: Vec<Predicate> = TransformerKind::ALL
        .iter()
        .map(|&k| match k.direction() {
            Direction::Backward => model.transform(k, &c),
            Direction::Forward => model.transform(k, &b),
        })
        .collect();
    let failure = logic.failure_with(&b, &c, |k| &vals[k.index()]);
    let holds = failure.is_none();
    match ctx.format {
        Format::Text => {
            println!("{logic}: {}", logic.condition());
            if holds {
                println!("valid");
            } else {
                println!("invalid");
                if let Some(s) = failure {
                    println!("  witness: {}", sp.render_state(s));
                }
            }
        }
        Format::Json => {
            let mut r = ctx.claim(logic.name(), holds, started.elapsed());
            r.witness = failure.map(|s| {
                ngcl_core::taxonomy::Witness::new(sp, p, logic.condition())
                    .triple(sp, &b, &c)
                    .state(sp, Some(s))
            });
            ctx.emit_json(&ctx.report(Some(sp.header()), None, None, vec![r]));
        }
    }
    Ok(if holds { EXIT_OK } else { EXIT_FALSE })
}

fn flag_text(f: Flag, sp: &ngcl_core::StateSpace) -> String {
    match f {
        Flag::Holds => "holds".into(),
        Flag::Fails(Some(s)) => format!("fails (witness {})", sp.render_state(s)),
        Flag::Fails(None) => "fails".into(),
        Flag::NotEvaluated => "not evaluated".into(),
    }
}

fn cmd_classify(ctx: &Ctx, pre: &str, post: &str, modulus: Option<u32>, file: &PathBuf) -> Outcome {
    let started = Instant::now();
    let pf = load(file, modulus)?;
    let (sp, p) = (&pf.space, &pf.program);
    let b = parse_guard(pre, sp)?.to_predicate(sp);
    let c = parse_guard(post, sp)?.to_predicate(sp);
    let model = ProgramModel::new(p, sp)?;
    let set = classify(p, &model, &b, &c);
    let semantic = assumptions::semantically_deterministic(&model);
    let rows = [
        ("termination", set.termination),
        ("reachability", set.reachability),
        ("determinism", set.determinism),
        ("semantic-determinism", semantic),
        ("reversibility", set.reversibility),
        ("no-branching-divergence", set.no_branching_divergence),
    ];
    match ctx.format {
        Format::Text => {
            for (name, f) in rows {
                println!("{name:<24} {}", flag_text(f, sp));
            }
        }
        Format::Json => {
            let results = rows
                .iter()
                .map(|(name, f)| {
                    let mut r = ctx.claim(*name, f.holds(), started.elapsed());
                    r.value = Some(flag_text(*f, sp));
                    r
                })
                .collect();
            ctx.emit_json(&ctx.report(Some(sp.header()), None, None, results));
        }
    }
    Ok(EXIT_OK)
}

fn parse_suite(suite: &str) -> Result<Vec<TheoremId>, Failure> {
    if suite.trim().eq_ignore_ascii_case("all") {
        return Ok(TheoremId::ALL.to_vec());
    }
    suite
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<TheoremId>().map_err(Failure::from))
        .collect()
}

fn cmd_survey(ctx: &Ctx, suite: &str, corpus: &str, seed: Option<u64>, strict: bool) -> Outcome {
    let ids = parse_suite(suite)?;
    if ids.is_empty() {
        return Err(usage("empty theorem suite"));
    }
    let spec: CorpusSpec = corpus.parse()?;
    let seed = spec.is_random().then(|| seed.unwrap_or(DEFAULT_SEED));
    let mode = if strict {
        CheckMode::Strict
    } else {
        CheckMode::Scoped
    };
    let built = spec.build(seed.unwrap_or(DEFAULT_SEED), ctx.exec)?;
    let mut verdicts = Vec::new();
    if ctx.timings {
        for id in &ids {
            let started = Instant::now();
            let v = check_theorems(&[*id], &built, mode, ctx.exec)?.remove(0);
            verdicts.push((v, started.elapsed()));
        }
    } else {
        let started = Instant::now();
        let all = check_theorems(&ids, &built, mode, ctx.exec)?;
        let elapsed = started.elapsed();
        verdicts.extend(all.into_iter().map(|v| (v, elapsed)));
    }
    let mut results = Vec::new();
    for (v, elapsed) in verdicts {
        let mut r = ctx.claim(v.claim, v.holds, elapsed);
        r.witness = v.witness;
        r.corpus = Some(built.name.clone());
        r.seed = seed;
        r.stats = Some(v.stats);
        results.push(r);
    }
    let report = ctx.report(None, Some(built.name.clone()), seed, results);
    match ctx.format {
        Format::Json => ctx.emit_json(&report),
        Format::Text => {
            let seed_text = seed.map(|s| format!(", seed {s}")).unwrap_or_default();
            println!(
                "corpus {} ({} programs{seed_text}), {} filters",
                built.name,
                built.items.len(),
                if strict { "strict" } else { "scoped" }
            );
            println!(
                "{:<24} {:<6} {:>12} {:>12} {:>12} {:>10}",
                "theorem", "result", "checks", "filtered-in", "filtered-out", "outside"
            );
            for r in &report.results {
                let s = r.stats.as_ref().expect("survey stats");
                println!(
                    "{:<24} {:<6} {:>12} {:>12} {:>12} {:>10}",
                    r.claim,
                    if r.holds { "pass" } else { "FAIL" },
                    s.checks,
                    s.filtered_in,
                    s.filtered_out,
                    s.outside_violations
                );
            }
            for r in report.results.iter().filter(|r| !r.holds) {
                if let Some(w) = &r.witness {
                    println!("\n{} witness:", r.claim);
                    print_witness(w);
                }
            }
        }
    }
    Ok(if report.all_hold() {
        EXIT_OK
    } else {
        EXIT_FALSE
    })
}

fn print_witness(w: &ngcl_core::taxonomy::Witness) {
    println!("  space:   {}", w.space);
    println!("  program: {}", w.program);
    if let Some(o) = &w.other_program {
        println!("  other:   {o}");
    }
    if let Some(b) = &w.pre {
        println!("  pre:     {b}");
    }
    if let Some(c) = &w.post {
        println!("  post:    {c}");
    }
    if let Some(s) = &w.state {
        println!("  state:   {s}");
    }
    println!("  detail:  {}", w.detail);
}

fn cmd_counterexample(ctx: &Ctx, claim: &str, budget: u64) -> Outcome {
    let claims: Vec<ClaimId> = if claim.trim().eq_ignore_ascii_case("all") {
        ClaimId::all()
    } else {
        vec![claim.parse()?]
    };
    let mut results = Vec::new();
    for c in claims {
        let started = Instant::now();
        let outcome = find_counterexample(c, budget, ctx.exec)?;
        let mut r = ctx.claim(c.id(), outcome.witness().is_some(), started.elapsed());
        r.stats = Some(ngcl_core::taxonomy::Stats {
            examined: Some(outcome.examined()),
            budget_exhausted: match &outcome {
                SearchOutcome::NotFound {
                    budget_exhausted, ..
                } => Some(*budget_exhausted),
                SearchOutcome::Found { .. } => None,
            },
            ..Default::default()
        });
        r.witness = outcome.witness().cloned();
        if ctx.format == Format::Text {
            match &outcome {
                SearchOutcome::Found { witness, examined } => {
                    println!("{c}: witness after {examined} candidates");
                    print_witness(witness);
                }
                SearchOutcome::NotFound { examined, .. } => {
                    println!("{c}: none within budget ({examined} candidates examined)");
                }
            }
        }
        results.push(r);
    }
    let report = ctx.report(None, Some("canonical-enumeration".into()), None, results);
    if ctx.format == Format::Json {
        ctx.emit_json(&report);
    }
    Ok(if report.all_hold() {
        EXIT_OK
    } else {
        EXIT_FALSE
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_kat(
    ctx: &Ctx,
    equation: Option<&str>,
    pre: &str,
    post: &str,
    modulus: Option<u32>,
    axioms: Option<usize>,
    seed: Option<u64>,
    file: Option<&PathBuf>,
) -> Outcome {
    let started = Instant::now();
    if let Some(count) = axioms {
        let seed = seed.unwrap_or(DEFAULT_SEED);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sweep = sweep_axioms(&mut rng, count, 3)?;
        let holds = sweep.failures.is_empty();
        match ctx.format {
            Format::Text => {
                println!(
                    "{} instances, {} failures (seed {seed})",
                    sweep.instances,
                    sweep.failures.len()
                );
                for (i, name) in &sweep.failures {
                    println!("  instance {i}: {name}");
                }
            }
            Format::Json => {
                let mut r = ctx.claim("KAT_AXIOMS", holds, started.elapsed());
                r.seed = Some(seed);
                r.value = Some(format!(
                    "{} instances, {} failures",
                    sweep.instances,
                    sweep.failures.len()
                ));
                ctx.emit_json(&ctx.report(
                    None,
                    Some("random-kat-terms".into()),
                    Some(seed),
                    vec![r],
                ));
            }
        }
        return Ok(if holds { EXIT_OK } else { EXIT_FALSE });
    }
    let eq: EquationId = equation
        .ok_or_else(|| usage("kat needs --equation and a program file, or --axioms"))?
        .parse()?;
    let file = file.ok_or_else(|| usage("kat --equation needs a program file"))?;
    let pf = load(file, modulus)?;
    let (sp, p) = (&pf.space, &pf.program);
    let b = parse_guard(pre, sp)?.to_predicate(sp);
    let c = parse_guard(post, sp)?.to_predicate(sp);
    let holds = ngcl_core::topkat::check_equation(eq, &b, p, sp, &c)?;
    match ctx.format {
        Format::Text => println!(
            "{eq}: {}  ->  {}",
            eq.formula(),
            if holds { "holds" } else { "fails" }
        ),
        Format::Json => {
            let mut r = ctx.claim(eq.id(), holds, started.elapsed());
            r.value = Some(eq.formula().to_string());
            ctx.emit_json(&ctx.report(Some(sp.header()), None, None, vec![r]));
        }
    }
    Ok(if holds { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_graph(ctx: &Ctx, dot: bool, modulus: Option<u32>, file: &PathBuf) -> Outcome {
    let started = Instant::now();
    let pf = load(file, modulus)?;
    let (sp, p) = (&pf.space, &pf.program);
    let g = build_graph(p, sp, &Predicate::full(sp.size()), DEFAULT_NODE_BUDGET)?;
    if dot {
        print!("{}", g.to_dot(sp));
        return Ok(EXIT_OK);
    }
    let may = g.may_diverge();
    let summary = format!(
        "{} configurations, {} transitions, {}, may diverge from {}",
        g.node_count(),
        g.edge_count(),
        if g.is_acyclic() { "acyclic" } else { "cyclic" },
        may.render(sp)
    );
    match ctx.format {
        Format::Text => println!("{summary}"),
        Format::Json => {
            let mut r = ctx.claim("graph", true, started.elapsed());
            r.value = Some(summary);
            ctx.emit_json(&ctx.report(Some(sp.header()), None, None, vec![r]));
        }
    }
    Ok(EXIT_OK)
}
