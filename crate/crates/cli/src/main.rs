//! `fpdist`: coverage verdicts, proof constructions, bound reports, incidence
//! fuzzing, threshold scans and configuration-driven sweeps.
//!
//! Exit codes: 0 all assertable checks passed, 2 an assertable check failed,
//! 3 configuration or input error, 4 budget exceeded.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fpdist::experiment::fuzz::fuzz_round;
use fpdist::experiment::{
    generate_set_seeded, run_experiment, threshold_scan, write_csv, write_json, ExperimentConfig,
    GeneratorSpec, RowStatus,
};
use fpdist::harness::{
    construction_sweep, coverage, lemma_energy_report, thm2_report, variant_bounds_report,
    BoundReport, Construction, EngineMode, SumExpression,
};
use fpdist::{Error, FpSet, PrimeField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Parser)]
#[command(name = "fpdist", version, about = "Distance sets and sumsets over prime fields")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    out: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Ap,
    Random,
    Geo,
}

#[derive(Args)]
struct SetArgs {
    #[arg(long)]
    p: u64,
    /// Explicit elements, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "gen")]
    set: Option<Vec<u64>>,
    #[arg(long, value_enum)]
    gen: Option<GenKind>,
    #[arg(long)]
    size: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// First element of an arithmetic or geometric progression.
    #[arg(long)]
    start: Option<u64>,
    #[arg(long, default_value_t = 1)]
    step: u64,
    #[arg(long, default_value_t = 2)]
    ratio: u64,
}

impl SetArgs {
    fn field(&self) -> Result<PrimeField, Failure> {
        Ok(PrimeField::new(self.p)?)
    }

    fn spec(&self) -> Result<GeneratorSpec, Failure> {
        if let Some(elements) = &self.set {
            return Ok(GeneratorSpec::ExplicitList {
                elements: elements.clone(),
            });
        }
        let kind = self
            .gen
            .ok_or_else(|| Failure::Config("give --set or --gen".into()))?;
        let size = self
            .size
            .ok_or_else(|| Failure::Config("--gen needs --size".into()))?;
        Ok(match kind {
            GenKind::Ap => GeneratorSpec::ArithmeticProgression {
                size,
                start: self.start.unwrap_or(0),
                step: self.step,
            },
            GenKind::Random => GeneratorSpec::RandomUniform {
                size,
                seed: self.seed,
            },
            GenKind::Geo => GeneratorSpec::GeometricProgression {
                size,
                start: self.start.unwrap_or(1),
                ratio: self.ratio,
            },
        })
    }

    fn build(&self) -> Result<FpSet, Failure> {
        Ok(generate_set_seeded(&self.spec()?, self.field()?, self.seed)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Thm1,
    Thm14,
    Thm15,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundsKind {
    Thm2,
    LemmaEnergy,
    Variants,
}

#[derive(Clone, Copy, ValueEnum)]
enum IncidenceKind {
    Vinh,
    Hanson,
    Plane,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Always,
    Never,
}

#[derive(Subcommand)]
enum Command {
    /// Does the expression evaluated on A cover F_p?
    Coverage {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        expr: String,
    },
    /// Count solutions through a proof construction, per lambda.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        #[command(flatten)]
        set: SetArgs,
        /// `all` or a field element.
        #[arg(long, default_value = "all")]
        lambda: String,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
    },
    /// Exact quantities against the formula bounds.
    Bounds {
        #[arg(value_enum)]
        kind: BoundsKind,
        #[command(flatten)]
        set: SetArgs,
    },
    /// Fuzz an incidence bound with random configurations.
    Incidence {
        #[arg(value_enum)]
        kind: IncidenceKind,
        #[arg(long)]
        p: u64,
        /// Points and lines (planes) per configuration.
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        rounds: usize,
    },
    /// Smallest |A| at which every draw passes a coverage check.
    Scan {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = GenKind::Random)]
        gen: GenKind,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        step: u64,
        #[arg(long, default_value_t = 2)]
        ratio: u64,
    },
    /// Run an experiment configuration.
    Run {
        config: PathBuf,
        /// Override the CSV output path from the config.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Override the JSON output path from the config.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

enum Failure {
    Config(String),
    Budget(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Config(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn parse_expr(s: &str) -> Result<SumExpression, Failure> {
    Ok(s.parse::<SumExpression>()?)
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut w = stdout.lock();
    serde_json::to_writer_pretty(&mut w, v)?;
    writeln!(w)?;
    Ok(())
}

fn csv_out() -> csv::Writer<io::Stdout> {
    csv::Writer::from_writer(io::stdout())
}

fn violation_if(failed: Vec<String>) -> Result<(), Failure> {
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(failed.join("; ")))
    }
}

fn cmd_coverage(set: &SetArgs, expr: &str, out: Format) -> Result<(), Failure> {
    let a = set.build()?;
    let expr = parse_expr(expr)?;
    let v = coverage(&a, &expr)?;
    match out {
        Format::Json => print_json(&v)?,
        Format::Csv => {
            let mut w = csv_out();
            w.write_record(["p", "size_a", "expression", "covered", "missing"])?;
            let missing: Vec<String> = v.missing.iter().map(|x| x.to_string()).collect();
            w.write_record([
                a.field().p().to_string(),
                a.len().to_string(),
                v.expression.clone(),
                v.covered.to_string(),
                missing.join(" "),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_construct(
    kind: ConstructKind,
    set: &SetArgs,
    lambda: &str,
    engine: EngineArg,
    out: Format,
) -> Result<(), Failure> {
    let a = set.build()?;
    let construction = match kind {
        ConstructKind::Thm1 => Construction::Thm1,
        ConstructKind::Thm14 => Construction::Thm14,
        ConstructKind::Thm15 => Construction::Thm15,
    };
    let mode = match engine {
        EngineArg::Auto => EngineMode::Auto,
        EngineArg::Always => EngineMode::Always,
        EngineArg::Never => EngineMode::Never,
    };
    let single;
    let lambdas = if lambda == "all" {
        None
    } else {
        let v: u64 = lambda
            .parse()
            .map_err(|_| Failure::Config(format!("--lambda: expected `all` or an element, got {lambda:?}")))?;
        single = [a.field().check(v)?];
        Some(&single[..])
    };
    let s = construction_sweep(construction, &a, lambdas, mode)?;
    match out {
        Format::Json => print_json(&s)?,
        Format::Csv => {
            let mut w = csv_out();
            w.write_record([
                "construction",
                "p",
                "lambda",
                "solutions",
                "engine_count",
                "points",
                "objects",
                "trigger",
                "deviation",
                "error_budget",
                "satisfied",
            ])?;
            for r in &s.reports {
                w.write_record([
                    construction.name().to_string(),
                    s.p.to_string(),
                    r.lambda.to_string(),
                    r.solutions.to_string(),
                    r.engine_count.map(|c| c.to_string()).unwrap_or_default(),
                    r.points.to_string(),
                    r.objects.to_string(),
                    r.trigger.to_string(),
                    r.incidence.deviation.to_string(),
                    r.incidence.error_budget.to_string(),
                    r.incidence.satisfied.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    violation_if(s.violations)
}

fn print_bound_csv(r: &BoundReport) -> Result<(), Failure> {
    let mut w = csv_out();
    w.write_record(["report", "kind", "name", "value", "assertable"])?;
    let report = r.report;
    w.write_record([report, "lhs", r.lhs_name, &r.lhs.to_string(), ""])?;
    w.write_record([report, "ratio", "lhs/min(rhs)", &r.ratio.to_string(), ""])?;
    w.write_record([report, "regime", r.regime, "", ""])?;
    for t in &r.rhs_terms {
        w.write_record([report, "rhs", &t.name, &t.value.to_string(), ""])?;
    }
    for e in &r.exact {
        w.write_record([report, "exact", &e.name, &e.value.to_string(), ""])?;
    }
    for c in &r.checks {
        w.write_record([
            report,
            "check",
            &c.name,
            &c.holds.to_string(),
            &c.assertable.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_bounds(kind: BoundsKind, set: &SetArgs, out: Format) -> Result<(), Failure> {
    let a = set.build()?;
    let r = match kind {
        BoundsKind::Thm2 => thm2_report(&a)?,
        BoundsKind::LemmaEnergy => lemma_energy_report(&a)?,
        BoundsKind::Variants => variant_bounds_report(&a)?,
    };
    match out {
        Format::Json => print_json(&r)?,
        Format::Csv => print_bound_csv(&r)?,
    }
    violation_if(r.violations().iter().map(|c| c.name.clone()).collect())
}

fn cmd_incidence(
    kind: IncidenceKind,
    p: u64,
    size: usize,
    seed: u64,
    rounds: usize,
    out: Format,
) -> Result<(), Failure> {
    let field = PrimeField::new(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idx = match kind {
        IncidenceKind::Vinh => 0,
        IncidenceKind::Hanson => 1,
        IncidenceKind::Plane => 2,
    };
    let mut reports = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let r = fuzz_round(&mut rng, field, size, size)?;
        reports.push(r[idx].clone());
    }
    match out {
        Format::Json => print_json(&reports)?,
        Format::Csv => {
            let mut w = csv_out();
            w.write_record([
                "round",
                "p",
                "incidences",
                "points",
                "objects",
                "deviation",
                "error_budget",
                "satisfied",
            ])?;
            for (i, r) in reports.iter().enumerate() {
                w.write_record([
                    i.to_string(),
                    r.p.to_string(),
                    r.incidences.to_string(),
                    r.points.to_string(),
                    r.objects.to_string(),
                    r.deviation.to_string(),
                    r.error_budget.to_string(),
                    r.satisfied.to_string(),
                ])?;
            }
            w.flush()?;
        }
    }
    violation_if(
        reports
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.satisfied)
            .map(|(i, r)| format!("round {i}: {:?} bound", r.kind))
            .collect(),
    )
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    p: u64,
    gen: GenKind,
    expr: &str,
    trials: usize,
    seed: u64,
    step: u64,
    ratio: u64,
    out: Format,
) -> Result<(), Failure> {
    let field = PrimeField::new(p)?;
    let template = match gen {
        GenKind::Ap => GeneratorSpec::ArithmeticProgression {
            size: 1,
            start: 0,
            step,
        },
        GenKind::Random => GeneratorSpec::random(1, seed),
        GenKind::Geo => GeneratorSpec::GeometricProgression {
            size: 1,
            start: 1,
            ratio,
        },
    };
    let r = threshold_scan(field, &template, &parse_expr(expr)?, trials, seed)?;
    match out {
        Format::Json => print_json(&r)?,
        Format::Csv => {
            let mut w = csv_out();
            w.write_record([
                "p",
                "generator",
                "expression",
                "trials",
                "minimal",
                "p^(13/22)",
                "p^(4/7)",
                "p^(5/8)",
            ])?;
            w.write_record([
                r.p.to_string(),
                r.generator.clone(),
                r.expression.clone(),
                r.trials.to_string(),
                r.minimal
                    .map(|n| n.to_string())
                    .unwrap_or_else(|| "none".into()),
                r.references.p_13_22.to_string(),
                r.references.p_4_7.to_string(),
                r.references.p_5_8.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_run(
    path: &PathBuf,
    csv_path: Option<&PathBuf>,
    json_path: Option<&PathBuf>,
    out: Format,
) -> Result<(), Failure> {
    let cfg = ExperimentConfig::load(path)?;
    let rows = run_experiment(&cfg)?;
    let csv_path = csv_path.or(cfg.output.csv.as_ref());
    let json_path = json_path.or(cfg.output.json.as_ref());
    if let Some(p) = csv_path {
        let mut w = BufWriter::new(File::create(p)?);
        write_csv(&rows, &mut w)?;
        w.flush()?;
    }
    if let Some(p) = json_path {
        let mut w = BufWriter::new(File::create(p)?);
        write_json(&rows, &mut w)?;
        w.flush()?;
    }
    if csv_path.is_none() && json_path.is_none() {
        let stdout = io::stdout();
        let w = stdout.lock();
        match out {
            Format::Json => write_json(&rows, w)?,
            Format::Csv => write_csv(&rows, w)?,
        }
    }
    let count = |s: RowStatus| rows.iter().filter(|r| r.status == s).count();
    eprintln!(
        "{} rows: {} ok, {} violation, {} budget, {} error",
        rows.len(),
        count(RowStatus::Ok),
        count(RowStatus::Violation),
        count(RowStatus::Budget),
        count(RowStatus::Error)
    );
    if count(RowStatus::Violation) > 0 {
        return Err(Failure::Violation("assertable check failed in a row".into()));
    }
    if count(RowStatus::Error) > 0 {
        return Err(Failure::Config("some cells could not be evaluated".into()));
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Coverage { set, expr } => cmd_coverage(set, expr, cli.out),
        Command::Construct {
            kind,
            set,
            lambda,
            engine,
        } => cmd_construct(*kind, set, lambda, *engine, cli.out),
        Command::Bounds { kind, set } => cmd_bounds(*kind, set, cli.out),
        Command::Incidence {
            kind,
            p,
            size,
            seed,
            rounds,
        } => cmd_incidence(*kind, *p, *size, *seed, *rounds, cli.out),
        Command::Scan {
            p,
            gen,
            expr,
            trials,
            seed,
            step,
            ratio,
        } => cmd_scan(*p, *gen, expr, *trials, *seed, *step, *ratio, cli.out),
        Command::Run { config, csv, json } => {
            cmd_run(config, csv.as_ref(), json.as_ref(), cli.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --jobs: {e}");
            return ExitCode::from(3);
        }
    }
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(m)) => {
            eprintln!("violation: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("budget: {m}");
            ExitCode::from(4)
        }
    }
}
