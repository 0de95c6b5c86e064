use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::harness::{
    construction_sweep, coverage, lemma_energy_report, thm2_report, variant_bounds_report,
    BoundReport, Construction, EngineMode,
};
use crate::set::{doubling_stats, FpSet};

use super::config::{CheckSpec, ExperimentConfig};
use super::fuzz::fuzz_round;
use super::generator::{generate_set_seeded, GeneratorSpec};

pub const REPORT_VERSION: u32 = 1;

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for one cell, a function of the master seed and the coordinates only.
pub fn derive_seed(master: u64, coords: &[u64]) -> u64 {
    coords.iter().fold(mix(master), |h, &c| mix(h ^ mix(c)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    Ok,
    /// An assertable check failed.
    Violation,
    Budget,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub p: u32,
    pub generator: String,
    pub trial: usize,
    pub seed: u64,
    pub size_a: Option<usize>,
    pub size_d: Option<usize>,
    pub k: Option<String>,
    pub check: String,
    pub status: RowStatus,
    pub covered: Option<bool>,
    pub missing_count: Option<usize>,
    pub missing: Option<String>,
    pub lhs: Option<String>,
    pub ratio: Option<f64>,
    pub detail: String,
    pub wall_ms: Option<f64>,
}

impl ReportRow {
    pub const COLUMNS: [&'static str; 16] = [
        "p",
        "generator",
        "trial",
        "seed",
        "size_a",
        "size_d",
        "k",
        "check",
        "status",
        "covered",
        "missing_count",
        "missing",
        "lhs",
        "ratio",
        "detail",
        "wall_ms",
    ];
}

#[derive(Default)]
struct Outcome {
    covered: Option<bool>,
    missing: Option<FpSet>,
    lhs: Option<String>,
    ratio: Option<f64>,
    violations: Vec<String>,
    detail: String,
}

fn format_set(s: &FpSet) -> String {
    let items: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(" "))
}

fn from_bound(r: BoundReport) -> Outcome {
    let failed: Vec<&str> = r
        .checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| c.name.as_str())
        .collect();
    Outcome {
        lhs: Some(r.lhs.to_string()),
        ratio: Some(r.ratio),
        violations: r.violations().iter().map(|c| c.name.clone()).collect(),
        detail: format!(
            "regime={} failed_report_only=[{}]",
            r.regime,
            failed
                .iter()
                .filter(|n| r.check(n).is_some_and(|c| !c.assertable))
                .copied()
                .collect::<Vec<_>>()
                .join("; ")
        ),
        ..Outcome::default()
    }
}

fn evaluate(check: &CheckSpec, a: &FpSet, seed: u64) -> Result<Outcome> {
    let construction = match check {
        CheckSpec::Coverage(expr) => {
            let v = coverage(a, expr)?;
            return Ok(Outcome {
                covered: Some(v.covered),
                missing: Some(v.missing),
                ..Outcome::default()
            });
        }
        CheckSpec::Thm2 => return Ok(from_bound(thm2_report(a)?)),
        CheckSpec::LemmaEnergy => return Ok(from_bound(lemma_energy_report(a)?)),
        CheckSpec::Variants => return Ok(from_bound(variant_bounds_report(a)?)),
        CheckSpec::IncidenceFuzz => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = a.len() * a.len();
            let reports = fuzz_round(&mut rng, a.field(), n, n)?;
            let ratio = reports
                .iter()
                .map(|r| {
                    if r.error_budget > 0.0 {
                        r.deviation.abs() / r.error_budget
                    } else {
                        0.0
                    }
                })
                .fold(0.0, f64::max);
            return Ok(Outcome {
                lhs: Some(
                    reports
                        .iter()
                        .map(|r| r.incidences.to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                ),
                ratio: Some(ratio),
                violations: reports
                    .iter()
                    .filter(|r| !r.satisfied)
                    .map(|r| format!("{:?} bound", r.kind))
                    .collect(),
                detail: format!("points={n} objects={n}"),
                ..Outcome::default()
            });
        }
        CheckSpec::Thm1 => Construction::Thm1,
        CheckSpec::Thm14 => Construction::Thm14,
        CheckSpec::Thm15 => Construction::Thm15,
    };
    let s = construction_sweep(construction, a, None, EngineMode::Auto)?;
    let missing = FpSet::from_reduced(
        a.field(),
        s.reports
            .iter()
            .filter(|r| r.solutions == 0)
            .map(|r| r.lambda as i64),
    );
    Ok(Outcome {
        covered: Some(s.covered),
        missing: Some(missing),
        lhs: Some(s.min_solutions.to_string()),
        ratio: None,
        violations: s.violations,
        detail: format!(
            "trigger={} points={} engine_checked={}",
            s.trigger, s.points, s.engine_checked
        ),
    })
}

struct Cell<'a> {
    field: PrimeField,
    gen_index: usize,
    generator: &'a GeneratorSpec,
    trial: usize,
    check: &'a CheckSpec,
}

fn spec_seed(g: &GeneratorSpec) -> u64 {
    match g {
        GeneratorSpec::RandomUniform { seed, .. } => *seed,
        _ => 0,
    }
}

fn run_cell(cell: &Cell, master: u64, timing: bool) -> ReportRow {
    let start = Instant::now();
    let seed = derive_seed(
        master,
        &[
            cell.field.p() as u64,
            cell.gen_index as u64,
            spec_seed(cell.generator),
            cell.trial as u64,
        ],
    );
    let mut row = ReportRow {
        p: cell.field.p(),
        generator: format!("{}:{}", cell.generator, cell.generator.size()),
        trial: cell.trial,
        seed,
        size_a: None,
        size_d: None,
        k: None,
        check: cell.check.to_string(),
        status: RowStatus::Ok,
        covered: None,
        missing_count: None,
        missing: None,
        lhs: None,
        ratio: None,
        detail: String::new(),
        wall_ms: None,
    };
    let result = generate_set_seeded(cell.generator, cell.field, seed).and_then(|a| {
        let stats = doubling_stats(&a)?;
        row.size_a = Some(stats.size_a);
        row.size_d = Some(stats.size_d);
        row.k = Some(stats.k.to_string());
        evaluate(cell.check, &a, seed)
    });
    match result {
        Ok(out) => {
            row.covered = out.covered;
            row.missing_count = out.missing.as_ref().map(FpSet::len);
            row.missing = out.missing.as_ref().map(format_set);
            row.lhs = out.lhs;
            row.ratio = out.ratio;
            row.detail = out.detail;
            if !out.violations.is_empty() {
                row.status = RowStatus::Violation;
                row.detail = format!("{}; violated: {}", row.detail, out.violations.join("; "));
            }
        }
        Err(e) => {
            row.status = if e.is_budget() {
                RowStatus::Budget
            } else {
                RowStatus::Error
            };
            row.detail = e.to_string();
        }
    }
    if timing {
        row.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    row
}

/// One row per (prime, generator, trial, check), in that nesting order.
/// Cells run in parallel on the current rayon pool.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    let fields = config.validate()?;
    let mut cells = Vec::new();
    for &field in &fields {
        for (gen_index, generator) in config.generators.iter().enumerate() {
            for trial in 0..config.trials {
                for check in &config.checks {
                    cells.push(Cell {
                        field,
                        gen_index,
                        generator,
                        trial,
                        check,
                    });
                }
            }
        }
    }
    Ok(cells
        .par_iter()
        .map(|c| run_cell(c, config.master_seed, config.timing))
        .collect())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// CSV with a version comment line followed by a fixed header.
pub fn write_csv<W: Write>(rows: &[ReportRow], mut w: W) -> Result<()> {
    writeln!(w, "# fpdist report v{REPORT_VERSION}")?;
    let mut wtr = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    wtr.write_record(ReportRow::COLUMNS).map_err(csv_err)?;
    for r in rows {
        wtr.serialize(r).map_err(csv_err)?;
    }
    wtr.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonReport<'a> {
    format: &'static str,
    version: u32,
    rows: &'a [ReportRow],
}

pub fn write_json<W: Write>(rows: &[ReportRow], mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(
        &mut w,
        &JsonReport {
            format: "fpdist-report",
            version: REPORT_VERSION,
            rows,
        },
    )
    .map_err(|e| Error::Io(e.to_string()))?;
    writeln!(w)?;
    Ok(())
}

pub fn csv_string(rows: &[ReportRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

pub fn json_string(rows: &[ReportRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_json(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("json output is utf-8"))
}
