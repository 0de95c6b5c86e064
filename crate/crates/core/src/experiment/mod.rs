//! Seeded set generators, configuration-driven sweeps, report output and
//! threshold scans.

mod config;
pub mod fuzz;
mod generator;
mod run;
mod scan;

pub use config::{CheckSpec, ExperimentConfig, OutputPaths};
pub use generator::{generate_set, generate_set_seeded, GeneratorSpec};
pub use run::{
    csv_string, derive_seed, json_string, run_experiment, write_csv, write_json, ReportRow,
    RowStatus, REPORT_VERSION,
};
pub use scan::{threshold_scan, FailureEvidence, Probe, ScanReferences, ScanReport};
