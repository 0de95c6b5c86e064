use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::harness::SumExpression;

use super::generator::GeneratorSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckSpec {
    /// `{"coverage": "<expression>"}`
    Coverage(SumExpression),
    Thm1,
    Thm14,
    Thm15,
    Thm2,
    LemmaEnergy,
    Variants,
    IncidenceFuzz,
}

impl fmt::Display for CheckSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckSpec::Coverage(e) => write!(f, "coverage {e}"),
            CheckSpec::Thm1 => f.write_str("thm1"),
            CheckSpec::Thm14 => f.write_str("thm14"),
            CheckSpec::Thm15 => f.write_str("thm15"),
            CheckSpec::Thm2 => f.write_str("thm2"),
            CheckSpec::LemmaEnergy => f.write_str("lemma-energy"),
            CheckSpec::Variants => f.write_str("variants"),
            CheckSpec::IncidenceFuzz => f.write_str("incidence-fuzz"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    #[serde(default)]
    pub csv: Option<PathBuf>,
    #[serde(default)]
    pub json: Option<PathBuf>,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub primes: Vec<u64>,
    pub generators: Vec<GeneratorSpec>,
    pub checks: Vec<CheckSpec>,
    #[serde(default = "one")]
    pub trials: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub output: OutputPaths,
    /// Fill the wall-time column. Off by default so that reports are
    /// byte-identical across runs.
    #[serde(default)]
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(s).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Checks the invariants and returns the fields.
    pub fn validate(&self) -> Result<Vec<PrimeField>> {
        if self.primes.is_empty() {
            return Err(Error::InvalidConfig("no primes".into()));
        }
        if self.checks.is_empty() {
            return Err(Error::InvalidConfig("no checks".into()));
        }
        self.primes
            .iter()
            .map(|&p| PrimeField::new(p).map_err(|e| Error::InvalidConfig(e.to_string())))
            .collect()
    }
}
