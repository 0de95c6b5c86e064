use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::set::FpSet;

fn one() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GeneratorSpec {
    /// `size` distinct elements drawn uniformly.
    RandomUniform {
        size: usize,
        #[serde(default)]
        seed: u64,
    },
    /// `{start + i*step : 0 <= i < size}`.
    ArithmeticProgression {
        size: usize,
        #[serde(default)]
        start: u64,
        #[serde(default = "one")]
        step: u64,
    },
    /// `{start * ratio^i : 0 <= i < size}`.
    GeometricProgression {
        size: usize,
        #[serde(default = "one")]
        start: u64,
        ratio: u64,
    },
    ExplicitList { elements: Vec<u64> },
}

impl GeneratorSpec {
    pub fn random(size: usize, seed: u64) -> Self {
        GeneratorSpec::RandomUniform { size, seed }
    }

    pub fn interval(size: usize) -> Self {
        GeneratorSpec::ArithmeticProgression {
            size,
            start: 0,
            step: 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GeneratorSpec::RandomUniform { .. } => "random-uniform",
            GeneratorSpec::ArithmeticProgression { .. } => "arithmetic-progression",
            GeneratorSpec::GeometricProgression { .. } => "geometric-progression",
            GeneratorSpec::ExplicitList { .. } => "explicit-list",
        }
    }

    pub fn size(&self) -> usize {
        match self {
            GeneratorSpec::RandomUniform { size, .. }
            | GeneratorSpec::ArithmeticProgression { size, .. }
            | GeneratorSpec::GeometricProgression { size, .. } => *size,
            GeneratorSpec::ExplicitList { elements } => elements.len(),
        }
    }

    /// The same generator with another size. Explicit lists have no size
    /// parameter.
    pub fn with_size(&self, n: usize) -> Result<Self> {
        let mut out = self.clone();
        match &mut out {
            GeneratorSpec::RandomUniform { size, .. }
            | GeneratorSpec::ArithmeticProgression { size, .. }
            | GeneratorSpec::GeometricProgression { size, .. } => *size = n,
            GeneratorSpec::ExplicitList { .. } => {
                return Err(Error::InvalidGenerator(
                    "an explicit list cannot be resized".into(),
                ))
            }
        }
        Ok(out)
    }

    /// Whether the generated set depends on the seed.
    pub fn is_random(&self) -> bool {
        matches!(self, GeneratorSpec::RandomUniform { .. })
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::RandomUniform { .. } => write!(f, "random"),
            GeneratorSpec::ArithmeticProgression { start, step, .. } => {
                write!(f, "ap(start={start},step={step})")
            }
            GeneratorSpec::GeometricProgression { start, ratio, .. } => {
                write!(f, "geo(start={start},ratio={ratio})")
            }
            GeneratorSpec::ExplicitList { .. } => write!(f, "explicit"),
        }
    }
}

fn check_size(size: usize, field: PrimeField) -> Result<()> {
    if size > field.p() as usize {
        return Err(Error::InvalidGenerator(format!(
            "size {size} exceeds p = {}",
            field.p()
        )));
    }
    Ok(())
}

/// Builds the set; random generators use the seed stored in the spec.
pub fn generate_set(spec: &GeneratorSpec, field: PrimeField) -> Result<FpSet> {
    let seed = match spec {
        GeneratorSpec::RandomUniform { seed, .. } => *seed,
        _ => 0,
    };
    generate_set_seeded(spec, field, seed)
}

/// Builds the set; random generators use `seed` instead of their own.
pub fn generate_set_seeded(spec: &GeneratorSpec, field: PrimeField, seed: u64) -> Result<FpSet> {
    let p = field.p() as u64;
    let out = match spec {
        GeneratorSpec::RandomUniform { size, .. } => {
            check_size(*size, field)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let idx = sample(&mut rng, p as usize, *size);
            FpSet::from_elements(field, idx.into_iter().map(|i| i as u64))?
        }
        GeneratorSpec::ArithmeticProgression { size, start, step } => {
            check_size(*size, field)?;
            if step % p == 0 {
                return Err(Error::InvalidGenerator("step is 0 mod p".into()));
            }
            let (s, t) = (start % p, step % p);
            FpSet::from_elements(field, (0..*size as u64).map(|i| (s + i * t) % p))?
        }
        GeneratorSpec::GeometricProgression { size, start, ratio } => {
            check_size(*size, field)?;
            let (s, r) = (field.reduce_u64(*start), field.reduce_u64(*ratio));
            if s == 0 || r == 0 {
                return Err(Error::InvalidGenerator(
                    "start and ratio must be nonzero mod p".into(),
                ));
            }
            let mut x = s;
            let mut elems = Vec::with_capacity(*size);
            for _ in 0..*size {
                elems.push(x as u64);
                x = field.mul(x, r);
            }
            FpSet::from_elements(field, elems)?
        }
        GeneratorSpec::ExplicitList { elements } => {
            check_size(elements.len(), field)?;
            FpSet::from_elements(field, elements.iter().copied())?
        }
    };
    if out.len() != spec.size() {
        return Err(Error::InvalidGenerator(format!(
            "{spec} produced {} distinct elements, {} requested",
            out.len(),
            spec.size()
        )));
    }
    Ok(out)
}
