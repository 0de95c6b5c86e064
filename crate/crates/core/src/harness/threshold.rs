use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest dimension whose powers of two fit the exact arithmetic.
pub const MAX_THRESHOLD_DIMENSION: u32 = 120;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ThresholdExponent {
    pub d: u32,
    pub epsilon: Ratio<i128>,
    /// `((d + 1)/2 - epsilon) / d`: sets `A` with `|A| >= p^exponent` have
    /// `Delta(A^d) = F_p`.
    pub exponent: Ratio<i128>,
}

pub fn threshold_exponent(d: u32) -> Result<ThresholdExponent> {
    if d < 6 {
        return Err(Error::ThresholdDomain(format!("d >= 6, got {d}")));
    }
    if d > MAX_THRESHOLD_DIMENSION {
        return Err(Error::ThresholdDomain(format!(
            "d <= {MAX_THRESHOLD_DIMENSION}, got {d}"
        )));
    }
    let di = d as i128;
    let pow2 = |e: u32| 1i128 << e;
    let epsilon = if d % 2 == 1 {
        Ratio::new(
            6 * pow2((d - 5) / 2) - (di + 1),
            2 * (3 * pow2((d - 3) / 2) - 1),
        )
    } else {
        Ratio::new(pow2(d / 2) - di - 1, pow2(d / 2 + 1) - 2)
    };
    let exponent = (Ratio::new(di + 1, 2) - epsilon) / di;
    Ok(ThresholdExponent {
        d,
        epsilon,
        exponent,
    })
}
