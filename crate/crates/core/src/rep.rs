//! Representation counts `r(x)` over F_p and their additive convolution.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ntt;
use crate::set::FpSet;

/// Exact counts per residue. The total mass equals the number of tuples
/// that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepHistogram {
    #[serde(rename = "p")]
    field: PrimeField,
    counts: Vec<u64>,
}

/// Convolutions with at most this many nonzero-pair products run naively.
const NAIVE_PAIR_LIMIT: u64 = 1 << 16;

impl RepHistogram {
    pub fn zeros(field: PrimeField) -> Self {
        RepHistogram {
            field,
            counts: vec![0; field.order()],
        }
    }

    pub fn from_counts(field: PrimeField, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != field.order() {
            return Err(Error::DimensionMismatch {
                left: counts.len(),
                right: field.order(),
            });
        }
        Ok(RepHistogram { field, counts })
    }

    /// Indicator histogram of a set.
    pub fn indicator(s: &FpSet) -> Self {
        let mut h = RepHistogram::zeros(s.field());
        for x in s.iter() {
            h.counts[x as usize] = 1;
        }
        h
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    #[inline]
    pub fn get(&self, x: u32) -> u64 {
        self.counts[x as usize]
    }

    pub(crate) fn bump(&mut self, x: u32, by: u64) {
        self.counts[x as usize] += by;
    }

    pub fn mass(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn support(&self) -> FpSet {
        let mut s = FpSet::empty(self.field);
        for (x, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                s.insert(x as u32);
            }
        }
        s
    }

    /// Pushes mass forward along `x -> f(x)`.
    pub fn push_forward(&self, f: impl Fn(u32) -> u32) -> RepHistogram {
        let mut out = RepHistogram::zeros(self.field);
        for (x, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                out.counts[f(x as u32) as usize] += c;
            }
        }
        out
    }

    /// Histogram of `x^2` where `x` is distributed as `self`.
    pub fn squared(&self) -> RepHistogram {
        let field = self.field;
        self.push_forward(|x| field.square(x))
    }

    /// Sum of `r(x)^2` over `x != 0`.
    pub fn second_moment_off_zero(&self) -> u128 {
        self.counts
            .iter()
            .skip(1)
            .map(|&c| c as u128 * c as u128)
            .sum()
    }

    pub fn second_moment(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128 * c as u128).sum()
    }

    fn same_field(&self, other: &RepHistogram) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            })
        }
    }

    /// Additive convolution by direct accumulation over the two supports.
    pub fn convolve_naive(&self, other: &RepHistogram) -> Result<RepHistogram> {
        self.same_field(other)?;
        let field = self.field;
        let rhs: Vec<(u32, u64)> = nonzero(&other.counts).collect();
        let mut out = RepHistogram::zeros(field);
        for (x, cx) in nonzero(&self.counts) {
            for &(y, cy) in &rhs {
                out.counts[field.add(x, y) as usize] += cx * cy;
            }
        }
        Ok(out)
    }

    /// Additive convolution through an exact NTT. Falls back to the naive
    /// route when the counts are too large for exact recovery.
    pub fn convolve_fast(&self, other: &RepHistogram) -> Result<RepHistogram> {
        self.same_field(other)?;
        match ntt::cyclic_convolution(&self.counts, &other.counts) {
            Some(wide) => {
                let counts = wide
                    .into_iter()
                    .map(|v| u64::try_from(v).expect("convolution mass fits u64"))
                    .collect();
                Ok(RepHistogram {
                    field: self.field,
                    counts,
                })
            }
            None => self.convolve_naive(other),
        }
    }

    /// Picks naive accumulation for sparse inputs and the NTT otherwise.
    pub fn convolve(&self, other: &RepHistogram) -> Result<RepHistogram> {
        let pairs = nonzero(&self.counts).count() as u64 * nonzero(&other.counts).count() as u64;
        if pairs <= NAIVE_PAIR_LIMIT {
            self.convolve_naive(other)
        } else {
            self.convolve_fast(other)
        }
    }
}

fn nonzero(counts: &[u64]) -> impl Iterator<Item = (u32, u64)> + '_ {
    counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(x, &c)| (x as u32, c))
}

/// `r(x) = #{(b, c) in B x C : b + c = x}` by direct accumulation.
pub fn rep_function(b: &FpSet, c: &FpSet) -> Result<RepHistogram> {
    b.same_field(c)?;
    let field = b.field();
    let mut h = RepHistogram::zeros(field);
    let cs: Vec<u32> = c.iter().collect();
    for x in b.iter() {
        for &y in &cs {
            h.counts[field.add(x, y) as usize] += 1;
        }
    }
    Ok(h)
}

/// Same counts as [`rep_function`], computed by exact convolution.
pub fn rep_function_fast(b: &FpSet, c: &FpSet) -> Result<RepHistogram> {
    RepHistogram::indicator(b).convolve_fast(&RepHistogram::indicator(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn set(p: u64, xs: &[u64]) -> FpSet {
        FpSet::from_elements(f(p), xs.iter().copied()).unwrap()
    }

    #[test]
    fn rep_function_examples() {
        let s = set(5, &[0, 1]);
        let h = rep_function(&s, &s).unwrap();
        assert_eq!(h.counts(), &[1, 2, 1, 0, 0]);
        assert_eq!(rep_function_fast(&s, &s).unwrap(), h);

        let c = set(7, &[2, 5, 6]);
        let h = rep_function(&set(7, &[0]), &c).unwrap();
        assert_eq!(h, RepHistogram::indicator(&c));

        let full = FpSet::full(f(5));
        assert_eq!(rep_function(&full, &full).unwrap().counts(), &[5; 5]);
        assert_eq!(rep_function_fast(&full, &full).unwrap().counts(), &[5; 5]);
    }

    #[test]
    fn field_mismatch_is_an_error() {
        assert!(matches!(
            rep_function(&set(5, &[0]), &set(7, &[0])),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn squared_push_forward_keeps_mass() {
        let field = f(11);
        let h = RepHistogram::from_counts(field, (0..11).collect()).unwrap();
        let sq = h.squared();
        assert_eq!(sq.mass(), h.mass());
        assert_eq!(sq.get(1), 1 + 10);
        assert_eq!(sq.get(0), 0);
    }
}
