//! Perpendicular bisectors and the bisector energy of a planar point set.
//!
//! Multiplicities count ordered pairs `(a, b)` with `a != b`, so every
//! multiplicity is even and the energy is exactly the number of ordered
//! quadruples `(a, b, a', b')` whose bisectors coincide.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::incidence::{Line2, LineMultiset, Point2};

use super::distance::{dist2, PointSet2D, QuadraticForm};

/// Point sets larger than this are refused by [`bisector_census`].
pub const BISECTOR_POINT_BUDGET: usize = 10_000;

/// Fields with at most this many lines use a dense counter.
const DENSE_LINE_LIMIT: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bisector {
    pub line: Line2,
    /// `||a - b|| = 0` for the generating pair.
    pub isotropic: bool,
}

/// The line `||x - a|| = ||x - b||`, i.e. `2(b - a) . x = ||b|| - ||a||`.
pub fn bisector(field: PrimeField, a: Point2, b: Point2) -> Result<Bisector> {
    if a == b {
        return Err(Error::DegeneratePair);
    }
    let (ca, cb, cc) = bisector_coefficients(field, a, b);
    let line = Line2::new(field, ca as i64, cb as i64, cc as i64)?;
    Ok(Bisector {
        line,
        isotropic: dist2(field, QuadraticForm::Euclidean, a, b) == 0,
    })
}

#[inline]
fn bisector_coefficients(field: PrimeField, a: Point2, b: Point2) -> (u32, u32, u32) {
    let two = |v: u32| field.add(v, v);
    let na = QuadraticForm::Euclidean.norm2(field, a.x, a.y);
    let nb = QuadraticForm::Euclidean.norm2(field, b.x, b.y);
    (
        two(field.sub(b.x, a.x)),
        two(field.sub(b.y, a.y)),
        field.sub(nb, na),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BisectorClass {
    Nonisotropic,
    Isotropic,
    All,
}

impl BisectorClass {
    fn admits(self, isotropic: bool) -> bool {
        match self {
            BisectorClass::Nonisotropic => !isotropic,
            BisectorClass::Isotropic => isotropic,
            BisectorClass::All => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BisectorCensus {
    pub class: BisectorClass,
    /// Always true: multiplicities count ordered pairs.
    pub ordered_pairs: bool,
    /// Lines of the requested class with their multiplicities.
    pub lines: LineMultiset,
    /// `sum m(l)^2` over non-isotropic bisectors.
    pub energy_nonisotropic: u128,
    /// `sum m(l)^2` over isotropic bisectors.
    pub energy_isotropic: u128,
    /// Ordered pairs `a != b` generating each class.
    pub pairs_nonisotropic: u64,
    pub pairs_isotropic: u64,
}

impl BisectorCensus {
    /// Number of distinct lines of the requested class with multiplicity
    /// in `[2^i, 2^{i+1})`, indexed by `i`.
    pub fn dyadic_histogram(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (_, m) in self.lines.iter() {
            let i = (63 - m.leading_zeros()) as usize;
            if out.len() <= i {
                out.resize(i + 1, 0);
            }
            out[i] += 1;
        }
        out
    }
}

enum Counter {
    Dense(Vec<u64>, Vec<bool>),
    Sparse(HashMap<Line2, (u64, bool)>),
}

/// Multiset of bisectors over all ordered pairs of distinct points of `e`.
pub fn bisector_census(e: &PointSet2D, class: BisectorClass) -> Result<BisectorCensus> {
    e.guard("bisector census", BISECTOR_POINT_BUDGET)?;
    let field = e.field();
    let p = field.p();
    let inv = field.inverse_table();
    let n_lines = p as usize * p as usize + p as usize;
    let mut counter = if n_lines <= DENSE_LINE_LIMIT {
        Counter::Dense(vec![0; n_lines], vec![false; n_lines])
    } else {
        Counter::Sparse(HashMap::new())
    };

    let pts = e.points();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            let (ca, cb, cc) = bisector_coefficients(field, a, b);
            let line = Line2::from_reduced(field, &inv, ca, cb, cc).expect("distinct points");
            let iso = dist2(field, QuadraticForm::Euclidean, a, b) == 0;
            // (a, b) and (b, a) share the bisector
            match &mut counter {
                Counter::Dense(m, flag) => {
                    let k = line.index(p);
                    m[k] += 2;
                    flag[k] = iso;
                }
                Counter::Sparse(map) => {
                    let slot = map.entry(line).or_insert((0, iso));
                    slot.0 += 2;
                }
            }
        }
    }

    let entries: BTreeMap<Line2, (u64, bool)> = match counter {
        Counter::Dense(m, flag) => m
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c > 0)
            .map(|(k, c)| (Line2::from_index(k, p), (c, flag[k])))
            .collect(),
        Counter::Sparse(map) => map.into_iter().collect(),
    };

    let mut census = BisectorCensus {
        class,
        ordered_pairs: true,
        lines: LineMultiset::new(field),
        energy_nonisotropic: 0,
        energy_isotropic: 0,
        pairs_nonisotropic: 0,
        pairs_isotropic: 0,
    };
    for (line, (m, iso)) in entries {
        let sq = m as u128 * m as u128;
        if iso {
            census.energy_isotropic += sq;
            census.pairs_isotropic += m;
        } else {
            census.energy_nonisotropic += sq;
            census.pairs_nonisotropic += m;
        }
        if class.admits(iso) {
            census.lines.add(line, m);
        }
    }
    Ok(census)
}
