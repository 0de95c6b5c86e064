//! Algebraic distances, distance sets and distance histograms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::incidence::Point2;
use crate::rep::RepHistogram;
use crate::set::{difference_set, iterated_sumset, square_set, FpSet};

/// Largest explicit point list accepted by the O(|E|^2) routines.
pub const EXPLICIT_POINT_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadraticForm {
    /// `sum (x_i - y_i)^2`
    #[default]
    Euclidean,
    /// `(x_1 - y_1)^2 - (x_2 - y_2)^2`, planar only.
    Minkowski,
}

impl QuadraticForm {
    /// Coefficient of the second squared coordinate in the planar form.
    pub(crate) fn second_sign(self) -> i64 {
        match self {
            QuadraticForm::Euclidean => 1,
            QuadraticForm::Minkowski => -1,
        }
    }

    pub(crate) fn check_dimension(self, d: usize) -> Result<()> {
        if self == QuadraticForm::Minkowski && d != 2 {
            Err(Error::MinkowskiDimension(d))
        } else {
            Ok(())
        }
    }

    /// Value of the form on the planar vector `(u, v)`.
    #[inline]
    pub fn norm2(self, field: PrimeField, u: u32, v: u32) -> u32 {
        match self {
            QuadraticForm::Euclidean => field.add(field.square(u), field.square(v)),
            QuadraticForm::Minkowski => field.sub(field.square(u), field.square(v)),
        }
    }

    /// Slopes `s` such that `(1, s)` is a nonzero isotropic vector.
    pub fn isotropic_slopes(self, field: PrimeField) -> Vec<u32> {
        // 1 + e s^2 = 0  <=>  s^2 = -e  (e = +-1)
        let target = field.reduce(-self.second_sign());
        match field.sqrt(target) {
            Some(s) if s != 0 => {
                let t = field.neg(s);
                if s < t {
                    vec![s, t]
                } else {
                    vec![t, s]
                }
            }
            _ => Vec::new(),
        }
    }
}

/// `||x - y||` under `form`.
pub fn algdist(field: PrimeField, x: &[u32], y: &[u32], form: QuadraticForm) -> Result<u32> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    form.check_dimension(x.len())?;
    let sq: Vec<u32> = x
        .iter()
        .zip(y)
        .map(|(&a, &b)| field.square(field.sub(field.reduce(a as i64), field.reduce(b as i64))))
        .collect();
    Ok(match form {
        QuadraticForm::Euclidean => sq.iter().fold(0, |acc, &s| field.add(acc, s)),
        QuadraticForm::Minkowski => field.sub(sq[0], sq[1]),
    })
}

#[inline]
pub(crate) fn dist2(field: PrimeField, form: QuadraticForm, a: Point2, b: Point2) -> u32 {
    form.norm2(field, field.sub(a.x, b.x), field.sub(a.y, b.y))
}

/// A list of distinct points of F_p^2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointSet2D {
    #[serde(rename = "p")]
    field: PrimeField,
    points: Vec<Point2>,
}

impl PointSet2D {
    pub fn new(field: PrimeField, points: Vec<Point2>) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(points.len());
        for q in &points {
            field.check(q.x as u64)?;
            field.check(q.y as u64)?;
            if !seen.insert(*q) {
                return Err(Error::DuplicatePoint);
            }
        }
        Ok(PointSet2D { field, points })
    }

    /// `A x B`, row-major.
    pub fn product(a: &FpSet, b: &FpSet) -> Result<Self> {
        a.same_field(b)?;
        let points = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| Point2 { x, y }))
            .collect();
        Ok(PointSet2D {
            field: a.field(),
            points,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn translate(&self, t: Point2) -> Self {
        let f = self.field;
        PointSet2D {
            field: f,
            points: self
                .points
                .iter()
                .map(|q| Point2 {
                    x: f.add(q.x, t.x),
                    y: f.add(q.y, t.y),
                })
                .collect(),
        }
    }

    /// `c * E` for nonzero `c`.
    pub fn dilate(&self, c: u32) -> Result<Self> {
        let f = self.field;
        if c % f.p() == 0 {
            return Err(Error::DegenerateCoefficients);
        }
        Ok(PointSet2D {
            field: f,
            points: self
                .points
                .iter()
                .map(|q| Point2 {
                    x: f.mul(q.x, c),
                    y: f.mul(q.y, c),
                })
                .collect(),
        })
    }

    pub fn negate(&self) -> Self {
        let f = self.field;
        PointSet2D {
            field: f,
            points: self
                .points
                .iter()
                .map(|q| Point2 {
                    x: f.neg(q.x),
                    y: f.neg(q.y),
                })
                .collect(),
        }
    }

    pub(crate) fn guard(&self, what: &'static str, limit: usize) -> Result<()> {
        if self.len() > limit {
            Err(Error::budget(what, self.len() as u64, limit as u64))
        } else {
            Ok(())
        }
    }
}

/// `Delta(E) = {||x - y|| : x, y in E}` by enumerating all ordered pairs.
pub fn distance_set_explicit(
    field: PrimeField,
    points: &[Vec<u32>],
    form: QuadraticForm,
) -> Result<FpSet> {
    if points.len() > EXPLICIT_POINT_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "explicit distance set",
            size: points.len() as u64,
            limit: EXPLICIT_POINT_BUDGET as u64,
            hint: "; use distance_set_product for Cartesian products",
        });
    }
    let mut out = FpSet::empty(field);
    let Some(first) = points.first() else {
        return Ok(out);
    };
    let d = first.len();
    form.check_dimension(d)?;
    for q in points {
        if q.len() != d {
            return Err(Error::DimensionMismatch {
                left: d,
                right: q.len(),
            });
        }
    }
    for (i, x) in points.iter().enumerate() {
        out.insert(0);
        for y in &points[i + 1..] {
            // ||x - y|| = ||y - x||
            out.insert(algdist(field, x, y, form)?);
        }
    }
    Ok(out)
}

/// `Delta(A^d)` through the product identity: the `d`-fold sumset of `(A - A)^2`.
pub fn distance_set_product(a: &FpSet, d: usize, form: QuadraticForm) -> Result<FpSet> {
    if form != QuadraticForm::Euclidean {
        return Err(Error::ProductNeedsEuclidean);
    }
    let sq = square_set(&difference_set(a)?);
    iterated_sumset(&sq, d)
}

/// `S_r`: ordered pairs `(x, y) in E x E` with `||x - y|| = r`; the diagonal
/// lands in `S_0`. Total mass `|E|^2`.
pub type SrHistogram = RepHistogram;

/// Same object as [`SrHistogram`], indexed by `t` instead of `r`.
pub type NuHistogram = RepHistogram;

pub fn sr_histogram(e: &PointSet2D, form: QuadraticForm) -> Result<SrHistogram> {
    e.guard("distance histogram", EXPLICIT_POINT_BUDGET)?;
    let field = e.field();
    let mut h = RepHistogram::zeros(field);
    let pts = e.points();
    h.bump(0, pts.len() as u64);
    for (i, &x) in pts.iter().enumerate() {
        for &y in &pts[i + 1..] {
            h.bump(dist2(field, form, x, y), 2);
        }
    }
    Ok(h)
}

/// `sum_{r != 0} S_r^2`, the number of quadruples `(x, y, z, t)` with
/// `||x - y|| = ||z - t|| != 0`.
pub fn distance_energy(e: &PointSet2D, form: QuadraticForm) -> Result<u128> {
    Ok(sr_histogram(e, form)?.second_moment_off_zero())
}
