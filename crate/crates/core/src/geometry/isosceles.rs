//! Isosceles triangle counts with a fixed apex set and base set.
//!
//! A triangle is an ordered triple `(x, y, z)`, `x` an apex and `y, z` bases,
//! with `||x - y|| = ||x - z|| != 0`. It is of type T1 when `||y - z|| != 0`,
//! degenerate when `y = z`, and isotropic when `y != z` but `||y - z|| = 0`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::incidence::{count_incidences_2d, PointMultiset2};

use super::bisector::{bisector_census, BisectorClass};
use super::distance::{dist2, PointSet2D, QuadraticForm};

/// Limit on `|apexes| * |bases|` for the census.
pub const ISOSCELES_WORK_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct IsoscelesCensus {
    pub t1: u64,
    pub t2_degenerate: u64,
    pub t2_isotropic: u64,
}

impl IsoscelesCensus {
    pub fn total(&self) -> u64 {
        self.t1 + self.t2_degenerate + self.t2_isotropic
    }

    pub fn t2(&self) -> u64 {
        self.t2_degenerate + self.t2_isotropic
    }
}

fn same_field(a: &PointSet2D, b: &PointSet2D) -> Result<PrimeField> {
    if a.field() == b.field() {
        Ok(a.field())
    } else {
        Err(Error::FieldMismatch {
            left: a.field().p(),
            right: b.field().p(),
        })
    }
}

fn guard(apexes: &PointSet2D, bases: &PointSet2D) -> Result<()> {
    let work = apexes.len() as u64 * bases.len() as u64;
    if work > ISOSCELES_WORK_BUDGET {
        Err(Error::budget(
            "isosceles census (|apexes|*|bases|)",
            work,
            ISOSCELES_WORK_BUDGET,
        ))
    } else {
        Ok(())
    }
}

/// Direct census. For each apex the bases are grouped by distance; inside a
/// distance class, pairs with isotropic difference are grouped by their
/// offset along each isotropic direction `(1, s)`.
pub fn isosceles_census(
    apexes: &PointSet2D,
    bases: &PointSet2D,
    form: QuadraticForm,
) -> Result<IsoscelesCensus> {
    let field = same_field(apexes, bases)?;
    guard(apexes, bases)?;
    let slopes = form.isotropic_slopes(field);
    let mut out = IsoscelesCensus::default();
    let mut by_dist: HashMap<u32, u64> = HashMap::new();
    let mut by_line: HashMap<(u32, u32, u32), u64> = HashMap::new();
    for &x in apexes.points() {
        by_dist.clear();
        by_line.clear();
        for &y in bases.points() {
            let r = dist2(field, form, x, y);
            if r == 0 {
                continue;
            }
            *by_dist.entry(r).or_default() += 1;
            for (k, &s) in slopes.iter().enumerate() {
                // y - z is a multiple of (1, s) iff y.y - s*y.x agrees
                let offset = field.sub(y.y, field.mul(s, y.x));
                *by_line.entry((r, k as u32, offset)).or_default() += 1;
            }
        }
        let all: u64 = by_dist.values().map(|&c| c * c).sum();
        let degenerate: u64 = by_dist.values().sum();
        let isotropic: u64 = by_line.values().map(|&c| c * (c - 1)).sum();
        out.t2_degenerate += degenerate;
        out.t2_isotropic += isotropic;
        out.t1 += all - degenerate - isotropic;
    }
    Ok(out)
}

/// T1 through incidences with bisectors, split into its parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IsoscelesIncidence {
    /// Incidences between the apexes and the non-isotropic bisectors of the
    /// bases, `sum_l i(l) m(l)`.
    pub incidences: u64,
    /// Triples with `||x - y|| = ||x - z|| = 0` and `||y - z|| != 0`. These
    /// lie on the bisector but are not isosceles; they only occur when `-1`
    /// is a square.
    pub null_apex_triples: u64,
    pub t1: u64,
}

/// T1 as (apex, non-isotropic bisector) incidences, less the null-apex triples.
pub fn isosceles_via_incidence_parts(
    apexes: &PointSet2D,
    bases: &PointSet2D,
) -> Result<IsoscelesIncidence> {
    let field = same_field(apexes, bases)?;
    guard(apexes, bases)?;
    let census = bisector_census(bases, BisectorClass::Nonisotropic)?;
    let apex_ms = PointMultiset2::simple(field, apexes.points().iter().copied());
    let incidences = count_incidences_2d(&apex_ms, &census.lines)?;
    let null_apex_triples = null_apex_triples(apexes, bases);
    Ok(IsoscelesIncidence {
        incidences,
        null_apex_triples,
        t1: incidences - null_apex_triples,
    })
}

pub fn isosceles_via_incidence(apexes: &PointSet2D, bases: &PointSet2D) -> Result<u64> {
    Ok(isosceles_via_incidence_parts(apexes, bases)?.t1)
}

/// Ordered `(x, y, z)` with `y - x`, `z - x` nonzero, isotropic and on
/// different isotropic lines through `x` (equivalently `||y - z|| != 0`).
fn null_apex_triples(apexes: &PointSet2D, bases: &PointSet2D) -> u64 {
    let field = apexes.field();
    let slopes = QuadraticForm::Euclidean.isotropic_slopes(field);
    let [s, t] = slopes[..] else {
        return 0;
    };
    let key = |q: crate::incidence::Point2, s: u32| field.sub(q.y, field.mul(s, q.x));
    let mut on_s: HashMap<u32, u64> = HashMap::new();
    let mut on_t: HashMap<u32, u64> = HashMap::new();
    for &y in bases.points() {
        *on_s.entry(key(y, s)).or_default() += 1;
        *on_t.entry(key(y, t)).or_default() += 1;
    }
    let base_set: std::collections::HashSet<_> = bases.points().iter().copied().collect();
    apexes
        .points()
        .iter()
        .map(|&x| {
            let own = base_set.contains(&x) as u64;
            let ns = on_s.get(&key(x, s)).copied().unwrap_or(0) - own;
            let nt = on_t.get(&key(x, t)).copied().unwrap_or(0) - own;
            2 * ns * nt
        })
        .sum()
}

/// Exact `#{(x, y, z)}` by brute force; used to audit the faster routes on
/// small instances.
pub fn isosceles_census_brute(
    apexes: &PointSet2D,
    bases: &PointSet2D,
    form: QuadraticForm,
) -> Result<IsoscelesCensus> {
    let field = same_field(apexes, bases)?;
    let work = apexes.len() as u64 * bases.len() as u64 * bases.len() as u64;
    if work > ISOSCELES_WORK_BUDGET {
        return Err(Error::budget(
            "brute isosceles census",
            work,
            ISOSCELES_WORK_BUDGET,
        ));
    }
    let mut out = IsoscelesCensus::default();
    for &x in apexes.points() {
        for &y in bases.points() {
            let r = dist2(field, form, x, y);
            if r == 0 {
                continue;
            }
            for &z in bases.points() {
                if dist2(field, form, x, z) != r {
                    continue;
                }
                if y == z {
                    out.t2_degenerate += 1;
                } else if dist2(field, form, y, z) == 0 {
                    out.t2_isotropic += 1;
                } else {
                    out.t1 += 1;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::Point2;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn pts(field: PrimeField, xs: &[(u32, u32)]) -> PointSet2D {
        PointSet2D::new(field, xs.iter().map(|&(x, y)| Point2 { x, y }).collect()).unwrap()
    }

    #[test]
    fn apex_at_origin_example() {
        let apex = pts(f(5), &[(0, 0)]);
        let bases = pts(f(5), &[(1, 0), (0, 1)]);
        let c = isosceles_census(&apex, &bases, QuadraticForm::Euclidean).unwrap();
        assert_eq!(
            c,
            IsoscelesCensus {
                t1: 2,
                t2_degenerate: 2,
                t2_isotropic: 0
            }
        );
        assert_eq!(
            c,
            isosceles_census_brute(&apex, &bases, QuadraticForm::Euclidean).unwrap()
        );
        assert_eq!(isosceles_via_incidence(&apex, &bases).unwrap(), 2);
    }

    #[test]
    fn singleton_bases() {
        let apex = pts(f(7), &[(0, 0), (1, 2), (3, 3)]);
        let bases = pts(f(7), &[(1, 1)]);
        let c = isosceles_census(&apex, &bases, QuadraticForm::Euclidean).unwrap();
        assert_eq!(c.t1, 0);
        assert_eq!(c.t2_isotropic, 0);
        assert_eq!(c.t2_degenerate, 3);
        assert_eq!(isosceles_via_incidence(&apex, &bases).unwrap(), 0);
    }

    #[test]
    fn null_apex_triples_are_removed() {
        // p = 5: i = 2, so (1, 2) and (1, 3) are isotropic directions
        let field = f(5);
        let apex = pts(field, &[(0, 0)]);
        let bases = pts(field, &[(1, 2), (1, 3)]);
        let parts = isosceles_via_incidence_parts(&apex, &bases).unwrap();
        assert_eq!(parts.null_apex_triples, 2);
        assert_eq!(parts.incidences, 2);
        assert_eq!(parts.t1, 0);
        let brute = isosceles_census_brute(&apex, &bases, QuadraticForm::Euclidean).unwrap();
        assert_eq!(brute.t1, 0);
    }

    #[test]
    fn minkowski_census_matches_brute_force() {
        let field = f(11);
        let apex = pts(field, &[(0, 0), (2, 5), (7, 1)]);
        let bases = pts(
            field,
            &[(1, 1), (2, 2), (3, 3), (4, 7), (5, 6), (9, 2), (0, 10), (6, 6)],
        );
        assert_eq!(
            isosceles_census(&apex, &bases, QuadraticForm::Minkowski).unwrap(),
            isosceles_census_brute(&apex, &bases, QuadraticForm::Minkowski).unwrap()
        );
    }
}
