//! Exact multiplicity-weighted incidence counts.
//!
//! Several evaluation orders are provided; [`count_incidences_2d`] and
//! [`count_incidences_3d`] pick the cheapest by a work estimate. Every order
//! returns the same integer.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;

use super::multiset::{LineMultiset, Multiset, PlaneMultiset, PointMultiset2, PointMultiset3};
use super::objects::{Line2, Plane3, Point2, Point3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// For each line (plane), walk its points and look them up.
    ScanObjects,
    /// For each point, walk the lines (planes) through it and look them up.
    Pencil,
    /// Test every (point, object) pair.
    Pairwise,
}

fn check_fields<A: Ord + Copy, B: Ord + Copy>(a: &Multiset<A>, b: &Multiset<B>) -> Result<PrimeField> {
    if a.field() == b.field() {
        Ok(a.field())
    } else {
        Err(Error::FieldMismatch {
            left: a.field().p(),
            right: b.field().p(),
        })
    }
}

fn lookup<T: Ord + Copy + std::hash::Hash>(m: &Multiset<T>) -> HashMap<T, u64> {
    m.iter().collect()
}

/// Spaces with at most this many points get a dense multiplicity table.
const DENSE_POINTS: usize = 1 << 24;

/// Multiplicity lookup for points, dense when the space is small.
enum PointTable<T> {
    Dense(Vec<u64>, usize),
    Sparse(HashMap<T, u64>),
}

trait Linear: Copy {
    fn linear(self, p: usize) -> usize;
}

impl Linear for Point2 {
    fn linear(self, p: usize) -> usize {
        self.x as usize * p + self.y as usize
    }
}

impl Linear for Point3 {
    fn linear(self, p: usize) -> usize {
        (self.x as usize * p + self.y as usize) * p + self.z as usize
    }
}

impl<T: Ord + Copy + std::hash::Hash + Linear> PointTable<T> {
    fn new(m: &Multiset<T>, space: usize) -> Self {
        let p = m.field().order();
        if space <= DENSE_POINTS {
            let mut v = vec![0; space];
            for (q, k) in m.iter() {
                v[q.linear(p)] = k;
            }
            PointTable::Dense(v, p)
        } else {
            PointTable::Sparse(lookup(m))
        }
    }

    #[inline]
    fn get(&self, q: T) -> u64 {
        match self {
            PointTable::Dense(v, p) => v[q.linear(*p)],
            PointTable::Sparse(h) => h.get(&q).copied().unwrap_or(0),
        }
    }
}

pub fn choose_strategy_2d(points: usize, lines: usize, p: u64) -> Strategy {
    let scan = lines as u64 * p;
    let pencil = points as u64 * (p + 1);
    let pairwise = points as u64 * lines as u64;
    if pairwise <= scan && pairwise <= pencil {
        Strategy::Pairwise
    } else if scan <= pencil {
        Strategy::ScanObjects
    } else {
        Strategy::Pencil
    }
}

pub fn count_incidences_2d(pts: &PointMultiset2, lines: &LineMultiset) -> Result<u64> {
    let field = check_fields(pts, lines)?;
    let s = choose_strategy_2d(pts.support_len(), lines.support_len(), field.p() as u64);
    count_incidences_2d_with(pts, lines, s)
}

pub fn count_incidences_2d_with(
    pts: &PointMultiset2,
    lines: &LineMultiset,
    strategy: Strategy,
) -> Result<u64> {
    let field = check_fields(pts, lines)?;
    let total = match strategy {
        Strategy::ScanObjects => {
            let table = PointTable::new(pts, field.order() * field.order());
            lines
                .iter()
                .map(|(l, ml)| {
                    let on: u64 = l.points(field).map(|q| table.get(q)).sum();
                    on * ml
                })
                .sum()
        }
        Strategy::Pencil => {
            let table = lookup(lines);
            pts.iter()
                .map(|(q, mq)| {
                    let through: u64 = pencil_2d(field, q).filter_map(|l| table.get(&l)).sum();
                    through * mq
                })
                .sum()
        }
        Strategy::Pairwise => {
            let ls: Vec<(Line2, u64)> = lines.iter().collect();
            pts.iter()
                .map(|(q, mq)| {
                    ls.iter()
                        .filter(|(l, _)| l.contains(field, q))
                        .map(|(_, ml)| ml * mq)
                        .sum::<u64>()
                })
                .sum()
        }
    };
    Ok(total)
}

/// The `p + 1` lines through a point, in canonical form.
pub fn pencil_2d(field: PrimeField, q: Point2) -> impl Iterator<Item = Line2> {
    let vertical = Line2::new(field, 0, 1, q.y as i64).expect("nonzero direction");
    field
        .elements()
        .map(move |b| {
            let c = field.add(q.x, field.mul(b, q.y));
            Line2::new(field, 1, b as i64, c as i64).expect("nonzero direction")
        })
        .chain(std::iter::once(vertical))
}

/// The `p^2 + p + 1` planes through a point, in canonical form.
pub fn pencil_3d(field: PrimeField, q: Point3) -> impl Iterator<Item = Plane3> {
    let dirs = field
        .elements()
        .flat_map(move |b| field.elements().map(move |c| (1u32, b, c)))
        .chain(field.elements().map(|c| (0u32, 1u32, c)))
        .chain(std::iter::once((0u32, 0u32, 1u32)));
    dirs.map(move |(a, b, c)| {
        let d = field.add(
            field.add(field.mul(a, q.x), field.mul(b, q.y)),
            field.mul(c, q.z),
        );
        Plane3::new(field, a as i64, b as i64, c as i64, d as i64).expect("nonzero direction")
    })
}

pub fn choose_strategy_3d(points: usize, planes: usize, p: u64) -> Strategy {
    let scan = planes as u64 * p * p;
    let pencil = points as u64 * (p * p + p + 1);
    let pairwise = points as u64 * planes as u64;
    if pairwise <= scan && pairwise <= pencil {
        Strategy::Pairwise
    } else if scan <= pencil {
        Strategy::ScanObjects
    } else {
        Strategy::Pencil
    }
}

pub fn count_incidences_3d(pts: &PointMultiset3, planes: &PlaneMultiset) -> Result<u64> {
    let field = check_fields(pts, planes)?;
    let s = choose_strategy_3d(pts.support_len(), planes.support_len(), field.p() as u64);
    count_incidences_3d_with(pts, planes, s)
}

pub fn count_incidences_3d_with(
    pts: &PointMultiset3,
    planes: &PlaneMultiset,
    strategy: Strategy,
) -> Result<u64> {
    let field = check_fields(pts, planes)?;
    let total = match strategy {
        Strategy::ScanObjects => {
            let table = PointTable::new(pts, field.order().pow(3));
            planes
                .iter()
                .map(|(h, mh)| {
                    let on: u64 = h.points(field).map(|q| table.get(q)).sum();
                    on * mh
                })
                .sum()
        }
        Strategy::Pencil => {
            let table = lookup(planes);
            pts.iter()
                .map(|(q, mq)| {
                    let through: u64 = pencil_3d(field, q).filter_map(|h| table.get(&h)).sum();
                    through * mq
                })
                .sum()
        }
        Strategy::Pairwise => {
            let hs: Vec<(Plane3, u64)> = planes.iter().collect();
            pts.iter()
                .map(|(q, mq)| {
                    hs.iter()
                        .filter(|(h, _)| h.contains(field, q))
                        .map(|(_, mh)| mh * mq)
                        .sum::<u64>()
                })
                .sum()
        }
    };
    Ok(total)
}
