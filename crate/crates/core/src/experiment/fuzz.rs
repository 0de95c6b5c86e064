//! Random point, line and plane configurations for fuzzing the incidence
//! bounds.

use rand::seq::index::sample;
use rand::Rng;

use crate::error::Result;
use crate::field::PrimeField;
use crate::incidence::{
    hanson_check, Line2, vinh_check, vinh_plane_check, IncidenceReport,
    LineMultiset, Plane3, PlaneMultiset, Point2, Point3, PointMultiset2, PointMultiset3,
};

fn point2(field: PrimeField, i: usize) -> Point2 {
    let p = field.p() as usize;
    Point2 {
        x: (i / p) as u32,
        y: (i % p) as u32,
    }
}

fn point3(field: PrimeField, i: usize) -> Point3 {
    let p = field.p() as usize;
    Point3 {
        x: (i / (p * p)) as u32,
        y: (i / p % p) as u32,
        z: (i % p) as u32,
    }
}

/// `n` distinct points of F_p^2 (capped at `p^2`).
pub fn random_points2<R: Rng>(rng: &mut R, field: PrimeField, n: usize) -> PointMultiset2 {
    let total = field.order() * field.order();
    let idx = sample(rng, total, n.min(total));
    PointMultiset2::simple(field, idx.into_iter().map(|i| point2(field, i)))
}

/// `n` distinct lines (capped at `p^2 + p`).
pub fn random_lines<R: Rng>(rng: &mut R, field: PrimeField, n: usize) -> LineMultiset {
    let p = field.order();
    let idx = sample(rng, p * p + p, n.min(p * p + p));
    LineMultiset::simple(field, idx.into_iter().map(|i| Line2::from_index(i, field.p())))
}

pub fn random_points3<R: Rng>(rng: &mut R, field: PrimeField, n: usize) -> PointMultiset3 {
    let total = field.order().pow(3);
    let idx = sample(rng, total, n.min(total));
    PointMultiset3::simple(field, idx.into_iter().map(|i| point3(field, i)))
}

/// Planes in canonical order: `(1, b, c, d)`, then `(0, 1, c, d)`, then
/// `(0, 0, 1, d)`.
fn plane_from_index(field: PrimeField, i: usize) -> Plane3 {
    let p = field.order();
    let (a, b, c, d) = if i < p * p * p {
        (1, i / (p * p), i / p % p, i % p)
    } else if i < p * p * p + p * p {
        let j = i - p * p * p;
        (0, 1, j / p, j % p)
    } else {
        (0, 0, 1, i - p * p * p - p * p)
    };
    Plane3::new(field, a as i64, b as i64, c as i64, d as i64).expect("nonzero normal")
}

/// `n` distinct planes (capped at `p^3 + p^2 + p`).
pub fn random_planes<R: Rng>(rng: &mut R, field: PrimeField, n: usize) -> PlaneMultiset {
    let p = field.order();
    let total = p * p * p + p * p + p;
    let idx = sample(rng, total, n.min(total));
    PlaneMultiset::simple(field, idx.into_iter().map(|i| plane_from_index(field, i)))
}

/// Gives each element of `m` a multiplicity in `1..=max_mult`.
pub fn with_multiplicities<T: Ord + Copy, R: Rng>(
    rng: &mut R,
    m: &crate::incidence::Multiset<T>,
    max_mult: u64,
) -> crate::incidence::Multiset<T> {
    crate::incidence::Multiset::from_counts(
        m.field(),
        m.iter()
            .map(|(x, _)| (x, rng.gen_range(1..=max_mult)))
            .collect::<Vec<_>>(),
    )
}

/// Vinh, Hanson (multiplicities up to 5) and plane checks on one random
/// configuration each.
pub fn fuzz_round<R: Rng>(
    rng: &mut R,
    field: PrimeField,
    points: usize,
    objects: usize,
) -> Result<[IncidenceReport; 3]> {
    let pts = random_points2(rng, field, points);
    let lines = random_lines(rng, field, objects);
    let vinh = vinh_check(&pts, &lines)?;
    let mpts = with_multiplicities(rng, &pts, 5);
    let mlines = with_multiplicities(rng, &lines, 5);
    let hanson = hanson_check(&mpts, &mlines)?;
    let pts3 = random_points3(rng, field, points);
    let planes = random_planes(rng, field, objects);
    let plane = vinh_plane_check(&pts3, &planes)?;
    Ok([vinh, hanson, plane])
}
