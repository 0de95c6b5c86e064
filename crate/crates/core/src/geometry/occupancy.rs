use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::incidence::Line2;

use super::distance::{dist2, PointSet2D, QuadraticForm};

pub const OCCUPANCY_POINT_BUDGET: usize = 300;

/// Largest number of points of `e` on one line or one circle
/// `{x : ||x - c|| = r}`, over every center `c` in F_p^2 and every `r`
/// (including `r = 0`).
pub fn max_line_circle_occupancy(e: &PointSet2D) -> Result<u64> {
    e.guard("line/circle occupancy", OCCUPANCY_POINT_BUDGET)?;
    let field = e.field();
    let p = field.p();
    let work = p as u64 * p as u64 * e.len() as u64;
    if work > 1_000_000_000 {
        return Err(Error::budget("circle scan (p^2 |E|)", work, 1_000_000_000));
    }
    let pts = e.points();
    let mut best = pts.len().min(1) as u64;

    // lines: for each anchor, group the others by direction
    let mut dirs: HashMap<Line2, u64> = HashMap::new();
    for (i, &a) in pts.iter().enumerate() {
        dirs.clear();
        for &b in &pts[i + 1..] {
            let dx = field.sub(b.x, a.x);
            let dy = field.sub(b.y, a.y);
            // the line through a and b: dy*X - dx*Y = dy*a.x - dx*a.y
            let c = field.sub(field.mul(dy, a.x), field.mul(dx, a.y));
            let line = Line2::new(field, dy as i64, field.neg(dx) as i64, c as i64)?;
            *dirs.entry(line).or_default() += 1;
        }
        if let Some(&m) = dirs.values().max() {
            best = best.max(m + 1);
        }
    }

    // circles: every center, histogram of radii
    let mut radii = vec![0u64; p as usize];
    for cx in 0..p {
        for cy in 0..p {
            radii.iter_mut().for_each(|r| *r = 0);
            let c = crate::incidence::Point2 { x: cx, y: cy };
            for &q in pts {
                radii[dist2(field, QuadraticForm::Euclidean, q, c) as usize] += 1;
            }
            best = best.max(*radii.iter().max().unwrap_or(&0));
        }
    }
    Ok(best)
}
