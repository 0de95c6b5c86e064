use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point2 {
    pub x: u32,
    pub y: u32,
}

impl Point2 {
    pub fn new(field: PrimeField, x: i64, y: i64) -> Self {
        Point2 {
            x: field.reduce(x),
            y: field.reduce(y),
        }
    }

    pub fn coords(self) -> [u32; 2] {
        [self.x, self.y]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point3 {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Point3 {
    pub fn new(field: PrimeField, x: i64, y: i64, z: i64) -> Self {
        Point3 {
            x: field.reduce(x),
            y: field.reduce(y),
            z: field.reduce(z),
        }
    }
}

/// The line `aX + bY = c`, scaled so the first nonzero of `(a, b)` is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Line2 {
    a: u32,
    b: u32,
    c: u32,
}

impl Line2 {
    pub fn new(field: PrimeField, a: i64, b: i64, c: i64) -> Result<Self> {
        let (a, b, c) = (field.reduce(a), field.reduce(b), field.reduce(c));
        let lead = if a != 0 { a } else { b };
        let s = field.inv(lead).ok_or(Error::DegenerateCoefficients)?;
        Ok(Line2 {
            a: field.mul(a, s),
            b: field.mul(b, s),
            c: field.mul(c, s),
        })
    }

    /// Canonical form from reduced coefficients using a precomputed inverse
    /// table; `None` if `(a, b) = (0, 0)`.
    pub(crate) fn from_reduced(field: PrimeField, inv: &[u32], a: u32, b: u32, c: u32) -> Option<Self> {
        let lead = if a != 0 { a } else { b };
        if lead == 0 {
            return None;
        }
        let s = inv[lead as usize];
        Some(Line2 {
            a: field.mul(a, s),
            b: field.mul(b, s),
            c: field.mul(c, s),
        })
    }

    pub fn coefficients(self) -> (u32, u32, u32) {
        (self.a, self.b, self.c)
    }

    pub fn contains(self, field: PrimeField, pt: Point2) -> bool {
        field.add(field.mul(self.a, pt.x), field.mul(self.b, pt.y)) == self.c
    }

    /// The `p` points of the line, in order of the free coordinate (`Y`
    /// when `a = 1`, else `X`).
    pub fn points(self, field: PrimeField) -> impl Iterator<Item = Point2> {
        let Line2 { a, b, c } = self;
        field.elements().map(move |t| {
            if a == 1 {
                // X = c - bY
                Point2 {
                    x: field.sub(c, field.mul(b, t)),
                    y: t,
                }
            } else {
                // Y = c
                Point2 { x: t, y: c }
            }
        })
    }

    /// Dense index in `0..p^2 + p`.
    pub(crate) fn index(self, p: u32) -> usize {
        let p = p as usize;
        if self.a == 1 {
            self.b as usize * p + self.c as usize
        } else {
            p * p + self.c as usize
        }
    }

    pub(crate) fn from_index(idx: usize, p: u32) -> Self {
        let p = p as usize;
        if idx < p * p {
            Line2 {
                a: 1,
                b: (idx / p) as u32,
                c: (idx % p) as u32,
            }
        } else {
            Line2 {
                a: 0,
                b: 1,
                c: (idx - p * p) as u32,
            }
        }
    }
}

/// The plane `aX + bY + cZ = d`, scaled so the first nonzero of `(a, b, c)` is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Plane3 {
    a: u32,
    b: u32,
    c: u32,
    d: u32,
}

impl Plane3 {
    pub fn new(field: PrimeField, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let (a, b, c, d) = (
            field.reduce(a),
            field.reduce(b),
            field.reduce(c),
            field.reduce(d),
        );
        let lead = [a, b, c].into_iter().find(|&v| v != 0).unwrap_or(0);
        let s = field.inv(lead).ok_or(Error::DegenerateCoefficients)?;
        Ok(Plane3 {
            a: field.mul(a, s),
            b: field.mul(b, s),
            c: field.mul(c, s),
            d: field.mul(d, s),
        })
    }

    pub fn coefficients(self) -> (u32, u32, u32, u32) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn contains(self, field: PrimeField, pt: Point3) -> bool {
        let lhs = field.add(
            field.add(field.mul(self.a, pt.x), field.mul(self.b, pt.y)),
            field.mul(self.c, pt.z),
        );
        lhs == self.d
    }

    /// The `p^2` points of the plane.
    pub fn points(self, field: PrimeField) -> impl Iterator<Item = Point3> {
        let Plane3 { a, b, c, d } = self;
        field.elements().flat_map(move |s| {
            field.elements().map(move |t| {
                // solve for the leading coordinate, whose coefficient is 1
                if a == 1 {
                    let x = field.sub(d, field.add(field.mul(b, s), field.mul(c, t)));
                    Point3 { x, y: s, z: t }
                } else if b == 1 {
                    let y = field.sub(d, field.mul(c, t));
                    Point3 { x: s, y, z: t }
                } else {
                    Point3 { x: s, y: t, z: d }
                }
            })
        })
    }
}

/// All `p^2 + p` lines of the affine plane.
pub fn all_lines(field: PrimeField) -> impl Iterator<Item = Line2> {
    let p = field.p();
    (0..(p as usize * p as usize + p as usize)).map(move |i| Line2::from_index(i, p))
}

/// All `p^2 + p + 1` planes of affine 3-space, each times `p` translates.
pub fn all_planes(field: PrimeField) -> Vec<Plane3> {
    let p = field.p();
    let mut out = Vec::new();
    for d in 0..p {
        for b in 0..p {
            for c in 0..p {
                out.push(Plane3 { a: 1, b, c, d });
            }
        }
        for c in 0..p {
            out.push(Plane3 { a: 0, b: 1, c, d });
        }
        out.push(Plane3 { a: 0, b: 0, c: 1, d });
    }
    out
}

pub fn all_points2(field: PrimeField) -> impl Iterator<Item = Point2> {
    field
        .elements()
        .flat_map(move |x| field.elements().map(move |y| Point2 { x, y }))
}

pub fn all_points3(field: PrimeField) -> impl Iterator<Item = Point3> {
    field.elements().flat_map(move |x| {
        field
            .elements()
            .flat_map(move |y| field.elements().map(move |z| Point3 { x, y, z }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_canonical_under_scaling() {
        let f = PrimeField::new(11).unwrap();
        let base = Line2::new(f, 3, 5, 7).unwrap();
        for k in 1..11 {
            assert_eq!(Line2::new(f, 3 * k, 5 * k, 7 * k).unwrap(), base);
        }
        assert_eq!(Line2::new(f, 0, 0, 1), Err(Error::DegenerateCoefficients));
        let horiz = Line2::new(f, 0, 4, 8).unwrap();
        assert_eq!(horiz.coefficients(), (0, 1, 2));
    }

    #[test]
    fn line_points_lie_on_line_and_index_roundtrips() {
        let f = PrimeField::new(7).unwrap();
        let lines: Vec<Line2> = all_lines(f).collect();
        assert_eq!(lines.len(), 56);
        for (i, l) in lines.iter().enumerate() {
            assert_eq!(l.index(7), i);
            let pts: Vec<Point2> = l.points(f).collect();
            assert_eq!(pts.len(), 7);
            assert!(pts.iter().all(|&q| l.contains(f, q)));
        }
    }

    #[test]
    fn plane_points_lie_on_plane() {
        let f = PrimeField::new(5).unwrap();
        let planes = all_planes(f);
        assert_eq!(planes.len(), 5 * (25 + 5 + 1));
        for h in &planes {
            let mut pts: Vec<Point3> = h.points(f).collect();
            pts.sort();
            pts.dedup();
            assert_eq!(pts.len(), 25);
            assert!(pts.iter().all(|&q| h.contains(f, q)));
        }
        assert_eq!(Plane3::new(f, 0, 2, 4, 1).unwrap().coefficients(), (0, 1, 2, 3));
    }
}
