//! The point-line and point-plane configurations whose incidences count
//! solutions of `(x-y)^2 + u + v = lambda` and
//! `(x-y)^2 + (s-t)^2 + u + v = lambda`.
//!
//! Each construction is counted twice: once through representation
//! histograms (all `lambda` at once) and, when small enough, by building the
//! points and lines or planes explicitly and running the incidence engine.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::geometry::{distance_set_product, QuadraticForm};
use crate::incidence::{
    count_incidences_2d, count_incidences_3d, BoundKind, IncidenceReport, Line2, LineMultiset,
    Plane3, PlaneMultiset, Point2, Point3, PointMultiset2, PointMultiset3,
};
use crate::rep::{rep_function, RepHistogram};
use crate::set::{square_set, sumset, FpSet};

/// Engine cross-checks above this work estimate are skipped in
/// [`EngineMode::Auto`].
pub const ENGINE_WORK_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Construction {
    /// Points `(-2x, v + x^2)`, lines `yX + Y = lambda - u - y^2`,
    /// `u, v` in `Delta(A^2)`.
    Thm1,
    /// As [`Construction::Thm1`] with `u, v` in `A^2 + A^2`.
    Thm14,
    /// Points `(-2x, -2s, v + x^2 + s^2)`, planes
    /// `yX + tY + Z = lambda - u - y^2 - t^2`, `u, v` in `A^2 + A^2`.
    Thm15,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::Thm1 => "thm1",
            Construction::Thm14 => "thm14",
            Construction::Thm15 => "thm15",
        }
    }

    /// The set of `lambda` with at least one solution equals this expression.
    pub fn expression(self) -> &'static str {
        match self {
            Construction::Thm1 => "Delta(A^5)",
            Construction::Thm14 => "(A-A)^2 + A^2 x4",
            Construction::Thm15 => "(A-A)^2 x2 + A^2 x4",
        }
    }

    fn planar(self) -> bool {
        self != Construction::Thm15
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineMode {
    /// Cross-check when the work estimate is within [`ENGINE_WORK_BUDGET`].
    #[default]
    Auto,
    Always,
    Never,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructionReport {
    pub construction: Construction,
    pub lambda: u32,
    /// Solution count from the histogram pipeline.
    pub solutions: u64,
    /// Incidence count from explicit points and lines/planes, if run.
    pub engine_count: Option<u64>,
    pub points: u64,
    pub objects: u64,
    /// `|P||L| > p^3` (planar) or `|P||H| > p^4`.
    pub trigger: bool,
    pub incidence: IncidenceReport,
}

impl ConstructionReport {
    /// Engine and pipeline disagree, the incidence bound fails, or the
    /// trigger holds without a solution.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.engine_count.is_some_and(|e| e != self.solutions) {
            v.push("engine/pipeline mismatch");
        }
        if !self.incidence.satisfied {
            v.push("incidence bound violated");
        }
        if self.trigger && self.solutions == 0 {
            v.push("trigger holds but no incidence");
        }
        v
    }
}

/// Everything about a construction that does not depend on `lambda`.
pub struct Prepared {
    construction: Construction,
    field: PrimeField,
    a: FpSet,
    /// Range of `u` and `v`.
    shifts: FpSet,
    /// Solutions per `lambda`.
    solutions: RepHistogram,
    points: u64,
    objects: u64,
}

impl Prepared {
    pub fn new(construction: Construction, a: &FpSet) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::EmptySet);
        }
        let field = a.field();
        let shifts = match construction {
            Construction::Thm1 => distance_set_product(a, 2, QuadraticForm::Euclidean)?,
            Construction::Thm14 | Construction::Thm15 => {
                let sq = square_set(a);
                sumset(&sq, &sq)?
            }
        };
        // (x - y)^2 over ordered pairs of A
        let neg_a = a.map(|x| field.neg(x));
        let diff_sq = rep_function(a, &neg_a)?.squared();
        let shift_ind = RepHistogram::indicator(&shifts);
        let mut hist = diff_sq.convolve(&shift_ind)?.convolve(&shift_ind)?;
        if !construction.planar() {
            hist = hist.convolve(&diff_sq)?;
        }
        let n = a.len() as u64;
        let s = shifts.len() as u64;
        let (points, objects) = if construction.planar() {
            (n * s, n * s)
        } else {
            (n * n * s, n * n * s)
        };
        Ok(Prepared {
            construction,
            field,
            a: a.clone(),
            shifts,
            solutions: hist,
            points,
            objects,
        })
    }

    pub fn trigger(&self) -> bool {
        let p = self.field.p() as u128;
        let prod = self.points as u128 * self.objects as u128;
        if self.construction.planar() {
            prod > p.pow(3)
        } else {
            prod > p.pow(4)
        }
    }

    pub fn solutions(&self, lambda: u32) -> u64 {
        self.solutions.get(lambda)
    }

    pub fn solution_histogram(&self) -> &RepHistogram {
        &self.solutions
    }

    pub fn shifts(&self) -> &FpSet {
        &self.shifts
    }

    fn engine_work(&self) -> u64 {
        let p = self.field.p() as u64;
        if self.construction.planar() {
            self.objects.saturating_mul(p).min(self.points.saturating_mul(self.objects))
        } else {
            self.objects
                .saturating_mul(p * p)
                .min(self.points.saturating_mul(self.objects))
        }
    }

    fn use_engine(&self, mode: EngineMode) -> bool {
        match mode {
            EngineMode::Always => true,
            EngineMode::Never => false,
            EngineMode::Auto => self.engine_work() <= ENGINE_WORK_BUDGET,
        }
    }

    /// Builds the explicit configuration for `lambda` and counts incidences.
    pub fn engine_count(&self, lambda: u32) -> Result<u64> {
        let f = self.field;
        let a: Vec<u32> = self.a.iter().collect();
        let u: Vec<u32> = self.shifts.iter().collect();
        let neg2 = |x: u32| f.neg(f.add(x, x));
        if self.construction.planar() {
            let pts = PointMultiset2::simple(
                f,
                a.iter().flat_map(|&x| {
                    u.iter().map(move |&v| Point2 {
                        x: neg2(x),
                        y: f.add(v, f.square(x)),
                    })
                }),
            );
            let mut lines = Vec::with_capacity(a.len() * u.len());
            for &y in &a {
                for &uu in &u {
                    let c = f.sub(f.sub(lambda, uu), f.square(y));
                    lines.push(Line2::new(f, y as i64, 1, c as i64)?);
                }
            }
            let lines = LineMultiset::simple(f, lines);
            debug_assert_eq!(pts.total(), self.points);
            debug_assert_eq!(lines.total(), self.objects);
            count_incidences_2d(&pts, &lines)
        } else {
            let mut pts = Vec::with_capacity(self.points as usize);
            for &x in &a {
                for &s in &a {
                    for &v in &u {
                        pts.push(Point3 {
                            x: neg2(x),
                            y: neg2(s),
                            z: f.add(v, f.add(f.square(x), f.square(s))),
                        });
                    }
                }
            }
            let mut planes = Vec::with_capacity(self.objects as usize);
            for &y in &a {
                for &t in &a {
                    for &uu in &u {
                        let d = f.sub(f.sub(f.sub(lambda, uu), f.square(y)), f.square(t));
                        planes.push(Plane3::new(f, y as i64, t as i64, 1, d as i64)?);
                    }
                }
            }
            let pts = PointMultiset3::simple(f, pts);
            let planes = PlaneMultiset::simple(f, planes);
            debug_assert_eq!(pts.total(), self.points);
            debug_assert_eq!(planes.total(), self.objects);
            count_incidences_3d(&pts, &planes)
        }
    }

    pub fn report(&self, lambda: u32, mode: EngineMode) -> Result<ConstructionReport> {
        let lambda = self.field.check(lambda as u64)?;
        let solutions = self.solutions(lambda);
        let engine_count = if self.use_engine(mode) {
            Some(self.engine_count(lambda)?)
        } else {
            None
        };
        let kind = if self.construction.planar() {
            BoundKind::VinhLine
        } else {
            BoundKind::VinhPlane
        };
        let incidence = IncidenceReport::evaluate(
            kind,
            self.field.p(),
            solutions,
            self.points,
            self.objects,
            self.points as u128 * self.objects as u128,
        );
        Ok(ConstructionReport {
            construction: self.construction,
            lambda,
            solutions,
            engine_count,
            points: self.points,
            objects: self.objects,
            trigger: self.trigger(),
            incidence,
        })
    }
}

pub fn thm1_construction(a: &FpSet, lambda: u32) -> Result<ConstructionReport> {
    Prepared::new(Construction::Thm1, a)?.report(lambda, EngineMode::Auto)
}

pub fn thm14_construction(a: &FpSet, lambda: u32) -> Result<ConstructionReport> {
    Prepared::new(Construction::Thm14, a)?.report(lambda, EngineMode::Auto)
}

pub fn thm15_construction(a: &FpSet, lambda: u32) -> Result<ConstructionReport> {
    Prepared::new(Construction::Thm15, a)?.report(lambda, EngineMode::Auto)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub construction: Construction,
    pub p: u32,
    pub size_a: usize,
    pub points: u64,
    pub objects: u64,
    pub trigger: bool,
    /// Every swept `lambda` has a solution.
    pub covered: bool,
    pub min_solutions: u64,
    pub engine_checked: usize,
    pub violations: Vec<String>,
    pub reports: Vec<ConstructionReport>,
}

/// Runs a construction over the given `lambda` values (all of F_p if `None`).
pub fn construction_sweep(
    construction: Construction,
    a: &FpSet,
    lambdas: Option<&[u32]>,
    mode: EngineMode,
) -> Result<SweepSummary> {
    let prep = Prepared::new(construction, a)?;
    let all: Vec<u32> = a.field().elements().collect();
    let lambdas = lambdas.unwrap_or(&all);
    let reports = lambdas
        .iter()
        .map(|&l| prep.report(l, mode))
        .collect::<Result<Vec<_>>>()?;
    let violations = reports
        .iter()
        .flat_map(|r| {
            r.violations()
                .into_iter()
                .map(move |v| format!("lambda={}: {v}", r.lambda))
        })
        .collect();
    Ok(SweepSummary {
        construction,
        p: a.field().p(),
        size_a: a.len(),
        points: prep.points,
        objects: prep.objects,
        trigger: prep.trigger(),
        covered: reports.iter().all(|r| r.solutions > 0),
        min_solutions: reports.iter().map(|r| r.solutions).min().unwrap_or(0),
        engine_checked: reports.iter().filter(|r| r.engine_count.is_some()).count(),
        violations,
        reports,
    })
}
