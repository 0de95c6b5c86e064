//! Reports comparing exact quantities with the formula values of the
//! `|A^2 + A^2|` lower bound, the bisector energy bounds and the three
//! bounds on T1.
//!
//! Only exact inequalities are marked assertable. Formula comparisons carry
//! unknown implied constants and are recorded as ratios.

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    bisector_census, distance_energy, isosceles_census, isosceles_via_incidence_parts,
    max_line_circle_occupancy, BisectorClass, PointSet2D, QuadraticForm, OCCUPANCY_POINT_BUDGET,
};
use crate::incidence::Point2;
use crate::rep::rep_function;
use crate::set::{difference_set, doubling_stats, square_set, sumset, FpSet};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactValue {
    pub name: String,
    pub value: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub holds: bool,
    /// A failure would contradict an exact inequality or identity.
    pub assertable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub report: &'static str,
    pub p: u32,
    pub size_a: usize,
    pub size_d: usize,
    pub k: Ratio<u64>,
    pub lhs_name: &'static str,
    pub lhs: u128,
    pub rhs_terms: Vec<NamedValue>,
    /// `lhs / min(rhs_terms)`.
    pub ratio: f64,
    pub regime: &'static str,
    pub exact: Vec<ExactValue>,
    pub checks: Vec<BoundCheck>,
    /// Lines of `L_B` by multiplicity in `[2^i, 2^{i+1})`, for inspection.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dyadic: Option<Vec<u64>>,
}

impl BoundReport {
    pub fn exact(&self, name: &str) -> Option<u128> {
        self.exact.iter().find(|e| e.name == name).map(|e| e.value)
    }

    pub fn check(&self, name: &str) -> Option<&BoundCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn violations(&self) -> Vec<&BoundCheck> {
        self.checks
            .iter()
            .filter(|c| c.assertable && !c.holds)
            .collect()
    }

    fn min_rhs(&self) -> f64 {
        self.rhs_terms
            .iter()
            .map(|t| t.value)
            .fold(f64::INFINITY, f64::min)
    }
}

struct Builder {
    exact: Vec<ExactValue>,
    checks: Vec<BoundCheck>,
    rhs: Vec<NamedValue>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            exact: Vec::new(),
            checks: Vec::new(),
            rhs: Vec::new(),
        }
    }

    fn exact(&mut self, name: &str, value: u128) {
        self.exact.push(ExactValue {
            name: name.into(),
            value,
        });
    }

    fn check(&mut self, name: &str, holds: bool, assertable: bool) {
        self.checks.push(BoundCheck {
            name: name.into(),
            holds,
            assertable,
        });
    }

    fn rhs(&mut self, name: &str, value: f64) {
        self.rhs.push(NamedValue {
            name: name.into(),
            value,
        });
    }
}

/// Which size condition `x` satisfies: `x <= p^{2/3}` (case1) and/or
/// `p^{4/7} <= x <= p^{5/8}` (case2).
fn regime(x: f64, p: u32) -> &'static str {
    let p = p as f64;
    let case1 = x <= p.powf(2.0 / 3.0);
    let case2 = p.powf(4.0 / 7.0) <= x && x <= p.powf(5.0 / 8.0);
    match (case1, case2) {
        (true, true) => "case1+case2",
        (true, false) => "case1",
        (false, true) => "case2",
        (false, false) => "none",
    }
}

fn finish(
    report: &'static str,
    a: &FpSet,
    lhs_name: &'static str,
    lhs: u128,
    regime: &'static str,
    b: Builder,
    dyadic: Option<Vec<u64>>,
) -> Result<BoundReport> {
    let stats = doubling_stats(a)?;
    let mut r = BoundReport {
        report,
        p: a.field().p(),
        size_a: stats.size_a,
        size_d: stats.size_d,
        k: stats.k,
        lhs_name,
        lhs,
        rhs_terms: b.rhs,
        ratio: 0.0,
        regime,
        exact: b.exact,
        checks: b.checks,
        dyadic,
    };
    let m = r.min_rhs();
    r.ratio = if m > 0.0 && m.is_finite() {
        lhs as f64 / m
    } else {
        0.0
    };
    Ok(r)
}

fn neg_square(a: &FpSet) -> Result<PointSet2D> {
    let f = a.field();
    let neg = a.map(|x| f.neg(x));
    PointSet2D::product(&neg, &neg)
}

/// Solution counts behind the `|A^2 + A^2|` bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SquareSumCounts {
    /// Solutions of `u = (x+y)^2 + (z+t)^2`, `x, z in D`, `y, t in A`,
    /// `u in (A^2 + A^2) \ {0}`.
    pub n: u128,
    /// Tuples in `D^4 x A^4` with
    /// `(d1+a1)^2 + (d2+a2)^2 = (d3+a3)^2 + (d4+a4)^2 != 0`.
    pub e: u128,
    /// `|A|^4 - |A|^2 * #{(a, c) in A^2 : a^2 + c^2 = 0}`, the count of
    /// solutions with `x + y, z + t in A`, clamped at 0.
    pub injection_bound: u128,
}

pub fn square_sum_counts(a: &FpSet) -> Result<SquareSumCounts> {
    let f = a.field();
    let d = difference_set(a)?;
    let sq = square_set(a);
    let s = sumset(&sq, &sq)?;
    let g = rep_function(&d, a)?.squared();
    let h = g.convolve(&g)?;
    let n: u128 = s.iter().filter(|&u| u != 0).map(|u| h.get(u) as u128).sum();
    let e = h.second_moment_off_zero();
    let na = a.len() as u128;
    let zero_pairs = a
        .iter()
        .flat_map(|x| a.iter().map(move |y| (x, y)))
        .filter(|&(x, y)| f.add(f.square(x), f.square(y)) == 0)
        .count() as u128;
    Ok(SquareSumCounts {
        n,
        e,
        injection_bound: (na.pow(4)).saturating_sub(na * na * zero_pairs),
    })
}

/// `|A^2 + A^2|` against `min{p/K^4, |A|^{19/8}/(K^{21/8} p^{1/2})}` and
/// `min{p/K^4, |A|^{8/3}/(K^{7/3} p^{2/3})}`, with the exact counts of the
/// Cauchy-Schwarz chain `N^2 <= |A^2+A^2| E`, `E <= |A|^2 T`.
pub fn thm2_report(a: &FpSet) -> Result<BoundReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let p = a.field().p();
    let stats = doubling_stats(a)?;
    let sq = square_set(a);
    let lhs = sumset(&sq, &sq)?.len() as u128;
    let k = stats.k_f64();
    let na = stats.size_a as f64;
    let pf = p as f64;

    let mut b = Builder::new();
    b.rhs("p/K^4", pf / k.powi(4));
    b.rhs(
        "|A|^(19/8)/(K^(21/8) p^(1/2))",
        na.powf(19.0 / 8.0) / (k.powf(21.0 / 8.0) * pf.sqrt()),
    );
    b.rhs(
        "|A|^(8/3)/(K^(7/3) p^(2/3))",
        na.powf(8.0 / 3.0) / (k.powf(7.0 / 3.0) * pf.powf(2.0 / 3.0)),
    );

    let counts = square_sum_counts(a)?;
    let size_a = stats.size_a as u128;
    let size_d = stats.size_d as u128;
    b.exact("N", counts.n);
    b.exact("E", counts.e);
    b.exact("N_injection_bound", counts.injection_bound);
    let spec_bound = (size_a.pow(4) as i128) - 2 * size_a as i128;
    b.check("N >= |A|^4 - 2|A|", counts.n as i128 >= spec_bound, true);
    b.check("N >= injection bound", counts.n >= counts.injection_bound, true);
    b.check("N^2 <= |A^2+A^2| E", counts.n * counts.n <= lhs * counts.e, true);

    let apexes = neg_square(a)?;
    let d = difference_set(a)?;
    let bases = PointSet2D::product(&d, &d)?;
    match isosceles_census(&apexes, &bases, QuadraticForm::Euclidean) {
        Ok(t) => {
            b.exact("T", t.total() as u128);
            b.exact("T1", t.t1 as u128);
            b.exact("T2", t.t2() as u128);
            b.check("E <= |A|^2 T", counts.e <= size_a * size_a * t.total() as u128, true);
            b.check(
                "T2 <= 4|A|^2|D|^2",
                t.t2() as u128 <= 4 * size_a * size_a * size_d * size_d,
                true,
            );
        }
        Err(e) if e.is_budget() => {}
        Err(e) => return Err(e),
    }
    finish(
        "thm2",
        a,
        "|A^2+A^2|",
        lhs,
        regime(k * na, p),
        b,
        None,
    )
}

/// Non-isotropic bisector energy of `A x A` against `|A|^{21/4}` and
/// `p^{1/3}|A|^{14/3}`.
pub fn lemma_energy_report(a: &FpSet) -> Result<BoundReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let p = a.field().p();
    let e = PointSet2D::product(a, a)?;
    let census = bisector_census(&e, BisectorClass::Nonisotropic)?;
    let na = a.len() as f64;
    let pf = p as f64;

    let mut b = Builder::new();
    b.rhs("|A|^(21/4)", na.powf(21.0 / 4.0));
    b.rhs("p^(1/3)|A|^(14/3)", pf.cbrt() * na.powf(14.0 / 3.0));

    let q = census.energy_nonisotropic;
    b.exact("energy_isotropic", census.energy_isotropic);
    b.exact("pairs_nonisotropic", census.pairs_nonisotropic as u128);
    b.exact("pairs_isotropic", census.pairs_isotropic as u128);

    let size_e = e.len() as u128;
    let dist_energy = distance_energy(&e, QuadraticForm::Euclidean)?;
    b.exact("distance_energy", dist_energy);
    match isosceles_census(&e, &e, QuadraticForm::Euclidean) {
        Ok(t) => {
            b.exact("T", t.total() as u128);
            b.exact("T1", t.t1 as u128);
            b.exact("T2_degenerate", t.t2_degenerate as u128);
            b.exact("T2_isotropic", t.t2_isotropic as u128);
            b.check(
                "sum_{r!=0} S_r^2 <= |E| T",
                dist_energy <= size_e * t.total() as u128,
                true,
            );
        }
        Err(err) if err.is_budget() => {}
        Err(err) => return Err(err),
    }
    if e.len() <= OCCUPANCY_POINT_BUDGET {
        match max_line_circle_occupancy(&e) {
            Ok(m) => {
                b.exact("M", m as u128);
                // the line part alone is |A|; circles can exceed it
                b.check("M <= |A|", m as usize <= a.len(), false);
            }
            Err(err) if err.is_budget() => {}
            Err(err) => return Err(err),
        }
    }
    let dyadic = census.dyadic_histogram();
    finish(
        "lemma-energy",
        a,
        "nonisotropic bisector energy",
        q,
        regime(na, p),
        b,
        Some(dyadic),
    )
}

/// Exact T1, T2 and `Q` for apexes `-A x -A` and bases `D x D`, against the
/// point-line, point-plane and Cauchy-Schwarz bounds on T1.
pub fn variant_bounds_report(a: &FpSet) -> Result<BoundReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let f = a.field();
    let p = f.p();
    let d = difference_set(a)?;
    let apexes = neg_square(a)?;
    let bases = PointSet2D::product(&d, &d)?;

    let census = isosceles_census(&apexes, &bases, QuadraticForm::Euclidean)?;
    let via = isosceles_via_incidence_parts(&apexes, &bases)?;
    let bis = bisector_census(&bases, BisectorClass::Nonisotropic)?;
    let q = bis.energy_nonisotropic;

    // i(l): apexes on each non-isotropic bisector
    let pp = p as usize;
    let mut on = vec![false; pp * pp];
    for pt in apexes.points() {
        on[pt.x as usize * pp + pt.y as usize] = true;
    }
    let mut sum_im: u128 = 0;
    let mut sum_i2: u128 = 0;
    for (line, m) in bis.lines.iter() {
        let i = line
            .points(f)
            .filter(|pt: &Point2| on[pt.x as usize * pp + pt.y as usize])
            .count() as u128;
        sum_im += i * m as u128;
        sum_i2 += i * i;
    }

    let na = a.len() as f64;
    let nd = d.len() as f64;
    let pf = p as f64;
    let qf = q as f64;
    let mut b = Builder::new();
    b.rhs(
        "point-line",
        na.powf(1.5) * nd.powi(4) / pf.sqrt()
            + na.powf(1.25) * qf.powf(0.25) * nd * nd
            + nd.powi(4)
            + na * na * nd * nd,
    );
    b.rhs(
        "point-plane",
        na * na * nd.powi(4) / pf + na.powf(1.5) * nd.powi(3),
    );
    b.rhs("cauchy-schwarz", na * na * qf.sqrt());

    let size_a = a.len() as u128;
    let size_d = d.len() as u128;
    b.exact("T1", census.t1 as u128);
    b.exact("T2_degenerate", census.t2_degenerate as u128);
    b.exact("T2_isotropic", census.t2_isotropic as u128);
    b.exact("Q", q);
    b.exact("energy_isotropic", bis.energy_isotropic);
    b.exact("sum_i_m", sum_im);
    b.exact("sum_i_squared", sum_i2);
    b.exact("null_apex_triples", via.null_apex_triples as u128);

    b.check("T1 via incidence = T1 census", via.t1 == census.t1, true);
    b.check("sum i(l)m(l) = T1 + null-apex triples", sum_im == (census.t1 + via.null_apex_triples) as u128, true);
    b.check("sum i(l)m(l) = T1", sum_im == census.t1 as u128, false);
    b.check(
        "T2 <= 4|A|^2|D|^2",
        census.t2() as u128 <= 4 * size_a * size_a * size_d * size_d,
        true,
    );
    b.check("(sum i m)^2 <= (sum i^2) Q", sum_im * sum_im <= sum_i2 * q, true);
    b.check("sum i(l)^2 <= |A|^4", sum_i2 <= size_a.pow(4), false);
    b.check("T1^2 <= |A|^4 Q", (census.t1 as u128).pow(2) <= size_a.pow(4) * q, false);

    let dyadic = bis.dyadic_histogram();
    finish(
        "variants",
        a,
        "T1",
        census.t1 as u128,
        regime(nd, p),
        b,
        Some(dyadic),
    )
}
