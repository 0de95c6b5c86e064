//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any fails. Oracles here are deliberately naive and share
//! no code with the library beyond the field type.

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use fpdist::experiment::{csv_string, json_string, run_experiment, threshold_scan, ExperimentConfig, GeneratorSpec};
use fpdist::experiment::fuzz::{random_lines, random_planes, random_points2, random_points3, with_multiplicities};
use fpdist::geometry::{
    bisector_census, distance_set_explicit, distance_set_product, isosceles_census,
    isosceles_via_incidence, BisectorClass, PointSet2D, QuadraticForm,
};
use fpdist::harness::{
    construction_sweep, coverage, thm2_report, threshold_exponent, Construction, EngineMode,
    SumExpression,
};
use fpdist::incidence::{hanson_check, vinh_check, vinh_plane_check, Point2};
use fpdist::{rep_function, rep_function_fast, sumset, FpSet, PrimeField};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn random_set(rng: &mut ChaCha8Rng, f: PrimeField, size: usize) -> FpSet {
    let mut all: Vec<u32> = (0..f.p()).collect();
    all.shuffle(rng);
    FpSet::from_elements(f, all[..size].iter().map(|&x| x as u64)).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn naive_sum(p: u32, b: &BTreeSet<u32>, c: &BTreeSet<u32>) -> BTreeSet<u32> {
    b.iter().flat_map(|x| c.iter().map(move |y| (x + y) % p)).collect()
}

fn sq(p: u32, x: u32) -> u32 {
    ((x as u64 * x as u64) % p as u64) as u32
}

fn diff(p: u32, x: u32, y: u32) -> u32 {
    (x + p - y) % p
}

fn as_set(s: &FpSet) -> BTreeSet<u32> {
    s.iter().collect()
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let primes = [11u64, 31, 101, 257];
    for case in 0..100 {
        let f = field(primes[case % 4]);
        let p = f.p();
        let nb = rng.gen_range(1..=p as usize);
        let nc = rng.gen_range(1..=p as usize);
        let b = random_set(&mut rng, f, nb);
        let c = random_set(&mut rng, f, nc);
        let mut counts = vec![0u64; p as usize];
        for x in b.iter() {
            for y in c.iter() {
                counts[((x + y) % p) as usize] += 1;
            }
        }
        let support: BTreeSet<u32> = (0..p).filter(|&u| counts[u as usize] > 0).collect();
        ensure(as_set(&sumset(&b, &c).unwrap()) == support, || format!("sumset mismatch, case {case} p={p}"))?;
        for (name, r) in [("rep_function", rep_function(&b, &c).unwrap()), ("rep_function_fast", rep_function_fast(&b, &c).unwrap())] {
            ensure(r.counts() == &counts[..], || format!("{name} mismatch, case {case} p={p}"))?;
        }
    }
    Ok("100 cases".into())
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let planar = [11u64, 31, 53, 101];
    for case in 0..50 {
        let f = field(planar[case % planar.len()]);
        let n = rng.gen_range(1..=12.min(f.p() as usize));
        let a = random_set(&mut rng, f, n);
        let grid: Vec<Vec<u32>> = a.iter().flat_map(|x| a.iter().map(move |y| vec![x, y])).collect();
        let explicit = distance_set_explicit(f, &grid, QuadraticForm::Euclidean).unwrap();
        ensure(explicit == distance_set_product(&a, 2, QuadraticForm::Euclidean).unwrap(), || {
            format!("d=2 mismatch, case {case}")
        })?;
    }
    let spatial = [7u64, 11, 31];
    for case in 0..50 {
        let f = field(spatial[case % spatial.len()]);
        let n = rng.gen_range(1..=5);
        let a = random_set(&mut rng, f, n);
        let mut grid = Vec::new();
        for x in a.iter() {
            for y in a.iter() {
                for z in a.iter() {
                    grid.push(vec![x, y, z]);
                }
            }
        }
        let explicit = distance_set_explicit(f, &grid, QuadraticForm::Euclidean).unwrap();
        ensure(explicit == distance_set_product(&a, 3, QuadraticForm::Euclidean).unwrap(), || {
            format!("d=3 mismatch, case {case}")
        })?;
    }
    Ok("50 cases at d=2, 50 at d=3".into())
}

/// `(I p - |P||L|)^2 <= p^k * moments`, one-sided if requested.
fn bound_holds(p: u32, incidences: u64, mass: u128, moments: u128, k: u32, one_sided: bool) -> bool {
    let gap = incidences as i128 * p as i128 - mass as i128;
    if one_sided && gap <= 0 {
        return true;
    }
    let g = gap.unsigned_abs();
    g * g <= (p as u128).pow(k) * moments
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut total = 0;
    for p in [11u64, 31, 101] {
        let f = field(p);
        let p = f.p();
        let cap2 = (p * p) as usize;
        for round in 0..200 {
            let np = rng.gen_range(1..=cap2.min(400));
            let nl = rng.gen_range(1..=cap2.min(400));
            let pts = random_points2(&mut rng, f, np);
            let lines = random_lines(&mut rng, f, nl);
            let pairs: Vec<(Point2, u64)> = pts.iter().collect();
            let brute: u64 = lines
                .iter()
                .map(|(l, ml)| pairs.iter().filter(|(q, _)| l.contains(f, *q)).map(|(_, mq)| mq * ml).sum::<u64>())
                .sum();
            let r = vinh_check(&pts, &lines).unwrap();
            ensure(r.incidences == brute, || format!("vinh count p={p} round {round}"))?;
            let mass = pts.total() as u128 * lines.total() as u128;
            ensure(r.satisfied && bound_holds(p, brute, mass, mass, 3, false), || {
                format!("vinh violated p={p} round {round}")
            })?;

            let mp = with_multiplicities(&mut rng, &pts, 5);
            let ml = with_multiplicities(&mut rng, &lines, 5);
            let mpairs: Vec<(Point2, u64)> = mp.iter().collect();
            let brute: u64 = ml
                .iter()
                .map(|(l, m)| mpairs.iter().filter(|(q, _)| l.contains(f, *q)).map(|(_, mq)| mq * m).sum::<u64>())
                .sum();
            let r = hanson_check(&mp, &ml).unwrap();
            ensure(r.incidences == brute, || format!("hanson count p={p} round {round}"))?;
            let m2 = |v: Vec<u64>| v.iter().map(|&m| m as u128 * m as u128).sum::<u128>();
            let moments = m2(mp.iter().map(|x| x.1).collect()) * m2(ml.iter().map(|x| x.1).collect());
            let mass = mp.total() as u128 * ml.total() as u128;
            ensure(r.satisfied && bound_holds(p, brute, mass, moments, 3, true), || {
                format!("hanson violated p={p} round {round}")
            })?;

            let np3 = rng.gen_range(1..=400);
            let nh = rng.gen_range(1..=400);
            let pts3 = random_points3(&mut rng, f, np3);
            let planes = random_planes(&mut rng, f, nh);
            let qs: Vec<_> = pts3.iter().map(|x| x.0).collect();
            let brute: u64 = planes.iter().map(|(h, _)| qs.iter().filter(|&&q| h.contains(f, q)).count() as u64).sum();
            let r = vinh_plane_check(&pts3, &planes).unwrap();
            ensure(r.incidences == brute, || format!("plane count p={p} round {round}"))?;
            let mass = pts3.total() as u128 * planes.total() as u128;
            ensure(r.satisfied && bound_holds(p, brute, mass, mass, 4, false), || {
                format!("plane bound violated p={p} round {round}")
            })?;
            total += 3;
        }
    }
    Ok(format!("{total} configurations, 0 violations"))
}

fn random_points(rng: &mut ChaCha8Rng, f: PrimeField, n: usize) -> PointSet2D {
    let p = f.p();
    let mut s = BTreeSet::new();
    while s.len() < n {
        s.insert((rng.gen_range(0..p), rng.gen_range(0..p)));
    }
    PointSet2D::new(f, s.into_iter().map(|(x, y)| Point2 { x, y }).collect()).unwrap()
}

/// Coefficients of `2(b-a).x = |b|^2 - |a|^2`.
fn bisector_vector(p: u32, a: Point2, b: Point2) -> [u64; 3] {
    let p64 = p as u64;
    let n = |q: Point2| (sq(p, q.x) + sq(p, q.y)) % p;
    [
        2 * diff(p, b.x, a.x) as u64 % p64,
        2 * diff(p, b.y, a.y) as u64 % p64,
        diff(p, n(b), n(a)) as u64,
    ]
}

fn proportional(p: u64, u: [u64; 3], v: [u64; 3]) -> bool {
    (0..3).all(|i| (i + 1..3).all(|j| (u[i] * v[j] + p * p - u[j] * v[i] % (p * p)) % p == 0))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for case in 0..30 {
        let f = field(if case % 2 == 0 { 11 } else { 31 });
        let p = f.p();
        let n = rng.gen_range(2..=25);
        let e = random_points(&mut rng, f, n);
        let pts = e.points();
        let vecs: Vec<[u64; 3]> = pts
            .iter()
            .flat_map(|&a| pts.iter().filter(move |&&b| b != a).map(move |&b| bisector_vector(p, a, b)))
            .collect();
        let mut quads = 0u128;
        for u in &vecs {
            for v in &vecs {
                if proportional(p as u64, *u, *v) {
                    quads += 1;
                }
            }
        }
        let c = bisector_census(&e, BisectorClass::All).unwrap();
        let energy = c.energy_nonisotropic + c.energy_isotropic;
        ensure(energy == quads, || format!("case {case}: census {energy}, brute {quads}"))?;
    }
    Ok("30 sets".into())
}

fn brute_t(p: u32, apexes: &[Point2], bases: &[Point2]) -> (u64, u64) {
    let d = |a: Point2, b: Point2| (sq(p, diff(p, a.x, b.x)) + sq(p, diff(p, a.y, b.y))) % p;
    let (mut t1, mut t2) = (0, 0);
    for &x in apexes {
        for &y in bases {
            let r = d(x, y);
            if r == 0 {
                continue;
            }
            for &z in bases {
                if d(x, z) == r {
                    if y != z && d(y, z) != 0 {
                        t1 += 1;
                    } else {
                        t2 += 1;
                    }
                }
            }
        }
    }
    (t1, t2)
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let primes = [13u64, 11, 29, 31, 101, 103];
    let mut structured = 0;
    while structured < 30 {
        let f = field(primes[structured % primes.len()]);
        let p = f.p();
        let n = rng.gen_range(1..=4);
        let a = random_set(&mut rng, f, n);
        let dset: BTreeSet<u32> = a.iter().flat_map(|x| a.iter().map(move |y| diff(p, x, y))).collect();
        if dset.len() * dset.len() > 64 {
            continue;
        }
        let neg: Vec<u32> = a.iter().map(|x| (p - x) % p).collect();
        let apex: Vec<Point2> = neg.iter().flat_map(|&x| neg.iter().map(move |&y| Point2 { x, y })).collect();
        let base: Vec<Point2> = dset.iter().flat_map(|&x| dset.iter().map(move |&y| Point2 { x, y })).collect();
        let (bt1, bt2) = brute_t(p, &apex, &base);
        let apexes = PointSet2D::new(f, apex).unwrap();
        let bases = PointSet2D::new(f, base).unwrap();
        let c = isosceles_census(&apexes, &bases, QuadraticForm::Euclidean).unwrap();
        let via = isosceles_via_incidence(&apexes, &bases).unwrap();
        ensure(c.t1 == bt1 && via == bt1 && c.t2() == bt2, || {
            format!("structured p={p} |A|={n}: census {}, via {via}, brute {bt1}", c.t1)
        })?;
        let bound = 4 * (n * n * dset.len() * dset.len()) as u64;
        ensure(bt2 <= bound, || format!("T2 = {bt2} > {bound}, p={p}"))?;
        structured += 1;
    }
    for case in 0..30 {
        let f = field(primes[case % primes.len()]);
        let na = rng.gen_range(1..=64);
        let nb = rng.gen_range(1..=64);
        let apexes = random_points(&mut rng, f, na);
        let bases = random_points(&mut rng, f, nb);
        let (bt1, bt2) = brute_t(f.p(), apexes.points(), bases.points());
        let c = isosceles_census(&apexes, &bases, QuadraticForm::Euclidean).unwrap();
        let via = isosceles_via_incidence(&apexes, &bases).unwrap();
        ensure(c.t1 == bt1 && via == bt1 && c.t2() == bt2, || format!("generic case {case}"))?;
    }
    Ok("30 structured + 30 generic instances".into())
}

/// Solutions per lambda of `(x-y)^2 [+ (s-t)^2] + u + v = lambda`.
fn brute_solutions(p: u32, a: &[u32], shifts: &BTreeSet<u32>, spatial: bool) -> Vec<u64> {
    let mut dsq = vec![0u64; p as usize];
    for &x in a {
        for &y in a {
            dsq[sq(p, diff(p, x, y)) as usize] += 1;
        }
    }
    let mut lhs = dsq.clone();
    if spatial {
        let mut next = vec![0u64; p as usize];
        for (i, &ci) in lhs.iter().enumerate() {
            for (j, &cj) in dsq.iter().enumerate() {
                next[(i + j) % p as usize] += ci * cj;
            }
        }
        lhs = next;
    }
    let mut out = vec![0u64; p as usize];
    for (i, &c) in lhs.iter().enumerate() {
        for &u in shifts {
            for &v in shifts {
                out[(i + u as usize + v as usize) % p as usize] += c;
            }
        }
    }
    out
}

fn criterion_6() -> Outcome {
    let f = field(11);
    let p = f.p();
    let mut swept = 0;
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(600 + seed);
        let n = rng.gen_range(1..=4);
        let a = random_set(&mut rng, f, n);
        let av = a.to_vec();
        let squares: BTreeSet<u32> = av.iter().map(|&x| sq(p, x)).collect();
        let diffsq: BTreeSet<u32> = av.iter().flat_map(|&x| av.iter().map(move |&y| sq(p, diff(p, x, y)))).collect();
        for c in [Construction::Thm1, Construction::Thm14, Construction::Thm15] {
            let shifts = match c {
                Construction::Thm1 => naive_sum(p, &diffsq, &diffsq),
                _ => naive_sum(p, &squares, &squares),
            };
            let expected = brute_solutions(p, &av, &shifts, c == Construction::Thm15);
            let s = construction_sweep(c, &a, None, EngineMode::Always).unwrap();
            ensure(s.violations.is_empty(), || format!("seed {seed} {}: {:?}", c.name(), s.violations))?;
            let planar = c != Construction::Thm15;
            let mass = s.points as u128 * s.objects as u128;
            let trigger = if planar { mass > (p as u128).pow(3) } else { mass > (p as u128).pow(4) };
            for r in &s.reports {
                let want = expected[r.lambda as usize];
                ensure(r.solutions == want && r.engine_count == Some(want), || {
                    format!("seed {seed} {} lambda {}: pipeline {}, engine {:?}, brute {want}", c.name(), r.lambda, r.solutions, r.engine_count)
                })?;
                ensure(!trigger || want >= 1, || format!("seed {seed} {}: trigger without solution", c.name()))?;
            }
            swept += 1;
        }
    }
    Ok(format!("{swept} sweeps over all of F_11"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut failures = Vec::new();
    for case in 0..20 {
        let f = field(if case % 2 == 0 { 31 } else { 101 });
        let p = f.p();
        let n = rng.gen_range(1..=12);
        let a = random_set(&mut rng, f, n);
        let av = a.to_vec();
        let dset: BTreeSet<u32> = av.iter().flat_map(|&x| av.iter().map(move |&y| diff(p, x, y))).collect();
        let squares: BTreeSet<u32> = av.iter().map(|&x| sq(p, x)).collect();
        let targets = naive_sum(p, &squares, &squares);
        // (x + y)^2 over x in D, y in A
        let mut h: HashMap<u32, u64> = HashMap::new();
        for &x in &dset {
            for &y in &av {
                *h.entry(sq(p, (x + y) % p)).or_default() += 1;
            }
        }
        let mut brute = 0u128;
        for (&s1, &c1) in &h {
            for (&s2, &c2) in &h {
                let u = (s1 + s2) % p;
                if u != 0 && targets.contains(&u) {
                    brute += c1 as u128 * c2 as u128;
                }
            }
        }
        let r = thm2_report(&a).unwrap();
        ensure(r.exact("N") == Some(brute), || format!("case {case}: N {:?} vs brute {brute}", r.exact("N")))?;
        let na = n as i128;
        if (brute as i128) < na.pow(4) - 2 * na {
            failures.push(format!("p={p} |A|={n}: N={brute} < {}", na.pow(4) - 2 * na));
        }
    }
    if failures.is_empty() {
        Ok("20 instances".into())
    } else {
        Err(failures.join("; "))
    }
}

fn ceil_root(p: u128, num: u32, den: u32) -> usize {
    // smallest n with n^den >= p^num
    let target = p.pow(num);
    (1..).find(|&n: &u128| n.pow(den) >= target).unwrap() as usize
}

fn naive_expression_value(p: u32, n: usize, diff_reps: usize, square_reps: usize) -> BTreeSet<u32> {
    let a: Vec<u32> = (0..n as u32).collect();
    let diffsq: BTreeSet<u32> = a.iter().flat_map(|&x| a.iter().map(move |&y| sq(p, diff(p, x, y)))).collect();
    let squares: BTreeSet<u32> = a.iter().map(|&x| sq(p, x)).collect();
    let mut acc: BTreeSet<u32> = [0].into();
    for _ in 0..diff_reps {
        acc = naive_sum(p, &acc, &diffsq);
    }
    for _ in 0..square_reps {
        acc = naive_sum(p, &acc, &squares);
    }
    acc
}

fn criterion_8() -> Outcome {
    let mut lines = Vec::new();
    for p in [101u64, 211, 409] {
        let f = field(p);
        let pu = f.p();
        let mut n1 = ceil_root(p as u128, 13, 22);
        n1 += n1 % 2;
        let n2 = ceil_root(p as u128, 4, 7) * 2;
        for (n, expr_text, dr, sr) in [(n1, "(A-A)^2 + A^2 x4", 1, 4), (n2, "(A-A)^2 x2 + A^2 x4", 2, 4)] {
            let expr: SumExpression = expr_text.parse().unwrap();
            let a = FpSet::interval(f, 0, n);
            let v = coverage(&a, &expr).unwrap();
            let naive = naive_expression_value(pu, n, dr, sr);
            ensure(v.covered == (naive.len() == pu as usize), || format!("p={p} {expr_text}: oracle disagrees"))?;
            ensure(v.covered, || format!("p={p} n={n} {expr_text}: missing {}", v.missing.len()))?;
            let scan = threshold_scan(f, &GeneratorSpec::interval(1), &expr, 1, 8).unwrap();
            let min = scan.minimal.map_or("none".to_string(), |m| m.to_string());
            lines.push(format!("p={p} {expr_text}: n={n} covered, minimal {min}"));
        }
    }
    Ok(lines.join("; "))
}

fn reduce(n: i128, d: i128) -> (i128, i128) {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }
    let g = gcd(n, d);
    let s = if d < 0 { -1 } else { 1 };
    (s * n / g, s * d / g)
}

fn criterion_9() -> Outcome {
    let mut out = Vec::new();
    for d in [6i128, 7, 8] {
        // epsilon = en/ed, computed on doubled numerators so (d+1)/2 stays integral
        let (en, ed) = if d % 2 == 1 {
            let half = (d + 1) / 2;
            (3 * 2i128.pow(((d - 5) / 2) as u32) - half, 3 * 2i128.pow(((d - 3) / 2) as u32) - 1)
        } else {
            (2i128.pow((d / 2) as u32) - d - 1, 2i128.pow((d / 2 + 1) as u32) - 2)
        };
        // ((d+1)/2 - en/ed) / d = ((d+1) ed - 2 en) / (2 d ed)
        let exp = reduce((d + 1) * ed - 2 * en, 2 * d * ed);
        let eps = reduce(en, ed);
        let t = threshold_exponent(d as u32).unwrap();
        ensure(t.epsilon == Ratio::new(eps.0, eps.1) && t.exponent == Ratio::new(exp.0, exp.1), || {
            format!("d={d}: got {} / {}, expected {}/{} / {}/{}", t.epsilon, t.exponent, eps.0, eps.1, exp.0, exp.1)
        })?;
        out.push(format!("d={d}: {}", t.exponent));
    }
    ensure(threshold_exponent(6).unwrap().exponent == Ratio::new(4, 7), || "d=6 is not 4/7".into())?;
    Ok(out.join(", "))
}

fn criterion_10() -> Outcome {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/demo.json");
    let config = ExperimentConfig::load(&path).map_err(|e| e.to_string())?;
    let first = run_experiment(&config).map_err(|e| e.to_string())?;
    let second = run_experiment(&config).map_err(|e| e.to_string())?;
    let (c1, c2) = (csv_string(&first).unwrap(), csv_string(&second).unwrap());
    let (j1, j2) = (json_string(&first).unwrap(), json_string(&second).unwrap());
    ensure(c1 == c2, || "CSV differs".into())?;
    ensure(j1 == j2, || "JSON differs".into())?;
    Ok(format!("{} rows, CSV {} bytes, JSON {} bytes", first.len(), c1.len(), j1.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("sumset and rep-function oracle", criterion_1, 10),
        ("product identity", criterion_2, 60),
        ("incidence bounds", criterion_3, 60),
        ("bisector energy oracle", criterion_4, 30),
        ("isosceles route agreement and T2 bound", criterion_5, 60),
        ("construction consistency", criterion_6, 60),
        ("N lower bound", criterion_7, 30),
        ("desk-scale coverage", criterion_8, 120),
        ("threshold exponent", criterion_9, 1),
        ("determinism", criterion_10, 60),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(d) if elapsed > Duration::from_secs(*limit) => Err(format!("{d}; over the {limit}s limit")),
            r => r,
        };
        match result {
            Ok(d) => println!("PASS {}: {name} ({d}, {:.2}s)", i + 1, elapsed.as_secs_f64()),
            Err(d) => {
                failed += 1;
                println!("FAIL {}: {name} ({d}, {:.2}s)", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
