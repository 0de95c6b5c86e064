//! Exact integer convolution via number-theoretic transforms over three
//! NTT-friendly primes, recombined with Garner's algorithm.
//!
//! A coefficient is recovered exactly as long as it is below the product of
//! the three moduli (about 7.8e25); [`exact_limit`] exposes that product so
//! callers can check their inputs.

const MODULI: [u64; 3] = [998_244_353, 167_772_161, 469_762_049];
const ROOT: u64 = 3;

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn ntt(a: &mut [u64], m: u64, invert: bool) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(ROOT, (m - 1) / len as u64, m);
        if invert {
            w = pow_mod(w, m - 2, m);
        }
        for start in (0..n).step_by(len) {
            let mut wn = 1u64;
            for k in 0..len / 2 {
                let u = a[start + k];
                let v = a[start + k + len / 2] * wn % m;
                a[start + k] = if u + v >= m { u + v - m } else { u + v };
                a[start + k + len / 2] = if u >= v { u - v } else { u + m - v };
                wn = wn * w % m;
            }
        }
        len <<= 1;
    }
    if invert {
        let n_inv = pow_mod(n as u64, m - 2, m);
        for x in a.iter_mut() {
            *x = *x * n_inv % m;
        }
    }
}

fn convolve_mod(a: &[u64], b: &[u64], n: usize, m: u64) -> Vec<u64> {
    let mut fa = vec![0u64; n];
    let mut fb = vec![0u64; n];
    for (d, s) in fa.iter_mut().zip(a) {
        *d = s % m;
    }
    for (d, s) in fb.iter_mut().zip(b) {
        *d = s % m;
    }
    ntt(&mut fa, m, false);
    ntt(&mut fb, m, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * y % m;
    }
    ntt(&mut fa, m, true);
    fa
}

/// Product of the three moduli: coefficients strictly below this are exact.
pub fn exact_limit() -> u128 {
    MODULI.iter().map(|&m| m as u128).product()
}

/// Cyclic convolution of two length-`n` vectors: `out[(i + j) % n] += a[i] * b[j]`.
///
/// Returns `None` when a coefficient could exceed [`exact_limit`].
pub fn cyclic_convolution(a: &[u64], b: &[u64]) -> Option<Vec<u128>> {
    assert_eq!(a.len(), b.len(), "cyclic convolution needs equal lengths");
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let sa: u128 = a.iter().map(|&x| x as u128).sum();
    let sb: u128 = b.iter().map(|&x| x as u128).sum();
    if sa.checked_mul(sb).is_none_or(|prod| prod >= exact_limit()) {
        return None;
    }
    let len = (2 * n - 1).next_power_of_two();
    // each modulus has 2-adic order at least 23 in p - 1
    if len > 1 << 23 {
        return None;
    }
    let residues: Vec<Vec<u64>> = MODULI.iter().map(|&m| convolve_mod(a, b, len, m)).collect();

    let (m0, m1, m2) = (MODULI[0], MODULI[1], MODULI[2]);
    let m0_inv_m1 = pow_mod(m0, m1 - 2, m1);
    let m01_inv_m2 = pow_mod(m0 * m1 % m2, m2 - 2, m2);
    let mut out = vec![0u128; n];
    for i in 0..(2 * n - 1) {
        let (r0, r1, r2) = (residues[0][i], residues[1][i], residues[2][i]);
        let x1 = (r1 + m1 - r0 % m1) % m1 * m0_inv_m1 % m1;
        let partial = (r0 + m0 % m2 * x1) % m2;
        let x2 = (r2 + m2 - partial) % m2 * m01_inv_m2 % m2;
        let v = r0 as u128 + m0 as u128 * x1 as u128 + (m0 as u128 * m1 as u128) * x2 as u128;
        out[i % n] += v;
    }
    Some(out)
}
