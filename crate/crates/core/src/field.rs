//! Arithmetic in the prime field F_p for odd primes p < 2^31.
//!
//! Elements are plain `u32` residues in `0..p`. All products are formed in
//! `u64`, so no operation can overflow for the supported moduli.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Validates `p` by deterministic trial division.
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn order(self) -> usize {
        self.p as usize
    }

    /// Reduces an arbitrary signed integer into `0..p`.
    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn reduce_u64(self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    pub fn check(self, v: u64) -> Result<u32> {
        if v < self.p as u64 {
            Ok(v as u32)
        } else {
            Err(Error::Unreduced { value: v, p: self.p })
        }
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.p as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn square(self, a: u32) -> u32 {
        self.mul(a, a)
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// Legendre symbol test: true for nonzero squares.
    pub fn is_nonzero_square(self, a: u32) -> bool {
        a != 0 && self.pow(a, (self.p as u64 - 1) / 2) == 1
    }

    /// A square root of `a` (Tonelli-Shanks), or `None` if `a` is a non-residue.
    pub fn sqrt(self, a: u32) -> Option<u32> {
        if a == 0 {
            return Some(0);
        }
        if !self.is_nonzero_square(a) {
            return None;
        }
        let p = self.p as u64;
        if p % 4 == 3 {
            return Some(self.pow(a, (p + 1) / 4));
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2u32;
        while self.is_nonzero_square(z) {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, (q + 1) / 2);
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    /// `inv[x]` for every `x` in `0..p` (with `inv[0] = 0`), in linear time.
    pub fn inverse_table(self) -> Vec<u32> {
        let p = self.p as u64;
        let mut inv = vec![0u32; self.order()];
        if self.p > 1 {
            inv[1] = 1;
        }
        for i in 2..p {
            let q = p / i;
            let r = (p % i) as usize;
            inv[i as usize] = ((p - q) * inv[r] as u64 % p) as u32;
        }
        inv
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p as u64)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_primes_and_two() {
        assert_eq!(PrimeField::new(2), Err(Error::NotOddPrime(2)));
        assert_eq!(PrimeField::new(9), Err(Error::NotOddPrime(9)));
        assert_eq!(PrimeField::new(1), Err(Error::NotOddPrime(1)));
        assert!(matches!(
            PrimeField::new(1 << 31),
            Err(Error::ModulusTooLarge(_))
        ));
        assert!(PrimeField::new(2_147_483_647 - 1).is_err());
        assert!(PrimeField::new(101).is_ok());
    }

    #[test]
    fn inverse_and_sqrt_exhaustive_small() {
        for p in [3u64, 5, 7, 13, 17, 41, 97, 101] {
            let f = PrimeField::new(p).unwrap();
            for a in f.elements() {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                let sq = f.square(a);
                let r = f.sqrt(sq).unwrap();
                assert_eq!(f.square(r), sq);
            }
            let table = f.inverse_table();
            for a in 1..f.p() {
                assert_eq!(table[a as usize], f.inv(a).unwrap());
            }
            let residues = f.elements().filter(|&a| f.is_nonzero_square(a)).count();
            assert_eq!(residues as u64, (p - 1) / 2);
        }
    }

    #[test]
    fn reduce_handles_negatives() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.reduce(-1), 6);
        assert_eq!(f.reduce(-14), 0);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.neg(0), 0);
    }
}
