//! Subsets of F_p stored as membership bitsets, and the set-level algebra
//! built on them: difference sets, elementwise squares, sumsets.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::PrimeField;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpSet {
    field: PrimeField,
    words: Vec<u64>,
    size: usize,
}

fn word_count(p: usize) -> usize {
    p.div_ceil(WORD)
}

impl FpSet {
    pub fn empty(field: PrimeField) -> Self {
        FpSet {
            field,
            words: vec![0; word_count(field.order())],
            size: 0,
        }
    }

    pub fn full(field: PrimeField) -> Self {
        let mut s = FpSet::empty(field);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s.size = field.order();
        s
    }

    pub fn singleton(field: PrimeField, x: u32) -> Result<Self> {
        FpSet::from_elements(field, [x as u64])
    }

    /// Builds a set from residues; values must already lie in `0..p`.
    /// Repeated values are merged.
    pub fn from_elements<I>(field: PrimeField, elems: I) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
    {
        let mut s = FpSet::empty(field);
        for v in elems {
            s.insert(field.check(v)?);
        }
        Ok(s)
    }

    /// Builds a set from arbitrary integers, reducing each mod p.
    pub fn from_reduced<I>(field: PrimeField, elems: I) -> Self
    where
        I: IntoIterator<Item = i64>,
    {
        let mut s = FpSet::empty(field);
        for v in elems {
            s.insert(field.reduce(v));
        }
        s
    }

    /// Interval `{start, start+1, ..., start+len-1}` taken mod p.
    pub fn interval(field: PrimeField, start: u32, len: usize) -> Self {
        FpSet::from_reduced(field, (0..len as i64).map(|i| start as i64 + i))
    }

    pub(crate) fn insert(&mut self, x: u32) -> bool {
        let (w, b) = (x as usize / WORD, x as usize % WORD);
        let mask = 1u64 << b;
        let fresh = self.words[w] & mask == 0;
        if fresh {
            self.words[w] |= mask;
            self.size += 1;
        }
        fresh
    }

    fn trim(&mut self) {
        let p = self.field.order();
        let rem = p % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    fn recount(&mut self) {
        self.size = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn is_full(&self) -> bool {
        self.size == self.field.order()
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        let x = x as usize;
        x < self.field.order() && self.words[x / WORD] >> (x % WORD) & 1 == 1
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros();
                bits &= bits - 1;
                Some((wi * WORD) as u32 + t)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn complement(&self) -> FpSet {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out.size = self.field.order() - self.size;
        out
    }

    pub fn union(&self, other: &FpSet) -> Result<FpSet> {
        self.same_field(other)?;
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
        out.recount();
        Ok(out)
    }

    pub fn is_subset(&self, other: &FpSet) -> bool {
        self.field == other.field
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub(crate) fn same_field(&self, other: &FpSet) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.p(),
                right: other.field.p(),
            })
        }
    }

    /// Image of the set under `x -> f(x)`.
    pub fn map(&self, f: impl Fn(u32) -> u32) -> FpSet {
        let mut out = FpSet::empty(self.field);
        for x in self.iter() {
            out.insert(f(x));
        }
        out
    }

    /// ORs the membership of `src`, cyclically rotated by `shift`, into `self`.
    fn or_rotated(&mut self, src: &FpSet, shift: u32) {
        let p = self.field.order();
        let shift = shift as usize % p;
        // bits [0, p - shift) land at [shift, p); bits [p - shift, p) wrap to [0, shift)
        or_bit_range(&mut self.words, &src.words, 0, p - shift, shift);
        if shift > 0 {
            or_bit_range(&mut self.words, &src.words, p - shift, shift, 0);
        }
    }
}

/// Reads 64 bits of `src` starting at bit `pos`; bits past the end read as 0.
#[inline]
fn read_bits(src: &[u64], pos: usize) -> u64 {
    let (w, o) = (pos / WORD, pos % WORD);
    let mut v = src.get(w).copied().unwrap_or(0) >> o;
    if o > 0 {
        if let Some(&next) = src.get(w + 1) {
            v |= next << (WORD - o);
        }
    }
    v
}

/// `dst[dst_lo + i] |= src[src_lo + i]` for `i < len`, a word at a time.
fn or_bit_range(dst: &mut [u64], src: &[u64], src_lo: usize, len: usize, dst_lo: usize) {
    let mut done = 0;
    while done < len {
        let d = dst_lo + done;
        let (w, off) = (d / WORD, d % WORD);
        let take = (WORD - off).min(len - done);
        let mask = if take == WORD {
            u64::MAX
        } else {
            (1u64 << take) - 1
        };
        dst[w] |= (read_bits(src, src_lo + done) & mask) << off;
        done += take;
    }
}

impl fmt::Debug for FpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FpSetRepr {
    p: u32,
    elements: Vec<u64>,
}

impl Serialize for FpSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FpSetRepr {
            p: self.field.p(),
            elements: self.iter().map(u64::from).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FpSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FpSetRepr::deserialize(d)?;
        let field = PrimeField::new(repr.p as u64).map_err(serde::de::Error::custom)?;
        FpSet::from_elements(field, repr.elements).map_err(serde::de::Error::custom)
    }
}

/// `{a - a' : a, a' in A}`.
pub fn difference_set(a: &FpSet) -> Result<FpSet> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let neg = a.map(|x| a.field.neg(x));
    sumset(a, &neg)
}

/// `{a^2 : a in A}`.
pub fn square_set(a: &FpSet) -> FpSet {
    a.map(|x| a.field.square(x))
}

/// `{b + c : b in B, c in C}` by OR-ing rotations of the larger operand's
/// bitset, one per member of the smaller.
pub fn sumset(b: &FpSet, c: &FpSet) -> Result<FpSet> {
    b.same_field(c)?;
    let (small, large) = if b.len() <= c.len() { (b, c) } else { (c, b) };
    let mut out = FpSet::empty(b.field);
    for s in small.iter() {
        out.or_rotated(large, s);
    }
    out.trim();
    out.recount();
    Ok(out)
}

/// `S + S + ... + S` with `k` summands.
pub fn iterated_sumset(s: &FpSet, k: usize) -> Result<FpSet> {
    if k == 0 {
        return Err(Error::ZeroRepetition);
    }
    let mut acc = s.clone();
    for _ in 1..k {
        if acc.is_full() && !s.is_empty() {
            break;
        }
        acc = sumset(&acc, s)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoublingStats {
    pub size_a: usize,
    pub size_d: usize,
    /// `|A - A| / |A|`, exact.
    pub k: Ratio<u64>,
}

impl DoublingStats {
    pub fn k_f64(&self) -> f64 {
        *self.k.numer() as f64 / *self.k.denom() as f64
    }
}

pub fn doubling_stats(a: &FpSet) -> Result<DoublingStats> {
    let d = difference_set(a)?;
    Ok(DoublingStats {
        size_a: a.len(),
        size_d: d.len(),
        k: Ratio::new(d.len() as u64, a.len() as u64),
    })
}
