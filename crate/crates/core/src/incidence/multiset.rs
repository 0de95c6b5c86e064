use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::field::PrimeField;

use super::objects::{Line2, Plane3, Point2, Point3};

/// Elements with positive integer multiplicities over a fixed field.
///
/// Caches `|X| = sum m(x)` and `sum m(x)^2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(bound = "T: Serialize")]
pub struct Multiset<T: Ord> {
    #[serde(rename = "p")]
    field: PrimeField,
    #[serde(serialize_with = "as_pairs")]
    items: BTreeMap<T, u64>,
    total: u64,
    second_moment: u128,
}

pub type PointMultiset2 = Multiset<Point2>;
pub type PointMultiset3 = Multiset<Point3>;
pub type LineMultiset = Multiset<Line2>;
pub type PlaneMultiset = Multiset<Plane3>;

impl<T: Ord + Copy> Multiset<T> {
    pub fn new(field: PrimeField) -> Self {
        Multiset {
            field,
            items: BTreeMap::new(),
            total: 0,
            second_moment: 0,
        }
    }

    /// Every element once.
    pub fn simple<I: IntoIterator<Item = T>>(field: PrimeField, items: I) -> Self {
        let mut m = Multiset::new(field);
        for x in items {
            m.items.entry(x).or_insert(1);
        }
        m.refresh();
        m
    }

    pub fn from_counts<I: IntoIterator<Item = (T, u64)>>(field: PrimeField, items: I) -> Self {
        let mut m = Multiset::new(field);
        for (x, k) in items {
            m.add(x, k);
        }
        m
    }

    fn refresh(&mut self) {
        self.total = self.items.values().sum();
        self.second_moment = self.items.values().map(|&k| k as u128 * k as u128).sum();
    }

    pub fn add(&mut self, x: T, k: u64) {
        if k == 0 {
            return;
        }
        let slot = self.items.entry(x).or_insert(0);
        let old = *slot as u128;
        *slot += k;
        let new = *slot as u128;
        self.total += k;
        self.second_moment = self.second_moment - old * old + new * new;
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// `|X|`, the total mass.
    pub fn total(&self) -> u64 {
        self.total
    }

    /// `sum m(x)^2` over distinct elements.
    pub fn second_moment(&self) -> u128 {
        self.second_moment
    }

    /// Number of distinct elements.
    pub fn support_len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn is_simple(&self) -> bool {
        self.items.values().all(|&k| k == 1)
    }

    pub fn multiplicity(&self, x: &T) -> u64 {
        self.items.get(x).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, u64)> + '_ {
        self.items.iter().map(|(&x, &k)| (x, k))
    }

    pub fn max_multiplicity(&self) -> u64 {
        self.items.values().copied().max().unwrap_or(0)
    }

    pub fn filter(&self, keep: impl Fn(&T) -> bool) -> Self {
        Multiset::from_counts(self.field, self.iter().filter(|(x, _)| keep(x)))
    }
}

fn as_pairs<T: Serialize, S: Serializer>(
    items: &BTreeMap<T, u64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(items.iter())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cached_moments_track_insertions() {
        let f = PrimeField::new(5).unwrap();
        let mut m = PointMultiset2::new(f);
        m.add(Point2 { x: 0, y: 0 }, 3);
        m.add(Point2 { x: 1, y: 0 }, 1);
        m.add(Point2 { x: 0, y: 0 }, 2);
        assert_eq!(m.total(), 6);
        assert_eq!(m.second_moment(), 26);
        assert_eq!(m.support_len(), 2);
        assert!(!m.is_simple());
        assert!(m.second_moment() >= m.support_len() as u128);
        let s = PointMultiset2::simple(f, [Point2 { x: 0, y: 0 }, Point2 { x: 0, y: 0 }]);
        assert_eq!(s.total(), 1);
        assert!(s.is_simple());
    }
}
