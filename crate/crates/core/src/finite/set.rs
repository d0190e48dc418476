use core::cmp::Ordering;
use core::fmt;

use crate::finite::MAX_POINTS;

/// A subset of a carrier of at most 64 points, one bit per point.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet(u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    /// All points `0..n`.
    pub const fn full(n: usize) -> Self {
        if n >= MAX_POINTS {
            PointSet(u64::MAX)
        } else {
            PointSet((1u64 << n) - 1)
        }
    }

    pub const fn singleton(point: usize) -> Self {
        PointSet(1u64 << point)
    }

    pub const fn from_bits(bits: u64) -> Self {
        PointSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn contains(self, point: usize) -> bool {
        point < MAX_POINTS && self.0 & (1u64 << point) != 0
    }

    pub fn insert(&mut self, point: usize) {
        self.0 |= 1u64 << point;
    }

    pub fn remove(&mut self, point: usize) {
        self.0 &= !(1u64 << point);
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_disjoint(self, other: PointSet) -> bool {
        self.0 & other.0 == 0
    }

    pub const fn union(self, other: PointSet) -> Self {
        PointSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: PointSet) -> Self {
        PointSet(self.0 & other.0)
    }

    pub const fn difference(self, other: PointSet) -> Self {
        PointSet(self.0 & !other.0)
    }

    /// Complement relative to the carrier `0..n`.
    pub const fn complement(self, n: usize) -> Self {
        PointSet(!self.0 & PointSet::full(n).0)
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest point plus one, or 0 for the empty set.
    pub const fn span(self) -> usize {
        MAX_POINTS - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> Points {
        Points(self.0)
    }

    /// Order by size, then lexicographically by ascending element lists.
    pub fn canonical_cmp(&self, other: &PointSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl FromIterator<usize> for PointSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = PointSet::EMPTY;
        for point in iter {
            set.insert(point);
        }
        set
    }
}

impl IntoIterator for PointSet {
    type Item = usize;
    type IntoIter = Points;

    fn into_iter(self) -> Points {
        self.iter()
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the points of a [`PointSet`].
#[derive(Clone, Debug)]
pub struct Points(u64);

impl Iterator for Points {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let point = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(point)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let len = self.0.count_ones() as usize;
        (len, Some(len))
    }
}

impl ExactSizeIterator for Points {}
