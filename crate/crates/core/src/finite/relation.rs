use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::finite::{check_size, same_carrier, PointSet, UnionFind};

/// A binary relation on the carrier `0..n`, stored as a dense bit matrix.
///
/// Row `x` is the slice `D[x] = { y | (x, y) ∈ D }`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: usize,
    rows: Vec<PointSet>,
}

impl Relation {
    /// # Panics
    ///
    /// If `n` is 0 or larger than 64.
    pub fn empty(n: usize) -> Self {
        check_size(n).expect("carrier size");
        Relation {
            n,
            rows: vec![PointSet::EMPTY; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Relation::empty(n);
        for (x, row) in r.rows.iter_mut().enumerate() {
            *row = PointSet::singleton(x);
        }
        r
    }

    pub fn full(n: usize) -> Self {
        let mut r = Relation::empty(n);
        r.rows.fill(PointSet::full(n));
        r
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_size(n)?;
        let mut r = Relation::empty(n);
        for (x, y) in pairs {
            let point = x.max(y);
            if point >= n {
                return Err(Error::PointOutOfRange { point, n });
            }
            r.insert(x, y);
        }
        Ok(r)
    }

    /// Builds `{ (x, y) | f(x, y) }`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Relation::empty(n);
        for x in 0..n {
            for y in 0..n {
                if f(x, y) {
                    r.insert(x, y);
                }
            }
        }
        r
    }

    /// Equivalence relation whose classes are the given disjoint blocks.
    pub(crate) fn from_classes(n: usize, classes: &[PointSet]) -> Self {
        let mut r = Relation::empty(n);
        for &class in classes {
            for x in class {
                r.rows[x] = class;
            }
        }
        r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.n && self.rows[x].contains(y)
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        assert!(x < self.n && y < self.n, "pair out of range");
        self.rows[x].insert(y);
    }

    /// The slice `D[x]`.
    pub fn row(&self, x: usize) -> PointSet {
        self.rows[x]
    }

    pub fn rows(&self) -> &[PointSet] {
        &self.rows
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |y| (x, y)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n == other.n
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(a, b)| a.is_subset(*b))
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        same_carrier(self.n, other.n)?;
        Ok(self.zip_rows(other, PointSet::intersection))
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        same_carrier(self.n, other.n)?;
        Ok(self.zip_rows(other, PointSet::union))
    }

    fn zip_rows(&self, other: &Relation, f: impl Fn(PointSet, PointSet) -> PointSet) -> Relation {
        Relation {
            n: self.n,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// `self ∘ other`: `(x, y)` whenever `(x, z) ∈ self` and `(z, y) ∈ other`.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        same_carrier(self.n, other.n)?;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(PointSet::EMPTY, |acc, z| acc.union(other.rows[z]))
            })
            .collect();
        Ok(Relation { n: self.n, rows })
    }

    pub fn inverse(&self) -> Relation {
        let mut r = Relation::empty(self.n);
        for (x, y) in self.pairs() {
            r.rows[y].insert(x);
        }
        r
    }

    pub fn is_reflexive(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(x, row)| row.contains(x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(x, y)| self.rows[y].contains(x))
    }

    pub fn is_transitive(&self) -> bool {
        // D ∘ D ⊆ D, row by row
        self.rows.iter().all(|row| {
            row.iter()
                .all(|z| self.rows[z].is_subset(*row))
        })
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    /// Least equivalence relation containing `self`.
    pub fn eq_closure(&self) -> Relation {
        let mut uf = UnionFind::new(self.n);
        for (x, y) in self.pairs() {
            uf.union(x, y);
        }
        Relation::from_classes(self.n, &uf.classes())
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation(n={}, ", self.n)?;
        f.debug_set().entries(self.pairs()).finish()?;
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(n, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let r = rel(3, &[(0, 1)]);
        let s = rel(3, &[(1, 2)]);
        assert_eq!(r.compose(&s).unwrap(), rel(3, &[(0, 2)]));

        let s = rel(3, &[(0, 2), (2, 2), (1, 0)]);
        assert_eq!(Relation::identity(3).compose(&s).unwrap(), s);

        let full = Relation::full(2);
        assert_eq!(full.compose(&full).unwrap(), full);
    }

    #[test]
    fn compose_rejects_mismatched_carriers() {
        let err = Relation::full(2).compose(&Relation::full(3)).unwrap_err();
        assert_eq!(err, Error::CarrierMismatch { left: 2, right: 3 });
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(rel(2, &[(0, 1)]).inverse(), rel(2, &[(1, 0)]));
        let sym = rel(3, &[(0, 1), (1, 0), (2, 2)]);
        assert_eq!(sym.inverse(), sym);
        assert_eq!(Relation::empty(3).inverse(), Relation::empty(3));
    }

    #[test]
    fn equivalence_examples() {
        assert!(Relation::identity(3).is_equivalence());
        assert!(Relation::full(3).is_equivalence());
        let chain = rel(
            3,
            &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (1, 2), (2, 1)],
        );
        assert!(chain.is_reflexive() && chain.is_symmetric());
        assert!(!chain.is_transitive());
        assert!(!chain.is_equivalence());
    }

    #[test]
    fn eq_closure_examples() {
        let closed = rel(3, &[(0, 1)]).eq_closure();
        assert_eq!(closed, rel(3, &[(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)]));
        assert_eq!(closed.eq_closure(), closed);
        assert_eq!(rel(3, &[(0, 1), (1, 2)]).eq_closure(), Relation::full(3));
    }

    #[test]
    fn from_pairs_checks_range() {
        assert_eq!(
            Relation::from_pairs(2, [(0, 2)]).unwrap_err(),
            Error::PointOutOfRange { point: 2, n: 2 }
        );
        assert_eq!(Relation::from_pairs(0, []).unwrap_err(), Error::CarrierSize(0));
    }
}
