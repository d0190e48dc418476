//! Carriers, subsets, relations and partitions.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};

mod partition;
mod relation;
mod set;

pub use partition::Partition;
pub use relation::Relation;
pub use set::{PointSet, Points};

/// Largest supported carrier.
pub const MAX_POINTS: usize = 64;

pub(crate) fn check_size(n: usize) -> Result<()> {
    if (1..=MAX_POINTS).contains(&n) {
        Ok(())
    } else {
        Err(Error::CarrierSize(n))
    }
}

pub(crate) fn same_carrier(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::CarrierMismatch { left, right })
    }
}

/// The point set `0..n`, optionally with display labels.
///
/// Structures only record `n`; labels are for presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    size: usize,
    labels: Option<Vec<String>>,
}

impl Carrier {
    pub fn new(size: usize) -> Result<Self> {
        check_size(size)?;
        Ok(Carrier { size, labels: None })
    }

    pub fn with_labels<S: ToString>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(|l| l.to_string()).collect();
        check_size(labels.len())?;
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::InvalidLabels(alloc::format!("duplicate label {label:?}")));
            }
        }
        Ok(Carrier {
            size: labels.len(),
            labels: Some(labels),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn points(&self) -> Range<usize> {
        0..self.size
    }

    pub fn label(&self, point: usize) -> Option<&str> {
        self.labels.as_ref()?.get(point).map(String::as_str)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }
}

/// A finite family of subsets of a carrier: partitions and covers.
pub trait SetFamily {
    fn carrier_size(&self) -> usize;
    fn sets(&self) -> &[PointSet];
}

/// Every set of `fine` lies inside some set of `coarse`.
pub fn refines<F, C>(fine: &F, coarse: &C) -> Result<bool>
where
    F: SetFamily + ?Sized,
    C: SetFamily + ?Sized,
{
    same_carrier(fine.carrier_size(), coarse.carrier_size())?;
    Ok(sets_refine(fine.sets(), coarse.sets()))
}

pub(crate) fn sets_refine(fine: &[PointSet], coarse: &[PointSet]) -> bool {
    fine.iter()
        .all(|f| coarse.iter().any(|c| f.is_subset(*c)))
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: alloc::vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }

    /// Classes ordered by their minimum element.
    pub(crate) fn classes(&mut self) -> Vec<PointSet> {
        let n = self.parent.len();
        let mut by_root = alloc::vec![PointSet::EMPTY; n];
        for x in 0..n {
            let root = self.find(x);
            by_root[root].insert(x);
        }
        let mut classes: Vec<PointSet> = by_root.into_iter().filter(|c| !c.is_empty()).collect();
        classes.sort_unstable_by_key(|c| c.first());
        classes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carrier_bounds() {
        assert_eq!(Carrier::new(0).unwrap_err(), Error::CarrierSize(0));
        assert_eq!(Carrier::new(65).unwrap_err(), Error::CarrierSize(65));
        assert_eq!(Carrier::new(64).unwrap().points(), 0..64);
    }

    #[test]
    fn carrier_labels() {
        let c = Carrier::with_labels(["a", "b", "c"]).unwrap();
        assert_eq!(c.size(), 3);
        assert_eq!(c.label(1), Some("b"));
        assert_eq!(c.index_of("c"), Some(2));
        assert!(Carrier::with_labels(["a", "a"]).is_err());
        assert!(Carrier::new(2).unwrap().label(0).is_none());
    }

    #[test]
    fn union_find_classes() {
        let mut uf = UnionFind::new(5);
        uf.union(3, 1);
        uf.union(4, 0);
        uf.union(1, 4);
        assert_eq!(
            uf.classes(),
            [PointSet::from_bits(0b11011), PointSet::from_bits(0b00100)]
        );
    }
}
