use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finite::{check_size, same_carrier, PointSet, Relation, SetFamily};

/// A partition of `0..n` into nonempty disjoint blocks.
///
/// Blocks are kept sorted by their minimum element, so two partitions are
/// structurally equal exactly when they are the same partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<PointSet>,
}

impl Partition {
    pub fn from_blocks(n: usize, blocks: impl IntoIterator<Item = PointSet>) -> Result<Self> {
        check_size(n)?;
        let carrier = PointSet::full(n);
        let mut seen = PointSet::EMPTY;
        let mut blocks: Vec<PointSet> = blocks.into_iter().collect();
        for &block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block"));
            }
            if !block.is_subset(carrier) {
                let point = block.difference(carrier).first().unwrap_or(n);
                return Err(Error::PointOutOfRange { point, n });
            }
            if !block.is_disjoint(seen) {
                return Err(Error::InvalidPartition("blocks overlap"));
            }
            seen = seen.union(block);
        }
        if seen != carrier {
            return Err(Error::InvalidPartition("blocks do not cover the carrier"));
        }
        blocks.sort_unstable_by_key(|b| b.first());
        Ok(Partition { n, blocks })
    }

    /// Trusted constructor for blocks already known to form a partition.
    pub(crate) fn from_blocks_unchecked(n: usize, mut blocks: Vec<PointSet>) -> Self {
        blocks.sort_unstable_by_key(|b| b.first());
        Partition { n, blocks }
    }

    /// The partition into singletons.
    pub fn discrete(n: usize) -> Self {
        check_size(n).expect("carrier size");
        Partition::from_blocks_unchecked(n, (0..n).map(PointSet::singleton).collect())
    }

    /// The one-block partition.
    pub fn whole(n: usize) -> Self {
        check_size(n).expect("carrier size");
        Partition {
            n,
            blocks: alloc::vec![PointSet::full(n)],
        }
    }

    /// The classes of an equivalence relation.
    pub fn from_equivalence(e: &Relation) -> Result<Self> {
        if !e.is_equivalence() {
            return Err(Error::NotEquivalence);
        }
        let mut blocks = Vec::new();
        let mut seen = PointSet::EMPTY;
        for x in 0..e.n() {
            if !seen.contains(x) {
                let class = e.row(x);
                seen = seen.union(class);
                blocks.push(class);
            }
        }
        Ok(Partition { n: e.n(), blocks })
    }

    pub fn to_relation(&self) -> Relation {
        Relation::from_classes(self.n, &self.blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[PointSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, x: usize) -> Option<PointSet> {
        self.blocks.iter().copied().find(|b| b.contains(x))
    }

    /// Common refinement: the coarsest partition finer than both.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        same_carrier(self.n, other.n)?;
        let blocks = self
            .blocks
            .iter()
            .flat_map(|a| other.blocks.iter().map(move |b| a.intersection(*b)))
            .filter(|b| !b.is_empty())
            .collect();
        Ok(Partition::from_blocks_unchecked(self.n, blocks))
    }
}

impl SetFamily for Partition {
    fn carrier_size(&self) -> usize {
        self.n
    }

    fn sets(&self) -> &[PointSet] {
        &self.blocks
    }
}
