//! Finite topological spaces, clopen separation and non-Archimedean
//! uniformizability.
//!
//! On a finite carrier a topology is just its family of open sets, so every
//! question here reduces to a search over that family.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finite::{check_size, same_carrier, Partition, PointSet, Relation};
use crate::uniformity::DiagonalBasis;
use crate::validation::{ValidationReport, Witness};

/// Largest block count for which a partition topology is materialized.
pub const MAX_PARTITION_BLOCKS: usize = 20;

/// A topology on `0..n` given by its open sets.
///
/// Opens are deduplicated and sorted by size, then lexicographically, so
/// equal families compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    n: usize,
    opens: Vec<PointSet>,
}

/// A closed set and an outside point that no clopen set separates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TaCounterexample {
    pub closed: PointSet,
    pub point: usize,
}

impl FiniteTopology {
    /// Collects an open family. Axioms are checked by
    /// [`FiniteTopology::validate`], not here.
    pub fn new(n: usize, opens: impl IntoIterator<Item = PointSet>) -> Result<Self> {
        check_size(n)?;
        let carrier = PointSet::full(n);
        let mut opens: Vec<PointSet> = opens.into_iter().collect();
        if let Some(bad) = opens.iter().find(|o| !o.is_subset(carrier)) {
            let point = bad.difference(carrier).first().unwrap_or(n);
            return Err(Error::PointOutOfRange { point, n });
        }
        opens.sort_unstable_by(PointSet::canonical_cmp);
        opens.dedup();
        Ok(FiniteTopology { n, opens })
    }

    pub fn indiscrete(n: usize) -> Self {
        FiniteTopology::new(n, [PointSet::EMPTY, PointSet::full(n)]).expect("carrier size")
    }

    pub fn discrete(n: usize) -> Result<Self> {
        FiniteTopology::from_partition(&Partition::discrete(n))
    }

    /// Opens are the unions of blocks.
    pub fn from_partition(p: &Partition) -> Result<Self> {
        let blocks = p.blocks();
        if blocks.len() > MAX_PARTITION_BLOCKS {
            return Err(Error::TooLarge {
                what: "partition topology",
                size: blocks.len(),
                limit: MAX_PARTITION_BLOCKS,
            });
        }
        let opens = (0u32..1 << blocks.len()).map(|mask| {
            blocks
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(PointSet::EMPTY, |acc, (_, b)| acc.union(*b))
        });
        FiniteTopology::new(p.n(), opens)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn opens(&self) -> &[PointSet] {
        &self.opens
    }

    pub fn is_open(&self, set: PointSet) -> bool {
        self.opens
            .binary_search_by(|o| o.canonical_cmp(&set))
            .is_ok()
    }

    pub fn is_closed(&self, set: PointSet) -> bool {
        self.is_open(set.complement(self.n))
    }

    pub fn closed_sets(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.opens.iter().map(|o| o.complement(self.n))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        if !self.is_open(PointSet::EMPTY) {
            report.push("contains-empty", Witness::Set(PointSet::EMPTY));
        }
        if !self.is_open(PointSet::full(self.n)) {
            report.push("contains-carrier", Witness::Set(PointSet::full(self.n)));
        }
        for (i, &a) in self.opens.iter().enumerate() {
            for &b in &self.opens[i + 1..] {
                if !self.is_open(a.union(b)) {
                    report.push("union-closed", Witness::Pair { left: a, right: b });
                }
                if !self.is_open(a.intersection(b)) {
                    report.push("intersection-closed", Witness::Pair { left: a, right: b });
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidTopology(report))
        }
    }

    /// Sets that are both open and closed, in canonical order.
    pub fn clopen_sets(&self) -> Result<Vec<PointSet>> {
        self.ensure_valid()?;
        Ok(self.clopens())
    }

    fn clopens(&self) -> Vec<PointSet> {
        self.opens
            .iter()
            .copied()
            .filter(|&o| self.is_closed(o))
            .collect()
    }

    /// Every open set is a union of clopen sets.
    pub fn is_zero_dimensional(&self) -> Result<bool> {
        let clopens = self.clopen_sets()?;
        Ok(self.opens.iter().all(|&o| {
            let inner = clopens
                .iter()
                .filter(|c| c.is_subset(o))
                .fold(PointSet::EMPTY, |acc, c| acc.union(*c));
            inner == o
        }))
    }

    /// First closed set `A` and point `x ∉ A` admitting no disjoint open
    /// cover `{U₁, U₂}` with `A ⊆ U₁` and `x ∈ U₂`.
    ///
    /// Such a pair forces `U₂ = X ∖ U₁` to be clopen, so the search is over
    /// clopen sets containing `x` and missing `A`.
    pub fn ta_counterexample(&self) -> Result<Option<TaCounterexample>> {
        let clopens = self.clopen_sets()?;
        for closed in self.closed_sets() {
            for point in closed.complement(self.n) {
                let separated = clopens
                    .iter()
                    .any(|c| c.contains(point) && c.is_disjoint(closed));
                if !separated {
                    return Ok(Some(TaCounterexample { closed, point }));
                }
            }
        }
        Ok(None)
    }

    pub fn satisfies_ta(&self) -> Result<bool> {
        Ok(self.ta_counterexample()?.is_none())
    }

    /// Maps `X → {0,1}` that are continuous for the discrete topology on
    /// `{0,1}`: exactly those whose preimage of 1 is clopen.
    pub fn continuous_binary_maps(&self) -> Result<Vec<BinaryMap>> {
        Ok(self
            .clopen_sets()?
            .into_iter()
            .map(|ones| BinaryMap { n: self.n, ones })
            .collect())
    }

    /// The uniformity generated by all continuous binary maps, if it
    /// induces this topology.
    pub fn na_uniformization(&self) -> Result<Option<DiagonalBasis>> {
        let maps = self.continuous_binary_maps()?;
        let basis = uniformity_from_binary_maps(&maps)?;
        Ok((induced_topology(&basis)? == *self).then_some(basis))
    }

    pub fn is_uniformizable_na(&self) -> Result<bool> {
        Ok(self.na_uniformization()?.is_some())
    }
}

/// A map `f: X → {0,1}`, stored as `f⁻¹(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BinaryMap {
    n: usize,
    ones: PointSet,
}

impl BinaryMap {
    pub fn new(n: usize, ones: PointSet) -> Result<Self> {
        check_size(n)?;
        if let Some(point) = ones.difference(PointSet::full(n)).first() {
            return Err(Error::PointOutOfRange { point, n });
        }
        Ok(BinaryMap { n, ones })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ones(&self) -> PointSet {
        self.ones
    }

    pub fn value(&self, x: usize) -> u8 {
        self.ones.contains(x) as u8
    }

    pub fn is_continuous(&self, t: &FiniteTopology) -> bool {
        self.n == t.n && t.is_open(self.ones) && t.is_closed(self.ones)
    }

    /// `D_f = { (x, y) | f(x) = f(y) }`.
    pub fn kernel(&self) -> Relation {
        Relation::from_fn(self.n, |x, y| self.value(x) == self.value(y))
    }
}

/// The intersection closure of `{ D_f | f ∈ maps }`.
pub fn uniformity_from_binary_maps(maps: &[BinaryMap]) -> Result<DiagonalBasis> {
    let n = maps.first().ok_or(Error::Empty("binary map list"))?.n;
    for m in maps {
        same_carrier(n, m.n)?;
    }
    let generators = DiagonalBasis::new(n, maps.iter().map(BinaryMap::kernel))?;
    DiagonalBasis::new(n, generators.intersection_closure())
}

/// The topology of a uniformity: `O` is open iff every `x ∈ O` has an
/// entourage `D` with `D[x] ⊆ O`.
///
/// For a valid finite basis the least entourage is an equivalence relation
/// contained in every other, so the opens are the unions of its classes.
pub fn induced_topology(b: &DiagonalBasis) -> Result<FiniteTopology> {
    let min = b.normalize()?.entourages()[0].clone();
    let p = Partition::from_equivalence(&min)?;
    FiniteTopology::from_partition(&p)
}
