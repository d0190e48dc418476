use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finite::{check_size, same_carrier, sets_refine, Partition, PointSet, Relation, SetFamily};
use crate::uniformity::{push_unique, DiagonalBasis};
use crate::validation::{ValidationReport, Witness};

/// A finite cover of `0..n` by nonempty sets.
///
/// Sets are deduplicated and sorted by (minimum element, bit pattern).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cover {
    n: usize,
    sets: Vec<PointSet>,
}

impl Cover {
    pub fn new(n: usize, sets: impl IntoIterator<Item = PointSet>) -> Result<Self> {
        check_size(n)?;
        let carrier = PointSet::full(n);
        let mut union = PointSet::EMPTY;
        let mut list = Vec::new();
        for set in sets {
            if set.is_empty() {
                return Err(Error::InvalidCover("empty member"));
            }
            if !set.is_subset(carrier) {
                let point = set.difference(carrier).first().unwrap_or(n);
                return Err(Error::PointOutOfRange { point, n });
            }
            union = union.union(set);
            list.push(set);
        }
        if union != carrier {
            return Err(Error::InvalidCover("members do not cover the carrier"));
        }
        Ok(Cover::from_sets_unchecked(n, list))
    }

    fn from_sets_unchecked(n: usize, mut sets: Vec<PointSet>) -> Self {
        sets.sort_unstable_by_key(|s| (s.first(), s.bits()));
        sets.dedup();
        Cover { n, sets }
    }

    pub fn from_partition(p: &Partition) -> Self {
        Cover {
            n: p.n(),
            sets: p.blocks().to_vec(),
        }
    }

    /// `𝒰_D = { D[x] | x ∈ X }` for a reflexive relation `D`.
    pub fn neighborhoods(d: &Relation) -> Result<Self> {
        if !d.is_reflexive() {
            return Err(Error::InvalidCover("relation is not reflexive"));
        }
        Ok(Cover::from_sets_unchecked(d.n(), d.rows().to_vec()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    /// Members are pairwise disjoint.
    pub fn is_partition(&self) -> bool {
        self.sets
            .iter()
            .enumerate()
            .all(|(i, a)| self.sets[i + 1..].iter().all(|b| a.is_disjoint(*b)))
    }

    pub fn to_partition(&self) -> Option<Partition> {
        self.is_partition()
            .then(|| Partition::from_blocks_unchecked(self.n, self.sets.clone()))
    }

    /// `D_𝒰 = { (x, y) | x, y ∈ U for some U ∈ 𝒰 }`.
    pub fn relation(&self) -> Relation {
        let mut r = Relation::empty(self.n);
        for &set in &self.sets {
            for x in set {
                for y in set {
                    r.insert(x, y);
                }
            }
        }
        r
    }

    /// The finest partition refined by this cover: the classes of
    /// `eq_closure(D_𝒰)`.
    pub fn induced_partition(&self) -> Partition {
        Partition::from_equivalence(&self.relation().eq_closure()).expect("closure is an equivalence")
    }

    /// `{ star(V, 𝒰) | V ∈ 𝒰 }`.
    pub fn star_cover(&self) -> Cover {
        let sets = self.sets.iter().map(|&v| star(v, self)).collect();
        Cover::from_sets_unchecked(self.n, sets)
    }

    /// `{ U ∩ V | U ∈ self, V ∈ other, U ∩ V ≠ ∅ }`.
    pub fn meet(&self, other: &Cover) -> Result<Cover> {
        same_carrier(self.n, other.n)?;
        let sets = self
            .sets
            .iter()
            .flat_map(|a| other.sets.iter().map(move |b| a.intersection(*b)))
            .filter(|s| !s.is_empty())
            .collect();
        Ok(Cover::from_sets_unchecked(self.n, sets))
    }

    pub fn refines(&self, coarse: &Cover) -> Result<bool> {
        crate::finite::refines(self, coarse)
    }
}

impl SetFamily for Cover {
    fn carrier_size(&self) -> usize {
        self.n
    }

    fn sets(&self) -> &[PointSet] {
        &self.sets
    }
}

/// Union of the members of `cover` that meet `a`.
pub fn star(a: PointSet, cover: &Cover) -> PointSet {
    cover
        .sets
        .iter()
        .filter(|u| !u.is_disjoint(a))
        .fold(PointSet::EMPTY, |acc, u| acc.union(*u))
}

/// A finite basis of a covering uniformity.
///
/// The uniformity is the family of covers refined by some finite meet of
/// basis covers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoverBasis {
    n: usize,
    covers: Vec<Cover>,
}

impl CoverBasis {
    pub fn new(n: usize, covers: impl IntoIterator<Item = Cover>) -> Result<Self> {
        check_size(n)?;
        let mut list = Vec::new();
        for c in covers {
            same_carrier(n, c.n)?;
            push_unique(&mut list, c);
        }
        if list.is_empty() {
            return Err(Error::Empty("cover basis"));
        }
        Ok(CoverBasis { n, covers: list })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn covers(&self) -> &[Cover] {
        &self.covers
    }

    /// Meet of every basis cover: the finest member of the meet closure.
    pub fn minimum(&self) -> Cover {
        let mut min = self.covers[0].clone();
        for c in &self.covers[1..] {
            min = min.meet(c).expect("shared carrier");
        }
        min
    }

    /// Each basis cover must be star-refined by some finite meet of basis
    /// covers. Star refinement is monotone, so the meet of all covers is
    /// the only candidate that needs testing.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let stars = self.minimum().star_cover();
        for (index, u) in self.covers.iter().enumerate() {
            if !sets_refine(&stars.sets, &u.sets) {
                report.push("star-refinement", Witness::Cover { index });
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
            Err(Error::InvalidCoverBasis(report))
        }
    }

    /// Whether `cover` belongs to the generated covering uniformity.
    pub fn is_uniform_cover(&self, cover: &Cover) -> Result<bool> {
        same_carrier(self.n, cover.n)?;
        self.ensure_valid()?;
        Ok(sets_refine(&self.minimum().sets, &cover.sets))
    }

    /// Mutual refinement: every basis cover of one side is refined by a
    /// finite meet of the other side's covers.
    pub fn uniformity_equal(&self, other: &CoverBasis) -> Result<bool> {
        same_carrier(self.n, other.n)?;
        self.ensure_valid()?;
        other.ensure_valid()?;
        let (mine, theirs) = (self.minimum(), other.minimum());
        Ok(self.covers.iter().all(|u| sets_refine(&theirs.sets, &u.sets))
            && other.covers.iter().all(|u| sets_refine(&mine.sets, &u.sets)))
    }

    /// `{ D_𝒰 | 𝒰 ∈ basis }`.
    pub fn diagonal_basis(&self) -> Result<DiagonalBasis> {
        self.ensure_valid()?;
        DiagonalBasis::new(self.n, self.covers.iter().map(Cover::relation))
    }

    /// A basis of partitions for the same covering uniformity, if one
    /// exists.
    ///
    /// For each basis cover `𝒰`, look for a cover `𝒱` of the meet closure
    /// whose induced partition refines `𝒰`; `𝒰` itself, the other basis
    /// covers and the overall meet are tried in that order.
    pub fn partition_witness(&self) -> Result<Option<CoverBasis>> {
        self.ensure_valid()?;
        let min = self.minimum();
        let mut witness = Vec::new();
        for (i, u) in self.covers.iter().enumerate() {
            let candidates = core::iter::once(u)
                .chain(self.covers[..i].iter())
                .chain(self.covers[i + 1..].iter())
                .chain(core::iter::once(&min));
            let found = candidates
                .map(|v| Cover::from_partition(&v.induced_partition()))
                .find(|p| sets_refine(&p.sets, &u.sets));
            match found {
                Some(p) => push_unique(&mut witness, p),
                None => return Ok(None),
            }
        }
        Ok(Some(CoverBasis {
            n: self.n,
            covers: witness,
        }))
    }

    pub fn has_partition_basis(&self) -> Result<bool> {
        Ok(self.partition_witness()?.is_some())
    }

    /// Cover → diagonal → cover returns the same covering uniformity.
    pub fn roundtrip_holds(&self) -> Result<bool> {
        let back = self.diagonal_basis()?.cover_basis()?;
        self.uniformity_equal(&back)
    }
}
