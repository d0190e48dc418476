use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finite::{check_size, same_carrier, Relation};
use crate::uniformity::{push_unique, Cover, CoverBasis};
use crate::validation::{ValidationReport, Witness};

/// A finite basis of a diagonal uniformity.
///
/// The uniformity it stands for is the filter of all relations that contain
/// some finite intersection of listed entourages. The filter itself is never
/// materialized.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagonalBasis {
    n: usize,
    entourages: Vec<Relation>,
}

impl DiagonalBasis {
    /// Collects a basis, dropping duplicates and keeping first-seen order.
    ///
    /// Axioms are not checked here; see [`DiagonalBasis::validate`].
    pub fn new(n: usize, entourages: impl IntoIterator<Item = Relation>) -> Result<Self> {
        check_size(n)?;
        let mut list = Vec::new();
        for e in entourages {
            same_carrier(n, e.n())?;
            push_unique(&mut list, e);
        }
        if list.is_empty() {
            return Err(Error::Empty("diagonal basis"));
        }
        Ok(DiagonalBasis {
            n,
            entourages: list,
        })
    }

    pub fn single(entourage: Relation) -> Self {
        DiagonalBasis {
            n: entourage.n(),
            entourages: alloc::vec![entourage],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entourages(&self) -> &[Relation] {
        &self.entourages
    }

    /// Intersection of every listed entourage.
    ///
    /// This is the least element of the intersection closure and, for a
    /// valid basis, the least entourage of the whole uniformity.
    pub fn minimum(&self) -> Relation {
        let mut rows = self.entourages[0].clone();
        for e in &self.entourages[1..] {
            rows = rows.intersection(e).expect("shared carrier");
        }
        rows
    }

    /// All finite intersections of listed entourages, generators first.
    pub fn intersection_closure(&self) -> Vec<Relation> {
        let mut closure = self.entourages.clone();
        let mut i = 0;
        while i < closure.len() {
            for g in &self.entourages {
                let meet = closure[i].intersection(g).expect("shared carrier");
                push_unique(&mut closure, meet);
            }
            i += 1;
        }
        closure
    }

    /// Checks the basis axioms of a diagonal uniformity.
    ///
    /// Every listed entourage must contain the diagonal, and for each listed
    /// `D` there must be some `E` in the intersection closure with
    /// `E⁻¹ ⊆ D` and `E ∘ E ⊆ D`. Both conditions are monotone in `E`, so
    /// the minimum of the closure is the only candidate worth testing.
    /// Directedness holds by construction of the closure.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let min = self.minimum();
        let min_inverse = min.inverse();
        let min_square = min.compose(&min).expect("shared carrier");
        for (index, d) in self.entourages.iter().enumerate() {
            let witness = || Witness::Entourage {
                index,
                relation: d.clone(),
            };
            if !d.is_reflexive() {
                report.push("reflexivity", witness());
            }
            if !min_inverse.is_subset(d) {
                report.push("symmetry", witness());
            }
            if !min_square.is_subset(d) {
                report.push("half-composition", witness());
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidBasis(report))
        }
    }

    /// The canonical singleton basis `{D_min}`.
    pub fn normalize(&self) -> Result<DiagonalBasis> {
        self.ensure_valid()?;
        Ok(DiagonalBasis::single(self.minimum()))
    }

    /// Whether both bases generate the same uniformity.
    pub fn uniformity_equal(&self, other: &DiagonalBasis) -> Result<bool> {
        same_carrier(self.n, other.n)?;
        Ok(self.normalize()? == other.normalize()?)
    }

    /// Filter membership: `r` contains some finite intersection of the basis.
    pub fn is_entourage(&self, r: &Relation) -> Result<bool> {
        same_carrier(self.n, r.n())?;
        self.ensure_valid()?;
        Ok(self.minimum().is_subset(r))
    }

    /// A basis of equivalence relations generating the same uniformity, if
    /// one exists.
    ///
    /// An equivalence relation below `D` that belongs to the uniformity
    /// contains some `D₀` of the closure, hence contains `eq_closure(D₀)`.
    /// So it is enough to look for closure members `D₀` with
    /// `eq_closure(D₀) ⊆ D`. Candidates are tried in the order `D` itself,
    /// the other listed entourages, then the minimum of the closure.
    pub fn non_archimedean_witness(&self) -> Result<Option<DiagonalBasis>> {
        self.ensure_valid()?;
        let min = self.minimum();
        let mut witness = Vec::new();
        for (i, d) in self.entourages.iter().enumerate() {
            let candidates = core::iter::once(d)
                .chain(self.entourages[..i].iter())
                .chain(self.entourages[i + 1..].iter())
                .chain(core::iter::once(&min));
            let found = candidates
                .map(Relation::eq_closure)
                .find(|closed| closed.is_subset(d));
            match found {
                Some(closed) => push_unique(&mut witness, closed),
                None => return Ok(None),
            }
        }
        Ok(Some(DiagonalBasis {
            n: self.n,
            entourages: witness,
        }))
    }

    pub fn is_non_archimedean(&self) -> Result<bool> {
        Ok(self.non_archimedean_witness()?.is_some())
    }

    /// `{ 𝒰_D | D ∈ basis }` with `𝒰_D = { D[x] | x ∈ X }`, plus `𝒰_{D_min}`
    /// when the listed entourages are not closed under intersection.
    ///
    /// Meets of neighborhood covers can be coarser than the neighborhood
    /// cover of the intersection, so the minimum has to be present for the
    /// covers to generate the same uniformity.
    pub fn cover_basis(&self) -> Result<CoverBasis> {
        self.ensure_valid()?;
        let min = self.minimum();
        let mut covers = self
            .entourages
            .iter()
            .map(Cover::neighborhoods)
            .collect::<Result<Vec<_>>>()?;
        if !self.entourages.contains(&min) {
            covers.push(Cover::neighborhoods(&min)?);
        }
        CoverBasis::new(self.n, covers)
    }

    /// Diagonal → cover → diagonal returns the same uniformity.
    pub fn roundtrip_holds(&self) -> Result<bool> {
        let back = self.cover_basis()?.diagonal_basis()?;
        self.uniformity_equal(&back)
    }
}
