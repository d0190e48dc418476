use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::finite::{check_size, same_carrier, Relation};
use crate::pseudometric::{Distance, Pseudometric, PseudometricSystem};
use crate::uniformity::DiagonalBasis;

/// An eventually constant descending chain `X×X = D₁ ⊇ D₂ ⊇ … ⊇ D_k = D_{k+1} = …`
/// of equivalence relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    n: usize,
    steps: Vec<Relation>,
}

impl Chain {
    pub fn new(n: usize, steps: Vec<Relation>) -> Result<Self> {
        check_size(n)?;
        for s in &steps {
            same_carrier(n, s.n())?;
        }
        match steps.first() {
            None => return Err(Error::InvalidChain("no steps")),
            Some(first) if *first != Relation::full(n) => {
                return Err(Error::InvalidChain("first step is not the full relation"))
            }
            Some(_) => {}
        }
        if !steps.iter().all(Relation::is_equivalence) {
            return Err(Error::InvalidChain("step is not an equivalence relation"));
        }
        if !steps.windows(2).all(|w| w[1].is_subset(&w[0])) {
            return Err(Error::InvalidChain("steps are not descending"));
        }
        Ok(Chain { n, steps })
    }

    /// The constant chain `[X×X, D, D, …]`.
    pub fn constant(d: Relation) -> Result<Self> {
        let n = d.n();
        Chain::new(n, alloc::vec![Relation::full(n), d])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[Relation] {
        &self.steps
    }

    /// `D_m` with 1-based `m`, following the constant tail.
    pub fn step(&self, m: usize) -> &Relation {
        assert!(m >= 1, "chain levels start at 1");
        &self.steps[(m - 1).min(self.steps.len() - 1)]
    }

    /// Deepest 1-based level containing `(x, y)`, or `None` if every level
    /// contains it.
    pub fn depth(&self, x: usize, y: usize) -> Option<usize> {
        if self.steps.last().expect("nonempty").contains(x, y) {
            return None;
        }
        // descending chain: the levels containing (x, y) form a prefix
        Some(self.steps.iter().take_while(|s| s.contains(x, y)).count())
    }

    /// `d_κ(x, y) = 0` if every level contains `(x, y)`, else `1/m` for the
    /// deepest level `m` that does.
    pub fn pseudometric(&self) -> Pseudometric {
        let n = self.n;
        let dist = (0..n * n)
            .map(|i| match self.depth(i / n, i % n) {
                None => Distance::zero(),
                Some(m) => Distance::new(1, m as i64),
            })
            .collect();
        Pseudometric::from_table_unchecked(n, dist)
    }
}

impl PseudometricSystem {
    /// Pseudo-metrics of the constant chains `[X×X, D]`, one per relation of
    /// an equivalence basis of the same uniformity.
    ///
    /// Sup-combinations of these would not change the induced uniformity,
    /// so they are not materialized.
    pub fn from_na_basis(b: &DiagonalBasis) -> Result<PseudometricSystem> {
        let witness = b.non_archimedean_witness()?.ok_or(Error::NotNonArchimedean)?;
        let metrics = witness
            .entourages()
            .iter()
            .map(|d| Chain::constant(d.clone()).map(|c| c.pseudometric()))
            .collect::<Result<Vec<_>>>()?;
        PseudometricSystem::new(b.n(), metrics)
    }
}

/// Builds the descending chain for a list of equivalence relations.
///
/// The full relation is put in front unless the list already starts with
/// it; then `D₁ = E₁` and `D_{i+1} = D_i ∩ E_{i+1}`. Each step is an
/// intersection of inputs, so it lies in the intersection closure.
pub fn metrize_chain(equivalences: &[Relation]) -> Result<Chain> {
    let first = equivalences.first().ok_or(Error::Empty("equivalence list"))?;
    let n = first.n();
    for e in equivalences {
        same_carrier(n, e.n())?;
        if !e.is_equivalence() {
            return Err(Error::NotEquivalence);
        }
    }
    let full = Relation::full(n);
    let mut list: Vec<&Relation> = Vec::with_capacity(equivalences.len() + 1);
    if *first != full {
        list.push(&full);
    }
    list.extend(equivalences);

    let mut steps = Vec::with_capacity(list.len());
    let mut current = list[0].clone();
    steps.push(current.clone());
    for e in &list[1..] {
        current = current.intersection(e)?;
        steps.push(current.clone());
    }
    Chain::new(n, steps)
}

/// A single non-Archimedean pseudo-metric inducing the uniformity generated
/// by `equivalences` together with the full relation.
pub fn metrize(equivalences: &[Relation]) -> Result<Pseudometric> {
    Ok(metrize_chain(equivalences)?.pseudometric())
}
