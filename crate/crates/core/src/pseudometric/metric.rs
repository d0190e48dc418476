use alloc::format;
use alloc::vec::Vec;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::finite::{check_size, same_carrier, Relation};
use crate::uniformity::{push_unique, DiagonalBasis};

/// Exact nonnegative distance value.
pub type Distance = Ratio<i64>;

/// A pseudo-metric on `0..n` with exact rational values.
///
/// Zero diagonal, symmetry and the ordinary triangle inequality are
/// enforced on construction. Distinct points may be at distance zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pseudometric {
    n: usize,
    dist: Vec<Distance>,
}

impl Pseudometric {
    /// Builds from a row-major `n × n` table.
    pub fn new(n: usize, dist: Vec<Distance>) -> Result<Self> {
        check_size(n)?;
        if dist.len() != n * n {
            return Err(Error::InvalidPseudometric(format!(
                "expected {} entries, found {}",
                n * n,
                dist.len()
            )));
        }
        let d = Pseudometric { n, dist };
        d.check()?;
        Ok(d)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Distance) -> Result<Self> {
        check_size(n)?;
        let dist = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Pseudometric::new(n, dist)
    }

    pub fn zero(n: usize) -> Self {
        check_size(n).expect("carrier size");
        Pseudometric {
            n,
            dist: alloc::vec![Distance::zero(); n * n],
        }
    }

    /// Trusted constructor for tables built by an ultrametric construction.
    pub(crate) fn from_table_unchecked(n: usize, dist: Vec<Distance>) -> Self {
        debug_assert!(Pseudometric::new(n, dist.clone()).is_ok());
        Pseudometric { n, dist }
    }

    fn check(&self) -> Result<()> {
        let n = self.n;
        for x in 0..n {
            if !self.get(x, x).is_zero() {
                return Err(Error::InvalidPseudometric(format!("d({x},{x}) is not zero")));
            }
            for y in 0..n {
                let v = self.get(x, y);
                if v < Distance::zero() {
                    return Err(Error::InvalidPseudometric(format!("d({x},{y}) is negative")));
                }
                if v != self.get(y, x) {
                    return Err(Error::InvalidPseudometric(format!(
                        "d({x},{y}) differs from d({y},{x})"
                    )));
                }
            }
        }
        // the strong triangle inequality implies the ordinary one
        if self.is_non_archimedean() {
            return Ok(());
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.get(x, y) > self.get(x, z) + self.get(z, y) {
                        return Err(Error::InvalidPseudometric(format!(
                            "triangle inequality fails for ({x},{y}) via {z}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> Distance {
        self.dist[x * self.n + y]
    }

    /// Row-major table.
    pub fn table(&self) -> &[Distance] {
        &self.dist
    }

    /// Strong triangle inequality `d(x,y) ≤ max(d(x,z), d(z,y))`.
    pub fn is_non_archimedean(&self) -> bool {
        self.strong_triangle_violation().is_none()
    }

    /// First triple `[x, y, z]`, in lexicographic order, with
    /// `d(x,y) > max(d(x,z), d(z,y))`.
    pub fn strong_triangle_violation(&self) -> Option<[usize; 3]> {
        // only the order of the values matters, so compare ranks
        let mut values = self.dist.clone();
        values.sort_unstable();
        values.dedup();
        let rank: Vec<u32> = self
            .dist
            .iter()
            .map(|v| values.binary_search(v).expect("value is listed") as u32)
            .collect();
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = rank[x * n + y];
                for z in 0..n {
                    if xy > rank[x * n + z].max(rank[z * n + y]) {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }

    /// Distinct positive values, ascending.
    pub fn positive_values(&self) -> Vec<Distance> {
        let mut values: Vec<Distance> = self.dist.iter().copied().filter(|v| !v.is_zero()).collect();
        values.sort_unstable();
        values.dedup();
        values
    }

    pub fn max_distance(&self) -> Distance {
        self.dist.iter().copied().max().unwrap_or_else(Distance::zero)
    }

    /// `D_ε = { (x, y) | d(x, y) < ε }`.
    pub fn ball_relation(&self, radius: Distance) -> Result<Relation> {
        if radius <= Distance::zero() {
            return Err(Error::NonPositiveRadius);
        }
        Ok(Relation::from_fn(self.n, |x, y| self.get(x, y) < radius))
    }

    /// Every distinct ball relation, from the finest up to the full relation.
    ///
    /// Radii are the distinct positive distances plus one radius above the
    /// maximum; between consecutive realized values the ball relation does
    /// not change.
    pub fn ball_relations(&self) -> Vec<Relation> {
        let mut radii = self.positive_values();
        radii.push(self.max_distance() + Distance::one());
        let mut out = Vec::new();
        for r in radii {
            push_unique(&mut out, self.ball_relation(r).expect("positive radius"));
        }
        out
    }

    /// Pointwise maximum.
    pub fn sup(metrics: &[Pseudometric]) -> Result<Pseudometric> {
        let (first, rest) = metrics.split_first().ok_or(Error::Empty("pseudometric list"))?;
        let mut dist = first.dist.clone();
        for d in rest {
            same_carrier(first.n, d.n)?;
            for (a, b) in dist.iter_mut().zip(&d.dist) {
                *a = (*a).max(*b);
            }
        }
        Ok(Pseudometric { n: first.n, dist })
    }

    /// `k · d` for a positive factor.
    pub fn scaled(&self, factor: Distance) -> Result<Pseudometric> {
        if factor <= Distance::zero() {
            return Err(Error::InvalidParameter(format!("scale factor {factor} is not positive")));
        }
        Ok(Pseudometric {
            n: self.n,
            dist: self.dist.iter().map(|v| v * factor).collect(),
        })
    }
}

/// A finite system of pseudo-metrics on a shared carrier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PseudometricSystem {
    n: usize,
    metrics: Vec<Pseudometric>,
}

impl PseudometricSystem {
    pub fn new(n: usize, metrics: impl IntoIterator<Item = Pseudometric>) -> Result<Self> {
        check_size(n)?;
        let mut list = Vec::new();
        for d in metrics {
            same_carrier(n, d.n)?;
            push_unique(&mut list, d);
        }
        if list.is_empty() {
            return Err(Error::Empty("pseudometric system"));
        }
        Ok(PseudometricSystem { n, metrics: list })
    }

    pub fn single(d: Pseudometric) -> Self {
        PseudometricSystem {
            n: d.n,
            metrics: alloc::vec![d],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn metrics(&self) -> &[Pseudometric] {
        &self.metrics
    }

    pub fn is_non_archimedean(&self) -> bool {
        self.metrics.iter().all(Pseudometric::is_non_archimedean)
    }

    /// The distinct ball relations `D_ε^d` over all members and radii.
    pub fn basis(&self) -> DiagonalBasis {
        let mut out = Vec::new();
        for d in &self.metrics {
            for r in d.ball_relations() {
                push_unique(&mut out, r);
            }
        }
        DiagonalBasis::new(self.n, out).expect("nonempty basis on a shared carrier")
    }

    /// Both systems induce the same diagonal uniformity.
    pub fn equivalent(&self, other: &PseudometricSystem) -> Result<bool> {
        same_carrier(self.n, other.n)?;
        self.basis().uniformity_equal(&other.basis())
    }
}
