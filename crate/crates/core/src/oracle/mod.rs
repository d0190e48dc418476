//! Exhaustive and seeded enumeration of small structures, and sweeps that
//! check the equivalence theorems on each of them.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::finite::{Partition, Relation};
use crate::pseudometric::{metrize_chain, Chain, Distance, Pseudometric, PseudometricSystem};
use crate::topology::FiniteTopology;
use crate::uniformity::{CoverBasis, DiagonalBasis};

mod enumerate;
pub mod sample;

pub use enumerate::{
    equivalence_bases, partitions, topologies, uniformities, MAX_SAMPLED_POINTS,
    MAX_TOPOLOGY_POINTS,
};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;
/// Sample count for sampled kinds when no limit is given.
pub const DEFAULT_SAMPLES: usize = 1000;
/// Largest carrier on which equivalence bases are enumerated exhaustively.
pub const MAX_EXHAUSTIVE_BASIS_POINTS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructureKind {
    Topologies,
    Partitions,
    EquivalenceBases,
    Uniformities,
    ValidCoverBases,
}

impl StructureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureKind::Topologies => "topologies",
            StructureKind::Partitions => "partitions",
            StructureKind::EquivalenceBases => "equivalence_bases",
            StructureKind::Uniformities => "uniformities",
            StructureKind::ValidCoverBases => "valid_cover_bases",
        }
    }
}

impl FromStr for StructureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            StructureKind::Topologies,
            StructureKind::Partitions,
            StructureKind::EquivalenceBases,
            StructureKind::Uniformities,
            StructureKind::ValidCoverBases,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
        .ok_or_else(|| Error::Enumeration(format!("unknown structure kind {s:?}")))
    }
}

/// What to enumerate.
///
/// Topologies (n ≤ 4), partitions and uniformities (n ≤ 8) are exhaustive.
/// Equivalence bases are exhaustive for n ≤ 4 and sampled for 5 ≤ n ≤ 8;
/// valid cover bases are always sampled. `limit` truncates exhaustive
/// streams and sets the sample count of sampled ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub n: usize,
    pub kind: StructureKind,
    pub limit: Option<usize>,
    pub seed: Option<u64>,
    pub max_generators: usize,
}

impl EnumerationSpec {
    pub fn new(n: usize, kind: StructureKind) -> Self {
        EnumerationSpec {
            n,
            kind,
            limit: None,
            seed: None,
            max_generators: 3,
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_max_generators(mut self, k: usize) -> Self {
        self.max_generators = k;
        self
    }

    pub fn is_sampled(&self) -> bool {
        match self.kind {
            StructureKind::ValidCoverBases => true,
            StructureKind::EquivalenceBases => self.n > MAX_EXHAUSTIVE_BASIS_POINTS,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Topology(FiniteTopology),
    Partition(Partition),
    Basis(DiagonalBasis),
    CoverBasis(CoverBasis),
}

/// The structures described by `spec`, deterministically.
pub fn enumerate(spec: &EnumerationSpec) -> Result<Vec<Structure>> {
    let n = spec.n;
    if n == 0 || n > MAX_SAMPLED_POINTS {
        return Err(Error::Enumeration(format!(
            "n must be in 1..={MAX_SAMPLED_POINTS}, got {n}"
        )));
    }
    let mut out: Vec<Structure> = if spec.is_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.unwrap_or(DEFAULT_SEED));
        let count = spec.limit.unwrap_or(DEFAULT_SAMPLES);
        (0..count)
            .map(|_| match spec.kind {
                StructureKind::ValidCoverBases => {
                    Structure::CoverBasis(sample::random_valid_cover_basis(&mut rng, n))
                }
                _ => Structure::Basis(sample::random_equivalence_basis(
                    &mut rng,
                    n,
                    spec.max_generators,
                )),
            })
            .collect()
    } else {
        match spec.kind {
            StructureKind::Topologies => topologies(n)?.into_iter().map(Structure::Topology).collect(),
            StructureKind::Partitions => partitions(n)?.into_iter().map(Structure::Partition).collect(),
            StructureKind::Uniformities => uniformities(n)?.into_iter().map(Structure::Basis).collect(),
            StructureKind::EquivalenceBases => equivalence_bases(n, spec.max_generators)?
                .into_iter()
                .map(Structure::Basis)
                .collect(),
            StructureKind::ValidCoverBases => unreachable!("always sampled"),
        }
    };
    if let Some(limit) = spec.limit {
        out.truncate(limit);
    }
    Ok(out)
}

/// Theorems that can be swept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    /// Diagonal and covering bases convert into each other and back.
    RoundTrip,
    /// Equivalence basis ⟺ ultrametric system ⟺ partition cover basis.
    NonArchimedean,
    /// T_A ⟺ zero-dimensional ⟺ non-Archimedean uniformizable.
    Separation,
    /// A countable equivalence basis gives a single ultrametric.
    Metrization,
}

impl TheoremId {
    pub const ALL: [TheoremId; 4] = [
        TheoremId::RoundTrip,
        TheoremId::NonArchimedean,
        TheoremId::Separation,
        TheoremId::Metrization,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::RoundTrip => "R2.1-roundtrip",
            TheoremId::NonArchimedean => "T2.4",
            TheoremId::Separation => "T3.2",
            TheoremId::Metrization => "T4.1",
        }
    }

    /// Structures swept when the caller does not choose.
    pub fn default_kind(self) -> StructureKind {
        match self {
            TheoremId::RoundTrip => StructureKind::Uniformities,
            TheoremId::NonArchimedean | TheoremId::Metrization => StructureKind::EquivalenceBases,
            TheoremId::Separation => StructureKind::Topologies,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownTheorem(s.into()))
    }
}

/// Verdict on one structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// All equivalent conditions hold.
    Satisfying,
    /// All equivalent conditions fail.
    Unsatisfying,
    /// The conditions disagree, or a construction broke its contract.
    Discrepancy(String),
}

impl Outcome {
    fn from_verdicts(names: &[&str], verdicts: &[bool]) -> Outcome {
        if verdicts.iter().all(|&v| v) {
            Outcome::Satisfying
        } else if verdicts.iter().all(|&v| !v) {
            Outcome::Unsatisfying
        } else {
            let parts: Vec<String> = names
                .iter()
                .zip(verdicts)
                .map(|(n, v)| format!("{n}={v}"))
                .collect();
            Outcome::Discrepancy(parts.join(", "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub structure: Structure,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub theorem: TheoremId,
    pub n: usize,
    pub checked: usize,
    pub satisfying: usize,
    pub discrepancies: usize,
    pub first_counterexample: Option<Counterexample>,
    /// Present when the structures were sampled.
    pub seed: Option<u64>,
    /// Wall-clock milliseconds; left at 0 here since timing needs `std`.
    pub ms: u64,
}

/// Uniformity round trips in both directions.
pub fn check_roundtrip(s: &Structure) -> Result<Outcome> {
    let (diagonal, cover) = match s {
        Structure::Basis(b) => (b.roundtrip_holds()?, b.cover_basis()?.roundtrip_holds()?),
        Structure::CoverBasis(cb) => (cb.roundtrip_holds()?, cb.diagonal_basis()?.roundtrip_holds()?),
        _ => return Err(Error::Enumeration("round trips need bases".into())),
    };
    Ok(match (diagonal, cover) {
        (true, true) => Outcome::Satisfying,
        _ => Outcome::Discrepancy(format!("diagonal-first={diagonal}, cover-first={cover}")),
    })
}

/// (A) equivalence basis, (B) inducing ultrametric system, (C) partition
/// cover basis, on one diagonal basis.
pub fn check_non_archimedean(b: &DiagonalBasis) -> Result<Outcome> {
    let a = b.is_non_archimedean()?;
    let bm = if a {
        let system = PseudometricSystem::from_na_basis(b)?;
        let induced = system.basis();
        system.is_non_archimedean()
            && induced.uniformity_equal(b)?
            && induced.is_non_archimedean()?
    } else {
        false
    };
    let c = b.cover_basis()?.has_partition_basis()?;
    Ok(Outcome::from_verdicts(&["A", "B", "C"], &[a, bm, c]))
}

/// T_A, zero-dimensionality and uniformizability on one topology.
pub fn check_separation(t: &FiniteTopology) -> Result<Outcome> {
    let verdicts = [
        t.satisfies_ta()?,
        t.is_zero_dimensional()?,
        t.is_uniformizable_na()?,
    ];
    Ok(Outcome::from_verdicts(
        &["T_A", "zero_dim", "uniformizable"],
        &verdicts,
    ))
}

/// Single-ultrametric metrization of an equivalence basis, plus the
/// pointwise chain bounds.
pub fn check_metrization(b: &DiagonalBasis) -> Result<Outcome> {
    let chain = metrize_chain(b.entourages())?;
    let d = chain.pseudometric();
    if !d.is_non_archimedean() {
        return Ok(Outcome::Discrepancy("metrized distance is not an ultrametric".into()));
    }
    let target = DiagonalBasis::new(
        b.n(),
        b.entourages().iter().cloned().chain([Relation::full(b.n())]),
    )?;
    if !PseudometricSystem::single(d).basis().uniformity_equal(&target)? {
        return Ok(Outcome::Discrepancy("metrized distance induces another uniformity".into()));
    }
    let constant = b
        .entourages()
        .iter()
        .map(|e| Chain::constant(e.clone()))
        .collect::<Result<Vec<_>>>()?;
    let mut all = constant;
    all.push(chain);
    if let Some(reason) = chain_bound_violation(&all) {
        return Ok(Outcome::Discrepancy(reason));
    }
    Ok(Outcome::Satisfying)
}

/// Checks the pointwise facts the ultrametric constructions rely on.
///
/// For each chain `κ`: values lie in `{0} ∪ {1/m}`; `D_m ⊆ {d_κ ≤ 1/m}`;
/// `{d_κ < 1/m} ⊆ D_{m+1}`; and `{d_κ < ε} ⊆ D₂` for `ε < 1/2`. For the sup
/// of all chains and each `k` with `1/k < ε`: `⋂ᵢ D_k⁽ⁱ⁾ ⊆ {sup < ε}`.
pub fn chain_bound_violation(chains: &[Chain]) -> Option<String> {
    let depth = chains.iter().map(|c| c.steps().len()).max()? + 1;
    let metrics: Vec<Pseudometric> = chains.iter().map(Chain::pseudometric).collect();
    for (i, (c, d)) in chains.iter().zip(&metrics).enumerate() {
        if let Some(v) = d.positive_values().into_iter().find(|v| *v.numer() != 1) {
            return Some(format!("chain {i}: value {v} is not a unit fraction"));
        }
        for m in 1..=depth {
            let level = Distance::new(1, m as i64);
            let ball = d.ball_relation(level).expect("positive");
            if !c.step(m).pairs().all(|(x, y)| d.get(x, y) <= level) {
                return Some(format!("chain {i}: D_{m} exceeds distance 1/{m}"));
            }
            if !ball.is_subset(c.step(m + 1)) {
                return Some(format!("chain {i}: ball of radius 1/{m} leaves D_{}", m + 1));
            }
        }
        if !d.ball_relation(Distance::new(1, 3)).expect("positive").is_subset(c.step(2)) {
            return Some(format!("chain {i}: ball of radius below 1/2 leaves D_2"));
        }
    }
    let sup = Pseudometric::sup(&metrics).ok()?;
    for k in 1..=depth {
        let radius = Distance::new(2, 2 * k as i64 - 1);
        let meet = chains
            .iter()
            .skip(1)
            .fold(chains[0].step(k).clone(), |acc, c| acc.intersection(c.step(k)).expect("shared carrier"));
        if !meet.is_subset(&sup.ball_relation(radius).expect("positive")) {
            return Some(format!("intersection of level {k} leaves the sup ball of radius {radius}"));
        }
    }
    None
}

fn check_structure(theorem: TheoremId, s: &Structure) -> Result<Outcome> {
    match (theorem, s) {
        (TheoremId::RoundTrip, _) => check_roundtrip(s),
        (TheoremId::NonArchimedean, Structure::Basis(b)) => check_non_archimedean(b),
        (TheoremId::Metrization, Structure::Basis(b)) => check_metrization(b),
        (TheoremId::Separation, Structure::Topology(t)) => check_separation(t),
        _ => Err(Error::Enumeration(format!("{theorem} cannot be checked on this structure"))),
    }
}

fn kind_supported(theorem: TheoremId, kind: StructureKind) -> bool {
    use StructureKind::*;
    match theorem {
        TheoremId::RoundTrip => matches!(kind, Uniformities | EquivalenceBases | ValidCoverBases),
        TheoremId::NonArchimedean | TheoremId::Metrization => {
            matches!(kind, Uniformities | EquivalenceBases)
        }
        TheoremId::Separation => kind == Topologies,
    }
}

/// Runs `theorem` over every structure of `spec`.
///
/// A construction that errors on an enumerated structure counts as a
/// discrepancy rather than aborting the sweep.
pub fn theorem_sweep(theorem: TheoremId, spec: &EnumerationSpec) -> Result<SweepReport> {
    if !kind_supported(theorem, spec.kind) {
        return Err(Error::Enumeration(format!(
            "{theorem} cannot be swept over {}",
            spec.kind.as_str()
        )));
    }
    let structures = enumerate(spec)?;
    let mut report = SweepReport {
        theorem,
        n: spec.n,
        checked: 0,
        satisfying: 0,
        discrepancies: 0,
        first_counterexample: None,
        seed: spec.is_sampled().then(|| spec.seed.unwrap_or(DEFAULT_SEED)),
        ms: 0,
    };
    for s in structures {
        report.checked += 1;
        let reason = match check_structure(theorem, &s) {
            Ok(Outcome::Satisfying) => {
                report.satisfying += 1;
                continue;
            }
            Ok(Outcome::Unsatisfying) => continue,
            Ok(Outcome::Discrepancy(reason)) => reason,
            Err(e) => format!("{e}"),
        };
        report.discrepancies += 1;
        if report.first_counterexample.is_none() {
            report.first_counterexample = Some(Counterexample {
                structure: s,
                reason,
            });
        }
    }
    Ok(report)
}
