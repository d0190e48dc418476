use alloc::string::String;

use crate::validation::ValidationReport;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("carrier size {0} is outside 1..=64")]
    CarrierSize(usize),
    #[error("carrier mismatch: {left} points vs {right} points")]
    CarrierMismatch { left: usize, right: usize },
    #[error("point {point} is outside a carrier of {n} points")]
    PointOutOfRange { point: usize, n: usize },
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error("relation is not an equivalence relation")]
    NotEquivalence,
    #[error("invalid partition: {0}")]
    InvalidPartition(&'static str),
    #[error("invalid cover: {0}")]
    InvalidCover(&'static str),
    #[error("empty {0}")]
    Empty(&'static str),
    #[error("invalid diagonal basis ({} violations)", .0.violations.len())]
    InvalidBasis(ValidationReport),
    #[error("invalid cover basis ({} violations)", .0.violations.len())]
    InvalidCoverBasis(ValidationReport),
    #[error("invalid topology ({} violations)", .0.violations.len())]
    InvalidTopology(ValidationReport),
    #[error("invalid pseudometric: {0}")]
    InvalidPseudometric(String),
    #[error("ball radius must be positive")]
    NonPositiveRadius,
    #[error("invalid chain: {0}")]
    InvalidChain(&'static str),
    #[error("basis is not non-Archimedean")]
    NotNonArchimedean,
    #[error("{what} too large: {size} exceeds {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("unsupported enumeration: {0}")]
    Enumeration(String),
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
