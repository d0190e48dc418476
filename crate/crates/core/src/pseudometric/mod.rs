//! Pseudo-metrics, the uniformities they induce, and ultrametric
//! constructions from chains of equivalence relations.

mod chain;
mod metric;

pub use chain::{metrize, metrize_chain, Chain};
pub use metric::{Distance, Pseudometric, PseudometricSystem};
