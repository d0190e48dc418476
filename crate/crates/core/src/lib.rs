//! Finite uniform spaces and their non-Archimedean special case.
//!
//! A uniformity on a finite carrier can be presented three ways: by a basis
//! of entourages (reflexive relations), by a basis of uniform covers, or by a
//! system of pseudo-metrics. This crate implements all three presentations,
//! the conversions between them, the ultrametric constructions that turn a
//! basis of equivalence relations into pseudo-metrics, and the finite
//! topologies that such uniformities induce.
//!
//! Everything here is pure computation on dense bitsets, so the crate is
//! `no_std` and only needs `alloc`. JSON formats and the command-line tool
//! live in the companion `ultrauniform` crate.
//!
//! Carriers hold at most 64 points; points are the indices `0..n`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

mod error;
pub mod finite;
pub mod instances;
pub mod oracle;
pub mod pseudometric;
pub mod topology;
pub mod uniformity;
mod validation;

pub use error::{Error, Result};
pub use finite::{refines, Carrier, Partition, PointSet, Relation, SetFamily, MAX_POINTS};
pub use pseudometric::{metrize, metrize_chain, Chain, Distance, Pseudometric, PseudometricSystem};
pub use topology::{
    induced_topology, uniformity_from_binary_maps, BinaryMap, FiniteTopology, TaCounterexample,
};
pub use uniformity::{star, Cover, CoverBasis, DiagonalBasis};
pub use validation::{ValidationReport, Violation, Witness};
