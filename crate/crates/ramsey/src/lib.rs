//! Density predicates, colored blow-up hosts and candidate-set embedders.

pub mod badfamily;
pub mod congestion;
pub mod dense;
pub mod density;
pub mod hall;
pub mod host;
pub mod prepare;
pub mod sparse;
pub mod structure;
pub mod verify;

use thiserror::Error;

pub use congestion::{build_auxiliary_graph, check_congestion, AuxiliaryGraph, CongestionCertificate};
pub use density::{check_dense_pair, check_uniform, DensityCertificate, DensityMode, UniformCertificate, Verdict};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RamseyError {
    #[error("{what}: size {size} exceeds the limit {limit}")]
    SizeGuard { what: &'static str, size: usize, limit: usize },
    #[error("invalid input: {0}")]
    Input(String),
}
