//! Tree decompositions, balanced separators, separator orderings and necklace splitting.

use std::time::Duration;

use thiserror::Error;

pub mod balanced;
pub mod colored;
pub mod decomposition;
pub mod necklace;
pub mod ordering;
pub mod profile;

pub use balanced::{balanced_separator, SeparatorTriple};
pub use colored::{colored_separator, colored_separator_with, verify_colored, ColoredSeparation};
pub use decomposition::{tree_decomposition, DecompositionMode, TreeDecomposition};
pub use necklace::{necklace_split, parse_necklace, verify_necklace, NecklaceSplit};
pub use ordering::{separator_ordering, separator_ordering_with_base, SeparatorOrdering};
pub use profile::TreewidthProfile;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeparatorError {
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("exact treewidth limited to {limit} vertices, got {n}")]
    SizeGuard { n: usize, limit: usize },
    #[error("certificate failure: separator of size {separator_size} on a {subgraph_size}-vertex subgraph exceeds t+1 = {bound}")]
    Budget { subgraph_size: usize, separator_size: usize, bound: f64 },
    #[error("necklace search exhausted its {budget:?} budget")]
    NecklaceBudget { budget: Duration },
    #[error("{0}")]
    Input(String),
}
