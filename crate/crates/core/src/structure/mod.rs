//! Recursive partitions, tree-power factorization and embeddings into `T ⊠ K_s`.

use thiserror::Error;

use crate::separator::SeparatorError;

pub mod factorization;
pub mod params;
pub mod partition;
pub mod pipeline;

pub use factorization::{tree_power_factorization, Factorization};
pub use params::{compute_s, ProfileCase, SParameters};
pub use partition::{recursive_partition, recursive_partition_with, VertexPartitionTree};
pub use pipeline::{compose, embed_into_product, embed_into_product_with, ProductReport, ProductStructure};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StructureError {
    #[error(transparent)]
    Separator(#[from] SeparatorError),
    #[error("class C_{class} has {size} vertices, over its budget {bound}, in a {subgraph_size}-vertex subgraph")]
    ClassBudget { class: usize, size: usize, bound: usize, subgraph_size: usize },
    #[error("{0}")]
    Input(String),
}
