//! Graphs, separators and product-structure embeddings.

pub mod coloring;
pub mod embedding;
pub mod generators;
pub mod graph;
pub mod io;
pub mod report;
pub mod separator;
pub mod structure;
pub mod transform;

pub use graph::{Graph, GraphError};
