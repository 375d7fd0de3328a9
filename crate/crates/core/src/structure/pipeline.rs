use serde::{Deserialize, Serialize};

use super::factorization::tree_power_factorization;
use super::params::{compute_s, SParameters};
use super::partition::{recursive_partition_with, VertexPartitionTree};
use super::StructureError;
use crate::embedding::{verify_product_embedding, ProductEmbedding};
use crate::graph::Graph;
use crate::report::CertificateReport;
use crate::separator::decomposition::TreeDecomposition;
use crate::separator::profile::TreewidthProfile;

/// Embedding together with the parameters and partition it came from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductStructure {
    pub params: SParameters,
    pub partition: VertexPartitionTree,
    pub embedding: ProductEmbedding,
}

impl ProductStructure {
    /// Embedding checks plus the measured `v(T′) ≤ n/s + 1` and `Δ(T′) ≤ 1 + 2^k`.
    pub fn certify(&self) -> CertificateReport {
        let mut report = verify_product_embedding(&self.embedding);
        let n = self.embedding.source.vertex_count() as f64;
        let tree = &self.embedding.tree;
        report.bound("tree_nodes", tree.vertex_count() as f64, n / self.params.s as f64 + 1.0);
        report.bound("tree_degree", tree.max_degree() as f64, 1.0 + (1u64 << self.params.k) as f64);
        report.metric("k", self.params.k);
        report.metric("s", self.params.s);
        report.metric("s_prime", self.embedding.clique_size);
        report
    }
}

/// JSON layout emitted by the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductReport {
    pub k: usize,
    pub s: usize,
    pub s_prime: usize,
    pub tree_vertices: usize,
    pub tree_edges: Vec<(usize, usize)>,
    pub assignment: Vec<(usize, usize)>,
    pub certificate: CertificateReport,
}

impl From<&ProductStructure> for ProductReport {
    fn from(ps: &ProductStructure) -> Self {
        ProductReport {
            k: ps.params.k,
            s: ps.params.s,
            s_prime: ps.embedding.clique_size,
            tree_vertices: ps.embedding.tree.vertex_count(),
            tree_edges: ps.embedding.tree.edges().to_vec(),
            assignment: ps.embedding.map.clone(),
            certificate: ps.certify(),
        }
    }
}

pub fn embed_into_product(g: &Graph, max_degree: usize, profile: &TreewidthProfile) -> Result<ProductStructure, StructureError> {
    embed_into_product_with(g, max_degree, profile, None)
}

/// compute_s → recursive_partition → tree_power_factorization → slot assignment.
pub fn embed_into_product_with(
    g: &Graph,
    max_degree: usize,
    profile: &TreewidthProfile,
    base: Option<&TreeDecomposition>,
) -> Result<ProductStructure, StructureError> {
    let n = g.vertex_count();
    let partition = recursive_partition_with(g, max_degree, profile, base)?;
    let params = compute_s(n.max(1), max_degree.max(2), profile);
    if n <= 2 * params.s {
        let embedding = ProductEmbedding {
            tree: Graph::empty(1),
            clique_size: n.max(1),
            map: (0..n).map(|v| (0, v)).collect(),
            source: g.clone(),
        };
        return Ok(ProductStructure { params, partition, embedding });
    }
    let embedding = compose(g, &partition)?;
    Ok(ProductStructure { params, partition, embedding })
}

/// Slot of a vertex: rank of its bag node among nodes sharing a T′-node, times `2s`, plus its
/// position in the bag.
pub fn compose(g: &Graph, partition: &VertexPartitionTree) -> Result<ProductEmbedding, StructureError> {
    let f = tree_power_factorization(&partition.tree, partition.k)?;
    let mut rank = vec![0usize; partition.bags.len()];
    let mut used = vec![0usize; f.tree.vertex_count()];
    for (node, &image) in f.node_map.iter().enumerate() {
        rank[node] = used[image];
        used[image] += 1;
    }
    let width = 2 * partition.s;
    let mut map = vec![(0, 0); g.vertex_count()];
    for (node, bag) in partition.bags.iter().enumerate() {
        for (i, &v) in bag.iter().enumerate() {
            map[v] = (f.node_map[node], rank[node] * width + i);
        }
    }
    Ok(ProductEmbedding { tree: f.tree, clique_size: f.multiplicity * width, map, source: g.clone() })
}
