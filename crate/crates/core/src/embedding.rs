//! Embeddings `G ⊆ T ⊠ K_s` and their verification.

use crate::graph::Graph;
use crate::report::CertificateReport;

/// An injective map `V(source) → V(tree) × [clique_size]`.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ProductEmbedding {
    pub tree: Graph,
    pub clique_size: usize,
    /// `map[v] = (tree node, slot)`.
    pub map: Vec<(usize, usize)>,
    pub source: Graph,
}

/// Checks every invariant of a [`ProductEmbedding`] and reports `v(T)`, `Δ(T)`
/// and the clique size. Violations never abort the scan.
pub fn verify_product_embedding(pe: &ProductEmbedding) -> CertificateReport {
    let mut report = CertificateReport::new();
    let tree = &pe.tree;
    let t = tree.vertex_count();
    report.metric("tree_vertices", t);
    report.metric("tree_max_degree", tree.max_degree());
    report.metric("clique_size", pe.clique_size);
    report.metric("source_vertices", pe.source.vertex_count());
    report.metric("source_edges", pe.source.edge_count());

    if !tree.is_tree() {
        report.violation("tree: host tree is not connected and acyclic");
    }
    if pe.clique_size == 0 {
        report.violation("clique_size: must be positive");
    }
    if pe.map.len() != pe.source.vertex_count() {
        report.violation(format!(
            "map: {} images for {} source vertices",
            pe.map.len(),
            pe.source.vertex_count()
        ));
        return report;
    }
    let mut in_range = true;
    for (v, &(node, slot)) in pe.map.iter().enumerate() {
        if node >= t || slot >= pe.clique_size {
            report.violation(format!("range: vertex {v} maps to ({node}, {slot}) outside {t} × {}", pe.clique_size));
            in_range = false;
        }
    }
    let mut images = pe.map.iter().enumerate().map(|(v, &img)| (img, v)).collect::<Vec<_>>();
    images.sort_unstable();
    for w in images.windows(2) {
        if w[0].0 == w[1].0 {
            report.violation(format!("injectivity: vertices {} and {} share image {:?}", w[0].1, w[1].1, w[0].0));
        }
    }
    if in_range {
        for &(u, v) in pe.source.edges() {
            let (tu, tv) = (pe.map[u].0, pe.map[v].0);
            if tu != tv && !tree.has_edge(tu, tv) {
                report.violation(format!("adjacency: edge {{{u}, {v}}} maps to non-adjacent tree nodes {tu}, {tv}"));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, path};

    #[test]
    fn identity_into_t_times_k1() {
        let t = path(5);
        let pe = ProductEmbedding { tree: t.clone(), clique_size: 1, map: (0..5).map(|v| (v, 0)).collect(), source: t };
        assert!(verify_product_embedding(&pe).pass);
    }

    #[test]
    fn c4_onto_p2_with_two_slots() {
        // 0-1-2-3-0: {0,1} on node 0, {2,3} on node 1
        let pe = ProductEmbedding {
            tree: path(2),
            clique_size: 2,
            map: vec![(0, 0), (0, 1), (1, 0), (1, 1)],
            source: cycle(4),
        };
        let r = verify_product_embedding(&pe);
        assert!(r.pass, "{:?}", r.violations);
    }

    #[test]
    fn duplicate_image_fails_injectivity() {
        let pe = ProductEmbedding { tree: path(2), clique_size: 2, map: vec![(0, 0), (0, 0), (1, 0)], source: path(3) };
        let r = verify_product_embedding(&pe);
        assert!(!r.pass);
        assert!(r.violations.iter().any(|v| v.starts_with("injectivity")));
    }
}
