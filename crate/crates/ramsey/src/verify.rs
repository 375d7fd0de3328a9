//! Independent check of monochromatic embeddings into colored hosts.

use serde::{Deserialize, Serialize};
use twr_core::report::CertificateReport;
use twr_core::Graph;

use crate::host::ColoredHost;

/// `map[v]` is the host vertex of `H`-vertex `v`; every edge must land on `color`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingMap {
    pub color: usize,
    pub map: Vec<usize>,
}

pub fn verify_embedding(h: &Graph, host: &ColoredHost, emb: &EmbeddingMap) -> CertificateReport {
    let mut report = CertificateReport::new();
    let n = host.graph.vertex_count();
    report.metric("h_vertices", h.vertex_count());
    report.metric("h_edges", h.edge_count());
    report.metric("host_vertices", n);
    report.metric("host_edges", host.graph.edge_count());
    report.metric("color", emb.color);
    if emb.map.len() != h.vertex_count() {
        report.violation(format!("map: {} images for {} vertices", emb.map.len(), h.vertex_count()));
        return report;
    }
    if emb.color >= host.coloring.k {
        report.violation(format!("color: {} is not below k = {}", emb.color, host.coloring.k));
    }
    let mut owner = vec![usize::MAX; n];
    for (v, &x) in emb.map.iter().enumerate() {
        if x >= n {
            report.violation(format!("range: {v} maps to {x} outside the host"));
        } else if owner[x] != usize::MAX {
            report.violation(format!("injectivity: {} and {v} both map to {x}", owner[x]));
        } else {
            owner[x] = v;
        }
    }
    if !report.pass {
        return report;
    }
    for &(u, v) in h.edges() {
        let (a, b) = (emb.map[u], emb.map[v]);
        match host.coloring.color_of(&host.graph, a, b) {
            None => report.violation(format!("edge: {{{u}, {v}}} maps to non-edge {{{a}, {b}}}")),
            Some(c) if c != emb.color => report.violation(format!("color: {{{u}, {v}}} maps to an edge of color {c}")),
            Some(_) => {}
        }
    }
    report
}
