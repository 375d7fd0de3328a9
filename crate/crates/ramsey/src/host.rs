//! Blow-up host graphs and their edge colorings.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use twr_core::coloring::EdgeColoring;
use twr_core::Graph;

use crate::RamseyError;

/// What happens inside a part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WithinParts {
    /// Independent sets.
    Empty,
    /// Cliques, giving the `R ⊠ K_m` shape when `p = 1`.
    Complete,
}

/// Host vertex `x·m + i` is copy `i` of base vertex `x`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColoredHost {
    pub base: Graph,
    pub graph: Graph,
    pub part_size: usize,
    pub part_of: Vec<usize>,
    pub within: WithinParts,
    pub p: f64,
    pub seed: u64,
    pub coloring: EdgeColoring,
}

impl ColoredHost {
    pub fn part(&self, x: usize) -> std::ops::Range<usize> {
        x * self.part_size..(x + 1) * self.part_size
    }

    pub fn colors(&self) -> usize {
        self.coloring.k
    }

    /// Spanning subgraph of the edges colored `c`.
    pub fn color_class(&self, c: usize) -> Graph {
        let edges = self.graph.edges().iter().zip(&self.coloring.colors).filter(|&(_, &col)| col == c).map(|(&e, _)| e);
        Graph::from_edges_lossy(self.graph.vertex_count(), edges)
    }

    /// Checks the blow-up shape and that the coloring is total.
    pub fn validate(&self) -> Result<(), RamseyError> {
        let n = self.base.vertex_count() * self.part_size;
        if self.graph.vertex_count() != n || self.part_of.len() != n {
            return Err(RamseyError::Input("host size does not match base × part size".into()));
        }
        if self.part_of.iter().enumerate().any(|(v, &x)| x != v / self.part_size.max(1)) {
            return Err(RamseyError::Input("part index is not x·m + i".into()));
        }
        for &(u, v) in self.graph.edges() {
            let (x, y) = (self.part_of[u], self.part_of[v]);
            let ok = if x == y { self.within == WithinParts::Complete } else { self.base.has_edge(x, y) };
            if !ok {
                return Err(RamseyError::Input(format!("edge {{{u}, {v}}} breaks the blow-up shape")));
            }
        }
        if !self.coloring.is_valid_for(&self.graph) {
            return Err(RamseyError::Input("coloring is not total over the host edges".into()));
        }
        Ok(())
    }
}

/// Replaces each base vertex by `m` copies and each base edge by an independent `G(m, m, p)`.
/// The returned host carries the one-color coloring.
pub fn build_blowup_host(base: &Graph, m: usize, p: f64, within: WithinParts, seed: u64) -> Result<ColoredHost, RamseyError> {
    if m == 0 || !(p > 0.0 && p <= 1.0) {
        return Err(RamseyError::Input(format!("need m >= 1 and p in (0, 1], got m = {m}, p = {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = base.vertex_count() * m;
    let mut edges = Vec::new();
    if within == WithinParts::Complete {
        for x in 0..base.vertex_count() {
            for i in 0..m {
                for j in i + 1..m {
                    edges.push((x * m + i, x * m + j));
                }
            }
        }
    }
    for &(x, y) in base.edges() {
        for i in 0..m {
            for j in 0..m {
                if p >= 1.0 || rng.gen_bool(p) {
                    edges.push((x * m + i, y * m + j));
                }
            }
        }
    }
    let graph = Graph::from_edges_lossy(n, edges);
    let coloring = EdgeColoring::uniform(&graph, 1);
    Ok(ColoredHost { base: base.clone(), part_of: (0..n).map(|v| v / m).collect(), graph, part_size: m, within, p, seed, coloring })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "kebab-case")]
pub enum ColoringStrategy {
    Random,
    /// Per part pair, each edge takes the color used least so far in that pair.
    AdversarialMajority,
    FromColoring { coloring: EdgeColoring },
}

pub fn color_host(host: &ColoredHost, k: usize, strategy: &ColoringStrategy, seed: u64) -> Result<ColoredHost, RamseyError> {
    if k == 0 {
        return Err(RamseyError::Input("need k >= 1 colors".into()));
    }
    let g = &host.graph;
    let colors = match strategy {
        ColoringStrategy::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..g.edge_count()).map(|_| rng.gen_range(0..k)).collect()
        }
        ColoringStrategy::AdversarialMajority => {
            let mut counts: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
            g.edges()
                .iter()
                .map(|&(u, v)| {
                    let (x, y) = (host.part_of[u], host.part_of[v]);
                    let tally = counts.entry((x.min(y), x.max(y))).or_insert_with(|| vec![0; k]);
                    let c = (0..k).min_by_key(|&c| (tally[c], c)).unwrap();
                    tally[c] += 1;
                    c
                })
                .collect()
        }
        ColoringStrategy::FromColoring { coloring } => {
            if coloring.k != k || !coloring.is_valid_for(g) {
                return Err(RamseyError::Input("supplied coloring does not match the host edges or k".into()));
            }
            coloring.colors.clone()
        }
    };
    Ok(ColoredHost { coloring: EdgeColoring { k, colors }, ..host.clone() })
}

/// `τ s²`, the dense host size scale.
pub fn dense_edge_scale(tau: usize, s: usize) -> f64 {
    tau as f64 * (s * s) as f64
}

/// `τ s² (log s / s)^{1/Δ}`, the sparse host size scale.
pub fn sparse_edge_scale(tau: usize, s: usize, max_degree: usize) -> f64 {
    let s = s.max(2) as f64;
    tau as f64 * s * s * ((s.ln() / s).powf(1.0 / max_degree.max(1) as f64))
}
