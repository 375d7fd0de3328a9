//! Preparation of `H` for the sparse embedding: classes `W_1, …, W_Q` ordered along `R`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use twr_core::coloring::greedy_coloring;
use twr_core::report::CertificateReport;
use twr_core::Graph;

use crate::RamseyError;

/// `Δ̃ = Δ⁴ + 2Δ + 1`
pub fn delta_tilde(max_degree: usize) -> usize {
    max_degree.pow(4) + 2 * max_degree + 1
}

/// Color bound for `H³`: `Δ³ − Δ² + Δ + 1`.
pub fn cube_color_bound(max_degree: usize) -> usize {
    let d = max_degree;
    d * d * d - d * d + d + 1
}

/// Class `g(u)` is `pos(x)·Δ̃ + f_x(u)·(Δ+1) + ld(u)` for `u ∈ S_x`, all 0-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HPreparation {
    pub max_degree: usize,
    pub delta_tilde: usize,
    /// `ψ(u) = (R-vertex, slot)`.
    pub psi: Vec<(usize, usize)>,
    pub s: usize,
    /// Breadth-first order of `V(R)`.
    pub r_order: Vec<usize>,
    pub position: Vec<usize>,
    /// `f_x(u)`, the color of `u` in `H³[S_x]`.
    pub color: Vec<usize>,
    /// Neighbors embedded before `u`: earlier colors in `S_x` plus `S_{p(x)}`.
    pub left: Vec<usize>,
    pub class_of: Vec<usize>,
    /// `classes[j]` lists `W_{j+1}` in increasing order; `Q = t·Δ̃` entries, many empty.
    pub classes: Vec<Vec<usize>>,
}

impl HPreparation {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// R-vertex whose part hosts class `j`.
    pub fn r_vertex_of_class(&self, j: usize) -> usize {
        self.r_order[j / self.delta_tilde]
    }

    /// `|N_H(u) ∩ {w : g(w) < ell}|`, the left-degree once `ell` classes are embedded.
    pub fn ldeg(&self, h: &Graph, u: usize, ell: usize) -> usize {
        h.neighbors(u).iter().filter(|&&w| self.class_of[w] < ell).count()
    }

    /// Checks the partition, distance, left-degree and per-vertex class-count properties.
    pub fn verify(&self, h: &Graph) -> CertificateReport {
        let mut report = CertificateReport::new();
        let n = h.vertex_count();
        let t = self.r_order.len();
        report.metric("classes", self.classes.len());
        report.metric("nonempty_classes", self.classes.iter().filter(|c| !c.is_empty()).count());
        report.metric("delta_tilde", self.delta_tilde);
        if self.delta_tilde != delta_tilde(self.max_degree) {
            report.violation(format!("delta_tilde: {} differs from Δ⁴ + 2Δ + 1 = {}", self.delta_tilde, delta_tilde(self.max_degree)));
        }
        if self.classes.len() != t * self.delta_tilde {
            report.violation(format!("classes: {} classes for t·Δ̃ = {}", self.classes.len(), t * self.delta_tilde));
        }
        let mut count = vec![0usize; n];
        for (j, class) in self.classes.iter().enumerate() {
            for &u in class {
                if u >= n {
                    report.violation(format!("partition: class {j} holds unknown vertex {u}"));
                    continue;
                }
                count[u] += 1;
                if self.class_of[u] != j {
                    report.violation(format!("partition: vertex {u} listed in class {j} but g = {}", self.class_of[u]));
                }
            }
        }
        for (u, &c) in count.iter().enumerate() {
            if c != 1 {
                report.violation(format!("partition: vertex {u} appears in {c} classes"));
            }
        }
        if !report.pass {
            return report;
        }
        for u in 0..n {
            let x = self.psi[u].0;
            let j = self.class_of[u];
            if j / self.delta_tilde != self.position[x] {
                report.violation(format!("per-vertex: class {j} of {u} lies outside the block of R-vertex {x}"));
            }
        }
        for class in &self.classes {
            for (i, &u) in class.iter().enumerate() {
                let dist = h.bfs_within(u, 3);
                for &v in &class[i + 1..] {
                    if let Some(&(_, d)) = dist.iter().find(|&&(w, _)| w == v) {
                        report.violation(format!("distance: {u} and {v} share a class at distance {d}"));
                    }
                }
            }
            if let Some(&first) = class.first() {
                let expect = self.ldeg(h, first, self.class_of[first]);
                for &v in class {
                    let got = self.ldeg(h, v, self.class_of[v]);
                    if got != expect {
                        report.violation(format!("left-degree: {first} has {expect} but {v} has {got}"));
                    }
                }
            }
        }
        report
    }
}

/// Breadth-first order from vertex 0, lowest index first; unvisited components restart at their
/// smallest vertex.
pub fn bfs_order(r: &Graph) -> Vec<usize> {
    let n = r.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in r.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

/// Checks that `ψ` embeds `h` into `R ⊠ K_s`.
pub fn validate_psi(h: &Graph, r: &Graph, psi: &[(usize, usize)], s: usize) -> Result<(), RamseyError> {
    if psi.len() != h.vertex_count() {
        return Err(RamseyError::Input(format!("ψ has {} images for {} vertices", psi.len(), h.vertex_count())));
    }
    let mut used = std::collections::HashSet::new();
    for (u, &(x, i)) in psi.iter().enumerate() {
        if x >= r.vertex_count() || i >= s {
            return Err(RamseyError::Input(format!("ψ({u}) = ({x}, {i}) lies outside R ⊠ K_{s}")));
        }
        if !used.insert((x, i)) {
            return Err(RamseyError::Input(format!("ψ is not injective at ({x}, {i})")));
        }
    }
    for &(u, v) in h.edges() {
        let (x, y) = (psi[u].0, psi[v].0);
        if x != y && !r.has_edge(x, y) {
            return Err(RamseyError::Input(format!("edge {{{u}, {v}}} maps to non-adjacent R-vertices {x}, {y}")));
        }
    }
    Ok(())
}

/// Third power restricted to `vertices`, in local labels.
fn cube_on(h: &Graph, vertices: &[usize]) -> Graph {
    let mut local = vec![usize::MAX; h.vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let mut edges = Vec::new();
    for (i, &v) in vertices.iter().enumerate() {
        for (w, d) in h.bfs_within(v, 3) {
            let j = local[w];
            if d > 0 && j != usize::MAX && i < j {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges_lossy(vertices.len(), edges)
}

pub fn prepare_h(h: &Graph, r: &Graph, psi: &[(usize, usize)], s: usize, max_degree: usize) -> Result<HPreparation, RamseyError> {
    validate_psi(h, r, psi, s)?;
    if h.max_degree() > max_degree {
        return Err(RamseyError::Input(format!("Δ(H) = {} exceeds Δ = {max_degree}", h.max_degree())));
    }
    let dt = delta_tilde(max_degree);
    let order = bfs_order(r);
    let mut position = vec![0; r.vertex_count()];
    for (i, &x) in order.iter().enumerate() {
        position[x] = i;
    }
    let n = h.vertex_count();
    let mut parts = vec![Vec::new(); r.vertex_count()];
    for u in 0..n {
        parts[psi[u].0].push(u);
    }
    let mut color = vec![0; n];
    for part in &parts {
        let cube = cube_on(h, part);
        let local: Vec<usize> = (0..part.len()).collect();
        let c = greedy_coloring(&cube, &local).expect("identity order");
        for (i, &u) in part.iter().enumerate() {
            color[u] = c[i];
        }
    }
    let mut left = vec![0; n];
    let mut class_of = vec![0; n];
    let mut classes = vec![Vec::new(); order.len() * dt];
    for u in 0..n {
        let x = psi[u].0;
        left[u] = h
            .neighbors(u)
            .iter()
            .filter(|&&w| {
                let y = psi[w].0;
                (y == x && color[w] < color[u]) || (y != x && position[y] < position[x])
            })
            .count();
        let j = color[u] * (max_degree + 1) + left[u];
        debug_assert!(j < dt);
        class_of[u] = position[x] * dt + j;
        classes[class_of[u]].push(u);
    }
    Ok(HPreparation { max_degree, delta_tilde: dt, psi: psi.to_vec(), s, r_order: order, position, color, left, class_of, classes })
}
