use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::params::compute_s;
use super::StructureError;
use crate::graph::Graph;
use crate::report::CertificateReport;
use crate::separator::colored::{colored_separator_with, DEFAULT_NECKLACE_BUDGET};
use crate::separator::decomposition::TreeDecomposition;
use crate::separator::profile::TreewidthProfile;

/// Rooted binary tree (root 0) whose bags partition the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartitionTree {
    pub tree: Graph,
    pub parent: Vec<Option<usize>>,
    pub bags: Vec<Vec<usize>>,
    pub k: usize,
    pub s: usize,
}

impl VertexPartitionTree {
    pub fn node_of(&self, n: usize) -> Vec<usize> {
        let mut node = vec![usize::MAX; n];
        for (t, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                node[v] = t;
            }
        }
        node
    }

    /// Partition, bag-size and edge-distance checks.
    pub fn verify(&self, g: &Graph) -> CertificateReport {
        let mut report = CertificateReport::new();
        let n = g.vertex_count();
        let mut seen = vec![0usize; n];
        for bag in &self.bags {
            for &v in bag {
                if v < n {
                    seen[v] += 1;
                } else {
                    report.violation(format!("bag vertex {v} out of range"));
                }
            }
        }
        if let Some(v) = seen.iter().position(|&c| c != 1) {
            report.violation(format!("partition: vertex {v} lies in {} bags", seen[v]));
        }
        if !self.tree.is_tree() {
            report.violation("partition tree is not a tree");
            return report;
        }
        for (t, bag) in self.bags.iter().enumerate() {
            let leaf = self.tree.neighbors(t).iter().all(|&c| self.parent[t] == Some(c));
            if bag.len() > 2 * self.s || (!leaf && bag.len() != 2 * self.s) {
                report.violation(format!("bag {t} has {} vertices (2s = {}, leaf = {leaf})", bag.len(), 2 * self.s));
            }
            if self.tree.degree(t) > 3 {
                report.violation(format!("node {t} has more than two children"));
            }
        }
        if !report.pass {
            return report;
        }
        let node = self.node_of(n);
        let depth = self.depths();
        let mut worst = 0;
        for &(u, v) in g.edges() {
            let d = self.distance(node[u], node[v], &depth);
            worst = worst.max(d);
            if d > self.k {
                report.violation(format!("edge {u}-{v} spans tree distance {d} > k = {}", self.k));
            }
        }
        report.bound("max_edge_distance", worst as f64, self.k as f64);
        report.metric("nodes", self.bags.len());
        report.metric("s", self.s);
        report
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.bags.len()];
        for t in 0..self.bags.len() {
            // Parents precede children in node order.
            if let Some(p) = self.parent[t] {
                depth[t] = depth[p] + 1;
            }
        }
        depth
    }

    fn distance(&self, mut a: usize, mut b: usize, depth: &[usize]) -> usize {
        let mut d = 0;
        while a != b {
            if depth[a] >= depth[b] {
                a = self.parent[a].unwrap();
            } else {
                b = self.parent[b].unwrap();
            }
            d += 1;
        }
        d
    }
}

pub fn recursive_partition(g: &Graph, max_degree: usize, profile: &TreewidthProfile) -> Result<VertexPartitionTree, StructureError> {
    recursive_partition_with(g, max_degree, profile, None)
}

/// As [`recursive_partition`], passing `base` down to every separator call.
pub fn recursive_partition_with(
    g: &Graph,
    max_degree: usize,
    profile: &TreewidthProfile,
    base: Option<&TreeDecomposition>,
) -> Result<VertexPartitionTree, StructureError> {
    if g.max_degree() > max_degree {
        return Err(StructureError::Input(format!("graph has maximum degree {} > Δ = {max_degree}", g.max_degree())));
    }
    let n = g.vertex_count();
    let params = compute_s(n.max(1), max_degree.max(2), profile);
    let mut builder = Builder {
        g,
        profile,
        base,
        k: params.k,
        s: params.s,
        budget: DEFAULT_NECKLACE_BUDGET,
        parent: Vec::new(),
        bags: Vec::new(),
    };
    builder.build((0..n).collect(), vec![Vec::new(); params.k], None)?;
    let edges = builder.parent.iter().enumerate().filter_map(|(t, p)| p.map(|p| (p, t)));
    let tree = Graph::new(builder.bags.len(), edges).expect("parent links form a simple tree");
    Ok(VertexPartitionTree { tree, parent: builder.parent, bags: builder.bags, k: params.k, s: params.s })
}

struct Builder<'a> {
    g: &'a Graph,
    profile: &'a TreewidthProfile,
    base: Option<&'a TreeDecomposition>,
    k: usize,
    s: usize,
    budget: Duration,
    parent: Vec<Option<usize>>,
    bags: Vec<Vec<usize>>,
}

impl Builder<'_> {
    /// `vertices` sorted; `classes[i]` is `C_{i+1}`.
    fn build(&mut self, vertices: Vec<usize>, classes: Vec<Vec<usize>>, parent: Option<usize>) -> Result<(), StructureError> {
        for (i, c) in classes.iter().enumerate() {
            let bound = (1usize << i) * self.s;
            if c.len() > bound {
                return Err(StructureError::ClassBudget { class: i + 1, size: c.len(), bound, subgraph_size: vertices.len() });
            }
        }
        let node = self.bags.len();
        self.parent.push(parent);
        self.bags.push(Vec::new());
        if vertices.len() <= 2 * self.s {
            self.bags[node] = vertices;
            return Ok(());
        }
        let n = self.g.vertex_count();
        let mut local = vec![usize::MAX; n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut coloring = vec![None; vertices.len()];
        for (i, c) in classes.iter().enumerate() {
            for &v in c {
                coloring[local[v]] = Some(i);
            }
        }
        let sub = self.g.induced_subgraph(&vertices);
        let restricted = self.base.map(|b| b.restrict(&vertices));
        let sep = colored_separator_with(&sub, &coloring, self.k, self.profile, restricted.as_ref(), self.budget)?;
        let mut in_x = vec![false; n];
        let mut size = 0;
        for v in classes[0].iter().copied().chain(sep.triple.s.iter().map(|&i| vertices[i])) {
            if !in_x[v] {
                in_x[v] = true;
                size += 1;
            }
        }
        if size > 2 * self.s {
            return Err(StructureError::Input(format!("C_1 ∪ S has {size} vertices, more than 2s = {}", 2 * self.s)));
        }
        for &v in &vertices {
            if size == 2 * self.s {
                break;
            }
            if !in_x[v] {
                in_x[v] = true;
                size += 1;
            }
        }
        let x: Vec<usize> = vertices.iter().copied().filter(|&v| in_x[v]).collect();
        let mut near = vec![false; n];
        for &v in &x {
            for &u in self.g.neighbors(v) {
                near[u] = true;
            }
        }
        self.bags[node] = x;
        for side in [&sep.triple.a, &sep.triple.b] {
            let part: Vec<usize> = {
                let mut p: Vec<usize> = side.iter().map(|&i| vertices[i]).filter(|&v| !in_x[v]).collect();
                p.sort_unstable();
                p
            };
            if part.is_empty() {
                continue;
            }
            let mut taken = vec![false; n];
            let mut inside = vec![false; n];
            for &v in &part {
                inside[v] = true;
            }
            let mut next: Vec<Vec<usize>> = classes[1..]
                .iter()
                .map(|c| {
                    let kept: Vec<usize> = c.iter().copied().filter(|&v| inside[v]).collect();
                    for &v in &kept {
                        taken[v] = true;
                    }
                    kept
                })
                .collect();
            next.push(part.iter().copied().filter(|&v| near[v] && !taken[v]).collect());
            self.build(part, next, Some(node))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn small_graph_is_one_node() {
        let g = generators::path(10);
        let t = recursive_partition(&g, 2, &TreewidthProfile::constant(1.0)).unwrap();
        assert_eq!(t.bags, vec![(0..10).collect::<Vec<_>>()]);
        assert!(t.verify(&g).pass);
    }

    #[test]
    fn large_tree_recurses() {
        let g = generators::random_tree(1500, 3, 11);
        let t = recursive_partition(&g, 3, &TreewidthProfile::constant(1.0)).unwrap();
        assert!(t.bags.len() > 1);
        let r = t.verify(&g);
        assert!(r.pass, "{:?}", r.violations);
    }

    #[test]
    fn degree_precondition() {
        let g = generators::star(5);
        assert!(recursive_partition(&g, 3, &TreewidthProfile::constant(1.0)).is_err());
    }
}
