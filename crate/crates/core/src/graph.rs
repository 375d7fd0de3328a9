//! Finite simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("endpoint out of range: {{{u}, {v}}} with {n} vertices")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("vertex order is not a permutation of 0..{0}")]
    NotAPermutation(usize),
}

/// An immutable simple graph.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted lexicographically.
/// The position of an edge in [`Graph::edges`] is its *edge index*, which
/// colorings and certificates refer to.
#[derive(Clone, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(into = "crate::io::GraphData", try_from = "crate::io::GraphData")]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::EndpointOutOfRange { u, v, n: vertex_count });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_edges(vertex_count, list))
    }

    /// Builds a graph from an arbitrary pair list, silently dropping loops
    /// and duplicates. Panics on out-of-range endpoints.
    pub fn from_edges_lossy(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut list: Vec<(usize, usize)> = edges
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| {
                assert!(u < vertex_count && v < vertex_count, "edge {{{u}, {v}}} out of range");
                (u.min(v), u.max(v))
            })
            .collect();
        list.sort_unstable();
        list.dedup();
        Self::from_sorted_edges(vertex_count, list)
    }

    fn from_sorted_edges(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); vertex_count];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { adj, edges }
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self::from_sorted_edges(vertex_count, Vec::new())
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && v < self.vertex_count() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Subgraph induced by `vertices`; local vertex `i` is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = local[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        Self::from_sorted_edges(vertices.len(), edges)
    }

    /// Breadth-first distances from `source`; unreachable vertices get `None`.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Breadth-first distances from `source`, truncated at `limit`.
    pub fn bfs_within(&self, source: usize, limit: usize) -> Vec<(usize, usize)> {
        let mut seen = vec![false; self.vertex_count()];
        seen[source] = true;
        let mut out = vec![(source, 0)];
        let mut head = 0;
        while head < out.len() {
            let (u, d) = out[head];
            head += 1;
            if d == limit {
                continue;
            }
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    out.push((w, d + 1));
                }
            }
        }
        out
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    /// Connected and acyclic. The empty graph is not a tree.
    pub fn is_tree(&self) -> bool {
        self.vertex_count() >= 1 && self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count())
            .field("edges", &self.edges)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_edges() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::new(2, [(0, 5)]), Err(GraphError::EndpointOutOfRange { .. })));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let h = g.induced_subgraph(&[3, 0, 2]);
        assert_eq!(h.edges(), &[(0, 1), (0, 2)]);
    }

    #[test]
    fn tree_detection() {
        assert!(Graph::new(3, [(0, 1), (1, 2)]).unwrap().is_tree());
        assert!(!Graph::new(3, [(0, 1)]).unwrap().is_tree());
        assert!(Graph::empty(1).is_tree());
        assert!(!Graph::empty(0).is_tree());
    }
}
