//! Vertex and edge colorings.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, GraphError};

/// Greedy proper coloring visiting vertices in `order`; each vertex takes the
/// smallest color unused by its already-colored neighbors.
pub fn greedy_coloring(g: &Graph, order: &[usize]) -> Result<Vec<usize>, GraphError> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(GraphError::NotAPermutation(n));
    }
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(GraphError::NotAPermutation(n));
        }
    }
    let mut color = vec![usize::MAX; n];
    let mut taken = vec![usize::MAX; g.max_degree() + 1];
    for &v in order {
        for &w in g.neighbors(v) {
            if color[w] < taken.len() {
                taken[color[w]] = v;
            }
        }
        color[v] = (0..).find(|&c| taken[c] != v).unwrap();
    }
    Ok(color)
}

pub fn is_proper_coloring(g: &Graph, color: &[usize]) -> bool {
    g.edges().iter().all(|&(u, v)| color[u] != color[v])
}

/// Total edge coloring; `colors[i]` belongs to edge index `i` of the graph it
/// was built for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeColoring {
    pub k: usize,
    pub colors: Vec<usize>,
}

impl EdgeColoring {
    pub fn uniform(g: &Graph, k: usize) -> Self {
        EdgeColoring { k, colors: vec![0; g.edge_count()] }
    }

    /// Checks totality against `g` and that every color is below `k`.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.k >= 1 && self.colors.len() == g.edge_count() && self.colors.iter().all(|&c| c < self.k)
    }

    pub fn color_of(&self, g: &Graph, u: usize, v: usize) -> Option<usize> {
        g.edge_index(u, v).map(|i| self.colors[i])
    }

    pub fn color_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.k];
        for &c in &self.colors {
            counts[c] += 1;
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle};

    #[test]
    fn greedy_examples() {
        let e = Graph::empty(4);
        assert_eq!(greedy_coloring(&e, &[0, 1, 2, 3]).unwrap(), vec![0; 4]);
        let k4 = complete(4);
        let c = greedy_coloring(&k4, &[2, 0, 3, 1]).unwrap();
        assert_eq!(c.iter().max(), Some(&3));
        let c5 = cycle(5);
        let c = greedy_coloring(&c5, &[0, 1, 2, 3, 4]).unwrap();
        assert!(is_proper_coloring(&c5, &c));
        assert_eq!(*c.iter().max().unwrap(), 2);
    }

    #[test]
    fn rejects_non_permutation() {
        let g = cycle(4);
        assert!(greedy_coloring(&g, &[0, 1, 1, 3]).is_err());
        assert!(greedy_coloring(&g, &[0, 1, 2]).is_err());
    }
}
