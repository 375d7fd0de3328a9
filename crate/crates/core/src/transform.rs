//! Graph constructions: strong products and distance powers.

use crate::graph::Graph;

/// Strong product `g ⊠ h`.
///
/// Vertex `(a, b)` with `a ∈ V(g)`, `b ∈ V(h)` has index `a * h.vertex_count() + b`.
/// Two distinct vertices are adjacent iff each coordinate pair is equal or adjacent.
pub fn strong_product(g: &Graph, h: &Graph) -> Graph {
    let nh = h.vertex_count();
    let idx = |a: usize, b: usize| a * nh + b;
    let mut edges = Vec::with_capacity(
        g.vertex_count() * h.edge_count() + nh * g.edge_count() + 2 * g.edge_count() * h.edge_count(),
    );
    for a in 0..g.vertex_count() {
        for &(b1, b2) in h.edges() {
            edges.push((idx(a, b1), idx(a, b2)));
        }
    }
    for &(a1, a2) in g.edges() {
        for b in 0..nh {
            edges.push((idx(a1, b), idx(a2, b)));
        }
        for &(b1, b2) in h.edges() {
            edges.push((idx(a1, b1), idx(a2, b2)));
            edges.push((idx(a1, b2), idx(a2, b1)));
        }
    }
    Graph::from_edges_lossy(g.vertex_count() * nh, edges)
}

/// Distance power: `{u, v}` is an edge iff `1 <= dist(u, v) <= k`.
pub fn graph_power(g: &Graph, k: usize) -> Graph {
    assert!(k >= 1, "graph_power needs k >= 1");
    let mut edges = Vec::new();
    for u in 0..g.vertex_count() {
        for (v, _) in g.bfs_within(u, k) {
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges_lossy(g.vertex_count(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, path, star};

    #[test]
    fn product_with_single_vertex_is_identity() {
        let h = path(5);
        assert_eq!(strong_product(&Graph::empty(1), &h), h);
    }

    #[test]
    fn k2_times_k2_is_k4() {
        assert_eq!(strong_product(&complete(2), &complete(2)), complete(4));
    }

    #[test]
    fn p3_times_p3_has_20_edges() {
        let p = path(3);
        let prod = strong_product(&p, &p);
        // oracle: scan all pairs against the definition
        let mut count = 0;
        for x in 0..9 {
            for y in x + 1..9 {
                let (a1, b1, a2, b2) = (x / 3, x % 3, y / 3, y % 3);
                let ok = |s: usize, t: usize| s == t || p.has_edge(s, t);
                if ok(a1, a2) && ok(b1, b2) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 20);
        assert_eq!(prod.edge_count(), 20);
    }

    #[test]
    fn powers() {
        let t = path(4);
        assert_eq!(graph_power(&t, 1), t);
        assert_eq!(graph_power(&t, 2).edges(), &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(graph_power(&star(3), 2), complete(4));
    }
}
