//! Standard and seeded random graph families.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

pub fn path(n: usize) -> Graph {
    Graph::from_edges_lossy(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges_lossy(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges_lossy(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_{1,leaves}` with center 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges_lossy(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

/// `rows × cols` grid; vertex `(i, j)` has index `i * cols + j`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let v = i * cols + j;
            if j + 1 < cols {
                edges.push((v, v + 1));
            }
            if i + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::from_edges_lossy(rows * cols, edges)
}

/// Complete binary tree with `depth` levels below the root (heap indexing).
pub fn complete_binary_tree(depth: usize) -> Graph {
    let n = (1usize << (depth + 1)) - 1;
    Graph::from_edges_lossy(n, (1..n).map(|v| ((v - 1) / 2, v)))
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges_lossy(n, edges)
}

/// Random recursive tree where every vertex has degree at most `max_degree`.
pub fn random_tree(n: usize, max_degree: usize, seed: u64) -> Graph {
    assert!(max_degree >= 2 || n <= 2, "max_degree too small for a tree on {n} vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut deg = vec![0usize; n];
    let mut open: Vec<usize> = Vec::new();
    let mut edges = Vec::new();
    for v in 0..n {
        if v > 0 {
            let i = rng.gen_range(0..open.len());
            let u = open[i];
            edges.push((u, v));
            deg[u] += 1;
            if deg[u] == max_degree {
                open.swap_remove(i);
            }
            deg[v] = 1;
        }
        if deg[v] < max_degree {
            open.push(v);
        }
    }
    Graph::from_edges_lossy(n, edges)
}

/// Random partial `k`-tree with maximum degree at most `max_degree`.
///
/// Returns the graph together with an elimination order of width at most `k`,
/// which certifies treewidth `<= k`.
pub fn random_partial_ktree(n: usize, k: usize, max_degree: usize, seed: u64) -> (Graph, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = (k + 1).min(n);
    let mut edges = Vec::new();
    for u in 0..base {
        for v in u + 1..base {
            edges.push((u, v));
        }
    }
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    if n > k {
        for skip in 0..base {
            cliques.push((0..base).filter(|&w| w != skip).collect());
        }
    }
    for v in base..n {
        let clique = cliques[rng.gen_range(0..cliques.len())].clone();
        for &w in &clique {
            edges.push((w, v));
        }
        for skip in 0..clique.len() {
            let mut next: Vec<usize> = clique.iter().copied().filter(|&w| w != clique[skip]).collect();
            next.push(v);
            cliques.push(next);
        }
    }
    edges.shuffle(&mut rng);
    let mut deg = vec![0usize; n];
    let mut kept = Vec::new();
    for (u, v) in edges {
        if deg[u] < max_degree && deg[v] < max_degree {
            deg[u] += 1;
            deg[v] += 1;
            kept.push((u, v));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let graph = Graph::from_edges_lossy(n, kept.into_iter().map(|(u, v)| (perm[u], perm[v])));
    let order = (0..n).rev().map(|v| perm[v]).collect();
    (graph, order)
}

/// Random outerplanar graph of maximum degree 3: a Hamiltonian cycle plus a
/// random non-crossing set of chords, at most one per vertex.
pub fn random_outerplanar(n: usize, seed: u64) -> Graph {
    assert!(n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let mut stack: Vec<usize> = Vec::new();
    for v in 0..n {
        match rng.gen_range(0..3) {
            0 => stack.push(v),
            1 => {
                if let Some(u) = stack.pop() {
                    let adjacent_on_cycle = v == u + 1 || (u == 0 && v == n - 1);
                    if !adjacent_on_cycle {
                        edges.push((u, v));
                    }
                }
            }
            _ => {}
        }
    }
    Graph::from_edges_lossy(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts() {
        let g = grid(3, 3);
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.max_degree(), 4);
    }

    #[test]
    fn random_families_respect_degree_caps() {
        for seed in 0..20 {
            let t = random_tree(60, 3, seed);
            assert!(t.is_tree());
            assert!(t.max_degree() <= 3);
            let (g, order) = random_partial_ktree(40, 3, 4, seed);
            assert!(g.max_degree() <= 4);
            let mut sorted = order.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..40).collect::<Vec<_>>());
            assert!(random_outerplanar(50, seed).max_degree() <= 3);
        }
    }

    #[test]
    fn seeded_generators_are_deterministic() {
        assert_eq!(gnp(30, 0.3, 7), gnp(30, 0.3, 7));
        assert_eq!(random_partial_ktree(30, 2, 3, 1), random_partial_ktree(30, 2, 3, 1));
    }
}
