use serde::{Deserialize, Serialize};

use super::StructureError;
use crate::graph::Graph;

/// `T^k ⊆ T′ ⊠ K_m` via depth-window blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub tree: Graph,
    /// T-vertex → T′-node.
    pub node_map: Vec<usize>,
    /// Largest number of T-vertices sharing a T′-node.
    pub multiplicity: usize,
    /// Certified cap on `multiplicity`: 1 for k = 1, else `2^{2k}`.
    pub multiplicity_bound: usize,
}

/// Blocks are depth windows `[jk, (j+1)k)` below each block root; every vertex maps to the
/// parent block of its own block, and the root block to itself. Root is vertex 0.
pub fn tree_power_factorization(t: &Graph, k: usize) -> Result<Factorization, StructureError> {
    let n = t.vertex_count();
    if !t.is_tree() {
        return Err(StructureError::Input("factorization needs a tree".into()));
    }
    if k == 0 {
        return Err(StructureError::Input("factorization needs k >= 1".into()));
    }
    if t.max_degree() > 3 || t.degree(0) > 2 {
        return Err(StructureError::Input("factorization needs a binary tree rooted at 0".into()));
    }
    if k == 1 {
        return Ok(Factorization { tree: t.clone(), node_map: (0..n).collect(), multiplicity: 1, multiplicity_bound: 1 });
    }
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut order = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        for &u in t.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                depth[u] = depth[v] + 1;
                order.push(u);
            }
        }
        i += 1;
    }
    let mut block_root = vec![0usize; n];
    let mut block_id = vec![usize::MAX; n];
    let mut roots = Vec::new();
    for &v in &order {
        if depth[v].is_multiple_of(k) {
            block_root[v] = v;
            block_id[v] = roots.len();
            roots.push(v);
        } else {
            block_root[v] = block_root[parent[v]];
        }
    }
    let parent_block = |b: usize| -> usize {
        let r = roots[b];
        if r == 0 {
            b
        } else {
            block_id[block_root[parent[r]]]
        }
    };
    let edges = (1..roots.len()).map(|b| (parent_block(b), b));
    let tree = Graph::new(roots.len(), edges).expect("block tree is simple");
    let node_map: Vec<usize> = (0..n).map(|v| parent_block(block_id[block_root[v]])).collect();
    let mut load = vec![0usize; roots.len()];
    for &b in &node_map {
        load[b] += 1;
    }
    let multiplicity = load.into_iter().max().unwrap_or(0);
    Ok(Factorization { tree, node_map, multiplicity, multiplicity_bound: 1 << (2 * k) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn check(t: &Graph, k: usize) -> Factorization {
        let f = tree_power_factorization(t, k).unwrap();
        for u in 0..t.vertex_count() {
            for (v, d) in t.bfs_distances(u).into_iter().enumerate() {
                let d = d.unwrap();
                if d <= k {
                    let (a, b) = (f.node_map[u], f.node_map[v]);
                    assert!(a == b || f.tree.has_edge(a, b), "{u}-{v} at distance {d} split");
                }
            }
        }
        assert!(f.tree.is_tree());
        assert!(f.multiplicity <= f.multiplicity_bound);
        assert!(f.tree.max_degree() <= 1 + (1 << k));
        assert!(f.tree.vertex_count() <= t.vertex_count());
        f
    }

    #[test]
    fn identity_for_k_one() {
        let t = generators::complete_binary_tree(3);
        let f = check(&t, 1);
        assert_eq!(f.tree, t);
        assert_eq!(f.multiplicity, 1);
    }

    #[test]
    fn path_and_binary_tree() {
        check(&generators::path(7), 2);
        let f = check(&generators::complete_binary_tree(4), 3);
        assert!(f.multiplicity <= 64);
        assert!(f.tree.max_degree() <= 9);
    }

    #[test]
    fn random_binary_trees() {
        for seed in 0..10 {
            let mut t = generators::random_tree(120, 3, seed);
            if t.degree(0) > 2 {
                let leaf = (0..120).find(|&v| t.degree(v) == 1).unwrap();
                let swap: Vec<usize> = (0..120).map(|v| if v == 0 { leaf } else if v == leaf { 0 } else { v }).collect();
                t = Graph::new(120, t.edges().iter().map(|&(a, b)| (swap[a], swap[b]))).unwrap();
            }
            for k in 1..=4 {
                check(&t, k);
            }
        }
    }

    #[test]
    fn rejects_non_binary() {
        assert!(tree_power_factorization(&generators::star(4), 2).is_err());
        assert!(tree_power_factorization(&generators::cycle(4), 2).is_err());
    }
}
