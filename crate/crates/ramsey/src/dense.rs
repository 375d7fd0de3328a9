//! Vertex-by-vertex embedding into a monochromatic structure shaped like `T ⊠ K_{Δ+1}`.
//!
//! `H`-vertex `v` with tree node `t(v)` and slice `i(v)` lives in `U_{t(v), i(v)}`. Its candidate
//! set is the part of that slice adjacent (in the chosen color) to every embedded neighbor. A
//! vertex `u` is chosen for `v` only if every unembedded neighbor `z` keeps
//! `|N(u) ∩ C_z| >= (1/4k)^{i_z + 1} |U_z|`, with `i_z` the number of embedded neighbors of `z`.

use serde::{Deserialize, Serialize};
use twr_core::coloring::greedy_coloring;
use twr_core::Graph;

use crate::host::ColoredHost;
use crate::structure::DenseStructure;
use crate::verify::EmbeddingMap;
use crate::RamseyError;

/// Proper coloring of each `H[S_t]` with at most `Δ + 1` colors, greedy in index order.
pub fn dense_slices(h: &Graph, node_of: &[usize]) -> Vec<usize> {
    let nodes = node_of.iter().copied().max().map_or(0, |m| m + 1);
    let mut groups = vec![Vec::new(); nodes];
    for (v, &t) in node_of.iter().enumerate() {
        groups[t].push(v);
    }
    let mut slice = vec![0; h.vertex_count()];
    for group in groups {
        let sub = h.induced_subgraph(&group);
        let order: Vec<usize> = (0..group.len()).collect();
        for (i, c) in greedy_coloring(&sub, &order).expect("identity order").into_iter().enumerate() {
            slice[group[i]] = c;
        }
    }
    slice
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenseFailure {
    pub step: usize,
    pub vertex: usize,
    pub candidates: usize,
    pub free_candidates: usize,
    /// Best `min_z |N(u) ∩ C_z| / required` over free candidates, if any.
    pub best_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum DenseOutcome {
    Embedded { embedding: EmbeddingMap, min_candidate_fraction: f64 },
    Failed(DenseFailure),
}

/// Embeds `h` given tree nodes `node_of`, slices `slice_of` and a structure over the tree.
pub fn dense_embed(
    h: &Graph,
    node_of: &[usize],
    slice_of: &[usize],
    host: &ColoredHost,
    structure: &DenseStructure,
    k: usize,
) -> Result<DenseOutcome, RamseyError> {
    let n = h.vertex_count();
    if node_of.len() != n || slice_of.len() != n {
        return Err(RamseyError::Input("node and slice assignments must cover V(H)".into()));
    }
    for v in 0..n {
        let ok = structure.subsets.get(node_of[v]).is_some_and(|s| slice_of[v] < s.len());
        if !ok {
            return Err(RamseyError::Input(format!("vertex {v} has no slice ({}, {})", node_of[v], slice_of[v])));
        }
    }
    for &(u, v) in h.edges() {
        if node_of[u] == node_of[v] && slice_of[u] == slice_of[v] {
            return Err(RamseyError::Input(format!("edge {{{u}, {v}}} lies inside one slice")));
        }
    }
    let g = host.color_class(structure.color);
    let q = 1.0 / (4.0 * k as f64);
    let pool = |v: usize| &structure.subsets[node_of[v]][slice_of[v]];
    let mut cand: Vec<Vec<usize>> = (0..n).map(|v| pool(v).clone()).collect();
    let mut embedded_nbrs = vec![0usize; n];
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; g.vertex_count()];
    let mut min_fraction = 1.0f64;
    let common = |u: usize, set: &[usize]| set.iter().filter(|&&x| g.has_edge(u, x)).count();
    for v in 0..n {
        let pending: Vec<usize> = h.neighbors(v).iter().copied().filter(|&z| map[z] == usize::MAX).collect();
        let mut best_ratio: Option<f64> = None;
        let mut chosen = None;
        let mut free = 0;
        for &u in &cand[v] {
            if used[u] {
                continue;
            }
            free += 1;
            let mut ratio = f64::INFINITY;
            for &z in &pending {
                let need = q.powi(embedded_nbrs[z] as i32 + 1) * pool(z).len() as f64;
                ratio = ratio.min(common(u, &cand[z]) as f64 / need);
            }
            if ratio >= 1.0 {
                chosen = Some(u);
                break;
            }
            best_ratio = Some(best_ratio.map_or(ratio, |b: f64| b.max(ratio)));
        }
        let Some(u) = chosen else {
            return Ok(DenseOutcome::Failed(DenseFailure { step: v, vertex: v, candidates: cand[v].len(), free_candidates: free, best_ratio }));
        };
        map[v] = u;
        used[u] = true;
        for &z in &pending {
            cand[z].retain(|&x| g.has_edge(u, x));
            embedded_nbrs[z] += 1;
            min_fraction = min_fraction.min(cand[z].len() as f64 / pool(z).len() as f64);
        }
    }
    Ok(DenseOutcome::Embedded { embedding: EmbeddingMap { color: structure.color, map }, min_candidate_fraction: min_fraction })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::host::{build_blowup_host, color_host, ColoringStrategy, WithinParts};
    use crate::structure::{find_monochromatic_dense_structure, StructureOutcome, StructureParams};
    use crate::verify::verify_embedding;
    use twr_core::generators::{cycle, path};

    fn structure(host: &ColoredHost, t: &Graph, slices: usize, seed: u64) -> Option<DenseStructure> {
        let params = StructureParams::new(0.5, 0.625, 1.0, slices, seed);
        match find_monochromatic_dense_structure(host, t, &params).unwrap() {
            StructureOutcome::Found(s) => Some(s),
            StructureOutcome::NotFound { .. } => None,
        }
    }

    #[test]
    fn single_vertex() {
        let host = build_blowup_host(&Graph::empty(1), 3, 1.0, WithinParts::Complete, 0).unwrap();
        let s = structure(&host, &Graph::empty(1), 1, 0).unwrap();
        let out = dense_embed(&Graph::empty(1), &[0], &[0], &host, &s, 1).unwrap();
        assert!(matches!(out, DenseOutcome::Embedded { .. }));
    }

    #[test]
    fn p4_into_p2_times_k2() {
        // P_4 = 0-1-2-3 with nodes {0, 1} -> 0 and {2, 3} -> 1.
        let h = path(4);
        let node_of = [0, 0, 1, 1];
        let slice_of = dense_slices(&h, &node_of);
        let host = build_blowup_host(&path(2), 4, 1.0, WithinParts::Complete, 0).unwrap();
        let s = structure(&host, &path(2), 3, 0).unwrap();
        match dense_embed(&h, &node_of, &slice_of, &host, &s, 1).unwrap() {
            DenseOutcome::Embedded { embedding, .. } => assert!(verify_embedding(&h, &host, &embedding).pass),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn six_cycle_random_structures() {
        // C_6 over T = P_3 with s = 2: nodes {0, 1}, {2, 5}, {3, 4}.
        let h = cycle(6);
        let node_of = [0, 0, 1, 2, 2, 1];
        let slice_of = dense_slices(&h, &node_of);
        let mut ok = 0;
        for seed in 0..100 {
            let host = build_blowup_host(&path(3), 80, 1.0, WithinParts::Complete, seed).unwrap();
            let host = color_host(&host, 2, &ColoringStrategy::Random, seed).unwrap();
            let Some(s) = structure(&host, &path(3), 3, seed) else { continue };
            if let DenseOutcome::Embedded { embedding, .. } = dense_embed(&h, &node_of, &slice_of, &host, &s, 2).unwrap() {
                assert!(verify_embedding(&h, &host, &embedding).pass);
                ok += 1;
            }
        }
        assert!(ok >= 95, "{ok}");
    }

    #[test]
    fn slices_are_proper() {
        let h = cycle(5);
        let node_of = [0; 5];
        let s = dense_slices(&h, &node_of);
        assert!(h.edges().iter().all(|&(u, v)| s[u] != s[v]));
        assert!(s.iter().all(|&c| c <= 2));
    }
}
