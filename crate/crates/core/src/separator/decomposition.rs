use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::SeparatorError;
use crate::graph::Graph;

/// Largest graph accepted by [`DecompositionMode::Exact`].
pub const EXACT_LIMIT: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecompositionMode {
    Exact,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub tree: Graph,
    /// Sorted bag per tree node.
    pub bags: Vec<Vec<usize>>,
}

impl TreeDecomposition {
    /// Maximum bag size minus one (zero for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    /// Checks the three decomposition axioms against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), SeparatorError> {
        let bad = |msg: String| Err(SeparatorError::InvalidDecomposition(msg));
        let nodes = self.bags.len();
        if self.tree.vertex_count() != nodes {
            return bad(format!("{} bags for {} tree nodes", nodes, self.tree.vertex_count()));
        }
        if g.vertex_count() > 0 && !self.tree.is_tree() {
            return bad("decomposition tree is not a tree".into());
        }
        let n = g.vertex_count();
        let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (node, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return bad(format!("bag {node} holds vertex {v} outside the graph"));
                }
                holders[v].push(node);
            }
        }
        for (v, nodes) in holders.iter().enumerate() {
            if nodes.is_empty() {
                return bad(format!("vertex {v} is in no bag"));
            }
            if !connected_in_tree(&self.tree, nodes) {
                return bad(format!("bags holding vertex {v} are not connected"));
            }
        }
        for &(u, v) in g.edges() {
            if !holders[u].iter().any(|node| self.bags[*node].binary_search(&v).is_ok()) {
                return bad(format!("edge {u}-{v} is in no bag"));
            }
        }
        Ok(())
    }

    /// Decomposition induced by eliminating vertices in `order`; bag `i` belongs to `order[i]`.
    pub fn from_elimination_order(g: &Graph, order: &[usize]) -> Self {
        let n = g.vertex_count();
        assert_eq!(order.len(), n, "elimination order must cover every vertex");
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
        let mut bags = Vec::with_capacity(n);
        let mut tree_edges = Vec::new();
        let mut roots = Vec::new();
        for (i, &v) in order.iter().enumerate() {
            let later: Vec<usize> = adj[v].iter().copied().filter(|&u| pos[u] > i).collect();
            for (a, &x) in later.iter().enumerate() {
                for &y in &later[a + 1..] {
                    adj[x].insert(y);
                    adj[y].insert(x);
                }
            }
            match later.iter().map(|&u| pos[u]).min() {
                Some(p) => tree_edges.push((i, p)),
                None => roots.push(i),
            }
            let mut bag = later;
            bag.push(v);
            bag.sort_unstable();
            bags.push(bag);
        }
        tree_edges.extend(roots.windows(2).map(|w| (w[0], w[1])));
        let tree = Graph::new(n, tree_edges).expect("elimination tree edges are simple");
        TreeDecomposition { tree, bags }
    }

    /// Decomposition of `g.induced_subgraph(vertices)`, relabelled to local indices.
    pub fn restrict(&self, vertices: &[usize]) -> TreeDecomposition {
        let mut local = std::collections::HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            local.insert(v, i);
        }
        let mut bags: Vec<Vec<usize>> = self
            .bags
            .iter()
            .map(|bag| {
                let mut b: Vec<usize> = bag.iter().filter_map(|v| local.get(v).copied()).collect();
                b.sort_unstable();
                b
            })
            .collect();
        if bags.is_empty() {
            bags.push(Vec::new());
            return TreeDecomposition { tree: Graph::empty(1), bags };
        }
        TreeDecomposition { tree: self.tree.clone(), bags }
    }
}

fn connected_in_tree(tree: &Graph, nodes: &[usize]) -> bool {
    let set: HashSet<usize> = nodes.iter().copied().collect();
    let mut seen = HashSet::from([nodes[0]]);
    let mut stack = vec![nodes[0]];
    while let Some(x) = stack.pop() {
        for &y in tree.neighbors(x) {
            if set.contains(&y) && seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len() == set.len()
}

/// Width of the decomposition produced by `order`, without building it.
pub fn elimination_width(g: &Graph, order: &[usize]) -> usize {
    TreeDecomposition::from_elimination_order(g, order).width()
}

pub fn tree_decomposition(g: &Graph, mode: DecompositionMode) -> Result<TreeDecomposition, SeparatorError> {
    let order = match mode {
        DecompositionMode::Heuristic => min_fill_order(g),
        DecompositionMode::Exact => {
            if g.vertex_count() > EXACT_LIMIT {
                return Err(SeparatorError::SizeGuard { n: g.vertex_count(), limit: EXACT_LIMIT });
            }
            exact_treewidth_order(g).1
        }
    };
    Ok(TreeDecomposition::from_elimination_order(g, &order))
}

#[derive(Clone, Copy)]
enum Greedy {
    MinFill,
    MinDegree,
}

/// Greedy elimination by fewest fill edges; ties by degree, then index.
pub fn min_fill_order(g: &Graph) -> Vec<usize> {
    greedy_order(g, Greedy::MinFill)
}

/// Greedy elimination by smallest degree in the filled graph; ties by index.
pub fn min_degree_order(g: &Graph) -> Vec<usize> {
    greedy_order(g, Greedy::MinDegree)
}

fn greedy_order(g: &Graph, rule: Greedy) -> Vec<usize> {
    let n = g.vertex_count();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let score = |adj: &[BTreeSet<usize>], v: usize| -> (usize, usize) {
        let d = adj[v].len();
        match rule {
            Greedy::MinDegree => (d, 0),
            Greedy::MinFill => {
                let nb: Vec<usize> = adj[v].iter().copied().collect();
                let mut missing = 0;
                for (a, &x) in nb.iter().enumerate() {
                    missing += nb[a + 1..].iter().filter(|y| !adj[x].contains(y)).count();
                }
                (missing, d)
            }
        }
    };
    let mut current: Vec<(usize, usize)> = (0..n).map(|v| score(&adj, v)).collect();
    let mut queue: BTreeSet<((usize, usize), usize)> = (0..n).map(|v| (current[v], v)).collect();
    let mut order = Vec::with_capacity(n);
    while let Some((_, v)) = queue.pop_first() {
        order.push(v);
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &x in &nb {
            adj[x].remove(&v);
        }
        for (a, &x) in nb.iter().enumerate() {
            for &y in &nb[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        adj[v].clear();
        let mut dirty: BTreeSet<usize> = nb.iter().copied().collect();
        if matches!(rule, Greedy::MinFill) {
            for &x in &nb {
                dirty.extend(adj[x].iter().copied());
            }
        }
        for x in dirty {
            let fresh = score(&adj, x);
            if fresh != current[x] {
                queue.remove(&(current[x], x));
                current[x] = fresh;
                queue.insert((fresh, x));
            }
        }
    }
    order
}

/// Exact treewidth and an optimal elimination order. Intended for at most [`EXACT_LIMIT`] vertices.
pub fn exact_treewidth_order(g: &Graph) -> (usize, Vec<usize>) {
    assert!(g.vertex_count() <= 64, "bitmask search handles at most 64 vertices");
    let mut width = 0;
    let mut order = Vec::with_capacity(g.vertex_count());
    for comp in g.components() {
        let sub = g.induced_subgraph(&comp);
        let (w, local) = exact_connected(&sub);
        width = width.max(w);
        order.extend(local.into_iter().map(|i| comp[i]));
    }
    (width, order)
}

fn exact_connected(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.vertex_count();
    let fill = min_fill_order(g);
    let deg = min_degree_order(g);
    let (wf, wd) = (elimination_width(g, &fill), elimination_width(g, &deg));
    let (upper, best) = if wd < wf { (wd, deg) } else { (wf, fill) };
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u)).collect();
    let lower = minor_min_width(&adj);
    for k in lower..upper {
        let mut search = ExactSearch { adj: &adj, full: mask_of(n), k, failed: HashSet::new(), path: Vec::new() };
        if search.feasible(0) {
            return (k, search.path);
        }
    }
    (upper, best)
}

fn mask_of(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(b)
    })
}

/// Minor-min-width lower bound on treewidth.
fn minor_min_width(adj: &[u64]) -> usize {
    let mut adj = adj.to_vec();
    let mut alive = mask_of(adj.len());
    let mut lower = 0;
    while alive != 0 {
        let v = bits(alive).min_by_key(|&v| (adj[v].count_ones(), v)).unwrap();
        let d = adj[v].count_ones() as usize;
        lower = lower.max(d);
        if d == 0 {
            alive &= !(1 << v);
            continue;
        }
        let u = bits(adj[v]).min_by_key(|&u| (adj[u].count_ones(), u)).unwrap();
        let merged = (adj[u] | adj[v]) & !(1 << u) & !(1 << v);
        for w in bits(adj[v]) {
            adj[w] &= !(1 << v);
        }
        for w in bits(merged) {
            adj[w] |= 1 << u;
        }
        adj[u] = merged;
        adj[v] = 0;
        alive &= !(1 << v);
    }
    lower
}

struct ExactSearch<'a> {
    adj: &'a [u64],
    full: u64,
    k: usize,
    failed: HashSet<u64>,
    path: Vec<usize>,
}

impl ExactSearch<'_> {
    /// Vertices outside `eliminated` reachable from `v` through eliminated vertices.
    fn q(&self, eliminated: u64, v: usize) -> u64 {
        let mut comp = 1u64 << v;
        let mut frontier = comp;
        let mut reach = 0u64;
        while frontier != 0 {
            let mut nb = 0u64;
            for u in bits(frontier) {
                nb |= self.adj[u];
            }
            reach |= nb;
            frontier = nb & eliminated & !comp;
            comp |= frontier;
        }
        reach & !eliminated & !(1 << v)
    }

    fn feasible(&mut self, eliminated: u64) -> bool {
        let remaining = self.full & !eliminated;
        if remaining.count_ones() as usize <= self.k + 1 {
            self.path.extend(bits(remaining));
            return true;
        }
        if self.failed.contains(&eliminated) {
            return false;
        }
        let q: Vec<(usize, u64)> = bits(remaining).map(|v| (v, self.q(eliminated, v))).collect();
        let nbr = |v: usize| q.iter().find(|e| e.0 == v).map(|e| e.1).unwrap();
        let is_clique = |set: u64| bits(set).all(|a| set & !(1 << a) & !nbr(a) == 0);
        let mut candidates: Vec<(usize, u64)> = q.iter().copied().filter(|e| e.1.count_ones() as usize <= self.k).collect();
        // Simplicial vertices, and almost simplicial ones of low degree, are safe to eliminate first.
        if let Some(&forced) = candidates.iter().find(|&&(_, nb)| {
            is_clique(nb) || bits(nb).any(|a| is_clique(nb & !(1 << a)))
        }) {
            candidates = vec![forced];
        } else {
            candidates.sort_by_key(|e| (e.1.count_ones(), e.0));
        }
        for (v, _) in candidates {
            self.path.push(v);
            if self.feasible(eliminated | 1 << v) {
                return true;
            }
            self.path.pop();
        }
        self.failed.insert(eliminated);
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    /// Minimum elimination width over all orders.
    fn brute_treewidth(g: &Graph) -> usize {
        fn permute(g: &Graph, prefix: &mut Vec<usize>, used: &mut Vec<bool>, best: &mut usize) {
            if prefix.len() == g.vertex_count() {
                *best = (*best).min(elimination_width(g, prefix));
                return;
            }
            for v in 0..g.vertex_count() {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v);
                    permute(g, prefix, used, best);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut best = usize::MAX;
        permute(g, &mut Vec::new(), &mut vec![false; g.vertex_count()], &mut best);
        best
    }

    #[test]
    fn spec_examples() {
        let tree = generators::random_tree(25, 3, 4);
        for mode in [DecompositionMode::Exact, DecompositionMode::Heuristic] {
            let td = tree_decomposition(&tree, mode).unwrap();
            td.validate(&tree).unwrap();
            assert_eq!(td.width(), 1);
        }
        let c6 = generators::cycle(6);
        assert_eq!(brute_treewidth(&c6), 2);
        assert_eq!(tree_decomposition(&c6, DecompositionMode::Exact).unwrap().width(), 2);
        assert_eq!(tree_decomposition(&generators::complete(5), DecompositionMode::Heuristic).unwrap().width(), 4);
    }

    #[test]
    fn exact_matches_permutation_oracle() {
        for seed in 0..25 {
            let g = generators::gnp(7, 0.45, seed);
            let td = tree_decomposition(&g, DecompositionMode::Exact).unwrap();
            td.validate(&g).unwrap();
            assert_eq!(td.width(), brute_treewidth(&g), "seed {seed}");
        }
    }

    #[test]
    fn grid_and_guard() {
        let g = generators::grid(4, 5);
        assert_eq!(exact_treewidth_order(&g).0, 4);
        let big = generators::path(31);
        assert!(matches!(tree_decomposition(&big, DecompositionMode::Exact), Err(SeparatorError::SizeGuard { .. })));
    }

    #[test]
    fn restriction_stays_valid() {
        let g = generators::grid(5, 5);
        let td = tree_decomposition(&g, DecompositionMode::Heuristic).unwrap();
        let keep: Vec<usize> = (0..25).filter(|v| v % 3 != 0).collect();
        let sub = g.induced_subgraph(&keep);
        td.restrict(&keep).validate(&sub).unwrap();
    }

    #[test]
    fn invalid_decomposition_rejected() {
        let g = generators::path(3);
        let td = TreeDecomposition { tree: Graph::empty(1), bags: vec![vec![0, 1]] };
        assert!(td.validate(&g).is_err());
    }
}
