use serde::{Deserialize, Serialize};

use super::balanced::balanced_separator;
use super::decomposition::{elimination_width, exact_treewidth_order, min_degree_order, min_fill_order, TreeDecomposition, EXACT_LIMIT};
use super::profile::TreewidthProfile;
use super::SeparatorError;
use crate::graph::Graph;
use crate::report::CertificateReport;

/// Linear order `v_1..v_n` with a separating set `S(v_i) ∋ v_i` per position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorOrdering {
    pub order: Vec<usize>,
    /// `sets[i]` is `S(order[i])`, sorted.
    pub sets: Vec<Vec<usize>>,
}

impl SeparatorOrdering {
    /// Full prefix/suffix edge scan plus the per-position size bound from `profile`.
    pub fn verify(&self, g: &Graph, profile: &TreewidthProfile) -> CertificateReport {
        let mut report = CertificateReport::new();
        let n = g.vertex_count();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                report.violation(format!("order is not a permutation at position {i}"));
                return report;
            }
            pos[v] = i;
        }
        if self.order.len() != n || self.sets.len() != n {
            report.violation("order or sets do not cover every vertex");
            return report;
        }
        let bound = profile.level_sum(n);
        let mut largest = 0;
        for (i, set) in self.sets.iter().enumerate() {
            largest = largest.max(set.len());
            if set.binary_search(&self.order[i]).is_err() {
                report.violation(format!("S(v_{i}) does not contain v_{i}"));
            }
            if set.len() as f64 > bound {
                report.violation(format!("|S(v_{i})| = {} exceeds {bound}", set.len()));
            }
            for &(u, v) in g.edges() {
                let (lo, hi) = if pos[u] < pos[v] { (u, v) } else { (v, u) };
                if pos[lo] < i && i < pos[hi] && set.binary_search(&lo).is_err() && set.binary_search(&hi).is_err() {
                    report.violation(format!("edge {lo}-{hi} crosses position {i} outside S(v_{i})"));
                }
            }
        }
        report.bound("max_set_size", largest as f64, bound);
        report
    }
}

/// Ordering built by recursive balanced separation: A-order, then S, then B-order.
pub fn separator_ordering(g: &Graph, profile: &TreewidthProfile) -> Result<SeparatorOrdering, SeparatorError> {
    separator_ordering_with_base(g, profile, None)
}

/// As [`separator_ordering`], also trying `base` restricted to each subgraph.
pub fn separator_ordering_with_base(
    g: &Graph,
    profile: &TreewidthProfile,
    base: Option<&TreeDecomposition>,
) -> Result<SeparatorOrdering, SeparatorError> {
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let pairs = order_rec(g, &all, profile, base)?;
    let (order, sets) = pairs.into_iter().unzip();
    Ok(SeparatorOrdering { order, sets })
}

fn order_rec(
    g: &Graph,
    vertices: &[usize],
    profile: &TreewidthProfile,
    base: Option<&TreeDecomposition>,
) -> Result<Vec<(usize, Vec<usize>)>, SeparatorError> {
    let m = vertices.len();
    if m <= 1 {
        return Ok(vertices.iter().map(|&v| (v, vec![v])).collect());
    }
    let sub = g.induced_subgraph(vertices);
    let budget = profile.eval(m as f64);
    let td = best_decomposition(&sub, vertices, base, budget);
    let sep = balanced_separator(&sub, &td)?;
    if sep.s.len() as f64 > budget + 1.0 {
        return Err(SeparatorError::Budget { subgraph_size: m, separator_size: sep.s.len(), bound: budget + 1.0 });
    }
    let lift = |local: &[usize]| -> Vec<usize> { local.iter().map(|&i| vertices[i]).collect() };
    let s = lift(&sep.s);
    let (a, b) = (lift(&sep.a), lift(&sep.b));
    let mut out = Vec::with_capacity(m);
    let with_s = |(v, mut set): (usize, Vec<usize>)| {
        set.extend_from_slice(&s);
        set.sort_unstable();
        set.dedup();
        (v, set)
    };
    out.extend(order_rec(g, &a, profile, base)?.into_iter().map(with_s));
    out.extend(s.iter().map(|&v| (v, s.clone())));
    out.extend(order_rec(g, &b, profile, base)?.into_iter().map(with_s));
    Ok(out)
}

/// Narrowest of the candidate decompositions, stopping once one meets `budget`.
fn best_decomposition(sub: &Graph, vertices: &[usize], base: Option<&TreeDecomposition>, budget: f64) -> TreeDecomposition {
    let fits = |td: &TreeDecomposition| td.width() as f64 <= budget;
    let mut best: Option<TreeDecomposition> = base.map(|b| b.restrict(vertices));
    let consider = |td: TreeDecomposition, best: &mut Option<TreeDecomposition>| {
        if best.as_ref().is_none_or(|b| td.width() < b.width()) {
            *best = Some(td);
        }
    };
    if best.as_ref().is_some_and(fits) {
        return best.unwrap();
    }
    let mut orders: Vec<fn(&Graph) -> Vec<usize>> = vec![min_fill_order, min_degree_order];
    if sub.vertex_count() <= EXACT_LIMIT {
        orders.push(|g| exact_treewidth_order(g).1);
    }
    for order_fn in orders {
        let order = order_fn(sub);
        if best.as_ref().is_some_and(|b| elimination_width(sub, &order) >= b.width()) {
            continue;
        }
        consider(TreeDecomposition::from_elimination_order(sub, &order), &mut best);
        if best.as_ref().is_some_and(fits) {
            break;
        }
    }
    best.expect("at least one heuristic ran")
}
