use serde::{Deserialize, Serialize};

use super::decomposition::TreeDecomposition;
use super::SeparatorError;
use crate::graph::Graph;
use crate::report::CertificateReport;

/// Disjoint `S ∪ A ∪ B = V(G)` with no edge between `A` and `B`. Each set sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct SeparatorTriple {
    pub s: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl SeparatorTriple {
    /// Partition and edge-freeness checks.
    pub fn verify(&self, g: &Graph) -> CertificateReport {
        let mut report = CertificateReport::new();
        let n = g.vertex_count();
        let mut side = vec![0u8; n];
        for (label, set) in [(1u8, &self.s), (2, &self.a), (3, &self.b)] {
            for &v in set {
                if v >= n {
                    report.violation(format!("vertex {v} out of range"));
                } else if side[v] != 0 {
                    report.violation(format!("vertex {v} appears in two sets"));
                } else {
                    side[v] = label;
                }
            }
        }
        if let Some(v) = side.iter().position(|&s| s == 0) {
            report.violation(format!("vertex {v} is in none of S, A, B"));
        }
        for &(u, v) in g.edges() {
            if matches!((side[u], side[v]), (2, 3) | (3, 2)) {
                report.violation(format!("edge {u}-{v} joins A and B"));
            }
        }
        report.metric("separator_size", self.s.len());
        report.metric("a_size", self.a.len());
        report.metric("b_size", self.b.len());
        report
    }
}

/// Picks the lowest-indexed bag whose removal leaves components of size at most n/2, then
/// groups the components into two sides of size at most 2n/3.
pub fn balanced_separator(g: &Graph, td: &TreeDecomposition) -> Result<SeparatorTriple, SeparatorError> {
    td.validate(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(SeparatorTriple::default());
    }
    for bag in &td.bags {
        let comps = components_without(g, bag);
        if comps.iter().all(|c| 2 * c.len() <= n) {
            return Ok(group(bag.clone(), comps, n));
        }
    }
    Err(SeparatorError::InvalidDecomposition("no bag splits the graph into halves".into()))
}

fn components_without(g: &Graph, removed: &[usize]) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    for &v in removed {
        seen[v] = true;
    }
    let mut comps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            for &u in g.neighbors(comp[i]) {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
            i += 1;
        }
        comps.push(comp);
    }
    comps
}

fn group(s: Vec<usize>, mut comps: Vec<Vec<usize>>, n: usize) -> SeparatorTriple {
    comps.sort_by(|x, y| y.len().cmp(&x.len()).then(x[0].cmp(&y[0])));
    let mut a = Vec::new();
    let mut b = Vec::new();
    let third = |len: usize| 3 * len >= n;
    if comps.first().is_some_and(|c| third(c.len())) {
        let mut it = comps.into_iter();
        a = it.next().unwrap();
        b = it.flatten().collect();
    } else {
        for c in comps {
            if third(a.len()) {
                b.extend(c);
            } else {
                a.extend(c);
            }
        }
    }
    a.sort_unstable();
    b.sort_unstable();
    SeparatorTriple { s, a, b }
}
