//! Auxiliary graph `Γ(k, G)` and the congestion property.
//!
//! For a fixed family `F`, the worst `U` takes the `|F|` vertices with the largest positive
//! `deg_F(u) − p^k|F|`, so only families are enumerated.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use twr_core::Graph;

use crate::density::{DensityMode, Verdict};
use crate::RamseyError;

pub const EXHAUSTIVE_VERTEX_LIMIT: usize = 14;
pub const EXHAUSTIVE_K_LIMIT: usize = 2;

/// Incidences `(family index, u)` with `u` adjacent to every member of the family set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxiliaryGraph {
    pub k: usize,
    pub family: Vec<Vec<usize>>,
    pub u: Vec<usize>,
    pub incidences: Vec<(usize, usize)>,
}

pub fn build_auxiliary_graph(g: &Graph, k: usize, family: &[Vec<usize>], u: &[usize]) -> Result<AuxiliaryGraph, RamseyError> {
    let n = g.vertex_count();
    let mut owner = vec![false; n];
    for set in family {
        if set.len() != k {
            return Err(RamseyError::Input(format!("family set {set:?} does not have size {k}")));
        }
        for &v in set {
            if v >= n || owner[v] {
                return Err(RamseyError::Input(format!("family sets overlap or leave the graph at {v}")));
            }
            owner[v] = true;
        }
    }
    for &v in u {
        if v >= n || owner[v] {
            return Err(RamseyError::Input(format!("U vertex {v} is outside the graph or inside a family set")));
        }
    }
    let incidences = family
        .iter()
        .enumerate()
        .flat_map(|(i, set)| u.iter().filter(|&&v| set.iter().all(|&w| g.has_edge(w, v))).map(move |&v| (i, v)))
        .collect();
    Ok(AuxiliaryGraph { k, family: family.to_vec(), u: u.to_vec(), incidences })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CongestionWitness {
    pub family: Vec<Vec<usize>>,
    pub u: Vec<usize>,
    pub incidences: usize,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CongestionCertificate {
    pub k: usize,
    pub xi: f64,
    pub p: f64,
    pub mode: DensityMode,
    pub verdict: Verdict,
    pub witness: Option<CongestionWitness>,
    /// Largest `e_Γ(F, U) − bound` seen.
    pub worst_excess: f64,
    pub families_examined: u64,
}

impl CongestionCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// `p^k|F||U| + 6ξN p^k|F|`
pub fn congestion_bound(n: usize, k: usize, xi: f64, p: f64, family: usize, u: usize) -> f64 {
    let pk = p.powi(k as i32);
    pk * family as f64 * u as f64 + 6.0 * xi * n as f64 * pk * family as f64
}

struct Evaluator<'a> {
    g: &'a Graph,
    k: usize,
    xi: f64,
    p: f64,
    best: Option<CongestionWitness>,
    worst: f64,
    examined: u64,
}

impl Evaluator<'_> {
    /// Scores `family` with its worst `U` and keeps the largest excess.
    fn score(&mut self, family: &[Vec<usize>]) {
        self.examined += 1;
        let n = self.g.vertex_count();
        let f = family.len();
        let mut used = vec![false; n];
        for set in family {
            for &v in set {
                used[v] = true;
            }
        }
        let pk = self.p.powi(self.k as i32);
        let mut gains: Vec<(f64, usize, usize)> = (0..n)
            .filter(|&v| !used[v])
            .map(|v| {
                let deg = family.iter().filter(|set| set.iter().all(|&w| self.g.has_edge(w, v))).count();
                (deg as f64 - pk * f as f64, deg, v)
            })
            .filter(|e| e.0 > 0.0)
            .collect();
        gains.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.2.cmp(&b.2)));
        gains.truncate(f);
        let mut u: Vec<usize> = gains.iter().map(|e| e.2).collect();
        u.sort_unstable();
        let incidences: usize = gains.iter().map(|e| e.1).sum();
        let bound = congestion_bound(n, self.k, self.xi, self.p, f, u.len());
        let excess = incidences as f64 - bound;
        if self.best.is_none() || excess > self.worst {
            self.worst = excess;
            self.best = Some(CongestionWitness { family: family.to_vec(), u, incidences, bound });
        }
    }

    /// All families of disjoint `k`-sets with at most `max_sets` members, sets in increasing order.
    fn enumerate(&mut self, family: &mut Vec<Vec<usize>>, used: &mut Vec<bool>, max_sets: usize) {
        self.score(family);
        if family.len() == max_sets {
            return;
        }
        let n = self.g.vertex_count();
        let start = family.last().map_or(0, |s| s[0] + 1);
        for first in start..n {
            if used[first] {
                continue;
            }
            let mut set = vec![first];
            self.extend(&mut set, family, used, max_sets);
        }
    }

    fn extend(&mut self, set: &mut Vec<usize>, family: &mut Vec<Vec<usize>>, used: &mut Vec<bool>, max_sets: usize) {
        if set.len() == self.k {
            for &v in set.iter() {
                used[v] = true;
            }
            family.push(set.clone());
            self.enumerate(family, used, max_sets);
            family.pop();
            for &v in set.iter() {
                used[v] = false;
            }
            return;
        }
        let n = self.g.vertex_count();
        for v in set.last().unwrap() + 1..n {
            if !used[v] {
                set.push(v);
                self.extend(set, family, used, max_sets);
                set.pop();
            }
        }
    }
}

/// Congestion property `C^k_{N,p}(ξ)` over all `U` and disjoint families with `|U| <= |F| <= ξN`.
pub fn check_congestion(g: &Graph, k: usize, xi: f64, p: f64, mode: DensityMode) -> Result<CongestionCertificate, RamseyError> {
    if k == 0 {
        return Err(RamseyError::Input("congestion needs k >= 1".into()));
    }
    let n = g.vertex_count();
    let mut max_sets = 0;
    while ((max_sets + 1) as f64) <= xi * n as f64 && (max_sets + 1) * k <= n {
        max_sets += 1;
    }
    let mut ev = Evaluator { g, k, xi, p, best: None, worst: f64::NEG_INFINITY, examined: 0 };
    match mode {
        DensityMode::Exhaustive => {
            if n > EXHAUSTIVE_VERTEX_LIMIT || k > EXHAUSTIVE_K_LIMIT {
                return Err(RamseyError::SizeGuard { what: "exhaustive congestion check", size: n.max(k), limit: EXHAUSTIVE_VERTEX_LIMIT });
            }
            ev.enumerate(&mut Vec::new(), &mut vec![false; n], max_sets);
        }
        DensityMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            ev.score(&[]);
            for _ in 0..samples {
                if max_sets == 0 {
                    break;
                }
                let mut verts: Vec<usize> = (0..n).collect();
                verts.shuffle(&mut rng);
                let size = rng.gen_range(1..=max_sets);
                let family: Vec<Vec<usize>> = verts.chunks(k).take(size).map(|c| {
                    let mut s = c.to_vec();
                    s.sort_unstable();
                    s
                }).collect();
                ev.score(&family);
            }
        }
    }
    let refuted = ev.worst > 0.0;
    Ok(CongestionCertificate {
        k,
        xi,
        p,
        mode,
        verdict: if refuted { Verdict::Refuted } else { Verdict::Pass },
        witness: if refuted { ev.best } else { None },
        worst_excess: ev.worst,
        families_examined: ev.examined,
    })
}

/// Recounts a congestion witness against the definition.
pub fn witness_refutes_congestion(g: &Graph, cert: &CongestionCertificate) -> bool {
    let Some(w) = &cert.witness else { return false };
    let n = g.vertex_count();
    let Ok(aux) = build_auxiliary_graph(g, cert.k, &w.family, &w.u) else { return false };
    w.u.len() <= w.family.len()
        && w.family.len() as f64 <= cert.xi * n as f64
        && aux.incidences.len() as f64 > congestion_bound(n, cert.k, cert.xi, cert.p, w.family.len(), w.u.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use twr_core::generators;

    #[test]
    fn auxiliary_examples() {
        let g = generators::path(4);
        let aux = build_auxiliary_graph(&g, 1, &[vec![0], vec![2]], &[1, 3]).unwrap();
        assert_eq!(aux.incidences, vec![(0, 1), (1, 1), (1, 3)]);
        let k4 = generators::complete(4);
        let aux = build_auxiliary_graph(&k4, 2, &[vec![0, 1]], &[2, 3]).unwrap();
        assert_eq!(aux.incidences, vec![(0, 2), (0, 3)]);
        let empty = Graph::empty(5);
        assert!(build_auxiliary_graph(&empty, 2, &[vec![0, 1]], &[2, 3]).unwrap().incidences.is_empty());
        assert!(build_auxiliary_graph(&k4, 2, &[vec![0, 1], vec![1, 2]], &[3]).is_err());
    }

    #[test]
    fn empty_graph_passes() {
        let c = check_congestion(&Graph::empty(8), 2, 0.5, 0.5, DensityMode::Exhaustive).unwrap();
        assert!(c.passed());
    }

    #[test]
    fn clique_refuted() {
        let g = generators::complete(6);
        let c = check_congestion(&g, 1, 1.0, 0.01, DensityMode::Exhaustive).unwrap();
        assert!(!c.passed());
        assert!(witness_refutes_congestion(&g, &c));
        // F = {v}, U = {w}: one incidence against 0.01 + 0.06.
        let single = 1.0 - congestion_bound(6, 1, 1.0, 0.01, 1, 1);
        assert!(single > 0.0);
    }
}
