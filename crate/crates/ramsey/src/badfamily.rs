//! Bad tripartite families `B^I_p`, `B^II_p` and a small-graph denseness refuter.

use serde::{Deserialize, Serialize};
use twr_core::Graph;

use crate::density::{check_dense_pair, DensityCertificate, DensityMode};
use crate::RamseyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BadVariant {
    /// `(N(x) ∩ Y, Z)`
    I,
    /// `(N(x) ∩ Y, N(x) ∩ Z)`
    II,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BadParams {
    pub alpha: f64,
    pub eps_prime: f64,
    pub eps: f64,
    pub mu: f64,
    pub eta: f64,
    pub p: f64,
}

impl BadParams {
    /// `η = min(μ, α)/100`.
    pub fn with_default_eta(alpha: f64, eps_prime: f64, eps: f64, mu: f64, p: f64) -> Self {
        BadParams { alpha, eps_prime, eps, mu, eta: mu.min(alpha) / 100.0, p }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BadFamilyCertificate {
    pub variant: BadVariant,
    pub params: BadParams,
    /// Condition (a): `(X, Y)` (and `(X, Z)` for II) are `(η, α, p)`-dense.
    pub cond_a: bool,
    /// Condition (b): `(Y, Z)` is `(ε, α, p)`-dense.
    pub cond_b: bool,
    /// Vertices `x` whose neighborhood pair is not `(ε′, α, p)`-dense; the largest possible `X′`.
    pub x_prime: Vec<usize>,
    pub cond_c: bool,
    pub bad: bool,
}

fn disjoint(n: usize, sets: &[&[usize]]) -> Result<(), RamseyError> {
    let mut seen = vec![false; n];
    for set in sets {
        for &v in *set {
            if v >= n || seen[v] {
                return Err(RamseyError::Input(format!("parts must be disjoint vertex sets of the host, clash at {v}")));
            }
            seen[v] = true;
        }
    }
    Ok(())
}

fn neighborhood(g: &Graph, x: usize, set: &[usize]) -> Vec<usize> {
    set.iter().copied().filter(|&v| g.has_edge(x, v)).collect()
}

/// Decides membership of the tripartite graph `g[X, Y, Z]` in the chosen bad family,
/// with exhaustive density checks throughout.
pub fn check_bad_family(
    g: &Graph,
    x: &[usize],
    y: &[usize],
    z: &[usize],
    variant: BadVariant,
    params: BadParams,
) -> Result<BadFamilyCertificate, RamseyError> {
    disjoint(g.vertex_count(), &[x, y, z])?;
    let BadParams { alpha, eps_prime, eps, mu, eta, p } = params;
    let mode = DensityMode::Exhaustive;
    let dense = |a: &[usize], b: &[usize], e: f64| -> Result<bool, RamseyError> {
        Ok(check_dense_pair(g, a, b, e, alpha, p, mode)?.passed())
    };
    let mut cond_a = dense(x, y, eta)?;
    if variant == BadVariant::II {
        cond_a = cond_a && dense(x, z, eta)?;
    }
    let cond_b = dense(y, z, eps)?;
    let mut x_prime = Vec::new();
    for &v in x {
        let ny = neighborhood(g, v, y);
        let nz = match variant {
            BadVariant::I => z.to_vec(),
            BadVariant::II => neighborhood(g, v, z),
        };
        if !dense(&ny, &nz, eps_prime)? {
            x_prime.push(v);
        }
    }
    let cond_c = !x_prime.is_empty() && x_prime.len() as f64 >= mu * x.len() as f64;
    Ok(BadFamilyCertificate { variant, params, cond_a, cond_b, x_prime, cond_c, bad: cond_a && cond_b && cond_c })
}

pub const DENSENESS_VERTEX_LIMIT: usize = 8;

/// Induced bad member found inside a small graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensenessWitness {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub z: Vec<usize>,
    pub certificate: BadFamilyCertificate,
}

/// Part-size lower bounds of the denseness property for one variant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartMinimums {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// Searches every ordered triple of disjoint vertex sets meeting `mins` for an induced bad member.
/// `Some` refutes the denseness property; `None` only says that no induced member exists.
pub fn refute_denseness(
    g: &Graph,
    variant: BadVariant,
    params: BadParams,
    mins: PartMinimums,
) -> Result<Option<DensenessWitness>, RamseyError> {
    let n = g.vertex_count();
    if n > DENSENESS_VERTEX_LIMIT {
        return Err(RamseyError::SizeGuard { what: "denseness refuter", size: n, limit: DENSENESS_VERTEX_LIMIT });
    }
    let total = 4usize.pow(n as u32);
    for code in 0..total {
        let mut parts = [Vec::new(), Vec::new(), Vec::new()];
        let mut c = code;
        for v in 0..n {
            if c % 4 < 3 {
                parts[c % 4].push(v);
            }
            c /= 4;
        }
        let [x, y, z] = parts;
        if x.len() < mins.x.max(1) || y.len() < mins.y.max(1) || z.len() < mins.z.max(1) {
            continue;
        }
        let cert = check_bad_family(g, &x, &y, &z, variant, params)?;
        if cert.bad {
            return Ok(Some(DensenessWitness { x, y, z, certificate: cert }));
        }
    }
    Ok(None)
}

/// Exposed for reports: the certificate of one neighborhood pair.
pub fn neighborhood_pair_certificate(
    g: &Graph,
    x: usize,
    y: &[usize],
    z: &[usize],
    variant: BadVariant,
    params: BadParams,
) -> Result<DensityCertificate, RamseyError> {
    let ny = neighborhood(g, x, y);
    let nz = match variant {
        BadVariant::I => z.to_vec(),
        BadVariant::II => neighborhood(g, x, z),
    };
    check_dense_pair(g, &ny, &nz, params.eps_prime, params.alpha, params.p, DensityMode::Exhaustive)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(mu: f64) -> BadParams {
        BadParams::with_default_eta(0.5, 0.25, 0.25, mu, 1.0)
    }

    fn tripartite(nx: usize, ny: usize, nz: usize, edge: impl Fn(usize, usize) -> bool) -> (Graph, Vec<usize>, Vec<usize>, Vec<usize>) {
        let n = nx + ny + nz;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        let x = (0..nx).collect();
        let y = (nx..nx + ny).collect();
        let z = (nx + ny..n).collect();
        (Graph::new(n, edges).unwrap(), x, y, z)
    }

    #[test]
    fn complete_tripartite_is_not_bad() {
        let (g, x, y, z) = tripartite(3, 4, 4, |_, _| true);
        // Within-part edges are present but never inspected.
        for variant in [BadVariant::I, BadVariant::II] {
            let c = check_bad_family(&g, &x, &y, &z, variant, params(0.1)).unwrap();
            assert!(c.cond_a && c.cond_b && !c.cond_c && !c.bad);
        }
    }

    #[test]
    fn constructed_bad_member() {
        // X = 0..4 complete to Y = 4..12; Z = 12..16 joined only to Y's first half, so every
        // x sees a Y half isolated from Z, refuting (N(x) ∩ Y, Z) at ε′ = 1/4 while (Y, Z)
        // stays dense at ε = 1/2.
        let in_x = |v: usize| v < 4;
        let in_y = |v: usize| (4..12).contains(&v);
        let in_z = |v: usize| v >= 12;
        let (g, x, y, z) = tripartite(4, 8, 4, |u, v| (in_x(u) && in_y(v)) || (in_y(u) && in_z(v) && u < 8));
        let p = BadParams { alpha: 0.5, eps_prime: 0.25, eps: 0.5, mu: 1.0, eta: 0.01, p: 1.0 };
        let c = check_bad_family(&g, &x, &y, &z, BadVariant::I, p).unwrap();
        assert!(c.cond_a && c.cond_b && c.cond_c && c.bad, "{c:?}");
        assert_eq!(c.x_prime, x);
    }

    #[test]
    fn mu_above_one_never_bad() {
        let (g, x, y, z) = tripartite(3, 4, 4, |u, v| (u + v) % 3 == 0);
        for variant in [BadVariant::I, BadVariant::II] {
            assert!(!check_bad_family(&g, &x, &y, &z, variant, params(1.5)).unwrap().bad);
        }
    }

    #[test]
    fn overlapping_parts_rejected() {
        let g = Graph::empty(4);
        assert!(check_bad_family(&g, &[0, 1], &[1, 2], &[3], BadVariant::I, params(0.1)).is_err());
    }

    #[test]
    fn refuter_finds_bad_member_and_respects_guard() {
        // X = {0} complete to Y = {1, 2, 3, 4}; Z = {5, 6} sees only 1 and 2.
        let g = Graph::new(7, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (2, 5), (2, 6)]).unwrap();
        let p = BadParams { alpha: 0.5, eps_prime: 0.25, eps: 0.5, mu: 1.0, eta: 0.01, p: 1.0 };
        let mins = PartMinimums { x: 1, y: 4, z: 2 };
        let w = refute_denseness(&g, BadVariant::I, p, mins).unwrap().expect("bad member");
        assert!(check_bad_family(&g, &w.x, &w.y, &w.z, BadVariant::I, p).unwrap().bad);
        assert!(refute_denseness(&Graph::empty(7), BadVariant::I, p, mins).unwrap().is_none());
        assert!(refute_denseness(&Graph::empty(9), BadVariant::I, p, mins).is_err());
    }
}
