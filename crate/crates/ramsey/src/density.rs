//! `(ε, α, p)`-dense pairs and `(λ, p)`-uniformity.
//!
//! For fixed `X′`, the least dense `Y′` of size at least `b` is the `b` vertices of
//! smallest degree into `X′`, so extremes are attained at the size thresholds.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use twr_core::Graph;

use crate::RamseyError;

/// Largest part accepted in exhaustive mode.
pub const EXHAUSTIVE_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum DensityMode {
    Exhaustive,
    /// Local search from `samples` random starts; refutations are sound, passes heuristic.
    Sampled { samples: usize, seed: u64 },
}

impl DensityMode {
    pub fn sampled(samples: usize, seed: u64) -> Self {
        DensityMode::Sampled { samples, seed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairWitness {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub density: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityCertificate {
    pub epsilon: f64,
    pub alpha: f64,
    pub p: f64,
    pub mode: DensityMode,
    pub verdict: Verdict,
    pub witness: Option<PairWitness>,
    /// Least density seen over qualifying subset pairs.
    pub min_density: Option<f64>,
}

impl DensityCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformCertificate {
    pub lambda: f64,
    pub p: f64,
    pub mode: DensityMode,
    pub verdict: Verdict,
    pub witness: Option<PairWitness>,
    pub min_density: Option<f64>,
    pub max_density: Option<f64>,
}

impl UniformCertificate {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Smallest subset size `t >= 1` with `t >= frac·n`.
pub fn size_threshold(frac: f64, n: usize) -> usize {
    let mut t = (frac * n as f64).ceil().max(1.0) as usize;
    while t > 1 && (t - 1) as f64 >= frac * n as f64 {
        t -= 1;
    }
    while (t as f64) < frac * n as f64 {
        t += 1;
    }
    t
}

/// `e(X′, Y′) / (|X′||Y′|)`.
pub fn density(g: &Graph, x: &[usize], y: &[usize]) -> f64 {
    if x.is_empty() || y.is_empty() {
        return 0.0;
    }
    let e: usize = x.iter().map(|&u| y.iter().filter(|&&v| g.has_edge(u, v)).count()).sum();
    e as f64 / (x.len() * y.len()) as f64
}

#[derive(Clone, Copy, PartialEq)]
enum Extreme {
    Min,
    Max,
}

impl Extreme {
    fn better(self, a: f64, b: f64) -> bool {
        match self {
            Extreme::Min => a < b,
            Extreme::Max => a > b,
        }
    }
}

struct Scanner<'a> {
    g: &'a Graph,
    x: &'a [usize],
    y: &'a [usize],
    mark: Vec<usize>,
}

impl<'a> Scanner<'a> {
    fn new(g: &'a Graph, x: &'a [usize], y: &'a [usize]) -> Self {
        Scanner { g, x, y, mark: vec![usize::MAX; g.vertex_count()] }
    }

    /// Degrees of `targets` into `chosen`, scanning the shorter side's neighbor lists.
    fn degrees(&mut self, chosen: &[usize], targets: &[usize]) -> Vec<usize> {
        let mut d = vec![0; targets.len()];
        if chosen.len() < targets.len() {
            for (i, &t) in targets.iter().enumerate() {
                self.mark[t] = i;
            }
            for &c in chosen {
                for &w in self.g.neighbors(c) {
                    if self.mark[w] != usize::MAX {
                        d[self.mark[w]] += 1;
                    }
                }
            }
            for &t in targets {
                self.mark[t] = usize::MAX;
            }
        } else {
            for &c in chosen {
                self.mark[c] = 0;
            }
            for (i, &t) in targets.iter().enumerate() {
                d[i] = self.g.neighbors(t).iter().filter(|&&u| self.mark[u] == 0).count();
            }
            for &c in chosen {
                self.mark[c] = usize::MAX;
            }
        }
        d
    }

    /// Best `size` targets against `chosen`, ties by position; returns (edges, picked).
    fn best_response(&mut self, chosen: &[usize], targets: &[usize], size: usize, ext: Extreme) -> (usize, Vec<usize>) {
        let deg = self.degrees(chosen, targets);
        let mut idx: Vec<usize> = (0..targets.len()).collect();
        match ext {
            Extreme::Min => idx.sort_by_key(|&i| (deg[i], i)),
            Extreme::Max => idx.sort_by_key(|&i| (std::cmp::Reverse(deg[i]), i)),
        }
        idx.truncate(size);
        let edges = idx.iter().map(|&i| deg[i]).sum();
        let mut picked: Vec<usize> = idx.into_iter().map(|i| targets[i]).collect();
        picked.sort_unstable();
        (edges, picked)
    }

    /// Exact extreme over `|X′| = tx`, `|Y′| = ty` by enumerating the side with fewer subsets.
    fn exhaustive(&mut self, tx: usize, ty: usize, ext: Extreme) -> PairWitness {
        let swap = binomial(self.y.len(), ty) < binomial(self.x.len(), tx);
        let (a, b, ta, tb) = if swap { (self.y, self.x, ty, tx) } else { (self.x, self.y, tx, ty) };
        let mut best: Option<PairWitness> = None;
        let mut comb: Vec<usize> = (0..ta).collect();
        loop {
            let chosen: Vec<usize> = comb.iter().map(|&i| a[i]).collect();
            let (edges, picked) = self.best_response(&chosen, b, tb, ext);
            let d = edges as f64 / (ta * tb) as f64;
            if best.as_ref().is_none_or(|w| ext.better(d, w.density)) {
                best = Some(if swap {
                    PairWitness { x: picked, y: chosen, density: d }
                } else {
                    PairWitness { x: chosen, y: picked, density: d }
                });
            }
            if !next_combination(&mut comb, a.len()) {
                break;
            }
        }
        best.expect("at least one subset")
    }

    /// Alternating best responses from random starts.
    fn sampled(&mut self, tx: usize, ty: usize, ext: Extreme, samples: usize, seed: u64) -> PairWitness {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best: Option<PairWitness> = None;
        for round in 0..samples.max(1) + 1 {
            let mut xs: Vec<usize> = if round == 0 {
                // Deterministic start: the extreme X′ against all of Y.
                self.best_response(self.y, self.x, tx, ext).1
            } else {
                let mut v: Vec<usize> = sample(&mut rng, self.x.len(), tx).into_iter().map(|i| self.x[i]).collect();
                v.sort_unstable();
                v
            };
            let mut current = f64::NAN;
            for _ in 0..64 {
                let (_, ys) = self.best_response(&xs, self.y, ty, ext);
                let (edges, new_xs) = self.best_response(&ys, self.x, tx, ext);
                let d = edges as f64 / (tx * ty) as f64;
                let improved = current.is_nan() || ext.better(d, current);
                xs = new_xs;
                if best.as_ref().is_none_or(|w| ext.better(d, w.density)) {
                    best = Some(PairWitness { x: xs.clone(), y: ys, density: d });
                }
                if !improved {
                    break;
                }
                current = d;
            }
        }
        best.expect("at least one round")
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Advances `comb` (strictly increasing indices below `n`) to the next combination.
pub(crate) fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    for i in (0..k).rev() {
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn validate_pair(g: &Graph, x: &[usize], y: &[usize]) -> Result<(), RamseyError> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    for &v in x.iter().chain(y) {
        if v >= n {
            return Err(RamseyError::Input(format!("vertex {v} outside the host")));
        }
        if seen[v] {
            return Err(RamseyError::Input(format!("vertex {v} repeated or shared by both sides")));
        }
        seen[v] = true;
    }
    Ok(())
}

fn guard(mode: DensityMode, x: &[usize], y: &[usize]) -> Result<(), RamseyError> {
    let size = x.len().max(y.len());
    if mode == DensityMode::Exhaustive && size > EXHAUSTIVE_LIMIT {
        return Err(RamseyError::SizeGuard { what: "exhaustive density check", size, limit: EXHAUSTIVE_LIMIT });
    }
    Ok(())
}

fn extreme(g: &Graph, x: &[usize], y: &[usize], frac: f64, ext: Extreme, mode: DensityMode) -> Option<PairWitness> {
    let (tx, ty) = (size_threshold(frac, x.len()), size_threshold(frac, y.len()));
    if x.is_empty() || y.is_empty() || tx > x.len() || ty > y.len() {
        return None;
    }
    let mut scan = Scanner::new(g, x, y);
    Some(match mode {
        DensityMode::Exhaustive => scan.exhaustive(tx, ty, ext),
        DensityMode::Sampled { samples, seed } => scan.sampled(tx, ty, ext, samples, seed),
    })
}

/// Is `(X, Y)` `(ε, α, p)`-dense: `d(X′, Y′) >= (α − ε)p` whenever `|X′| >= ε|X|`, `|Y′| >= ε|Y|`.
/// Pairs with an empty side are vacuously dense.
pub fn check_dense_pair(
    g: &Graph,
    x: &[usize],
    y: &[usize],
    epsilon: f64,
    alpha: f64,
    p: f64,
    mode: DensityMode,
) -> Result<DensityCertificate, RamseyError> {
    validate_pair(g, x, y)?;
    guard(mode, x, y)?;
    let low = extreme(g, x, y, epsilon, Extreme::Min, mode);
    let threshold = (alpha - epsilon) * p;
    let refuted = low.as_ref().is_some_and(|w| w.density < threshold);
    Ok(DensityCertificate {
        epsilon,
        alpha,
        p,
        mode,
        verdict: if refuted { Verdict::Refuted } else { Verdict::Pass },
        min_density: low.as_ref().map(|w| w.density),
        witness: if refuted { low } else { None },
    })
}

/// Two-sided band `(1 − λ)p <= d(U, W) <= (1 + λ)p` over `|U| >= λ|A|`, `|W| >= λ|B|`.
pub fn check_uniform(g: &Graph, a: &[usize], b: &[usize], lambda: f64, p: f64, mode: DensityMode) -> Result<UniformCertificate, RamseyError> {
    validate_pair(g, a, b)?;
    guard(mode, a, b)?;
    let low = extreme(g, a, b, lambda, Extreme::Min, mode);
    let high = extreme(g, a, b, lambda, Extreme::Max, mode);
    let (lo, hi) = ((1.0 - lambda) * p, (1.0 + lambda) * p);
    let witness = match (&low, &high) {
        (Some(w), _) if w.density < lo => Some(w.clone()),
        (_, Some(w)) if w.density > hi => Some(w.clone()),
        _ => None,
    };
    Ok(UniformCertificate {
        lambda,
        p,
        mode,
        verdict: if witness.is_some() { Verdict::Refuted } else { Verdict::Pass },
        min_density: low.map(|w| w.density),
        max_density: high.map(|w| w.density),
        witness,
    })
}

/// Re-checks a refutation witness: sizes qualify and the density really is out of range.
pub fn witness_refutes_density(g: &Graph, x: &[usize], y: &[usize], cert: &DensityCertificate) -> bool {
    let Some(w) = &cert.witness else { return false };
    let inside = |sub: &[usize], all: &[usize]| sub.iter().all(|v| all.contains(v));
    let distinct = |s: &[usize]| {
        let mut t = s.to_vec();
        t.sort_unstable();
        t.dedup();
        t.len() == s.len()
    };
    inside(&w.x, x)
        && inside(&w.y, y)
        && distinct(&w.x)
        && distinct(&w.y)
        && w.x.len() as f64 >= cert.epsilon * x.len() as f64
        && w.y.len() as f64 >= cert.epsilon * y.len() as f64
        && !w.x.is_empty()
        && !w.y.is_empty()
        && density(g, &w.x, &w.y) < (cert.alpha - cert.epsilon) * cert.p
}
