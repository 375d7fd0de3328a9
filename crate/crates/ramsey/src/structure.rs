//! Search for a monochromatic family of dense pairs shaped like a target graph `J`.
//!
//! A base pair is eligible in color `c` when its color-`c` density is at least `(α − ε)p`. An
//! injective homomorphism `J → base` over eligible pairs is found by backtracking; each `J`-vertex
//! then gets a random `λ`-fraction of its part, split into slices, and every required slice pair
//! must pass the sampled density check. Subsets are resampled on failure.

use std::collections::{HashMap, VecDeque};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use twr_core::Graph;

use crate::density::{check_dense_pair, DensityMode, PairWitness};
use crate::host::{ColoredHost, WithinParts};
use crate::RamseyError;

pub const BACKTRACK_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureParams {
    pub eps: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub slices: usize,
    pub retries: usize,
    pub samples: usize,
    pub seed: u64,
}

impl StructureParams {
    pub fn new(eps: f64, alpha: f64, lambda: f64, slices: usize, seed: u64) -> Self {
        StructureParams { eps, alpha, lambda, slices, retries: 20, samples: 4, seed }
    }
}

/// `(J-vertex, slice, J-vertex, slice)` whose subsets must form a dense pair.
pub type SlicePair = (usize, usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenseStructure {
    pub color: usize,
    /// `map[x]` is the base vertex hosting `J`-vertex `x`.
    pub map: Vec<usize>,
    /// `subsets[x][i]`: slice `i` of `U_x`, host vertices in increasing order.
    pub subsets: Vec<Vec<Vec<usize>>>,
    pub required: Vec<SlicePair>,
    pub pairs_checked: usize,
    pub attempts: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColorAttempt {
    pub color: usize,
    pub eligible_pairs: usize,
    pub homomorphism_found: bool,
    pub attempts: usize,
    pub last_failure: Option<(SlicePair, PairWitness)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum StructureOutcome {
    Found(DenseStructure),
    NotFound { attempts: Vec<ColorAttempt> },
}

/// Slice pairs required by `J`: all slice pairs across `J`-edges, and distinct slices within a
/// vertex when the host parts are cliques.
pub fn required_pairs(j: &Graph, slices: usize, within: WithinParts) -> Vec<SlicePair> {
    let mut out = Vec::new();
    if within == WithinParts::Complete {
        for x in 0..j.vertex_count() {
            for a in 0..slices {
                for b in a + 1..slices {
                    out.push((x, a, x, b));
                }
            }
        }
    }
    for &(x, y) in j.edges() {
        for a in 0..slices {
            for b in 0..slices {
                out.push((x, a, y, b));
            }
        }
    }
    out
}

/// Color counts per unordered base pair `(a, b)`, `a <= b`.
fn pair_color_counts(host: &ColoredHost) -> HashMap<(usize, usize), Vec<usize>> {
    let mut counts: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (&(u, v), &c) in host.graph.edges().iter().zip(&host.coloring.colors) {
        let (a, b) = (host.part_of[u], host.part_of[v]);
        counts.entry((a.min(b), a.max(b))).or_insert_with(|| vec![0; host.coloring.k])[c] += 1;
    }
    counts
}

struct Eligibility {
    counts: HashMap<(usize, usize), Vec<usize>>,
    m: usize,
    threshold: f64,
}

impl Eligibility {
    fn ok(&self, c: usize, a: usize, b: usize) -> bool {
        let total = if a == b { self.m * (self.m - 1) / 2 } else { self.m * self.m };
        let got = self.counts.get(&(a.min(b), a.max(b))).map_or(0, |v| v[c]);
        total > 0 && got as f64 >= self.threshold * total as f64
    }
}

fn bfs_order(j: &Graph) -> Vec<usize> {
    let n = j.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &y in j.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

struct Homomorphism<'a> {
    j: &'a Graph,
    base: &'a Graph,
    elig: &'a Eligibility,
    color: usize,
    self_pairs: bool,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
}

impl Homomorphism<'_> {
    fn search(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        self.nodes += 1;
        if self.nodes > BACKTRACK_LIMIT {
            return false;
        }
        let x = self.order[i];
        for a in 0..self.base.vertex_count() {
            if self.used[a] || (self.self_pairs && !self.elig.ok(self.color, a, a)) {
                continue;
            }
            let fits = self.j.neighbors(x).iter().all(|&y| {
                let b = self.map[y];
                b == usize::MAX || (self.base.has_edge(a, b) && self.elig.ok(self.color, a, b))
            });
            if fits {
                self.map[x] = a;
                self.used[a] = true;
                if self.search(i + 1) {
                    return true;
                }
                self.map[x] = usize::MAX;
                self.used[a] = false;
            }
        }
        false
    }
}

/// Random `λ`-fraction of `part` split into `slices` nearly equal slices.
fn sample_slices(part: std::ops::Range<usize>, lambda: f64, slices: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let m = part.len();
    let size = ((lambda * m as f64).floor() as usize).clamp(slices.min(m), m);
    let picked: Vec<usize> = sample(rng, m, size).into_iter().map(|i| part.start + i).collect();
    let mut out = Vec::with_capacity(slices);
    let mut start = 0;
    for i in 0..slices {
        let len = size / slices + usize::from(i < size % slices);
        let mut chunk = picked[start..start + len].to_vec();
        chunk.sort_unstable();
        out.push(chunk);
        start += len;
    }
    out
}

/// Colors are tried by decreasing total count, ties to the lower color.
pub fn find_monochromatic_dense_structure(
    host: &ColoredHost,
    target: &Graph,
    params: &StructureParams,
) -> Result<StructureOutcome, RamseyError> {
    if params.slices == 0 || !(params.lambda > 0.0 && params.lambda <= 1.0) {
        return Err(RamseyError::Input("need slices >= 1 and λ in (0, 1]".into()));
    }
    host.validate()?;
    let elig = Eligibility { counts: pair_color_counts(host), m: host.part_size, threshold: (params.alpha - params.eps) * host.p };
    let self_pairs = host.within == WithinParts::Complete && params.slices > 1;
    let required = required_pairs(target, params.slices, host.within);
    let mut colors: Vec<usize> = (0..host.coloring.k).collect();
    let totals = host.coloring.color_counts();
    colors.sort_by_key(|&c| (std::cmp::Reverse(totals[c]), c));
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut attempts = Vec::new();
    for color in colors {
        let eligible_pairs = host.base.edges().iter().filter(|&&(a, b)| elig.ok(color, a, b)).count();
        let mut hom = Homomorphism {
            j: target,
            base: &host.base,
            elig: &elig,
            color,
            self_pairs,
            order: bfs_order(target),
            map: vec![usize::MAX; target.vertex_count()],
            used: vec![false; host.base.vertex_count()],
            nodes: 0,
        };
        let mut attempt = ColorAttempt { color, eligible_pairs, homomorphism_found: false, attempts: 0, last_failure: None };
        if !hom.search(0) {
            attempts.push(attempt);
            continue;
        }
        attempt.homomorphism_found = true;
        let map = hom.map;
        let class_graph = host.color_class(color);
        for _ in 0..params.retries.max(1) {
            attempt.attempts += 1;
            let subsets: Vec<Vec<Vec<usize>>> =
                map.iter().map(|&a| sample_slices(host.part(a), params.lambda, params.slices, &mut rng)).collect();
            let mut failure = None;
            for (idx, &pair) in required.iter().enumerate() {
                let (x, a, y, b) = pair;
                let mode = DensityMode::sampled(params.samples, params.seed ^ (idx as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                let cert = check_dense_pair(&class_graph, &subsets[x][a], &subsets[y][b], params.eps, params.alpha, host.p, mode)?;
                if let Some(w) = cert.witness {
                    failure = Some((pair, w));
                    break;
                }
            }
            match failure {
                None => {
                    return Ok(StructureOutcome::Found(DenseStructure {
                        color,
                        map,
                        subsets,
                        pairs_checked: required.len(),
                        required,
                        attempts: attempt.attempts,
                    }));
                }
                Some(f) => attempt.last_failure = Some(f),
            }
        }
        attempts.push(attempt);
    }
    Ok(StructureOutcome::NotFound { attempts })
}
