//! Class-by-class embedding into a monochromatic structure `F` over the class graph.
//!
//! State after `ℓ` classes: `φ_ℓ` and `C_ℓ(z) = ∩{N_F(φ(x)) : x ∈ N_H(z), g(x) < ℓ} ∩ F_{g(z)}`.
//! Each step filters `C_ℓ(y)` by (b′) and (c′), finds distinct representatives, and shrinks the
//! candidate sets of right-neighbours.

use serde::{Deserialize, Serialize};
use twr_core::Graph;

use crate::density::{check_dense_pair, density, size_threshold, DensityMode, PairWitness};
use crate::hall::{hall_matching, HallOutcome};
use crate::host::ColoredHost;
use crate::prepare::HPreparation;
use crate::structure::DenseStructure;
use crate::verify::EmbeddingMap;
use crate::RamseyError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseParams {
    pub rho: f64,
    pub p: f64,
    /// `ε_0 <= … <= ε_{2Δ}`; indices past the end use the last entry.
    pub eps_ladder: Vec<f64>,
    pub mu: f64,
    pub samples: usize,
    pub seed: u64,
}

impl SparseParams {
    /// `ρ = 1/(2k)`, constant `ε = 1/8`, `μ = 1/(4Δ²)`.
    pub fn defaults(colors: usize, max_degree: usize, p: f64, seed: u64) -> Self {
        SparseParams {
            rho: 1.0 / (2.0 * colors as f64),
            p,
            eps_ladder: vec![0.125; 2 * max_degree + 1],
            mu: 1.0 / (4.0 * (max_degree * max_degree) as f64),
            samples: 1,
            seed,
        }
    }

    pub fn eps(&self, j: usize) -> f64 {
        self.eps_ladder[j.min(self.eps_ladder.len() - 1)]
    }

    /// `(ρp/2)^{ldeg} m`
    pub fn bound(&self, ldeg: usize, m: usize) -> f64 {
        (self.rho * self.p / 2.0).powi(ldeg as i32) * m as f64
    }
}

/// Nonempty classes of a preparation as a graph: adjacent when their `R`-vertices are equal or
/// adjacent (the nonempty part of `R ⊠ K_Δ̃`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassGraph {
    pub graph: Graph,
    /// `classes[v]` is the class index of class-graph vertex `v`.
    pub classes: Vec<usize>,
    /// Class index to class-graph vertex.
    pub index: Vec<Option<usize>>,
}

pub fn class_graph(prep: &HPreparation, r: &Graph) -> ClassGraph {
    let classes: Vec<usize> = (0..prep.class_count()).filter(|&j| !prep.classes[j].is_empty()).collect();
    let mut index = vec![None; prep.class_count()];
    for (v, &j) in classes.iter().enumerate() {
        index[j] = Some(v);
    }
    let mut edges = Vec::new();
    for a in 0..classes.len() {
        for b in a + 1..classes.len() {
            let (x, y) = (prep.r_vertex_of_class(classes[a]), prep.r_vertex_of_class(classes[b]));
            if x == y || r.has_edge(x, y) {
                edges.push((a, b));
            }
        }
    }
    ClassGraph { graph: Graph::from_edges_lossy(classes.len(), edges), classes, index }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepLog {
    pub step: usize,
    pub class_size: usize,
    pub min_filtered: usize,
    pub rejected_degree: usize,
    pub rejected_density: usize,
    /// `C_{ℓ+1}(z) ⊆ C_ℓ(z)` for every unembedded `z`.
    pub subset_ok: bool,
    /// `|C_{ℓ+1}(z)| >= (ρp/2)^{ldeg} m` for every unembedded `z`.
    pub bound_ok: bool,
    /// Maintained sets equal the intersection formula recomputed from `φ_{ℓ+1}`.
    pub formula_ok: bool,
    /// Smallest `|C_{ℓ+1}(z)| / bound` over unembedded `z`.
    pub min_bound_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum RejectReason {
    /// (b′): `|N_F(v) ∩ C_ℓ(z)| < required`.
    Degree { z: usize, degree: usize, required: f64 },
    /// (c′): the neighbourhood pair of edge `{z, z2}` is refuted.
    Density { z: usize, z2: usize, epsilon: f64, witness: PairWitness },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rejection {
    pub candidate: usize,
    #[serde(flatten)]
    pub reason: RejectReason,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "failure", rename_all = "kebab-case")]
pub enum SparseFailure {
    /// Every vertex of `C_ℓ(vertex)` was rejected.
    EmptyCandidates { step: usize, vertex: usize, partial: Vec<Option<usize>>, rejections: Vec<Rejection> },
    /// `family` (H-vertices of the class) has filtered sets whose union is too small.
    HallDeficiency {
        step: usize,
        partial: Vec<Option<usize>>,
        family: Vec<usize>,
        candidate_sets: Vec<Vec<usize>>,
        union: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseRun {
    pub embedding: Option<EmbeddingMap>,
    pub failure: Option<SparseFailure>,
    pub log: Vec<StepLog>,
}

impl SparseRun {
    pub fn invariants_hold(&self) -> bool {
        self.log.iter().all(|s| s.subset_ok && s.bound_ok && s.formula_ok)
    }
}

/// The pieces `sparse_embed` reads: `F` is the structure color of `host`, `F_j` the subset of the
/// class-graph vertex of class `j`.
pub struct SparseContext<'a> {
    pub h: &'a Graph,
    pub prep: &'a HPreparation,
    pub classes: &'a ClassGraph,
    pub structure: &'a DenseStructure,
    pub f: Graph,
}

impl<'a> SparseContext<'a> {
    pub fn new(h: &'a Graph, prep: &'a HPreparation, classes: &'a ClassGraph, host: &ColoredHost, structure: &'a DenseStructure) -> Self {
        SparseContext { h, prep, classes, structure, f: host.color_class(structure.color) }
    }

    pub fn part(&self, class: usize) -> &[usize] {
        let v = self.classes.index[class].expect("nonempty class");
        &self.structure.subsets[v][0]
    }

    /// `C_ℓ(z)` from scratch given the partial map.
    pub fn formula(&self, z: usize, ell: usize, phi: &[Option<usize>]) -> Vec<usize> {
        let anchors: Vec<usize> = self
            .h
            .neighbors(z)
            .iter()
            .filter(|&&x| self.prep.class_of[x] < ell)
            .map(|&x| phi[x].expect("earlier classes are embedded"))
            .collect();
        self.part(self.prep.class_of[z]).iter().copied().filter(|&v| anchors.iter().all(|&a| self.f.has_edge(a, v))).collect()
    }

    fn common(&self, v: usize, set: &[usize]) -> Vec<usize> {
        set.iter().copied().filter(|&x| self.f.has_edge(v, x)).collect()
    }
}

fn mix(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Right-neighbour edges `{z, z2}` touched by embedding `y` at step `ell`: `z ∈ N^+(y)` and
/// `g(z2) > ell`, each edge once.
fn touched_edges(ctx: &SparseContext, y: usize, ell: usize) -> Vec<(usize, usize)> {
    let g = &ctx.prep.class_of;
    let right: Vec<usize> = ctx.h.neighbors(y).iter().copied().filter(|&z| g[z] > ell).collect();
    let mut out = Vec::new();
    for &z in &right {
        for &z2 in ctx.h.neighbors(z) {
            if g[z2] > ell && !(right.contains(&z2) && z2 < z) {
                out.push((z, z2));
            }
        }
    }
    out
}

/// Why `v` cannot host `y`, or `None` when it passes (b′) and (c′).
fn reject(
    ctx: &SparseContext,
    params: &SparseParams,
    y: usize,
    v: usize,
    ell: usize,
    cand: &[Vec<usize>],
) -> Result<Option<RejectReason>, RamseyError> {
    let g = &ctx.prep.class_of;
    for &z in ctx.h.neighbors(y) {
        if g[z] <= ell {
            continue;
        }
        let degree = cand[z].iter().filter(|&&x| ctx.f.has_edge(v, x)).count();
        let required = params.bound(ctx.prep.ldeg(ctx.h, z, ell + 1), ctx.part(g[z]).len());
        if (degree as f64) < required {
            return Ok(Some(RejectReason::Degree { z, degree, required }));
        }
    }
    let hat = |z: usize| if ctx.h.has_edge(y, z) { ctx.common(v, &cand[z]) } else { cand[z].clone() };
    for (z, z2) in touched_edges(ctx, y, ell) {
        let j = ctx.prep.ldeg(ctx.h, z, ell + 1) + ctx.prep.ldeg(ctx.h, z2, ell + 1);
        let epsilon = params.eps(j);
        let mode = DensityMode::sampled(params.samples, mix(mix(params.seed, ell as u64), mix(v as u64, (z * 7919 + z2) as u64)));
        let cert = check_dense_pair(&ctx.f, &hat(z), &hat(z2), epsilon, params.rho, params.p, mode)?;
        if let Some(witness) = cert.witness {
            return Ok(Some(RejectReason::Density { z, z2, epsilon, witness }));
        }
    }
    Ok(None)
}

pub fn sparse_embed(ctx: &SparseContext, params: &SparseParams) -> Result<SparseRun, RamseyError> {
    let h = ctx.h;
    let n = h.vertex_count();
    if ctx.prep.class_of.len() != n {
        return Err(RamseyError::Input("preparation does not match H".into()));
    }
    for (j, class) in ctx.prep.classes.iter().enumerate() {
        if !class.is_empty() && ctx.classes.index.get(j).copied().flatten().is_none_or(|v| v >= ctx.structure.subsets.len()) {
            return Err(RamseyError::Input(format!("class {j} has no part in the structure")));
        }
    }
    let g = &ctx.prep.class_of;
    let mut cand: Vec<Vec<usize>> = (0..n).map(|z| ctx.part(g[z]).to_vec()).collect();
    let mut phi: Vec<Option<usize>> = vec![None; n];
    let mut log = Vec::new();
    for ell in 0..ctx.prep.class_count() {
        let class = &ctx.prep.classes[ell];
        if class.is_empty() {
            continue;
        }
        let mut filtered = Vec::with_capacity(class.len());
        let (mut rejected_degree, mut rejected_density) = (0, 0);
        for &y in class {
            let mut keep = Vec::new();
            let mut rejections = Vec::new();
            for &v in &cand[y] {
                match reject(ctx, params, y, v, ell, &cand)? {
                    None => keep.push(v),
                    Some(reason) => {
                        match reason {
                            RejectReason::Degree { .. } => rejected_degree += 1,
                            RejectReason::Density { .. } => rejected_density += 1,
                        }
                        rejections.push(Rejection { candidate: v, reason });
                    }
                }
            }
            if keep.is_empty() {
                return Ok(SparseRun {
                    embedding: None,
                    failure: Some(SparseFailure::EmptyCandidates { step: ell, vertex: y, partial: phi, rejections }),
                    log,
                });
            }
            filtered.push(keep);
        }
        let reps = match hall_matching(&filtered) {
            HallOutcome::Sdr { representatives } => representatives,
            HallOutcome::Deficient { family, union } => {
                return Ok(SparseRun {
                    embedding: None,
                    failure: Some(SparseFailure::HallDeficiency {
                        step: ell,
                        partial: phi,
                        candidate_sets: family.iter().map(|&i| filtered[i].clone()).collect(),
                        family: family.iter().map(|&i| class[i]).collect(),
                        union,
                    }),
                    log,
                });
            }
        };
        let before = cand.clone();
        for (&y, &v) in class.iter().zip(&reps) {
            phi[y] = Some(v);
            for &z in h.neighbors(y) {
                if g[z] > ell {
                    cand[z].retain(|&x| ctx.f.has_edge(v, x));
                }
            }
        }
        let mut entry = StepLog {
            step: ell,
            class_size: class.len(),
            min_filtered: filtered.iter().map(Vec::len).min().unwrap_or(0),
            rejected_degree,
            rejected_density,
            subset_ok: true,
            bound_ok: true,
            formula_ok: true,
            min_bound_ratio: f64::INFINITY,
        };
        for z in (0..n).filter(|&z| g[z] > ell) {
            entry.subset_ok &= cand[z].iter().all(|x| before[z].binary_search(x).is_ok());
            let bound = params.bound(ctx.prep.ldeg(h, z, ell + 1), ctx.part(g[z]).len());
            entry.bound_ok &= cand[z].len() as f64 >= bound;
            entry.min_bound_ratio = entry.min_bound_ratio.min(cand[z].len() as f64 / bound);
            entry.formula_ok &= cand[z] == ctx.formula(z, ell + 1, &phi);
        }
        log.push(entry);
    }
    let map = phi.into_iter().map(|v| v.expect("all classes processed")).collect();
    Ok(SparseRun { embedding: Some(EmbeddingMap { color: ctx.structure.color, map }), failure: None, log })
}

/// Re-derives a failure from its partial map and checks every claim in it.
pub fn check_failure_witness(ctx: &SparseContext, params: &SparseParams, failure: &SparseFailure) -> bool {
    let g = &ctx.prep.class_of;
    let partial_ok = |step: usize, partial: &[Option<usize>]| {
        partial.len() == ctx.h.vertex_count() && (0..partial.len()).all(|u| (g[u] < step) == partial[u].is_some())
    };
    match failure {
        SparseFailure::EmptyCandidates { step, vertex, partial, rejections } => {
            let (ell, y) = (*step, *vertex);
            if !partial_ok(ell, partial) || g[y] != ell {
                return false;
            }
            let cy = ctx.formula(y, ell, partial);
            let listed: Vec<usize> = rejections.iter().map(|r| r.candidate).collect();
            if listed != cy {
                return false;
            }
            rejections.iter().all(|r| {
                let v = r.candidate;
                match &r.reason {
                    RejectReason::Degree { z, degree, required } => {
                        let cz = ctx.formula(*z, ell, partial);
                        let real = cz.iter().filter(|&&x| ctx.f.has_edge(v, x)).count();
                        let bound = params.bound(ctx.prep.ldeg(ctx.h, *z, ell + 1), ctx.part(g[*z]).len());
                        ctx.h.has_edge(y, *z) && g[*z] > ell && real == *degree && (real as f64) < bound && *required == bound
                    }
                    RejectReason::Density { z, z2, epsilon, witness } => {
                        if !touched_edges(ctx, y, ell).contains(&(*z, *z2)) {
                            return false;
                        }
                        let hat = |w: usize| {
                            let c = ctx.formula(w, ell, partial);
                            if ctx.h.has_edge(y, w) { ctx.common(v, &c) } else { c }
                        };
                        let (a, b) = (hat(*z), hat(*z2));
                        let inside = |s: &[usize], t: &[usize]| s.iter().all(|x| t.contains(x));
                        inside(&witness.x, &a)
                            && inside(&witness.y, &b)
                            && witness.x.len() >= size_threshold(*epsilon, a.len())
                            && witness.y.len() >= size_threshold(*epsilon, b.len())
                            && !witness.x.is_empty()
                            && !witness.y.is_empty()
                            && density(&ctx.f, &witness.x, &witness.y) < (params.rho - epsilon) * params.p
                    }
                }
            })
        }
        SparseFailure::HallDeficiency { step, partial, family, candidate_sets, union } => {
            if !partial_ok(*step, partial) || family.len() != candidate_sets.len() {
                return false;
            }
            let mut all: Vec<usize> = candidate_sets.iter().flatten().copied().collect();
            all.sort_unstable();
            all.dedup();
            let subsets = family.iter().zip(candidate_sets).all(|(&y, c)| {
                let cy = ctx.formula(y, *step, partial);
                g[y] == *step && c.iter().all(|x| cy.contains(x))
            });
            subsets && all == *union && union.len() < family.len()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::host::{build_blowup_host, WithinParts};
    use crate::prepare::prepare_h;
    use crate::structure::{find_monochromatic_dense_structure, StructureOutcome, StructureParams};
    use crate::verify::verify_embedding;
    use twr_core::generators::path;

    struct Fixture {
        h: Graph,
        prep: HPreparation,
        classes: ClassGraph,
        host: ColoredHost,
        structure: DenseStructure,
    }

    #[allow(clippy::too_many_arguments)]
    fn fixture(h: Graph, r: &Graph, psi: Vec<(usize, usize)>, s: usize, m: usize, p: f64, seed: u64, eps: f64, alpha: f64) -> Fixture {
        let prep = prepare_h(&h, r, &psi, s, h.max_degree().max(2)).unwrap();
        let classes = class_graph(&prep, r);
        let host = build_blowup_host(&classes.graph, m, p, WithinParts::Empty, seed).unwrap();
        let params = StructureParams::new(eps, alpha, 1.0, 1, seed);
        let StructureOutcome::Found(structure) = find_monochromatic_dense_structure(&host, &classes.graph, &params).unwrap() else {
            panic!("no structure");
        };
        Fixture { h, prep, classes, host, structure }
    }

    fn path8() -> Fixture {
        // P_8 over R = P_2 with s = 4: 0..4 on vertex 0, 4..8 on vertex 1.
        let psi = (0..8).map(|v| (v / 4, v % 4)).collect();
        fixture(path(8), &path(2), psi, 4, 12, 1.0, 0, 0.125, 0.25)
    }

    #[test]
    fn base_case_bound_is_tight() {
        let f = path8();
        let params = SparseParams { rho: 0.5, ..SparseParams::defaults(1, 2, 1.0, 0) };
        let ctx = SparseContext::new(&f.h, &f.prep, &f.classes, &f.host, &f.structure);
        for z in 0..8 {
            let c0 = ctx.formula(z, 0, &[None; 8]);
            assert_eq!(c0.len() as f64, params.bound(0, c0.len()));
            assert_eq!(c0, ctx.part(f.prep.class_of[z]));
        }
    }

    #[test]
    fn path_on_complete_structure_succeeds() {
        let f = path8();
        let params = SparseParams { rho: 0.5, ..SparseParams::defaults(1, 2, 1.0, 0) };
        let ctx = SparseContext::new(&f.h, &f.prep, &f.classes, &f.host, &f.structure);
        let run = sparse_embed(&ctx, &params).unwrap();
        assert!(run.invariants_hold());
        assert!(!run.log.is_empty());
        let emb = run.embedding.expect("success");
        assert!(verify_embedding(&f.h, &f.host, &emb).pass);
    }

    #[test]
    fn deleted_pair_fails_with_witness() {
        let f = path8();
        // Drop every F-edge between the parts of the first two classes joined by an H-edge.
        let (a, b) = f.h.edges().iter().map(|&(u, v)| (f.prep.class_of[u], f.prep.class_of[v])).next().unwrap();
        let (pa, pb) = (f.classes.index[a].unwrap(), f.classes.index[b].unwrap());
        let host = &f.host;
        let keep = |&(u, v): &(usize, usize)| {
            let (x, y) = (host.part_of[u], host.part_of[v]);
            !((x == pa && y == pb) || (x == pb && y == pa))
        };
        let graph = Graph::new(host.graph.vertex_count(), host.graph.edges().iter().copied().filter(keep)).unwrap();
        let coloring = twr_core::coloring::EdgeColoring::uniform(&graph, 1);
        let cut = ColoredHost { graph, coloring, ..host.clone() };
        let params = SparseParams { rho: 0.5, ..SparseParams::defaults(1, 2, 1.0, 0) };
        let ctx = SparseContext::new(&f.h, &f.prep, &f.classes, &cut, &f.structure);
        let run = sparse_embed(&ctx, &params).unwrap();
        assert!(run.embedding.is_none());
        assert!(run.invariants_hold());
        let failure = run.failure.expect("failure");
        assert!(check_failure_witness(&ctx, &params, &failure));
        if let SparseFailure::EmptyCandidates { rejections, .. } = &failure {
            assert!(rejections.iter().all(|r| matches!(r.reason, RejectReason::Degree { degree: 0, .. })));
        }
    }

    #[test]
    fn tampered_witness_rejected() {
        let f = path8();
        let params = SparseParams { rho: 0.5, ..SparseParams::defaults(1, 2, 1.0, 0) };
        let ctx = SparseContext::new(&f.h, &f.prep, &f.classes, &f.host, &f.structure);
        let y = f.prep.classes.iter().find(|c| !c.is_empty()).unwrap()[0];
        let fake = SparseFailure::EmptyCandidates { step: f.prep.class_of[y], vertex: y, partial: vec![None; 8], rejections: vec![] };
        assert!(!check_failure_witness(&ctx, &params, &fake));
    }

    #[test]
    fn sparse_random_host() {
        let psi = (0..8).map(|v| (v / 4, v % 4)).collect();
        let f = fixture(path(8), &path(2), psi, 4, 40, 0.7, 5, 0.5, 0.625);
        let params = SparseParams { rho: 0.625, eps_ladder: vec![0.5; 5], ..SparseParams::defaults(1, 2, 0.7, 5) };
        let ctx = SparseContext::new(&f.h, &f.prep, &f.classes, &f.host, &f.structure);
        let run = sparse_embed(&ctx, &params).unwrap();
        assert!(run.invariants_hold());
        match (&run.embedding, &run.failure) {
            (Some(e), None) => assert!(verify_embedding(&f.h, &f.host, e).pass),
            (None, Some(fail)) => assert!(check_failure_witness(&ctx, &params, fail)),
            _ => panic!("inconsistent run"),
        }
    }
}
