//! End-to-end trials: instance, product witness, host, coloring, structure, embedding, verification.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use twr_core::report::CertificateReport;
use twr_core::structure::ProductStructure;
use twr_core::Graph;
use twr_ramsey::dense::{dense_embed, dense_slices, DenseOutcome};
use twr_ramsey::host::{build_blowup_host, color_host, dense_edge_scale, sparse_edge_scale, ColoredHost, ColoringStrategy, WithinParts};
use twr_ramsey::prepare::{prepare_h, HPreparation};
use twr_ramsey::sparse::{check_failure_witness, class_graph, sparse_embed, ClassGraph, SparseContext, SparseParams, StepLog};
use twr_ramsey::structure::{find_monochromatic_dense_structure, StructureOutcome, StructureParams};
use twr_ramsey::verify::{verify_embedding, EmbeddingMap};

use crate::config::{ExperimentConfig, HostMode};
use crate::instance::{generate_instance, product_witness, Witness};
use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    Instance,
    Product,
    Preparation,
    Host,
    Structure,
    Embed,
    Verify,
    Budget,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductSummary {
    pub pass: bool,
    pub k: usize,
    pub s: usize,
    pub s_prime: usize,
    pub tree_vertices: usize,
    pub tree_max_degree: usize,
    pub violations: Vec<String>,
}

impl From<&ProductStructure> for ProductSummary {
    fn from(ps: &ProductStructure) -> Self {
        let cert = ps.certify();
        ProductSummary {
            pass: cert.pass,
            k: ps.params.k,
            s: ps.params.s,
            s_prime: ps.embedding.clique_size,
            tree_vertices: ps.embedding.tree.vertex_count(),
            tree_max_degree: ps.embedding.tree.max_degree(),
            violations: cert.violations,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureSummary {
    pub color: usize,
    pub attempts: usize,
    pub pairs_checked: usize,
}

/// Invariant log of a sparse run, folded over its steps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub steps: usize,
    pub subset_ok: bool,
    pub bound_ok: bool,
    pub formula_ok: bool,
    /// Smallest `|C(z)| / bound` over all logged steps with an unembedded vertex.
    pub min_bound_ratio: Option<f64>,
}

impl InvariantSummary {
    pub fn from_log(log: &[StepLog]) -> Self {
        let min_bound_ratio = log.iter().map(|s| s.min_bound_ratio).filter(|r| r.is_finite()).reduce(f64::min);
        InvariantSummary {
            steps: log.len(),
            subset_ok: log.iter().all(|s| s.subset_ok),
            bound_ok: log.iter().all(|s| s.bound_ok),
            formula_ok: log.iter().all(|s| s.formula_ok),
            min_bound_ratio,
        }
    }

    pub fn holds(&self) -> bool {
        self.subset_ok && self.bound_ok && self.formula_ok
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial: usize,
    pub seed: u64,
    pub success: bool,
    pub failure_stage: Option<Stage>,
    pub detail: Option<String>,
    pub h_vertices: usize,
    pub h_edges: usize,
    /// `v(R)` and `s` of the witness `H ⊆ R ⊠ K_s`.
    pub tau: usize,
    pub s: usize,
    pub part_size: usize,
    pub host_vertices: usize,
    /// Recounted from the constructed host.
    pub host_edges: usize,
    pub dense_scale: f64,
    pub sparse_scale: f64,
    pub product: Option<ProductSummary>,
    pub preparation: Option<CertificateReport>,
    pub structure: Option<StructureSummary>,
    pub embedding: Option<EmbeddingMap>,
    pub verification: Option<CertificateReport>,
    pub invariants: Option<InvariantSummary>,
    pub failure_witness: Option<Value>,
    pub failure_witness_valid: Option<bool>,
}

impl TrialReport {
    fn new(trial: usize, seed: u64) -> Self {
        TrialReport {
            trial,
            seed,
            success: false,
            failure_stage: None,
            detail: None,
            h_vertices: 0,
            h_edges: 0,
            tau: 0,
            s: 0,
            part_size: 0,
            host_vertices: 0,
            host_edges: 0,
            dense_scale: 0.0,
            sparse_scale: 0.0,
            product: None,
            preparation: None,
            structure: None,
            embedding: None,
            verification: None,
            invariants: None,
            failure_witness: None,
            failure_witness_valid: None,
        }
    }

    fn fail(&mut self, stage: Stage, detail: impl Into<String>) {
        self.success = false;
        self.failure_stage = Some(stage);
        self.detail = Some(detail.into());
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    /// Wilson score interval at 95%.
    pub ci_low: f64,
    pub ci_high: f64,
    pub failure_stages: BTreeMap<Stage, usize>,
    pub successes_verified: bool,
    pub host_edges_mean: f64,
    /// Mean of `host_edges / (τ s²)`.
    pub dense_constant: f64,
    /// Mean of `host_edges / (τ s² (log s / s)^{1/Δ})`.
    pub sparse_constant: f64,
    pub invariant_runs: usize,
    pub invariant_steps: usize,
    pub invariants_hold: bool,
    pub min_bound_ratio: Option<f64>,
    pub failure_witnesses_checked: usize,
    pub failure_witnesses_valid: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub trials: Vec<TrialReport>,
    pub summary: ExperimentSummary,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One row per trial.
    pub fn csv(&self) -> String {
        let mut out = String::from("trial,seed,success,failure_stage,h_vertices,tau,s,part_size,host_edges,dense_scale,sparse_scale\n");
        for t in &self.trials {
            let stage = t.failure_stage.map(|s| serde_json::to_value(s).unwrap().as_str().unwrap().to_string()).unwrap_or_default();
            out += &format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                t.trial, t.seed, t.success, stage, t.h_vertices, t.tau, t.s, t.part_size, t.host_edges, t.dense_scale, t.sparse_scale
            );
        }
        out
    }

    /// True when every success verified and every checked failure witness held up.
    pub fn consistent(&self) -> bool {
        let s = &self.summary;
        s.successes_verified && s.invariants_hold && s.failure_witnesses_valid == s.failure_witnesses_checked
    }
}

/// Wilson score interval for `successes` out of `n` at `z = 1.96`.
pub fn wilson_interval(successes: usize, n: usize) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = 1.96f64;
    let (nf, phat) = (n as f64, successes as f64 / n as f64);
    let denom = 1.0 + z * z / nf;
    let center = (phat + z * z / (2.0 * nf)) / denom;
    let half = z * (phat * (1.0 - phat) / nf + z * z / (4.0 * nf * nf)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Seed of trial `t`: `seed ⊕ t`.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed ^ trial as u64
}

/// Independent stream per pipeline stage.
fn stage_seed(seed: u64, stage: u64) -> u64 {
    let mut z = seed.wrapping_add(stage.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct Clock {
    budget: Duration,
    last: Instant,
}

impl Clock {
    /// True when the stage that just ended ran over budget.
    fn over(&mut self) -> bool {
        let over = self.last.elapsed() > self.budget;
        self.last = Instant::now();
        over
    }
}

/// Everything a trial builds before the structure search.
pub struct Setup {
    pub h: Graph,
    pub product: ProductStructure,
    pub witness: Witness,
    pub prep: Option<HPreparation>,
    pub classes: Option<ClassGraph>,
    pub host: ColoredHost,
}

enum SetupError {
    Stage(Stage, String),
    Budget(Stage),
}

fn setup(config: &ExperimentConfig, seed: u64, clock: &mut Clock, report: &mut TrialReport) -> Result<Setup, SetupError> {
    let stage_err = |stage| move |e: HarnessError| SetupError::Stage(stage, e.to_string());
    let check = |clock: &mut Clock, stage| if clock.over() { Err(SetupError::Budget(stage)) } else { Ok(()) };
    let inst = generate_instance(&config.family, config.max_degree, stage_seed(seed, 0)).map_err(stage_err(Stage::Instance))?;
    report.h_vertices = inst.graph.vertex_count();
    report.h_edges = inst.graph.edge_count();
    check(clock, Stage::Instance)?;
    let (product, witness) = product_witness(&inst, config.max_degree, &config.profile()).map_err(stage_err(Stage::Product))?;
    let summary = ProductSummary::from(&product);
    let product_pass = summary.pass;
    report.product = Some(summary);
    if !product_pass {
        return Err(SetupError::Stage(Stage::Product, "product certificate failed".into()));
    }
    report.tau = witness.r.vertex_count();
    report.s = witness.s;
    report.part_size = config.part_size(witness.s);
    report.dense_scale = dense_edge_scale(report.tau, witness.s);
    report.sparse_scale = sparse_edge_scale(report.tau, witness.s, config.max_degree);
    check(clock, Stage::Product)?;
    let h = inst.graph;
    let (prep, classes, base, within) = match config.mode {
        HostMode::Dense => (None, None, witness.r.clone(), WithinParts::Complete),
        HostMode::Sparse => {
            let prep = prepare_h(&h, &witness.r, &witness.psi, witness.s, config.max_degree)
                .map_err(|e| SetupError::Stage(Stage::Preparation, e.to_string()))?;
            let cert = prep.verify(&h);
            let pass = cert.pass;
            report.preparation = Some(cert);
            if !pass {
                return Err(SetupError::Stage(Stage::Preparation, "preparation certificate failed".into()));
            }
            let classes = class_graph(&prep, &witness.r);
            let base = classes.graph.clone();
            check(clock, Stage::Preparation)?;
            (Some(prep), Some(classes), base, WithinParts::Empty)
        }
    };
    let host = build_blowup_host(&base, report.part_size, config.p, within, stage_seed(seed, 1))
        .and_then(|host| color_host(&host, config.colors, &ColoringStrategy::Random, stage_seed(seed, 2)))
        .map_err(|e| SetupError::Stage(Stage::Host, e.to_string()))?;
    report.host_vertices = host.graph.vertex_count();
    report.host_edges = host.graph.edge_count();
    check(clock, Stage::Host)?;
    Ok(Setup { h, product, witness, prep, classes, host })
}

/// Rebuilds the graph `H` and the colored host of one trial without searching.
pub fn rebuild_trial(config: &ExperimentConfig, trial: usize) -> Result<Setup, HarnessError> {
    config.validate()?;
    let seed = trial_seed(config.seed, trial);
    let mut clock = Clock { budget: Duration::MAX, last: Instant::now() };
    let mut scratch = TrialReport::new(trial, seed);
    setup(config, seed, &mut clock, &mut scratch).map_err(|e| match e {
        SetupError::Stage(stage, msg) => HarnessError::Usage(format!("trial {trial} fails at {stage:?}: {msg}")),
        SetupError::Budget(_) => unreachable!("unbounded clock"),
    })
}

/// Runs trial `trial`; failures are recorded in the report, never raised.
pub fn run_trial(config: &ExperimentConfig, trial: usize) -> TrialReport {
    run_trial_with_setup(config, trial).0
}

/// Like [`run_trial`], also returning the host-side setup when it was built.
pub fn run_trial_with_setup(config: &ExperimentConfig, trial: usize) -> (TrialReport, Option<Setup>) {
    let seed = trial_seed(config.seed, trial);
    let mut report = TrialReport::new(trial, seed);
    let mut clock = Clock { budget: Duration::from_secs(config.budget_secs), last: Instant::now() };
    let setup = match setup(config, seed, &mut clock, &mut report) {
        Ok(s) => s,
        Err(SetupError::Stage(stage, msg)) => {
            report.fail(stage, msg);
            return (report, None);
        }
        Err(SetupError::Budget(stage)) => {
            report.fail(Stage::Budget, format!("{stage:?} exceeded {} s", config.budget_secs));
            return (report, None);
        }
    };
    match config.mode {
        HostMode::Dense => dense_trial(config, seed, &setup, &mut clock, &mut report),
        HostMode::Sparse => sparse_trial(config, seed, &setup, &mut clock, &mut report),
    }
    (report, Some(setup))
}

fn structure_stage(
    config: &ExperimentConfig,
    seed: u64,
    setup: &Setup,
    target: &Graph,
    slices: usize,
    clock: &mut Clock,
    report: &mut TrialReport,
) -> Option<twr_ramsey::structure::DenseStructure> {
    let params = StructureParams::new(config.structure_eps, config.structure_alpha, config.lambda, slices, stage_seed(seed, 3));
    let outcome = match find_monochromatic_dense_structure(&setup.host, target, &params) {
        Ok(o) => o,
        Err(e) => {
            report.fail(Stage::Structure, e.to_string());
            return None;
        }
    };
    if clock.over() {
        report.fail(Stage::Budget, format!("Structure exceeded {} s", config.budget_secs));
        return None;
    }
    match outcome {
        StructureOutcome::Found(s) => {
            report.structure = Some(StructureSummary { color: s.color, attempts: s.attempts, pairs_checked: s.pairs_checked });
            Some(s)
        }
        StructureOutcome::NotFound { attempts } => {
            report.fail(Stage::Structure, "no monochromatic dense structure");
            report.failure_witness = serde_json::to_value(attempts).ok();
            None
        }
    }
}

fn finish_success(setup: &Setup, embedding: EmbeddingMap, report: &mut TrialReport) {
    let cert = verify_embedding(&setup.h, &setup.host, &embedding);
    report.success = cert.pass;
    if !cert.pass {
        report.fail(Stage::Verify, cert.violations.join("; "));
    }
    report.verification = Some(cert);
    report.embedding = Some(embedding);
}

fn dense_trial(config: &ExperimentConfig, seed: u64, setup: &Setup, clock: &mut Clock, report: &mut TrialReport) {
    let slices = config.max_degree + 1;
    let Some(structure) = structure_stage(config, seed, setup, &setup.witness.r, slices, clock, report) else { return };
    let node_of = setup.witness.node_of();
    let slice_of = dense_slices(&setup.h, &node_of);
    let outcome = dense_embed(&setup.h, &node_of, &slice_of, &setup.host, &structure, config.colors);
    if clock.over() {
        return report.fail(Stage::Budget, format!("Embed exceeded {} s", config.budget_secs));
    }
    match outcome {
        Err(e) => report.fail(Stage::Embed, e.to_string()),
        Ok(DenseOutcome::Embedded { embedding, .. }) => finish_success(setup, embedding, report),
        Ok(DenseOutcome::Failed(f)) => {
            report.fail(Stage::Embed, format!("no admissible candidate for vertex {} at step {}", f.vertex, f.step));
            report.failure_witness = serde_json::to_value(f).ok();
        }
    }
}

/// The (c′) parameters a sparse trial runs with.
pub fn sparse_params(config: &ExperimentConfig, seed: u64) -> SparseParams {
    SparseParams {
        rho: config.rho(),
        p: config.p,
        eps_ladder: vec![config.eps; 2 * config.max_degree + 1],
        mu: config.mu(),
        samples: 1,
        seed: stage_seed(seed, 4),
    }
}

fn sparse_trial(config: &ExperimentConfig, seed: u64, setup: &Setup, clock: &mut Clock, report: &mut TrialReport) {
    let (Some(prep), Some(classes)) = (&setup.prep, &setup.classes) else {
        return report.fail(Stage::Preparation, "missing preparation");
    };
    let Some(structure) = structure_stage(config, seed, setup, &classes.graph, 1, clock, report) else { return };
    let ctx = SparseContext::new(&setup.h, prep, classes, &setup.host, &structure);
    let params = sparse_params(config, seed);
    let run = match sparse_embed(&ctx, &params) {
        Ok(r) => r,
        Err(e) => return report.fail(Stage::Embed, e.to_string()),
    };
    if clock.over() {
        return report.fail(Stage::Budget, format!("Embed exceeded {} s", config.budget_secs));
    }
    report.invariants = Some(InvariantSummary::from_log(&run.log));
    match (run.embedding, run.failure) {
        (Some(embedding), _) => finish_success(setup, embedding, report),
        (None, Some(failure)) => {
            report.fail(Stage::Embed, "candidate filtering or Hall step failed");
            report.failure_witness_valid = Some(check_failure_witness(&ctx, &params, &failure));
            report.failure_witness = serde_json::to_value(failure).ok();
        }
        (None, None) => report.fail(Stage::Embed, "run ended without embedding or failure"),
    }
}

pub fn summarize(trials: &[TrialReport]) -> ExperimentSummary {
    let n = trials.len();
    let successes = trials.iter().filter(|t| t.success).count();
    let (ci_low, ci_high) = wilson_interval(successes, n);
    let mut failure_stages = BTreeMap::new();
    for stage in trials.iter().filter_map(|t| t.failure_stage) {
        *failure_stages.entry(stage).or_insert(0) += 1;
    }
    let mean = |f: &dyn Fn(&TrialReport) -> Option<f64>| {
        let xs: Vec<f64> = trials.iter().filter_map(f).collect();
        if xs.is_empty() {
            0.0
        } else {
            xs.iter().sum::<f64>() / xs.len() as f64
        }
    };
    let built = |t: &TrialReport| t.host_edges > 0;
    let invariants: Vec<&InvariantSummary> = trials.iter().filter_map(|t| t.invariants.as_ref()).collect();
    let checked: Vec<bool> = trials.iter().filter_map(|t| t.failure_witness_valid).collect();
    ExperimentSummary {
        trials: n,
        successes,
        success_rate: if n == 0 { 0.0 } else { successes as f64 / n as f64 },
        ci_low,
        ci_high,
        failure_stages,
        successes_verified: trials
            .iter()
            .filter(|t| t.success)
            .all(|t| t.embedding.is_some() && t.verification.as_ref().is_some_and(|v| v.pass)),
        host_edges_mean: mean(&|t| built(t).then_some(t.host_edges as f64)),
        dense_constant: mean(&|t| (built(t) && t.dense_scale > 0.0).then(|| t.host_edges as f64 / t.dense_scale)),
        sparse_constant: mean(&|t| (built(t) && t.sparse_scale > 0.0).then(|| t.host_edges as f64 / t.sparse_scale)),
        invariant_runs: invariants.len(),
        invariant_steps: invariants.iter().map(|i| i.steps).sum(),
        invariants_hold: invariants.iter().all(|i| i.holds()),
        min_bound_ratio: invariants.iter().filter_map(|i| i.min_bound_ratio).reduce(f64::min),
        failure_witnesses_checked: checked.len(),
        failure_witnesses_valid: checked.iter().filter(|&&v| v).count(),
    }
}

/// Runs all trials in parallel; the report lists them in trial order.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport, HarnessError> {
    config.validate()?;
    if let crate::config::Family::FromFile { path } = &config.family {
        twr_core::io::read_graph(path)?;
    }
    let trials: Vec<TrialReport> = (0..config.trials).into_par_iter().map(|t| run_trial(config, t)).collect();
    let summary = summarize(&trials);
    Ok(ExperimentReport { config: config.clone(), trials, summary })
}
