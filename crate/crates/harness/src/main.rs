use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use twr_core::io::read_graph;
use twr_core::separator::{necklace_split, parse_necklace, verify_necklace, TreewidthProfile};
use twr_core::structure::{embed_into_product, ProductReport};
use twr_harness::config::{ExperimentConfig, Family, HostMode};
use twr_harness::document::{DecomposeDocument, Document, EmbeddingDocument, NecklaceDocument};
use twr_harness::experiment::{run_experiment, run_trial_with_setup};
use twr_harness::HarnessError;
use twr_ramsey::host::{build_blowup_host, color_host, ColoredHost, ColoringStrategy, WithinParts};

#[derive(Parser)]
#[command(name = "twr", version, about = "Product-structure decompositions and colored-host embeddings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a graph into T ⊠ K_s and print the certificate.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value = "const:1")]
        profile: String,
        #[command(flatten)]
        out: Out,
    },
    /// Split a colored necklace with at most k cuts.
    Necklace {
        /// Symbols per position; `-` or `.` leaves a position uncolored.
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        colors: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        budget_secs: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Build a one-colored blow-up host of a base graph.
    Host {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        #[arg(long, value_enum, default_value_t = Within::Empty)]
        within: Within,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Recolor a host's edges with k colors.
    Color {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Strategy::Random)]
        strategy: Strategy,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Run one trial on a graph file and write the graph, host and embedding.
    Embed {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        out: Out,
    },
    /// Run a seeded batch of trials and write the report.
    Experiment {
        /// JSON config; flags given on the command line override it.
        #[arg(long)]
        config: Option<PathBuf>,
        /// grid:A, random-bounded-tw:N:K, path:N:S, cycle:N:S or file:PATH.
        #[arg(long)]
        family: Option<Family>,
        #[arg(long)]
        trials: Option<usize>,
        #[command(flatten)]
        params: Params,
        /// Also write one CSV row per trial.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Check a JSON document written by another subcommand.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct Out {
    /// Defaults to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct Params {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<HostMode>,
    #[arg(long)]
    profile: Option<String>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    budget_secs: Option<u64>,
}

impl Params {
    fn apply(&self, c: &mut ExperimentConfig) {
        if let Some(v) = self.k {
            c.colors = v;
        }
        if let Some(v) = self.p {
            c.p = v;
        }
        if self.m.is_some() {
            c.m = self.m;
        }
        if let Some(v) = self.mode {
            c.mode = v;
        }
        if let Some(v) = &self.profile {
            c.profile = v.clone();
        }
        if let Some(v) = self.max_degree {
            c.max_degree = v;
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
        if let Some(v) = self.budget_secs {
            c.budget_secs = v;
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Within {
    Empty,
    Complete,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Random,
    AdversarialMajority,
}

impl Out {
    fn emit<T: Serialize>(&self, value: &T) -> Result<(), HarnessError> {
        let text = serde_json::to_string_pretty(value)? + "\n";
        match &self.output {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
        Ok(())
    }
}

/// Digits are colors; any other symbols are numbered by first appearance.
fn necklace_colors(text: &str) -> Result<Vec<Option<usize>>, HarnessError> {
    let symbols: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if symbols.iter().all(|c| c.is_ascii_digit() || matches!(c, '-' | '.')) {
        return parse_necklace(text).map_err(|e| HarnessError::Usage(e.to_string()));
    }
    let mut seen: Vec<char> = Vec::new();
    Ok(symbols
        .into_iter()
        .map(|c| {
            if matches!(c, '-' | '.') {
                return None;
            }
            Some(seen.iter().position(|&s| s == c).unwrap_or_else(|| {
                seen.push(c);
                seen.len() - 1
            }))
        })
        .collect())
}

fn read_host(path: &PathBuf) -> Result<ColoredHost, HarnessError> {
    let host: ColoredHost = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    host.validate().map_err(|e| HarnessError::Usage(e.to_string()))?;
    Ok(host)
}

fn run(cli: Cli) -> Result<ExitCode, HarnessError> {
    let verdict = |pass: bool| if pass { ExitCode::SUCCESS } else { ExitCode::from(1) };
    match cli.command {
        Command::Decompose { input, max_degree, profile, out } => {
            let g = read_graph(&input)?;
            let profile: TreewidthProfile = profile.parse().map_err(HarnessError::Usage)?;
            if g.max_degree() > max_degree {
                return Err(HarnessError::Usage(format!("graph has maximum degree {} above {max_degree}", g.max_degree())));
            }
            let ps = embed_into_product(&g, max_degree, &profile)?;
            let doc = DecomposeDocument { report: ProductReport::from(&ps), embedding: ps.embedding.clone() };
            out.emit(&doc)?;
            Ok(verdict(doc.report.certificate.pass))
        }
        Command::Necklace { colors, input, k, budget_secs, out } => {
            let text = match (colors, input) {
                (Some(c), _) => c,
                (None, Some(path)) => std::fs::read_to_string(path)?,
                (None, None) => return Err(HarnessError::Usage("give --colors or --input".into())),
            };
            let colors = necklace_colors(&text)?;
            if let Some(c) = colors.iter().flatten().find(|&&c| c >= k) {
                return Err(HarnessError::Usage(format!("color {c} needs k > {c}, got k = {k}")));
            }
            let split = necklace_split(&colors, k, Duration::from_secs(budget_secs))?;
            let certificate = verify_necklace(&colors, k, &split);
            let pass = certificate.pass;
            out.emit(&NecklaceDocument { colors, k, split, certificate })?;
            Ok(verdict(pass))
        }
        Command::Host { input, m, p, within, seed, out } => {
            let base = read_graph(&input)?;
            let within = match within {
                Within::Empty => WithinParts::Empty,
                Within::Complete => WithinParts::Complete,
            };
            let host = build_blowup_host(&base, m, p, within, seed).map_err(|e| HarnessError::Usage(e.to_string()))?;
            out.emit(&host)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Color { input, k, strategy, seed, out } => {
            let host = read_host(&input)?;
            let strategy = match strategy {
                Strategy::Random => ColoringStrategy::Random,
                Strategy::AdversarialMajority => ColoringStrategy::AdversarialMajority,
            };
            let colored = color_host(&host, k, &strategy, seed).map_err(|e| HarnessError::Usage(e.to_string()))?;
            out.emit(&colored)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Embed { input, params, out } => {
            read_graph(&input)?;
            let mut config = ExperimentConfig { family: Family::FromFile { path: input }, trials: 1, ..Default::default() };
            params.apply(&mut config);
            config.validate()?;
            let (report, setup) = run_trial_with_setup(&config, 0);
            match (report.success, report.embedding.clone(), setup) {
                (true, Some(embedding), Some(setup)) => {
                    out.emit(&EmbeddingDocument { h: setup.h, host: setup.host, embedding })?;
                    Ok(ExitCode::SUCCESS)
                }
                _ => {
                    out.emit(&report)?;
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Experiment { config, family, trials, params, csv, out } => {
            let mut c = match config {
                Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
                None => ExperimentConfig::default(),
            };
            if let Some(f) = family {
                c.family = f;
            }
            if let Some(t) = trials {
                c.trials = t;
            }
            params.apply(&mut c);
            let started = Instant::now();
            let report = run_experiment(&c)?;
            eprintln!(
                "{} trials, success rate {:.3}, {:.1} s",
                report.summary.trials,
                report.summary.success_rate,
                started.elapsed().as_secs_f64()
            );
            out.emit(&report)?;
            if let Some(path) = csv {
                std::fs::write(path, report.csv())?;
            }
            Ok(verdict(report.consistent()))
        }
        Command::Verify { input, out } => {
            let doc = Document::parse(&std::fs::read_to_string(input)?)?;
            let cert = doc.verify()?;
            out.emit(&cert)?;
            Ok(verdict(cert.pass))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
