use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use twr_core::separator::TreewidthProfile;

use crate::HarnessError;

/// Where the guest graph `H` comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Family {
    /// `side × side` grid with its witness into `P_side ⊠ K_side`.
    Grid { side: usize },
    /// Subgraph of a random k-tree, degree-capped.
    RandomBoundedTw { n: usize, treewidth: usize },
    /// `P_n` in blocks of `s` consecutive vertices over a path.
    Path { n: usize, s: usize },
    /// `C_n` in blocks of `s` over a cycle (a path when there are fewer than three blocks).
    Cycle { n: usize, s: usize },
    FromFile { path: PathBuf },
}

impl FromStr for Family {
    type Err = String;

    /// `grid:A`, `random-bounded-tw:N:K`, `path:N:S`, `cycle:N:S`, `file:PATH`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let (name, rest) = text.split_once(':').ok_or_else(|| format!("family {text:?} must look like name:args"))?;
        if name == "file" {
            return Ok(Family::FromFile { path: rest.into() });
        }
        let args: Vec<usize> =
            rest.split(':').map(|a| a.parse().map_err(|_| format!("bad family argument {a:?}"))).collect::<Result<_, _>>()?;
        match (name, args.as_slice()) {
            ("grid", &[side]) => Ok(Family::Grid { side }),
            ("random-bounded-tw", &[n, treewidth]) => Ok(Family::RandomBoundedTw { n, treewidth }),
            ("path", &[n, s]) => Ok(Family::Path { n, s }),
            ("cycle", &[n, s]) => Ok(Family::Cycle { n, s }),
            _ => Err(format!("unknown family {text:?} (grid:A, random-bounded-tw:N:K, path:N:S, cycle:N:S, file:PATH)")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Grid { side } => write!(f, "grid:{side}"),
            Family::RandomBoundedTw { n, treewidth } => write!(f, "random-bounded-tw:{n}:{treewidth}"),
            Family::Path { n, s } => write!(f, "path:{n}:{s}"),
            Family::Cycle { n, s } => write!(f, "cycle:{n}:{s}"),
            Family::FromFile { path } => write!(f, "file:{}", path.display()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum HostMode {
    /// Clique parts, embedding over `T ⊠ K_{Δ+1}`.
    Dense,
    /// Independent parts over the class graph, class-by-class embedding.
    Sparse,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: Family,
    pub max_degree: usize,
    pub colors: usize,
    /// `const:C`, `sqrt:C`, `ceil-sqrt:O` or `log:C`.
    pub profile: String,
    pub mode: HostMode,
    pub p: f64,
    /// Part size; `c_prime · s` when absent.
    pub m: Option<usize>,
    pub c_prime: usize,
    /// `1/(2k)` when absent.
    pub rho: Option<f64>,
    /// Constant ladder value for (c′).
    pub eps: f64,
    /// `1/(4Δ²)` when absent.
    pub mu: Option<f64>,
    pub lambda: f64,
    pub structure_eps: f64,
    pub structure_alpha: f64,
    pub trials: usize,
    pub seed: u64,
    pub budget_secs: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            family: Family::Grid { side: 6 },
            max_degree: 4,
            colors: 2,
            profile: "ceil-sqrt:1".into(),
            mode: HostMode::Dense,
            p: 1.0,
            m: None,
            c_prime: 30,
            rho: None,
            eps: 0.5,
            mu: None,
            lambda: 1.0,
            structure_eps: 0.5,
            structure_alpha: 0.625,
            trials: 10,
            seed: 0,
            budget_secs: 30,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: String| Err(HarnessError::Usage(msg));
        let unit = |x: f64| x > 0.0 && x <= 1.0;
        if self.max_degree < 2 {
            return bad(format!("max_degree must be at least 2, got {}", self.max_degree));
        }
        if self.colors == 0 {
            return bad("colors must be at least 1".into());
        }
        if let Err(e) = self.profile.parse::<TreewidthProfile>() {
            return bad(e);
        }
        if !unit(self.p) {
            return bad(format!("p must lie in (0, 1], got {}", self.p));
        }
        if self.m == Some(0) || (self.m.is_none() && self.c_prime == 0) {
            return bad("part size must be positive".into());
        }
        for (name, v) in [("eps", Some(self.eps)), ("rho", self.rho), ("mu", self.mu), ("lambda", Some(self.lambda))] {
            if v.is_some_and(|v| !unit(v)) {
                return bad(format!("{name} must lie in (0, 1]"));
            }
        }
        if !(unit(self.structure_eps) && unit(self.structure_alpha)) {
            return bad("structure_eps and structure_alpha must lie in (0, 1]".into());
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.budget_secs == 0 {
            return bad("budget_secs must be at least 1".into());
        }
        match self.family {
            Family::Grid { side: 0 } | Family::RandomBoundedTw { n: 0, .. } => bad("family size must be positive".into()),
            Family::Path { n, s } | Family::Cycle { n, s } if n == 0 || s == 0 => bad("family sizes must be positive".into()),
            Family::Cycle { n, .. } if n < 3 => bad("cycles need at least 3 vertices".into()),
            _ => Ok(()),
        }
    }

    pub fn profile(&self) -> TreewidthProfile {
        self.profile.parse().expect("validated profile")
    }

    pub fn rho(&self) -> f64 {
        self.rho.unwrap_or(1.0 / (2.0 * self.colors as f64))
    }

    pub fn mu(&self) -> f64 {
        self.mu.unwrap_or(1.0 / (4.0 * (self.max_degree * self.max_degree) as f64))
    }

    pub fn part_size(&self, s: usize) -> usize {
        self.m.unwrap_or(self.c_prime * s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_strings_round_trip() {
        for text in ["grid:6", "random-bounded-tw:40:3", "path:64:4", "cycle:12:3", "file:h.txt"] {
            let f: Family = text.parse().unwrap();
            assert_eq!(f.to_string(), text);
        }
        assert!("grid".parse::<Family>().is_err());
        assert!("grid:1:2".parse::<Family>().is_err());
        assert!("torus:3".parse::<Family>().is_err());
    }

    #[test]
    fn default_is_valid_and_round_trips() {
        let c = ExperimentConfig::default();
        c.validate().unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&text).unwrap(), c);
    }

    #[test]
    fn rejects_out_of_range() {
        let bad = [
            ExperimentConfig { p: 0.0, ..Default::default() },
            ExperimentConfig { colors: 0, ..Default::default() },
            ExperimentConfig { profile: "cubic:1".into(), ..Default::default() },
            ExperimentConfig { m: Some(0), ..Default::default() },
            ExperimentConfig { lambda: 1.5, ..Default::default() },
            ExperimentConfig { family: Family::Cycle { n: 2, s: 1 }, ..Default::default() },
        ];
        for c in bad {
            assert!(matches!(c.validate(), Err(HarnessError::Usage(_))), "{c:?}");
        }
    }
}
