use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Upper bound `t(x)` on the treewidth of any `x`-vertex subgraph, with an
/// optional scaling exponent `alpha` such that `t(λx) <= λ^alpha t(x)`.
#[derive(Clone)]
pub struct TreewidthProfile {
    kind: ProfileKind,
    alpha: Option<f64>,
}

#[derive(Clone)]
pub enum ProfileKind {
    /// `t(x) = c`
    Constant(f64),
    /// `t(x) = c·√x`
    Sqrt(f64),
    /// `t(x) = ⌈√x⌉ + offset`
    CeilSqrt(f64),
    /// `t(x) = c·log2(x)`, clamped at zero
    Log(f64),
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl TreewidthProfile {
    pub fn constant(c: f64) -> Self {
        TreewidthProfile { kind: ProfileKind::Constant(c), alpha: None }
    }

    pub fn sqrt(c: f64) -> Self {
        TreewidthProfile { kind: ProfileKind::Sqrt(c), alpha: Some(0.5) }
    }

    pub fn ceil_sqrt(offset: f64) -> Self {
        TreewidthProfile { kind: ProfileKind::CeilSqrt(offset), alpha: None }
    }

    pub fn log(c: f64) -> Self {
        TreewidthProfile { kind: ProfileKind::Log(c), alpha: None }
    }

    /// Caller-supplied bound; it must be non-decreasing.
    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        TreewidthProfile { kind: ProfileKind::Custom(Arc::new(f)), alpha: None }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        assert!(alpha > 0.0 && alpha <= 1.0, "alpha must lie in (0, 1]");
        self.alpha = Some(alpha);
        self
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    pub fn kind(&self) -> &ProfileKind {
        &self.kind
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            ProfileKind::Constant(c) => *c,
            ProfileKind::Sqrt(c) => c * x.max(0.0).sqrt(),
            ProfileKind::CeilSqrt(off) => x.max(0.0).sqrt().ceil() + off,
            ProfileKind::Log(c) => (c * x.max(1.0).log2()).max(0.0),
            ProfileKind::Custom(f) => f(x),
        }
    }

    /// `Σ_{j=0}^{⌈log_{3/2} n⌉} (t((2/3)^j n) + 1)`, the per-position separator budget.
    pub fn level_sum(&self, n: usize) -> f64 {
        let mut x = n as f64;
        let mut total = 0.0;
        for _ in 0..=ceil_log_three_halves(n) {
            total += self.eval(x) + 1.0;
            x *= 2.0 / 3.0;
        }
        total
    }
}

/// Smallest `j >= 0` with `(3/2)^j >= n`.
pub fn ceil_log_three_halves(n: usize) -> usize {
    let mut j = 0;
    let mut p = 1.0f64;
    while p < n as f64 {
        p *= 1.5;
        j += 1;
    }
    j
}

impl fmt::Display for TreewidthProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ProfileKind::Constant(c) => write!(f, "const:{c}"),
            ProfileKind::Sqrt(c) => write!(f, "sqrt:{c}"),
            ProfileKind::CeilSqrt(o) => write!(f, "ceil-sqrt:{o}"),
            ProfileKind::Log(c) => write!(f, "log:{c}"),
            ProfileKind::Custom(_) => write!(f, "custom"),
        }
    }
}

impl fmt::Debug for TreewidthProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TreewidthProfile({self}, alpha={:?})", self.alpha)
    }
}

impl FromStr for TreewidthProfile {
    type Err = String;

    /// Accepts `const:C`, `sqrt:C`, `ceil-sqrt:OFFSET` and `log:C`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, value) = s.split_once(':').ok_or_else(|| format!("profile {s:?} must look like name:value"))?;
        let v: f64 = value.parse().map_err(|_| format!("bad profile parameter {value:?}"))?;
        if !(v.is_finite() && v >= 0.0) {
            return Err(format!("profile parameter must be finite and non-negative, got {v}"));
        }
        match name {
            "const" => Ok(Self::constant(v)),
            "sqrt" => Ok(Self::sqrt(v)),
            "ceil-sqrt" => Ok(Self::ceil_sqrt(v)),
            "log" => Ok(Self::log(v)),
            _ => Err(format!("unknown profile {name:?} (expected const, sqrt, ceil-sqrt or log)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_levels() {
        assert_eq!(ceil_log_three_halves(1), 0);
        assert_eq!(ceil_log_three_halves(2), 2);
        assert_eq!(ceil_log_three_halves(8), 6);
        assert_eq!(TreewidthProfile::constant(1.0).level_sum(1), 2.0);
        assert_eq!(TreewidthProfile::constant(1.0).level_sum(8), 14.0);
    }

    #[test]
    fn parses_presets() {
        let p: TreewidthProfile = "ceil-sqrt:1".parse().unwrap();
        assert_eq!(p.eval(144.0), 13.0);
        assert_eq!(p.to_string(), "ceil-sqrt:1");
        assert!("cubic:2".parse::<TreewidthProfile>().is_err());
        assert_eq!("sqrt:2".parse::<TreewidthProfile>().unwrap().alpha(), Some(0.5));
    }
}
