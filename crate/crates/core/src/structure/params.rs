use serde::{Deserialize, Serialize};

use crate::separator::profile::{ceil_log_three_halves, TreewidthProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProfileCase {
    /// General profile.
    I,
    /// Profile with a scaling exponent.
    II,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SParameters {
    pub n: usize,
    pub max_degree: usize,
    /// `⌈log₂Δ⌉ + 2`
    pub k: usize,
    pub s: usize,
    pub case: ProfileCase,
    /// `k + k/(1-(2/3)^α)·t(n) + k(⌈log_{3/2} n⌉ + 1)`, present in case (ii).
    pub case_ii_bound: Option<f64>,
}

/// `⌈log₂ x⌉` for `x >= 1`, in integers.
pub fn ceil_log2(x: usize) -> usize {
    assert!(x >= 1);
    (usize::BITS - (x - 1).leading_zeros()) as usize
}

pub fn compute_s(n: usize, max_degree: usize, profile: &TreewidthProfile) -> SParameters {
    assert!(n >= 1 && max_degree >= 2, "compute_s needs n >= 1 and Δ >= 2");
    let k = ceil_log2(max_degree) + 2;
    let kf = k as f64;
    let s = (kf + kf * profile.level_sum(n)).floor() as usize;
    let (case, case_ii_bound) = match profile.alpha() {
        Some(alpha) => {
            let levels = (ceil_log_three_halves(n) + 1) as f64;
            let bound = kf + kf / (1.0 - (2.0f64 / 3.0).powf(alpha)) * profile.eval(n as f64) + kf * levels;
            (ProfileCase::II, Some(bound))
        }
        None => (ProfileCase::I, None),
    };
    SParameters { n, max_degree, k, s, case, case_ii_bound }
}
