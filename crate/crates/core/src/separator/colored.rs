use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::balanced::SeparatorTriple;
use super::decomposition::TreeDecomposition;
use super::necklace::{necklace_split, NecklaceSplit};
use super::ordering::separator_ordering_with_base;
use super::profile::TreewidthProfile;
use super::SeparatorError;
use crate::graph::Graph;
use crate::report::CertificateReport;

/// Default time limit for the necklace search.
pub const DEFAULT_NECKLACE_BUDGET: Duration = Duration::from_secs(10);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ColoredSeparation {
    #[serde(flatten)]
    pub triple: SeparatorTriple,
    /// `k + k·Σ(t((2/3)^i n) + 1)`.
    pub bound: f64,
    pub measured: usize,
    pub split: NecklaceSplit,
}

/// Separator balancing each color class: S is the union of `S(x_j)` over the necklace cuts,
/// then one vertex per oversized color is moved into S.
pub fn colored_separator(
    g: &Graph,
    coloring: &[Option<usize>],
    k: usize,
    profile: &TreewidthProfile,
) -> Result<ColoredSeparation, SeparatorError> {
    colored_separator_with(g, coloring, k, profile, None, DEFAULT_NECKLACE_BUDGET)
}

pub fn colored_separator_with(
    g: &Graph,
    coloring: &[Option<usize>],
    k: usize,
    profile: &TreewidthProfile,
    base: Option<&TreeDecomposition>,
    budget: Duration,
) -> Result<ColoredSeparation, SeparatorError> {
    let n = g.vertex_count();
    if coloring.len() != n {
        return Err(SeparatorError::Input(format!("coloring has {} entries for {n} vertices", coloring.len())));
    }
    let ordering = separator_ordering_with_base(g, profile, base)?;
    let along: Vec<Option<usize>> = ordering.order.iter().map(|&v| coloring[v]).collect();
    let split = necklace_split(&along, k, budget)?;
    let mut in_s = vec![false; n];
    for &q in &split.cut_positions {
        for &v in &ordering.sets[q] {
            in_s[v] = true;
        }
    }
    let mut a: Vec<usize> = split.x.iter().map(|&i| ordering.order[i]).filter(|&v| !in_s[v]).collect();
    let mut b: Vec<usize> = split.y.iter().map(|&i| ordering.order[i]).filter(|&v| !in_s[v]).collect();
    for color in 0..k {
        let total = coloring.iter().filter(|&&c| c == Some(color)).count();
        for side in [&mut a, &mut b] {
            if 2 * side.iter().filter(|&&v| coloring[v] == Some(color)).count() > total {
                let at = side.iter().position(|&v| coloring[v] == Some(color)).unwrap();
                in_s[side.remove(at)] = true;
            }
        }
    }
    a.sort_unstable();
    b.sort_unstable();
    let s: Vec<usize> = (0..n).filter(|&v| in_s[v]).collect();
    let bound = k as f64 + k as f64 * profile.level_sum(n);
    let measured = s.len();
    Ok(ColoredSeparation { triple: SeparatorTriple { s, a, b }, bound, measured, split })
}

/// Triple checks, the size bound and the per-color half bound.
pub fn verify_colored(g: &Graph, coloring: &[Option<usize>], k: usize, sep: &ColoredSeparation) -> CertificateReport {
    let mut report = sep.triple.verify(g);
    report.bound("separator_size", sep.triple.s.len() as f64, sep.bound);
    for color in 0..k {
        let total = coloring.iter().filter(|&&c| c == Some(color)).count();
        for (name, side) in [("A", &sep.triple.a), ("B", &sep.triple.b)] {
            let count = side.iter().filter(|&&v| coloring[v] == Some(color)).count();
            if 2 * count > total {
                report.violation(format!("color {color}: |{name} ∩ c| = {count} exceeds {total}/2"));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn path_one_color() {
        let g = generators::path(9);
        let coloring = vec![Some(0); 9];
        let p = TreewidthProfile::constant(1.0);
        let sep = colored_separator(&g, &coloring, 1, &p).unwrap();
        let r = verify_colored(&g, &coloring, 1, &sep);
        assert!(r.pass, "{:?}", r.violations);
        assert!(sep.triple.a.len() <= 4 && sep.triple.b.len() <= 4);
    }

    #[test]
    fn empty_classes() {
        let g = generators::grid(3, 4);
        let coloring = vec![None; 12];
        let p = TreewidthProfile::constant(3.0);
        let sep = colored_separator(&g, &coloring, 2, &p).unwrap();
        assert!(verify_colored(&g, &coloring, 2, &sep).pass);
    }

    #[test]
    fn cycle_alternating() {
        let g = generators::cycle(8);
        let coloring: Vec<Option<usize>> = (0..8).map(|v| Some(v % 2)).collect();
        let p = TreewidthProfile::constant(2.0);
        let sep = colored_separator(&g, &coloring, 2, &p).unwrap();
        let r = verify_colored(&g, &coloring, 2, &sep);
        assert!(r.pass, "{:?}", r.violations);
    }
}
