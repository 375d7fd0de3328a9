use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::SeparatorError;
use crate::report::CertificateReport;

/// Cuts of `[0, n)` into consecutive intervals, each assigned to side X or Y.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecklaceSplit {
    pub n: usize,
    /// Strictly increasing, each in `[1, n)`.
    pub cut_positions: Vec<usize>,
    /// Indices of the intervals forming X; the rest form Y.
    pub x_intervals: Vec<usize>,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl NecklaceSplit {
    fn build(n: usize, cut_positions: Vec<usize>, first_x: bool) -> Self {
        let count = cut_positions.len() + 1;
        let x_intervals: Vec<usize> = (0..count).filter(|i| (i % 2 == 0) == first_x).collect();
        let mut split = NecklaceSplit { n, cut_positions, x_intervals, x: Vec::new(), y: Vec::new() };
        for (i, (start, end)) in split.intervals().into_iter().enumerate() {
            let side = if split.x_intervals.contains(&i) { &mut split.x } else { &mut split.y };
            side.extend(start..end);
        }
        split
    }

    /// Half-open intervals in position order.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let mut bounds = vec![0];
        bounds.extend_from_slice(&self.cut_positions);
        bounds.push(self.n);
        bounds.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

/// Interval structure and the `⌈n_i/2⌉` per-color bound, checked from scratch.
pub fn verify_necklace(colors: &[Option<usize>], k: usize, split: &NecklaceSplit) -> CertificateReport {
    let mut report = CertificateReport::new();
    let n = colors.len();
    if split.n != n {
        report.violation(format!("split covers {} positions, necklace has {n}", split.n));
        return report;
    }
    if split.cut_positions.len() > k {
        report.violation(format!("{} cuts exceed k = {k}", split.cut_positions.len()));
    }
    let mut prev = 0;
    for &c in &split.cut_positions {
        if c <= prev || c >= n {
            report.violation(format!("cut {c} out of order or outside [1, n)"));
        }
        prev = c;
    }
    if !report.pass {
        return report;
    }
    let mut side = vec![None; n];
    for (i, (start, end)) in split.intervals().into_iter().enumerate() {
        let in_x = split.x_intervals.contains(&i);
        for s in &mut side[start..end] {
            *s = Some(in_x);
        }
    }
    let mut expected_x: Vec<usize> = (0..n).filter(|&i| side[i] == Some(true)).collect();
    let mut expected_y: Vec<usize> = (0..n).filter(|&i| side[i] == Some(false)).collect();
    expected_x.sort_unstable();
    expected_y.sort_unstable();
    if expected_x != split.x || expected_y != split.y {
        report.violation("X and Y do not match the interval assignment");
    }
    for color in 0..k {
        let total = colors.iter().filter(|&&c| c == Some(color)).count();
        let in_x = (0..n).filter(|&i| colors[i] == Some(color) && side[i] == Some(true)).count();
        let cap = total.div_ceil(2);
        if in_x.max(total - in_x) > cap {
            report.violation(format!("color {color}: sides {in_x}/{} exceed {cap}", total - in_x));
        }
    }
    if let Some(c) = colors.iter().flatten().find(|&&c| c >= k) {
        report.violation(format!("color {c} out of range"));
    }
    report.metric("cuts", split.cut_positions.len());
    report
}

/// Iterative deepening over the cut count with alternating sides; see the crate docs.
pub fn necklace_split(colors: &[Option<usize>], k: usize, budget: Duration) -> Result<NecklaceSplit, SeparatorError> {
    if k == 0 {
        return Err(SeparatorError::Input("necklace needs k >= 1".into()));
    }
    if let Some(c) = colors.iter().flatten().find(|&&c| c >= k) {
        return Err(SeparatorError::Input(format!("color {c} out of range for k = {k}")));
    }
    let n = colors.len();
    let mut prefix = vec![vec![0usize; k]; n + 1];
    for (i, c) in colors.iter().enumerate() {
        prefix[i + 1] = prefix[i].clone();
        if let Some(c) = c {
            prefix[i + 1][*c] += 1;
        }
    }
    let cap: Vec<usize> = prefix[n].iter().map(|t| t.div_ceil(2)).collect();
    let colored: Vec<usize> = (0..n).filter(|&i| colors[i].is_some()).collect();
    // A cut only matters right before a colored position other than the first.
    let candidates: Vec<usize> = colored.iter().copied().skip(1).collect();
    let mut search = Search { prefix: &prefix, cap: &cap, candidates: &candidates, n, deadline: Instant::now() + budget, nodes: 0, cuts: Vec::new() };
    for cuts in 0..=k.min(candidates.len()) {
        for first_x in [true, false] {
            let mut load = [vec![0; k], vec![0; k]];
            match search.run(cuts, 0, 0, first_x, &mut load) {
                Some(true) => return Ok(NecklaceSplit::build(n, search.cuts.clone(), first_x)),
                Some(false) => {}
                None => return Err(SeparatorError::NecklaceBudget { budget }),
            }
        }
    }
    Err(SeparatorError::NecklaceBudget { budget })
}

struct Search<'a> {
    prefix: &'a [Vec<usize>],
    cap: &'a [usize],
    candidates: &'a [usize],
    n: usize,
    deadline: Instant,
    nodes: u64,
    cuts: Vec<usize>,
}

impl Search<'_> {
    /// Places `left` more cuts after `start`; `None` when the deadline passes.
    fn run(&mut self, left: usize, start: usize, from: usize, to_x: bool, load: &mut [Vec<usize>; 2]) -> Option<bool> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && Instant::now() > self.deadline {
            return None;
        }
        let side = usize::from(!to_x);
        if left == 0 {
            return Some(self.fits(&load[side], start, self.n));
        }
        for idx in from..self.candidates.len() {
            let q = self.candidates[idx];
            if !self.fits(&load[side], start, q) {
                break;
            }
            self.add(&mut load[side], start, q, true);
            self.cuts.push(q);
            let found = self.run(left - 1, q, idx + 1, !to_x, load);
            self.add(&mut load[side], start, q, false);
            match found {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {
                    self.cuts.pop();
                }
            }
        }
        Some(false)
    }

    fn fits(&self, load: &[usize], start: usize, end: usize) -> bool {
        (0..load.len()).all(|c| load[c] + self.prefix[end][c] - self.prefix[start][c] <= self.cap[c])
    }

    fn add(&self, load: &mut [usize], start: usize, end: usize, plus: bool) {
        for (c, l) in load.iter_mut().enumerate() {
            let d = self.prefix[end][c] - self.prefix[start][c];
            if plus {
                *l += d;
            } else {
                *l -= d;
            }
        }
    }
}

/// Parses `"01-10"`-style strings: digits are colors, `-` or `.` is uncolored.
pub fn parse_necklace(text: &str) -> Result<Vec<Option<usize>>, SeparatorError> {
    text.trim()
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '-' | '.' => Ok(None),
            d => d.to_digit(36).map(|v| Some(v as usize)).ok_or_else(|| SeparatorError::Input(format!("bad necklace symbol {c:?}"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: Duration = Duration::from_secs(10);

    /// Exhaustive: every cut set of size at most k and every subset of intervals for X.
    fn oracle_feasible(colors: &[Option<usize>], k: usize) -> bool {
        let n = colors.len();
        let gaps: Vec<usize> = (1..n).collect();
        let mut feasible = false;
        let mut choose = |cuts: &Vec<usize>| {
            for mask in 0u32..(1 << (cuts.len() + 1)) {
                let split = NecklaceSplit::build(n, cuts.clone(), true);
                let x_intervals: Vec<usize> = (0..=cuts.len()).filter(|i| mask >> i & 1 == 1).collect();
                let mut s = NecklaceSplit { x_intervals, x: vec![], y: vec![], ..split };
                for (i, (a, b)) in s.intervals().into_iter().enumerate() {
                    if s.x_intervals.contains(&i) { s.x.extend(a..b) } else { s.y.extend(a..b) }
                }
                if verify_necklace(colors, k, &s).pass {
                    feasible = true;
                }
            }
        };
        fn rec(gaps: &[usize], k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&Vec<usize>)) {
            f(cur);
            if cur.len() == k {
                return;
            }
            for (i, &g) in gaps.iter().enumerate() {
                cur.push(g);
                rec(&gaps[i + 1..], k, cur, f);
                cur.pop();
            }
        }
        rec(&gaps, k, &mut Vec::new(), &mut choose);
        feasible
    }

    #[test]
    fn single_color() {
        let colors = vec![Some(0); 8];
        let s = necklace_split(&colors, 1, BUDGET).unwrap();
        assert_eq!(s.cut_positions, vec![4]);
        assert_eq!(s.x_intervals, vec![0]);
        assert_eq!((s.x.len(), s.y.len()), (4, 4));
    }

    #[test]
    fn uncolored() {
        let s = necklace_split(&[None; 6], 1, BUDGET).unwrap();
        assert!(s.cut_positions.is_empty());
        assert_eq!(s.x, (0..6).collect::<Vec<_>>());
        assert!(s.y.is_empty());
    }

    #[test]
    fn alternating_two_colors() {
        let colors = parse_necklace("01010101").unwrap();
        let s = necklace_split(&colors, 2, BUDGET).unwrap();
        assert!(verify_necklace(&colors, 2, &s).pass);
        assert!(oracle_feasible(&colors, 2));
        assert!(s.intervals().len() <= 3);
    }

    #[test]
    fn matches_exhaustive_oracle_on_small_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..=9);
            let k = rng.gen_range(1..=3);
            let colors: Vec<Option<usize>> = (0..n).map(|_| if rng.gen_bool(0.8) { Some(rng.gen_range(0..k)) } else { None }).collect();
            let s = necklace_split(&colors, k, BUDGET).unwrap();
            assert!(verify_necklace(&colors, k, &s).pass, "{colors:?}");
            assert!(oracle_feasible(&colors, k));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(necklace_split(&[Some(3)], 2, BUDGET).is_err());
        assert!(parse_necklace("01x?").is_err());
    }
}
