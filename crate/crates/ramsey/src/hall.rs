//! Systems of distinct representatives by augmenting paths.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum HallOutcome {
    /// `representatives[i] ∈ candidates[i]`, pairwise distinct.
    Sdr { representatives: Vec<usize> },
    /// Family indices `Y` with `|∪_{y∈Y} C(y)| < |Y|`; `union` lists that union.
    Deficient { family: Vec<usize>, union: Vec<usize> },
}

struct Kuhn<'a> {
    sets: &'a [Vec<usize>],
    owner: HashMap<usize, usize>,
    visited: Vec<usize>,
    stamp: usize,
}

impl Kuhn<'_> {
    fn augment(&mut self, i: usize) -> bool {
        if self.visited[i] == self.stamp {
            return false;
        }
        self.visited[i] = self.stamp;
        for &e in &self.sets[i] {
            match self.owner.get(&e).copied() {
                None => {
                    self.owner.insert(e, i);
                    return true;
                }
                Some(j) => {
                    if self.augment(j) {
                        self.owner.insert(e, i);
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Maximum matching between family indices and elements, tried in index order.
pub fn hall_matching(candidates: &[Vec<usize>]) -> HallOutcome {
    let sets: Vec<Vec<usize>> = candidates
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect();
    let mut kuhn = Kuhn { sets: &sets, owner: HashMap::new(), visited: vec![usize::MAX; sets.len()], stamp: 0 };
    let mut unmatched = None;
    for i in 0..sets.len() {
        kuhn.stamp = i;
        if !kuhn.augment(i) && unmatched.is_none() {
            unmatched = Some(i);
        }
    }
    let owner = kuhn.owner;
    match unmatched {
        None => {
            let mut representatives = vec![usize::MAX; sets.len()];
            for (&e, &i) in &owner {
                representatives[i] = e;
            }
            HallOutcome::Sdr { representatives }
        }
        Some(root) => {
            // Alternating reachability from an unmatched index: every reached element is matched.
            let mut family = vec![root];
            let mut in_family = vec![false; sets.len()];
            in_family[root] = true;
            let mut union = Vec::new();
            let mut seen = std::collections::HashSet::new();
            let mut head = 0;
            while head < family.len() {
                let i = family[head];
                head += 1;
                for &e in &sets[i] {
                    if seen.insert(e) {
                        union.push(e);
                        let j = owner[&e];
                        if !in_family[j] {
                            in_family[j] = true;
                            family.push(j);
                        }
                    }
                }
            }
            family.sort_unstable();
            union.sort_unstable();
            HallOutcome::Deficient { family, union }
        }
    }
}

/// Checks an outcome against the family it came from.
pub fn verify_hall(candidates: &[Vec<usize>], outcome: &HallOutcome) -> bool {
    match outcome {
        HallOutcome::Sdr { representatives } => {
            let mut seen = std::collections::HashSet::new();
            representatives.len() == candidates.len()
                && representatives.iter().zip(candidates).all(|(r, c)| c.contains(r) && seen.insert(*r))
        }
        HallOutcome::Deficient { family, .. } => {
            let mut union: Vec<usize> = family.iter().filter_map(|&i| candidates.get(i)).flatten().copied().collect();
            union.sort_unstable();
            union.dedup();
            let mut f = family.clone();
            f.dedup();
            f.len() == family.len() && family.iter().all(|&i| i < candidates.len()) && union.len() < family.len()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute_force(sets: &[Vec<usize>], i: usize, used: &mut Vec<usize>) -> bool {
        if i == sets.len() {
            return true;
        }
        for &e in &sets[i] {
            if !used.contains(&e) {
                used.push(e);
                if brute_force(sets, i + 1, used) {
                    return true;
                }
                used.pop();
            }
        }
        false
    }

    #[test]
    fn singletons() {
        let sets = vec![vec![3], vec![1], vec![2]];
        assert_eq!(hall_matching(&sets), HallOutcome::Sdr { representatives: vec![3, 1, 2] });
        let twice = vec![vec![5], vec![5]];
        let out = hall_matching(&twice);
        assert_eq!(out, HallOutcome::Deficient { family: vec![0, 1], union: vec![5] });
        assert!(verify_hall(&twice, &out));
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..300 {
            let count = rng.gen_range(1..=8);
            let ground = rng.gen_range(1..=10);
            let sets: Vec<Vec<usize>> = (0..count)
                .map(|_| (0..ground).filter(|_| rng.gen_bool(0.25)).collect())
                .collect();
            let out = hall_matching(&sets);
            assert!(verify_hall(&sets, &out));
            assert_eq!(matches!(out, HallOutcome::Sdr { .. }), brute_force(&sets, 0, &mut Vec::new()));
        }
    }

    #[test]
    fn large_random_family() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sets: Vec<Vec<usize>> = (0..50).map(|_| (0..60).filter(|_| rng.gen_bool(0.1)).collect()).collect();
        assert!(verify_hall(&sets, &hall_matching(&sets)));
    }
}
