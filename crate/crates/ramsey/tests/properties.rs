use proptest::prelude::*;
use twr_core::generators;
use twr_core::Graph;
use twr_ramsey::congestion::{build_auxiliary_graph, check_congestion, congestion_bound, witness_refutes_congestion};
use twr_ramsey::density::{check_dense_pair, witness_refutes_density, DensityMode};
use twr_ramsey::hall::{hall_matching, verify_hall, HallOutcome};
use twr_ramsey::host::{build_blowup_host, color_host, ColoringStrategy, WithinParts};
use twr_ramsey::prepare::prepare_h;

/// Every pair of disjoint families of `k`-sets and `U` outside them, straight from the definition.
fn congestion_brute_force(g: &Graph, k: usize, xi: f64, p: f64) -> f64 {
    let n = g.vertex_count();
    let ksets: Vec<Vec<usize>> = (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect();
    let mut worst = f64::NEG_INFINITY;
    let mut stack: Vec<(Vec<usize>, u32)> = vec![(Vec::new(), 0)];
    while let Some((fam, used)) = stack.pop() {
        let family: Vec<Vec<usize>> = fam.iter().map(|&i| ksets[i].clone()).collect();
        for umask in 0u32..1 << n {
            let u: Vec<usize> = (0..n).filter(|i| umask >> i & 1 == 1).collect();
            if umask & used != 0 || u.len() > family.len() {
                continue;
            }
            let aux = build_auxiliary_graph(g, k, &family, &u).unwrap();
            let bound = congestion_bound(n, k, xi, p, family.len(), u.len());
            worst = worst.max(aux.incidences.len() as f64 - bound);
        }
        if (fam.len() + 1) as f64 > xi * n as f64 {
            continue;
        }
        let start = fam.last().map_or(0, |&i| i + 1);
        for (i, set) in ksets.iter().enumerate().skip(start) {
            let m = set.iter().fold(0u32, |m, &v| m | 1 << v);
            if m & used == 0 {
                let mut next = fam.clone();
                next.push(i);
                stack.push((next, used | m));
            }
        }
    }
    worst
}

#[test]
fn congestion_matches_definition_on_gnp() {
    let g = generators::gnp(10, 0.5, 12);
    for (k, xi) in [(1, 0.3), (2, 0.3), (2, 0.15)] {
        let cert = check_congestion(&g, k, xi, 0.5, DensityMode::Exhaustive).unwrap();
        let worst = congestion_brute_force(&g, k, xi, 0.5);
        assert!((cert.worst_excess - worst).abs() < 1e-9, "k = {k}: {} vs {worst}", cert.worst_excess);
        assert_eq!(cert.passed(), worst <= 0.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hall_outcomes_verify(sets in prop::collection::vec(prop::collection::vec(0usize..8, 0..4), 0..8)) {
        let out = hall_matching(&sets);
        prop_assert!(verify_hall(&sets, &out));
        if let HallOutcome::Deficient { family, union } = &out {
            prop_assert!(union.len() < family.len());
        }
    }

    #[test]
    fn sampled_refutations_are_sound(a in 2usize..30, b in 2usize..30, q in 0.05f64..0.95, eps in 0.1f64..0.6, seed in any::<u64>()) {
        let g = generators::gnp(a + b, q, seed);
        let x: Vec<usize> = (0..a).collect();
        let y: Vec<usize> = (a..a + b).collect();
        let cert = check_dense_pair(&g, &x, &y, eps, 0.9, 1.0, DensityMode::sampled(4, seed)).unwrap();
        prop_assert_eq!(cert.passed(), cert.witness.is_none());
        if !cert.passed() {
            prop_assert!(witness_refutes_density(&g, &x, &y, &cert));
        }
    }

    #[test]
    fn congestion_witnesses_recount(n in 2usize..12, q in 0.1f64..1.0, k in 1usize..3, seed in any::<u64>()) {
        let g = generators::gnp(n, q, seed);
        let cert = check_congestion(&g, k, 0.2, 0.3, DensityMode::Exhaustive).unwrap();
        prop_assert_eq!(cert.passed(), !witness_refutes_congestion(&g, &cert));
    }

    #[test]
    fn complete_blowup_edge_count(t in 1usize..6, m in 1usize..8, k in 1usize..4, seed in any::<u64>()) {
        let base = generators::random_tree(t, 3, seed);
        let host = build_blowup_host(&base, m, 1.0, WithinParts::Complete, seed).unwrap();
        prop_assert_eq!(host.graph.edge_count(), t * m * (m - 1) / 2 + base.edge_count() * m * m);
        let colored = color_host(&host, k, &ColoringStrategy::Random, seed).unwrap();
        colored.validate().unwrap();
        let total: usize = (0..k).map(|c| colored.color_class(c).edge_count()).sum();
        prop_assert_eq!(total, host.graph.edge_count());
    }

    #[test]
    fn path_preparations_verify(n in 1usize..40, s in 1usize..6) {
        let h = generators::path(n);
        let r = generators::path(n.div_ceil(s));
        let psi: Vec<(usize, usize)> = (0..n).map(|v| (v / s, v % s)).collect();
        let prep = prepare_h(&h, &r, &psi, s, 2).unwrap();
        let report = prep.verify(&h);
        prop_assert!(report.pass, "{:?}", report.violations);
    }
}
