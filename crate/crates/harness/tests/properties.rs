use proptest::prelude::*;
use twr_harness::config::{ExperimentConfig, Family, HostMode};
use twr_harness::experiment::{run_trial, wilson_interval};

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (1usize..50).prop_map(|side| Family::Grid { side }),
        (1usize..500, 1usize..6).prop_map(|(n, treewidth)| Family::RandomBoundedTw { n, treewidth }),
        (1usize..500, 1usize..9).prop_map(|(n, s)| Family::Path { n, s }),
        (3usize..500, 1usize..9).prop_map(|(n, s)| Family::Cycle { n, s }),
        "[a-z]{1,8}\\.txt".prop_map(|p| Family::FromFile { path: p.into() }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn family_display_parses_back(f in family()) {
        prop_assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
    }

    #[test]
    fn config_json_round_trips(
        f in family(),
        colors in 1usize..5,
        p in 0.01f64..1.0,
        m in prop::option::of(1usize..500),
        rho in prop::option::of(0.01f64..1.0),
        sparse in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let c = ExperimentConfig {
            family: f,
            colors,
            p,
            m,
            rho,
            mode: if sparse { HostMode::Sparse } else { HostMode::Dense },
            seed,
            ..Default::default()
        };
        let text = serde_json::to_string(&c).unwrap();
        prop_assert_eq!(serde_json::from_str::<ExperimentConfig>(&text).unwrap(), c);
    }

    #[test]
    fn wilson_brackets_the_estimate(n in 1usize..1000, frac in 0.0f64..=1.0) {
        let k = ((n as f64) * frac).round() as usize;
        let (lo, hi) = wilson_interval(k, n);
        let phat = k as f64 / n as f64;
        prop_assert!((0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi));
        prop_assert!(lo <= phat + 1e-12 && phat <= hi + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn trials_are_deterministic(n in 3usize..24, s in 2usize..4, seed in any::<u64>(), sparse in any::<bool>()) {
        let c = ExperimentConfig {
            family: Family::Path { n, s },
            mode: if sparse { HostMode::Sparse } else { HostMode::Dense },
            m: Some(24),
            trials: 1,
            seed,
            ..Default::default()
        };
        let a = serde_json::to_string(&run_trial(&c, 0)).unwrap();
        let b = serde_json::to_string(&run_trial(&c, 0)).unwrap();
        prop_assert_eq!(a, b);
    }
}
