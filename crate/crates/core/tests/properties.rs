use std::time::Duration;

use proptest::prelude::*;
use twr_core::coloring::{greedy_coloring, is_proper_coloring};
use twr_core::generators;
use twr_core::io::{format_graph, parse_graph};
use twr_core::separator::decomposition::{exact_treewidth_order, tree_decomposition, DecompositionMode};
use twr_core::separator::{balanced_separator, necklace_split, verify_necklace, TreewidthProfile};
use twr_core::structure::embed_into_product;
use twr_core::transform::{graph_power, strong_product};
use twr_core::Graph;

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..12, 0.0f64..1.0, any::<u64>()).prop_map(|(n, p, seed)| generators::gnp(n, p, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trips(g in small_graph()) {
        prop_assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }

    #[test]
    fn strong_product_edge_count(g in small_graph(), h in small_graph()) {
        let p = strong_product(&g, &h);
        let (eg, eh) = (g.edge_count(), h.edge_count());
        prop_assert_eq!(p.vertex_count(), g.vertex_count() * h.vertex_count());
        prop_assert_eq!(p.edge_count(), eg * h.vertex_count() + g.vertex_count() * eh + 2 * eg * eh);
    }

    #[test]
    fn power_matches_bfs(g in small_graph(), k in 1usize..4) {
        let p = graph_power(&g, k);
        for u in 0..g.vertex_count() {
            let dist = g.bfs_distances(u);
            for (v, d) in dist.iter().enumerate() {
                let near = u != v && d.is_some_and(|d| d <= k);
                prop_assert_eq!(p.has_edge(u, v), near);
            }
        }
    }

    #[test]
    fn greedy_coloring_is_proper(g in small_graph()) {
        let order: Vec<usize> = (0..g.vertex_count()).collect();
        let c = greedy_coloring(&g, &order).unwrap();
        prop_assert!(is_proper_coloring(&g, &c));
        prop_assert!(c.iter().all(|&x| x <= g.max_degree()));
    }

    #[test]
    fn heuristic_width_never_below_exact(g in small_graph()) {
        let exact = exact_treewidth_order(&g).0;
        let td = tree_decomposition(&g, DecompositionMode::Heuristic).unwrap();
        td.validate(&g).unwrap();
        prop_assert!(td.width() >= exact);
    }

    #[test]
    fn balanced_separator_verifies(n in 2usize..40, k in 1usize..4, seed in any::<u64>()) {
        let (g, _) = generators::random_partial_ktree(n, k, 4, seed);
        let td = tree_decomposition(&g, DecompositionMode::Heuristic).unwrap();
        let sep = balanced_separator(&g, &td).unwrap();
        prop_assert!(sep.verify(&g).pass);
        prop_assert!(sep.s.len() <= td.width() + 1);
        prop_assert!(3 * sep.a.len().max(sep.b.len()) <= 2 * n);
    }

    #[test]
    fn necklace_split_verifies(colors in prop::collection::vec(prop::option::weighted(0.8, 0usize..3), 0..24)) {
        let split = necklace_split(&colors, 3, Duration::from_secs(10)).unwrap();
        prop_assert!(verify_necklace(&colors, 3, &split).pass);
    }

    #[test]
    fn product_embedding_certifies(n in 1usize..300, seed in any::<u64>()) {
        let g = generators::random_tree(n, 3, seed);
        let ps = embed_into_product(&g, 3, &TreewidthProfile::constant(1.0)).unwrap();
        let cert = ps.certify();
        prop_assert!(cert.pass, "{:?}", cert.violations);
    }
}
