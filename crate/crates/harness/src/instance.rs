use serde::{Deserialize, Serialize};
use twr_core::generators;
use twr_core::io::read_graph;
use twr_core::separator::TreewidthProfile;
use twr_core::structure::{embed_into_product, ProductStructure};
use twr_core::Graph;
use twr_ramsey::prepare::validate_psi;

use crate::config::Family;
use crate::HarnessError;

/// `ψ : V(H) → V(R) × [s]`, an embedding into `R ⊠ K_s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "graph_data")]
    pub r: Graph,
    pub psi: Vec<(usize, usize)>,
    pub s: usize,
}

impl Witness {
    /// Blocks of `s` consecutive vertices: `ψ(v) = (v / s, v mod s)`.
    pub fn blocks(r: Graph, n: usize, s: usize) -> Self {
        Witness { r, psi: (0..n).map(|v| (v / s, v % s)).collect(), s }
    }

    pub fn from_product(ps: &ProductStructure) -> Self {
        let e = &ps.embedding;
        Witness { r: e.tree.clone(), psi: e.map.clone(), s: e.clique_size }
    }

    pub fn node_of(&self) -> Vec<usize> {
        self.psi.iter().map(|&(x, _)| x).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    #[serde(with = "graph_data")]
    pub graph: Graph,
    /// Present when the family comes with a natural product witness.
    pub witness: Option<Witness>,
}

pub fn generate_instance(family: &Family, max_degree: usize, seed: u64) -> Result<Instance, HarnessError> {
    let ceil_div = |n: usize, s: usize| n.div_ceil(s);
    let (graph, witness) = match family {
        Family::Grid { side } => {
            let a = *side;
            (generators::grid(a, a), Some(Witness::blocks(generators::path(a), a * a, a)))
        }
        Family::RandomBoundedTw { n, treewidth } => (generators::random_partial_ktree(*n, *treewidth, max_degree, seed).0, None),
        Family::Path { n, s } => (generators::path(*n), Some(Witness::blocks(generators::path(ceil_div(*n, *s)), *n, *s))),
        Family::Cycle { n, s } => {
            let t = ceil_div(*n, *s);
            let r = if t >= 3 { generators::cycle(t) } else { generators::path(t) };
            (generators::cycle(*n), Some(Witness::blocks(r, *n, *s)))
        }
        Family::FromFile { path } => (read_graph(path)?, None),
    };
    if graph.max_degree() > max_degree {
        return Err(HarnessError::Usage(format!("{family} has maximum degree {} above Δ = {max_degree}", graph.max_degree())));
    }
    if let Some(w) = &witness {
        validate_psi(&graph, &w.r, &w.psi, w.s)?;
    }
    Ok(Instance { graph, witness })
}

/// Runs the product pipeline; the family witness is kept when there is one.
pub fn product_witness(
    inst: &Instance,
    max_degree: usize,
    profile: &TreewidthProfile,
) -> Result<(ProductStructure, Witness), HarnessError> {
    let ps = embed_into_product(&inst.graph, max_degree, profile)?;
    let w = inst.witness.clone().unwrap_or_else(|| Witness::from_product(&ps));
    Ok((ps, w))
}

pub mod graph_data {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use twr_core::io::GraphData;
    use twr_core::Graph;

    pub fn serialize<S: Serializer>(g: &Graph, ser: S) -> Result<S::Ok, S::Error> {
        GraphData::from(g).serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Graph, D::Error> {
        Graph::try_from(GraphData::deserialize(de)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_three() {
        let inst = generate_instance(&Family::Grid { side: 3 }, 4, 0).unwrap();
        assert_eq!((inst.graph.vertex_count(), inst.graph.edge_count(), inst.graph.max_degree()), (9, 12, 4));
        let w = inst.witness.unwrap();
        assert_eq!((w.r.vertex_count(), w.s), (3, 3));
    }

    #[test]
    fn grid_needs_degree_four() {
        assert!(matches!(generate_instance(&Family::Grid { side: 3 }, 3, 0), Err(HarnessError::Usage(_))));
    }

    #[test]
    fn random_bounded_tw_respects_degree() {
        for seed in 0..5 {
            let inst = generate_instance(&Family::RandomBoundedTw { n: 40, treewidth: 3 }, 4, seed).unwrap();
            assert_eq!(inst.graph.vertex_count(), 40);
            assert!(inst.graph.max_degree() <= 4);
        }
    }

    #[test]
    fn cycle_witnesses() {
        for (n, s) in [(12, 3), (7, 4), (5, 5), (64, 4)] {
            let inst = generate_instance(&Family::Cycle { n, s }, 2, 0).unwrap();
            assert!(inst.witness.is_some());
        }
    }

    #[test]
    fn from_file_passthrough() {
        let dir = std::env::temp_dir().join(format!("twr-instance-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("h.txt");
        let g = generators::random_tree(30, 3, 2);
        twr_core::io::write_graph(&path, &g).unwrap();
        let inst = generate_instance(&Family::FromFile { path }, 3, 0).unwrap();
        assert_eq!(inst.graph, g);
        assert!(inst.witness.is_none());
    }

    #[test]
    fn product_witness_is_valid() {
        let inst = generate_instance(&Family::RandomBoundedTw { n: 60, treewidth: 2 }, 3, 1).unwrap();
        let (ps, w) = product_witness(&inst, 3, &TreewidthProfile::constant(2.0)).unwrap();
        assert!(ps.certify().pass);
        validate_psi(&inst.graph, &w.r, &w.psi, w.s).unwrap();
    }
}
