#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use regflow::linalg::rat;
use regflow::solver::{incidence_matrix, Digraph, FlowNetwork, Instance};
use regflow::space::{RegularSpace, SpaceMode, TuMatrix};

pub struct GraphCase {
    pub network: Arc<FlowNetwork>,
    pub capacities: Vec<i64>,
}

impl GraphCase {
    pub fn instance(&self, mode: SpaceMode) -> Instance {
        let m = incidence_matrix(self.network.graph()).unwrap();
        let space = Arc::new(RegularSpace::build(m, mode));
        Instance::new(
            space,
            self.network.return_arc(),
            self.capacities.iter().map(|&c| rat(c)).collect(),
        )
        .unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.network.graph().vertex_count()
    }
}

/// Random digraphs with 2..=max_vertices vertices and 1..=max_arcs arcs
/// (before the return arc), integer capacities in 0..=max_cap.
pub fn random_graphs(
    seed: u64,
    count: usize,
    max_vertices: usize,
    max_arcs: usize,
    max_cap: i64,
) -> Vec<GraphCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let vertices = rng.gen_range(2..=max_vertices);
            let arc_count = rng.gen_range(1..=max_arcs);
            let mut arcs = Vec::with_capacity(arc_count);
            while arcs.len() < arc_count {
                let u = rng.gen_range(0..vertices);
                let v = rng.gen_range(0..vertices);
                if u != v {
                    arcs.push((u, v));
                }
            }
            let source = rng.gen_range(0..vertices);
            let mut sink = rng.gen_range(0..vertices);
            while sink == source {
                sink = rng.gen_range(0..vertices);
            }
            let capacities = (0..arc_count).map(|_| rng.gen_range(0..=max_cap)).collect();
            let graph = Digraph::numbered(vertices, arcs).unwrap();
            GraphCase {
                network: Arc::new(FlowNetwork::with_return_arc(graph, source, sink).unwrap()),
                capacities,
            }
        })
        .collect()
}

/// Arcs sa, sb, ab, at, bt over s, a, b, t; r = (t, s) appended.
pub fn diamond(capacity: i64) -> GraphCase {
    let g = Digraph::numbered(4, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
    GraphCase {
        network: Arc::new(FlowNetwork::with_return_arc(g, 0, 3).unwrap()),
        capacities: vec![capacity; 5],
    }
}

/// Arcs sa, at, st over s, a, t; r = (t, s) appended.
pub fn triangle_with_direct_arc(capacity: i64) -> GraphCase {
    let g = Digraph::numbered(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
    GraphCase {
        network: Arc::new(FlowNetwork::with_return_arc(g, 0, 2).unwrap()),
        capacities: vec![capacity; 3],
    }
}

/// A totally unimodular representation of R10, the regular matroid that is
/// neither graphic nor cographic.
pub fn r10() -> TuMatrix {
    let a = [
        [-1, 1, 0, 0, 1],
        [1, -1, 1, 0, 0],
        [0, 1, -1, 1, 0],
        [0, 0, 1, -1, 1],
        [1, 0, 0, 1, -1],
    ];
    let rows: Vec<Vec<i64>> = (0..5)
        .map(|i| {
            let mut row = vec![0i64; 10];
            row[i] = 1;
            row[5..].copy_from_slice(&a[i]);
            row
        })
        .collect();
    TuMatrix::new(&rows).unwrap()
}
