//! Shared instance builders for the benchmark targets.

use mconvex::gen::{generate, GenSpec, GraphKind};
use mconvex::graph::WeightedGraph;

pub fn random_chordal(n: usize, density: f64, seed: u64) -> WeightedGraph {
    generate(&GenSpec {
        kind: GraphKind::RandomChordal { density },
        n,
        weight_range: (-10, 10),
        seed,
    })
    .expect("generator parameters are valid")
}

pub fn ktree(n: usize, k: usize, seed: u64) -> WeightedGraph {
    generate(&GenSpec { kind: GraphKind::KTree { k }, n, weight_range: (-10, 10), seed })
        .expect("generator parameters are valid")
}
