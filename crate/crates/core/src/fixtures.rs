//! Small fixed instances used across the test suites and benches.
//!
//! Ids are zero-based; the drawings these come from label vertices from 1.

use crate::graph::WeightedGraph;

/// Five vertices, three maximal cliques sharing vertex 1, one separator arc.
pub fn fig6() -> WeightedGraph {
    WeightedGraph::unweighted(5, &[(0, 1), (1, 2), (2, 3), (1, 3), (1, 4), (3, 4)]).unwrap()
}

/// Eight vertices, five maximal cliques, separator chain {1} ⊂ {1,3} ⊂ {1,3,6}.
/// Weights (1, 0, -1, -4, -1, 4, -2, 3); the optimal convex set is {0,1,5}
/// with weight 5.
pub fn fig7() -> WeightedGraph {
    WeightedGraph::new(
        8,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (1, 3),
            (1, 4),
            (3, 4),
            (1, 5),
            (3, 5),
            (5, 6),
            (1, 6),
            (3, 6),
            (1, 7),
            (3, 7),
            (6, 7),
        ],
        vec![1, 0, -1, -4, -1, 4, -2, 3],
    )
    .unwrap()
}

/// 4-cycle, the smallest non-chordal graph.
pub fn c4() -> WeightedGraph {
    WeightedGraph::unweighted(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
}
