//! Deterministic, seeded generators of chordal instances.
//!
//! Every kind builds the graph by attaching each new vertex to a clique, so
//! the reverse insertion order is a perfect elimination ordering and the
//! output is chordal by construction. Weights are drawn uniformly from the
//! requested range, negatives included; with all-positive weights the whole
//! vertex set is trivially optimal and nothing interesting is exercised.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphKind {
    /// Start from a (k+1)-clique, attach each vertex to a random k-clique.
    KTree { k: usize },
    /// Attach each vertex to a random clique inside a random existing
    /// vertex's closed neighborhood; `density` biases the clique size.
    RandomChordal { density: f64 },
    /// A clique on half the vertices plus independent vertices wired to
    /// random clique subsets.
    SplitLike { density: f64 },
    /// Random tree (every new vertex picks one parent).
    Tree,
}

#[derive(Clone, Copy, Debug)]
pub struct GenSpec {
    pub kind: GraphKind,
    pub n: usize,
    pub weight_range: (i64, i64),
    pub seed: u64,
}

pub fn generate(spec: &GenSpec) -> Result<WeightedGraph> {
    let (lo, hi) = spec.weight_range;
    if lo > hi {
        return Err(Error::InvalidInput("empty weight range".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let edges = match spec.kind {
        GraphKind::KTree { k } => ktree_edges(spec.n, k, &mut rng)?,
        GraphKind::RandomChordal { density } => random_chordal_edges(spec.n, density, &mut rng),
        GraphKind::SplitLike { density } => split_like_edges(spec.n, density, &mut rng),
        GraphKind::Tree => tree_edges(spec.n, &mut rng),
    };
    let weights = (0..spec.n).map(|_| rng.gen_range(lo..=hi)).collect();
    let g = WeightedGraph::new(spec.n, &edges, weights)?;
    debug_assert!(crate::chordal::is_chordal(&g));
    Ok(g)
}

fn ktree_edges(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Result<Vec<(u32, u32)>> {
    if k == 0 || n < k + 1 {
        return Err(Error::InvalidInput(format!("k-tree needs n >= k+1 >= 2, got n={n}, k={k}")));
    }
    let mut edges = Vec::new();
    for u in 0..k as u32 + 1 {
        for v in u + 1..k as u32 + 1 {
            edges.push((u, v));
        }
    }
    // All k-subsets of the base clique, then one new k-clique family per
    // attached vertex.
    let base: Vec<u32> = (0..k as u32 + 1).collect();
    let mut cliques: Vec<Vec<u32>> = (0..=k)
        .map(|skip| base.iter().copied().filter(|&v| v != skip as u32).collect())
        .collect();
    for v in k as u32 + 1..n as u32 {
        let q = cliques[rng.gen_range(0..cliques.len())].clone();
        for &u in &q {
            edges.push((u, v));
        }
        for skip in 0..q.len() {
            let mut fresh: Vec<u32> = q.iter().copied().filter(|&u| u != q[skip]).collect();
            fresh.push(v);
            cliques.push(fresh);
        }
    }
    Ok(edges)
}

fn random_chordal_edges(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let density = density.clamp(0.0, 1.0);
    let mut edges = Vec::new();
    let mut neighbors: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut adjacent = vec![false; n * n];
    for v in 1..n as u32 {
        let anchor = rng.gen_range(0..v);
        let mut clique = vec![anchor];
        for &w in neighbors[anchor as usize].clone().iter() {
            if w < v
                && clique.iter().all(|&c| adjacent[c as usize * n + w as usize])
                && rng.gen_bool(density)
            {
                clique.push(w);
            }
        }
        for &u in &clique {
            edges.push((u, v));
            neighbors[u as usize].push(v);
            neighbors[v as usize].push(u);
            adjacent[u as usize * n + v as usize] = true;
            adjacent[v as usize * n + u as usize] = true;
        }
    }
    edges
}

fn split_like_edges(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    let density = density.clamp(0.0, 1.0);
    let clique = (n / 2).max(1).min(n);
    let mut edges = Vec::new();
    for u in 0..clique as u32 {
        for v in u + 1..clique as u32 {
            edges.push((u, v));
        }
    }
    for v in clique as u32..n as u32 {
        for u in 0..clique as u32 {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn tree_edges(n: usize, rng: &mut ChaCha8Rng) -> Vec<(u32, u32)> {
    (1..n as u32).map(|v| (rng.gen_range(0..v), v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::{clique_separator_graph, is_chordal};

    #[test]
    fn ktree_k1_is_a_tree() {
        let g = generate(&GenSpec {
            kind: GraphKind::KTree { k: 1 },
            n: 5,
            weight_range: (0, 0),
            seed: 3,
        })
        .unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(is_chordal(&g));
        assert_eq!(g.connected_components(&crate::graph::VertexSet::new()).unwrap().len(), 1);
    }

    #[test]
    fn ktrees_have_no_arcs() {
        for seed in 0..20 {
            let g = generate(&GenSpec {
                kind: GraphKind::KTree { k: 2 },
                n: 10,
                weight_range: (-5, 5),
                seed,
            })
            .unwrap();
            let csg = clique_separator_graph(&g).unwrap();
            assert!(csg.arcs.is_empty());
        }
    }

    #[test]
    fn all_kinds_chordal_and_deterministic() {
        let kinds = [
            GraphKind::KTree { k: 2 },
            GraphKind::RandomChordal { density: 0.6 },
            GraphKind::SplitLike { density: 0.4 },
            GraphKind::Tree,
        ];
        for kind in kinds {
            for seed in [0, 7, 1234] {
                let spec = GenSpec { kind, n: 12, weight_range: (-10, 10), seed };
                let a = generate(&spec).unwrap();
                let b = generate(&spec).unwrap();
                assert!(is_chordal(&a));
                assert_eq!(a.edges(), b.edges());
                assert_eq!(a.weights(), b.weights());
            }
        }
        assert!(matches!(
            generate(&GenSpec {
                kind: GraphKind::KTree { k: 5 },
                n: 3,
                weight_range: (0, 0),
                seed: 0
            }),
            Err(Error::InvalidInput(_))
        ));
    }
}
