//! Chordality recognition, maximal cliques, minimal vertex separators, and
//! the clique-separator graph.
//!
//! Recognition is lexicographic BFS followed by the later-neighbor check.
//! Separators come from the edge labels of a maximum-weight spanning tree of
//! the clique intersection graph, which for chordal graphs are exactly the
//! minimal vertex separators.

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedGraph};

/// A perfect elimination ordering: `order[0]` is eliminated first, and every
/// vertex's later neighbors form a clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder {
    order: Vec<u32>,
}

impl EliminationOrder {
    pub fn as_slice(&self) -> &[u32] {
        &self.order
    }
}

/// Lexicographic BFS visit order. Ties broken by smallest id, so the result
/// is deterministic.
fn lex_bfs(g: &WeightedGraph) -> Vec<u32> {
    let n = g.vertex_count();
    // Cells hold unvisited vertices in ascending id order; the invariant is
    // that cell order refines the lexicographic label order.
    let mut cells: Vec<Vec<u32>> = if n == 0 { Vec::new() } else { vec![(0..n as u32).collect()] };
    let mut order = Vec::with_capacity(n);
    while let Some(first) = cells.first_mut() {
        let v = first.remove(0);
        if first.is_empty() {
            cells.remove(0);
        }
        order.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        for cell in cells {
            let (hit, miss): (Vec<u32>, Vec<u32>) = cell.into_iter().partition(|&w| g.adjacent(v, w));
            if !hit.is_empty() {
                next.push(hit);
            }
            if !miss.is_empty() {
                next.push(miss);
            }
        }
        cells = next;
    }
    order
}

fn verify_peo(g: &WeightedGraph, order: &[u32]) -> bool {
    let n = g.vertex_count();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v as usize] = i;
    }
    for &v in order {
        let later: Vec<u32> = g
            .neighbors_of(v)
            .iter()
            .copied()
            .filter(|&u| pos[u as usize] > pos[v as usize])
            .collect();
        let Some(&parent) = later.iter().min_by_key(|&&u| pos[u as usize]) else {
            continue;
        };
        for &u in &later {
            if u != parent && !g.adjacent(parent, u) {
                return false;
            }
        }
    }
    true
}

/// Returns a perfect elimination ordering, or `None` when the graph is not
/// chordal.
pub fn perfect_elimination_order(g: &WeightedGraph) -> Option<EliminationOrder> {
    let mut order = lex_bfs(g);
    order.reverse();
    verify_peo(g, &order).then_some(EliminationOrder { order })
}

pub fn is_chordal(g: &WeightedGraph) -> bool {
    perfect_elimination_order(g).is_some()
}

/// Exactly the maximal cliques, sorted lexicographically. Errors on
/// non-chordal input.
pub fn maximal_cliques(g: &WeightedGraph) -> Result<Vec<VertexSet>> {
    let peo = perfect_elimination_order(g).ok_or(Error::NotChordal)?;
    let order = peo.as_slice();
    let n = g.vertex_count();
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v as usize] = i;
    }
    let mut candidates: Vec<VertexSet> = order
        .iter()
        .map(|&v| {
            VertexSet::from_iter(
                std::iter::once(v).chain(
                    g.neighbors_of(v).iter().copied().filter(|&u| pos[u as usize] > pos[v as usize]),
                ),
            )
        })
        .collect();
    candidates.sort();
    candidates.dedup();
    let maximal: Vec<VertexSet> = candidates
        .iter()
        .filter(|c| !candidates.iter().any(|d| c.is_strict_subset(d)))
        .cloned()
        .collect();
    Ok(maximal)
}

/// Exactly the minimal vertex separators, sorted lexicographically, via the
/// edge labels of a maximum-weight spanning forest of the clique intersection
/// graph. Errors on non-chordal input.
pub fn minimal_vertex_separators(g: &WeightedGraph) -> Result<Vec<VertexSet>> {
    let cliques = maximal_cliques(g)?;
    Ok(separators_from_cliques(&cliques))
}

fn separators_from_cliques(cliques: &[VertexSet]) -> Vec<VertexSet> {
    let k = cliques.len();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let w = cliques[i].intersection(&cliques[j]).len();
            if w > 0 {
                edges.push((i, j, w));
            }
        }
    }
    // Kruskal, heaviest first; ties by clique list order, which is already
    // lexicographic by lowest vertex ids.
    edges.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut seps = Vec::new();
    for (i, j, _) in edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
            seps.push(cliques[i].intersection(&cliques[j]));
        }
    }
    seps.sort();
    seps.dedup();
    seps
}

/// The clique-separator graph: clique nodes, separator nodes, containment
/// edges {K,S} and containment arcs (S,S'), both with no separator strictly
/// in between.
#[derive(Clone, Debug)]
pub struct CliqueSeparatorGraph {
    pub cliques: Vec<VertexSet>,
    pub separators: Vec<VertexSet>,
    /// (clique index, separator index) with S ⊂ K and nothing in between.
    pub edges: Vec<(usize, usize)>,
    /// (separator index, separator index) with S ⊂ S' and nothing in between.
    pub arcs: Vec<(usize, usize)>,
}

impl CliqueSeparatorGraph {
    pub fn arc(&self, a: usize) -> Result<(&VertexSet, &VertexSet)> {
        let &(s1, s2) = self.arcs.get(a).ok_or(Error::NotAnArc(a, self.arcs.len()))?;
        Ok((&self.separators[s1], &self.separators[s2]))
    }

    /// DOT rendering; clique nodes are boxes, separator nodes ellipses,
    /// containment arcs directed.
    pub fn to_dot(&self, label: impl Fn(u32) -> String) -> String {
        let fmt_set = |s: &VertexSet| {
            let items: Vec<String> = s.iter().map(&label).collect();
            format!("{{{}}}", items.join(","))
        };
        let mut out = String::from("digraph csg {\n");
        for (i, k) in self.cliques.iter().enumerate() {
            out.push_str(&format!("  K{} [shape=box, label=\"{}\"];\n", i, fmt_set(k)));
        }
        for (i, s) in self.separators.iter().enumerate() {
            out.push_str(&format!("  S{} [shape=ellipse, label=\"{}\"];\n", i, fmt_set(s)));
        }
        for &(k, s) in &self.edges {
            out.push_str(&format!("  K{k} -> S{s} [dir=none];\n"));
        }
        for &(s1, s2) in &self.arcs {
            out.push_str(&format!("  S{s1} -> S{s2};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, label: impl Fn(u32) -> serde_json::Value) -> serde_json::Value {
        let set = |s: &VertexSet| {
            serde_json::Value::Array(s.iter().map(&label).collect())
        };
        serde_json::json!({
            "cliques": self.cliques.iter().map(set).collect::<Vec<_>>(),
            "separators": self.separators.iter().map(set).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|&(k, s)| serde_json::json!([k, s])).collect::<Vec<_>>(),
            "arcs": self.arcs.iter().map(|&(a, b)| serde_json::json!([a, b])).collect::<Vec<_>>(),
        })
    }
}

/// Builds the clique-separator graph of a chordal graph.
pub fn clique_separator_graph(g: &WeightedGraph) -> Result<CliqueSeparatorGraph> {
    let cliques = maximal_cliques(g)?;
    let separators = separators_from_cliques(&cliques);
    let mut edges = Vec::new();
    for (ki, k) in cliques.iter().enumerate() {
        for (si, s) in separators.iter().enumerate() {
            if s.is_strict_subset(k)
                && !separators.iter().any(|t| s.is_strict_subset(t) && t.is_strict_subset(k))
            {
                edges.push((ki, si));
            }
        }
    }
    let mut arcs = Vec::new();
    for (i, s1) in separators.iter().enumerate() {
        for (j, s2) in separators.iter().enumerate() {
            if s1.is_strict_subset(s2)
                && !separators.iter().any(|t| s1.is_strict_subset(t) && t.is_strict_subset(s2))
            {
                arcs.push((i, j));
            }
        }
    }
    Ok(CliqueSeparatorGraph { cliques, separators, edges, arcs })
}
