//! Undirected vertex-weighted graphs and the primitive path/component
//! operations the rest of the pipeline is built on.
//!
//! Vertices are dense ids `0..n`. Weights are exact integers; nothing in the
//! pipeline ever rounds. Graphs are immutable once constructed, so they can be
//! shared freely across worker threads.

use std::fmt;

use crate::error::{Error, Result};

/// A set of vertex ids, kept sorted and deduplicated.
///
/// The derived `Ord` is lexicographic on the sorted id list, which is the
/// tie-break order used everywhere a deterministic "smallest" optimum is
/// reported.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet {
    ids: Vec<u32>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet { ids: Vec::new() }
    }

    pub fn singleton(v: u32) -> Self {
        VertexSet { ids: vec![v] }
    }

    /// Builds a set from any iterator, sorting and deduplicating.
    pub fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut ids: Vec<u32> = iter.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        VertexSet { ids }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.ids.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.ids
    }

    pub fn insert(&mut self, v: u32) {
        if let Err(pos) = self.ids.binary_search(&v) {
            self.ids.insert(pos, v);
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        let mut it = other.ids.iter();
        'outer: for &v in &self.ids {
            for &w in it.by_ref() {
                match w.cmp(&v) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_strict_subset(&self, other: &VertexSet) -> bool {
        self.len() < other.len() && self.is_subset(other)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::from_iter(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            ids: self.ids.iter().copied().filter(|&v| other.contains(v)).collect(),
        }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet {
            ids: self.ids.iter().copied().filter(|&v| !other.contains(v)).collect(),
        }
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        let (a, b) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        a.iter().any(|v| b.contains(v))
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        VertexSet::from_iter(iter)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.ids.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Undirected simple graph with exact integer vertex weights.
#[derive(Clone, Debug)]
pub struct WeightedGraph {
    n: usize,
    adj: Vec<bool>,
    neighbors: Vec<Vec<u32>>,
    weights: Vec<i64>,
}

impl WeightedGraph {
    /// Builds a graph from an edge list; rejects self-loops, duplicate edges
    /// and out-of-range endpoints. `weights` must have length `n`.
    pub fn new(n: usize, edges: &[(u32, u32)], weights: Vec<i64>) -> Result<Self> {
        assert_eq!(weights.len(), n, "weight vector length must equal vertex count");
        let mut g = WeightedGraph {
            n,
            adj: vec![false; n * n],
            neighbors: vec![Vec::new(); n],
            weights,
        };
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if g.adj[u as usize * n + v as usize] {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.adj[u as usize * n + v as usize] = true;
            g.adj[v as usize * n + u as usize] = true;
            g.neighbors[u as usize].push(v);
            g.neighbors[v as usize].push(u);
        }
        for nb in &mut g.neighbors {
            nb.sort_unstable();
        }
        Ok(g)
    }

    /// All-zero weights.
    pub fn unweighted(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        WeightedGraph::new(n, edges, vec![0; n])
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(|nb| nb.len()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n as u32 {
            for &v in self.neighbors_of(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn adjacent(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize * self.n + v as usize]
    }

    pub fn neighbors_of(&self, v: u32) -> &[u32] {
        &self.neighbors[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors[v as usize].len()
    }

    pub fn weight(&self, v: u32) -> i64 {
        self.weights[v as usize]
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn set_weight(&self, v: u32, w: i64) -> WeightedGraph {
        let mut g = self.clone();
        g.weights[v as usize] = w;
        g
    }

    pub fn weight_of(&self, s: &VertexSet) -> i64 {
        s.iter().map(|v| self.weights[v as usize]).sum()
    }

    pub fn total_abs_weight(&self) -> i64 {
        self.weights.iter().map(|w| w.abs()).sum()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_iter(0..self.n as u32)
    }

    fn check_vertex(&self, v: u32) -> Result<()> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange(v, self.n))
        }
    }

    fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|&v| v as usize >= self.n) {
            Some(v) => Err(Error::VertexOutOfRange(v, self.n)),
            None => Ok(()),
        }
    }

    /// N(s): vertices outside `s` adjacent to some member of `s`.
    pub fn neighbors(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        let mut out = Vec::new();
        for v in s.iter() {
            for &w in self.neighbors_of(v) {
                if !s.contains(w) {
                    out.push(w);
                }
            }
        }
        Ok(VertexSet::from_iter(out))
    }

    /// Connected components of `G - removed`, ordered by minimum vertex id.
    pub fn connected_components(&self, removed: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(removed)?;
        let mut seen = vec![false; self.n];
        for v in removed.iter() {
            seen[v as usize] = true;
        }
        let mut comps = Vec::new();
        for start in 0..self.n as u32 {
            if seen[start as usize] {
                continue;
            }
            comps.push(VertexSet::from_iter(self.bfs_collect(start, &mut seen)));
        }
        Ok(comps)
    }

    fn bfs_collect(&self, start: u32, seen: &mut [bool]) -> Vec<u32> {
        let mut stack = vec![start];
        let mut comp = Vec::new();
        seen[start as usize] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in self.neighbors_of(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        comp
    }

    /// Component of `G - removed` containing `start`, as a membership mask.
    pub(crate) fn component_mask(&self, start: u32, removed_mask: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        if removed_mask[start as usize] {
            return seen;
        }
        seen[start as usize] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in self.neighbors_of(v) {
                if !removed_mask[w as usize] && !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn is_connected(&self, u: u32, v: u32) -> bool {
        if u == v {
            return true;
        }
        self.component_mask(u, &vec![false; self.n])[v as usize]
    }

    /// True iff `seq` is a path whose vertex set induces exactly the
    /// consecutive path edges.
    pub fn is_chordless_path(&self, seq: &[u32]) -> bool {
        if seq.iter().any(|&v| v as usize >= self.n) {
            return false;
        }
        if seq.is_empty() {
            return false;
        }
        let set = VertexSet::from_iter(seq.iter().copied());
        if set.len() != seq.len() {
            return false;
        }
        for w in seq.windows(2) {
            if !self.adjacent(w[0], w[1]) {
                return false;
            }
        }
        for i in 0..seq.len() {
            for j in i + 2..seq.len() {
                if self.adjacent(seq[i], seq[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Extracts a chordless path between the endpoints of `path`, using only
    /// its vertices: a shortest path in the induced subgraph.
    pub fn extract_chordless_path(&self, path: &[u32]) -> Result<Vec<u32>> {
        for &v in path {
            self.check_vertex(v)?;
        }
        if path.is_empty() {
            return Err(Error::NotAPath);
        }
        let set = VertexSet::from_iter(path.iter().copied());
        if set.len() != path.len() {
            return Err(Error::NotAPath);
        }
        for w in path.windows(2) {
            if !self.adjacent(w[0], w[1]) {
                return Err(Error::NotAPath);
            }
        }
        // BFS from the start inside the induced subgraph; a shortest path
        // there has no chord.
        let (start, goal) = (path[0], *path.last().unwrap());
        let mut prev: Vec<Option<u32>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[start as usize] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            if v == goal {
                break;
            }
            for &w in self.neighbors_of(v) {
                if set.contains(w) && !seen[w as usize] {
                    seen[w as usize] = true;
                    prev[w as usize] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        let mut out = vec![goal];
        let mut cur = goal;
        while let Some(p) = prev[cur as usize] {
            out.push(p);
            cur = p;
        }
        out.reverse();
        debug_assert!(self.is_chordless_path(&out));
        Ok(out)
    }

    /// Induced subgraph on `s` plus the id mapping back to this graph
    /// (`map[new] = old`). New ids follow the sorted order of `s`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(WeightedGraph, Vec<u32>)> {
        self.check_set(s)?;
        let map: Vec<u32> = s.iter().collect();
        let mut back = vec![u32::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            back[old as usize] = new as u32;
        }
        let mut edges = Vec::new();
        for (new, &old) in map.iter().enumerate() {
            for &w in self.neighbors_of(old) {
                let wn = back[w as usize];
                if wn != u32::MAX && (new as u32) < wn {
                    edges.push((new as u32, wn));
                }
            }
        }
        let weights = map.iter().map(|&v| self.weights[v as usize]).collect();
        let g = WeightedGraph::new(map.len(), &edges, weights)?;
        Ok((g, map))
    }
}
