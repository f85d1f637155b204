//! Ground-truth convexity definitions: chordless-path enumeration, convexity
//! checking, and exponential brute-force optima.
//!
//! Everything here is an oracle for validating the polynomial solver on small
//! instances; all entry points are guarded by explicit size limits.

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedGraph};

/// Default vertex-count guard for path enumeration and convexity checks.
pub const ENUM_BUDGET: usize = 16;
/// Vertex-count guard for the full-subset sweeps.
pub const SUBSET_BUDGET: usize = 14;

/// A convexity verdict. `violating_path` is present iff the set is not
/// convex: a chordless path between two members with an interior vertex
/// outside the set.
#[derive(Clone, Debug)]
pub struct ConvexSetWitness {
    pub set: VertexSet,
    pub weight: i64,
    pub violating_path: Option<Vec<u32>>,
}

impl ConvexSetWitness {
    pub fn is_convex(&self) -> bool {
        self.violating_path.is_none()
    }
}

fn guard(g: &WeightedGraph, limit: usize) -> Result<()> {
    if g.vertex_count() > limit {
        return Err(Error::SizeGuard { limit, actual: g.vertex_count() });
    }
    Ok(())
}

/// All chordless u-v paths, by depth-first extension pruned with the no-chord
/// rule. Exponential; guarded by `budget`.
pub fn enumerate_chordless_paths(
    g: &WeightedGraph,
    u: u32,
    v: u32,
    budget: usize,
) -> Result<Vec<Vec<u32>>> {
    guard(g, budget)?;
    if u as usize >= g.vertex_count() {
        return Err(Error::VertexOutOfRange(u, g.vertex_count()));
    }
    if v as usize >= g.vertex_count() {
        return Err(Error::VertexOutOfRange(v, g.vertex_count()));
    }
    let mut out = Vec::new();
    let mut path = vec![u];
    extend_chordless(g, v, &mut path, &mut out);
    Ok(out)
}

fn extend_chordless(g: &WeightedGraph, goal: u32, path: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let last = *path.last().unwrap();
    if last == goal {
        out.push(path.clone());
        return;
    }
    for &w in g.neighbors_of(last) {
        // w extends a chordless path iff it is new and adjacent to no path
        // vertex except the current end.
        if path.contains(&w) {
            continue;
        }
        if path[..path.len() - 1].iter().any(|&p| g.adjacent(p, w)) {
            continue;
        }
        path.push(w);
        extend_chordless(g, goal, path, out);
        path.pop();
    }
}

/// Union of vertices over all chordless u-v paths, as a bitmask. Requires the
/// graph to fit in 64 bits.
fn interval_mask(g: &WeightedGraph, u: u32, v: u32) -> u64 {
    let mut mask = 0u64;
    let mut path = vec![u];
    interval_dfs(g, v, &mut path, &mut mask);
    mask
}

fn interval_dfs(g: &WeightedGraph, goal: u32, path: &mut Vec<u32>, mask: &mut u64) {
    let last = *path.last().unwrap();
    if last == goal {
        for &p in path.iter() {
            *mask |= 1 << p;
        }
        return;
    }
    for &w in g.neighbors_of(last) {
        if path.contains(&w) {
            continue;
        }
        if path[..path.len() - 1].iter().any(|&p| g.adjacent(p, w)) {
            continue;
        }
        path.push(w);
        interval_dfs(g, goal, path, mask);
        path.pop();
    }
}

/// Precomputed all-pairs chordless intervals for fast convexity checks over
/// subsets of one graph.
pub struct ConvexityOracle<'a> {
    g: &'a WeightedGraph,
    intervals: Vec<u64>,
}

impl<'a> ConvexityOracle<'a> {
    pub fn new(g: &'a WeightedGraph, budget: usize) -> Result<Self> {
        guard(g, budget.min(63))?;
        let n = g.vertex_count();
        let mut intervals = vec![0u64; n * n];
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                let m = interval_mask(g, u, v);
                intervals[u as usize * n + v as usize] = m;
                intervals[v as usize * n + u as usize] = m;
            }
        }
        Ok(ConvexityOracle { g, intervals })
    }

    pub fn graph(&self) -> &WeightedGraph {
        self.g
    }

    pub fn interval(&self, u: u32, v: u32) -> u64 {
        self.intervals[u as usize * self.g.vertex_count() + v as usize]
    }

    /// Returns a member pair whose interval leaves the set, if any.
    pub fn violating_pair(&self, set: u64) -> Option<(u32, u32)> {
        let n = self.g.vertex_count();
        for u in 0..n as u32 {
            if set >> u & 1 == 0 {
                continue;
            }
            for v in u + 1..n as u32 {
                if set >> v & 1 == 0 {
                    continue;
                }
                if self.intervals[u as usize * n + v as usize] & !set != 0 {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_convex_mask(&self, set: u64) -> bool {
        self.violating_pair(set).is_none()
    }
}

fn set_to_mask(s: &VertexSet) -> u64 {
    s.iter().fold(0u64, |m, v| m | 1 << v)
}

fn mask_to_set(mut m: u64) -> VertexSet {
    let mut ids = Vec::new();
    while m != 0 {
        let v = m.trailing_zeros();
        ids.push(v);
        m &= m - 1;
    }
    VertexSet::from_iter(ids)
}

/// Convexity check with an explicit size budget (used by tests on extended
/// instances that exceed the default guard).
pub fn is_convex_with_budget(
    g: &WeightedGraph,
    c: &VertexSet,
    budget: usize,
) -> Result<ConvexSetWitness> {
    guard(g, budget.min(63))?;
    if let Some(v) = c.iter().find(|&v| v as usize >= g.vertex_count()) {
        return Err(Error::VertexOutOfRange(v, g.vertex_count()));
    }
    let members: Vec<u32> = c.iter().collect();
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            for path in enumerate_chordless_paths(g, u, v, budget)? {
                if let Some(_) = path.iter().find(|&&p| !c.contains(p)) {
                    return Ok(ConvexSetWitness {
                        set: c.clone(),
                        weight: g.weight_of(c),
                        violating_path: Some(path),
                    });
                }
            }
        }
    }
    Ok(ConvexSetWitness { set: c.clone(), weight: g.weight_of(c), violating_path: None })
}

/// True iff no chordless path between members of `c` leaves `c`; otherwise a
/// violating path is returned as witness.
pub fn is_convex(g: &WeightedGraph, c: &VertexSet) -> Result<ConvexSetWitness> {
    is_convex_with_budget(g, c, ENUM_BUDGET)
}

/// Every convex subset, exactly once, sorted.
pub fn all_convex_sets(g: &WeightedGraph) -> Result<Vec<VertexSet>> {
    all_convex_sets_with_budget(g, SUBSET_BUDGET)
}

pub fn all_convex_sets_with_budget(g: &WeightedGraph, budget: usize) -> Result<Vec<VertexSet>> {
    guard(g, budget.min(24))?;
    let oracle = ConvexityOracle::new(g, budget.min(24))?;
    let n = g.vertex_count();
    let mut out = Vec::new();
    for mask in 0u64..1 << n {
        if oracle.is_convex_mask(mask) {
            out.push(mask_to_set(mask));
        }
    }
    out.sort();
    Ok(out)
}

/// Maximum-weight convex set containing `required`; ties broken by the
/// lexicographically smallest vertex list. A convex superset always exists
/// (the full vertex set is convex), so the optimum is well defined.
pub fn brute_force_opt(g: &WeightedGraph, required: &VertexSet) -> Result<ConvexSetWitness> {
    brute_force_opt_with_budget(g, required, SUBSET_BUDGET)
}

pub fn brute_force_opt_with_budget(
    g: &WeightedGraph,
    required: &VertexSet,
    budget: usize,
) -> Result<ConvexSetWitness> {
    guard(g, budget.min(24))?;
    if let Some(v) = required.iter().find(|&v| v as usize >= g.vertex_count()) {
        return Err(Error::VertexOutOfRange(v, g.vertex_count()));
    }
    let oracle = ConvexityOracle::new(g, budget.min(24))?;
    let n = g.vertex_count();
    let req = set_to_mask(required);
    let mut best: Option<(i64, VertexSet)> = None;
    for mask in 0u64..1 << n {
        if mask & req != req || !oracle.is_convex_mask(mask) {
            continue;
        }
        let set = mask_to_set(mask);
        let w = g.weight_of(&set);
        let better = match &best {
            None => true,
            Some((bw, bs)) => w > *bw || (w == *bw && set < *bs),
        };
        if better {
            best = Some((w, set));
        }
    }
    let (weight, set) = best.expect("full vertex set is always a feasible convex superset");
    Ok(ConvexSetWitness { set, weight, violating_path: None })
}
