//! The rooted poset of an extended chordal graph: u ≤ v iff some chordless
//! path from v to the root contains u.
//!
//! The production membership test for "z is interior to some chordless x-y
//! path" looks for two non-adjacent neighbors a, b of z such that, after
//! deleting z and all its other neighbors, x and y fall into the distinct
//! components of a and b. Sufficiency is constructive (concatenate the
//! component-internal chordless paths through z); necessity holds on chordal
//! graphs, since two such neighbors left in one component would close a
//! chordless cycle of length at least four. On non-chordal graphs the test
//! can under-report (a 4-cycle already shows it), so callers stay within the
//! chordal pipeline; the oracle suites cross-check against full enumeration.

use crate::error::{Error, Result};
use crate::graph::{VertexSet, WeightedGraph};

/// Ground set with the relation materialized as a full boolean matrix,
/// `rel[u*n+v]` meaning u ≤ v.
#[derive(Clone, Debug)]
pub struct RootedPoset {
    n: usize,
    rel: Vec<bool>,
    root: u32,
}

/// Ideal-count guard for `ideals`.
pub const IDEAL_BUDGET: usize = 20;

impl RootedPoset {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn le(&self, u: u32, v: u32) -> bool {
        self.rel[u as usize * self.n + v as usize]
    }

    pub fn relation(&self) -> &[bool] {
        &self.rel
    }

    /// Transitive reduction: pairs (u, v) with u < v and nothing in between.
    pub fn covers(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for u in 0..self.n as u32 {
            for v in 0..self.n as u32 {
                if u == v || !self.le(u, v) {
                    continue;
                }
                let skipped = (0..self.n as u32)
                    .any(|x| x != u && x != v && self.le(u, x) && self.le(x, v));
                if !skipped {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// All downward-closed sets. Test-only enumeration, guarded.
    pub fn ideals(&self) -> Result<Vec<VertexSet>> {
        let mut out = Vec::new();
        self.for_each_ideal(|mask| out.push(mask_to_set(mask)))?;
        out.sort();
        Ok(out)
    }

    /// Visits every ideal exactly once as a bitmask, without materializing
    /// the list.
    pub fn for_each_ideal(&self, mut f: impl FnMut(u64)) -> Result<()> {
        if self.n > IDEAL_BUDGET {
            return Err(Error::SizeGuard { limit: IDEAL_BUDGET, actual: self.n });
        }
        // Linear extension: repeatedly take the smallest-id minimal element.
        let mut ext = Vec::with_capacity(self.n);
        let mut placed = vec![false; self.n];
        for _ in 0..self.n {
            let v = (0..self.n)
                .find(|&v| {
                    !placed[v]
                        && (0..self.n).all(|u| u == v || placed[u] || !self.rel[u * self.n + v])
                })
                .expect("partial order always has a minimal element");
            placed[v] = true;
            ext.push(v as u32);
        }
        // Down-masks per element: everything strictly below it.
        let below: Vec<u64> = (0..self.n)
            .map(|v| {
                (0..self.n)
                    .filter(|&u| u != v && self.rel[u * self.n + v])
                    .fold(0u64, |m, u| m | 1 << u)
            })
            .collect();
        let mut stack = vec![(0usize, 0u64)];
        while let Some((i, mask)) = stack.pop() {
            if i == ext.len() {
                f(mask);
                continue;
            }
            let e = ext[i];
            stack.push((i + 1, mask));
            if below[e as usize] & !mask == 0 {
                stack.push((i + 1, mask | 1 << e));
            }
        }
        Ok(())
    }

    /// Checks reflexivity, antisymmetry, transitivity, and that the root is
    /// below every vertex in its component. Used by the property suites.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.n;
        for u in 0..n {
            if !self.rel[u * n + u] {
                return Err(Error::Internal(format!("relation not reflexive at {u}")));
            }
        }
        for u in 0..n as u32 {
            for v in 0..n as u32 {
                if u != v && self.le(u, v) && self.le(v, u) {
                    return Err(Error::Internal(format!("relation not antisymmetric at {u},{v}")));
                }
                for w in 0..n as u32 {
                    if self.le(u, v) && self.le(v, w) && !self.le(u, w) {
                        return Err(Error::Internal(format!(
                            "relation not transitive at {u},{v},{w}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn mask_to_set(mut m: u64) -> VertexSet {
    let mut ids = Vec::new();
    while m != 0 {
        ids.push(m.trailing_zeros());
        m &= m - 1;
    }
    VertexSet::from_iter(ids)
}

/// True iff z lies on some chordless x-y path. Endpoint cases reduce to
/// connectivity; the interior case is the neighbor-pair test.
pub fn interval_contains(g: &WeightedGraph, x: u32, y: u32, z: u32) -> Result<bool> {
    let n = g.vertex_count();
    for v in [x, y, z] {
        if v as usize >= n {
            return Err(Error::VertexOutOfRange(v, n));
        }
    }
    if x == y {
        return Err(Error::InvalidInput("interval endpoints must differ".into()));
    }
    if z == x || z == y {
        return Ok(g.is_connected(x, y));
    }
    let nbrs = g.neighbors_of(z);
    let mut removed = vec![false; n];
    for i in 0..nbrs.len() {
        for j in i + 1..nbrs.len() {
            let (a, b) = (nbrs[i], nbrs[j]);
            if g.adjacent(a, b) {
                continue;
            }
            for v in removed.iter_mut() {
                *v = false;
            }
            removed[z as usize] = true;
            for &w in nbrs {
                if w != a && w != b {
                    removed[w as usize] = true;
                }
            }
            let comp_a = g.component_mask(a, &removed);
            if comp_a[b as usize] {
                continue;
            }
            let comp_b = g.component_mask(b, &removed);
            if (comp_a[x as usize] && comp_b[y as usize])
                || (comp_a[y as usize] && comp_b[x as usize])
            {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The rooted poset with root vertex `root`: rel[u][v] = (u == v) or u lies
/// on some chordless path from v to the root.
///
/// Bulk version of the interval test: for each candidate interior vertex u,
/// the components of G - N[u] are computed once and every valid neighbor
/// pair marks a whole component at a time.
pub fn rooted_poset_at(g: &WeightedGraph, root: u32) -> Result<RootedPoset> {
    let n = g.vertex_count();
    if root as usize >= n {
        return Err(Error::VertexOutOfRange(root, n));
    }
    let mut rel = vec![false; n * n];
    for v in 0..n {
        rel[v * n + v] = true;
    }
    let root_comp = g.component_mask(root, &vec![false; n]);
    for v in 0..n {
        if root_comp[v] {
            rel[root as usize * n + v] = true;
        }
    }
    for u in 0..n as u32 {
        if u == root {
            continue;
        }
        let nbrs = g.neighbors_of(u);
        if nbrs.len() < 2 {
            continue;
        }
        // Components of G - N[u] - u.
        let mut comp_id = vec![usize::MAX; n];
        let mut removed = vec![false; n];
        removed[u as usize] = true;
        for &w in nbrs {
            removed[w as usize] = true;
        }
        let mut comps: Vec<Vec<u32>> = Vec::new();
        for start in 0..n as u32 {
            if removed[start as usize] || comp_id[start as usize] != usize::MAX {
                continue;
            }
            let mask = g.component_mask(start, &removed);
            let members: Vec<u32> =
                (0..n as u32).filter(|&v| mask[v as usize]).collect();
            for &m in &members {
                comp_id[m as usize] = comps.len();
            }
            comps.push(members);
        }
        // Which neighbors each component touches.
        let touch: Vec<Vec<u32>> = comps
            .iter()
            .map(|members| {
                let mut t: Vec<u32> = members
                    .iter()
                    .flat_map(|&m| g.neighbors_of(m).iter().copied())
                    .filter(|&w| w != u && g.adjacent(u, w))
                    .collect();
                t.sort_unstable();
                t.dedup();
                t
            })
            .collect();
        let mut nbr_comps: Vec<Vec<usize>> = vec![Vec::new(); nbrs.len()];
        let idx_of = |w: u32| nbrs.binary_search(&w).unwrap();
        for (c, t) in touch.iter().enumerate() {
            for &w in t {
                nbr_comps[idx_of(w)].push(c);
            }
        }
        // Pairs of neighbors joined through some component.
        let d = nbrs.len();
        let mut joined = vec![false; d * d];
        for t in &touch {
            for (i, &a) in t.iter().enumerate() {
                for &b in &t[i + 1..] {
                    let (ai, bi) = (idx_of(a), idx_of(b));
                    joined[ai * d + bi] = true;
                    joined[bi * d + ai] = true;
                }
            }
        }
        let root_adj_u = g.adjacent(u, root);
        let root_comp_id = if root_adj_u { usize::MAX } else { comp_id[root as usize] };
        for ai in 0..d {
            let a = nbrs[ai];
            for bi in ai + 1..d {
                let b = nbrs[bi];
                if g.adjacent(a, b) || joined[ai * d + bi] {
                    continue;
                }
                // Locate the root's side, if it is in H at all.
                let root_side_a = if root_adj_u {
                    a == root
                } else {
                    root_comp_id != usize::MAX && nbr_comps[ai].contains(&root_comp_id)
                };
                let root_side_b = if root_adj_u {
                    b == root
                } else {
                    root_comp_id != usize::MAX && nbr_comps[bi].contains(&root_comp_id)
                };
                let far = if root_side_a {
                    bi
                } else if root_side_b {
                    ai
                } else {
                    continue;
                };
                // Every vertex on the far side admits a chordless path to the
                // root through u.
                rel[u as usize * n + nbrs[far] as usize] = true;
                for &c in &nbr_comps[far] {
                    for &v in &comps[c] {
                        rel[u as usize * n + v as usize] = true;
                    }
                }
            }
        }
    }
    Ok(RootedPoset { n, rel, root })
}

/// The K-rooted poset of an extended graph: validates that `k` is a maximal
/// clique of the underlying graph and roots at its dummy.
pub fn rooted_poset(ext: &crate::solver::ExtendedGraph, k: &VertexSet) -> Result<RootedPoset> {
    let idx = ext.clique_index(k).ok_or_else(|| Error::NotAMaximalClique(k.clone()))?;
    rooted_poset_at(ext.graph(), ext.dummy_of(idx))
}
