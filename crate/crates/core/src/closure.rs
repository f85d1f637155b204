//! Picard's maximum-weight ideal solver over a partial order, reduced to
//! minimum s-t cut on an exact integer flow network.
//!
//! The network has a source arc of capacity w(v) for positive weights, a sink
//! arc of capacity -w(v) for negative weights, and an uncuttable arc v -> u
//! for every relation pair u < v (selecting v forces u). Required elements
//! get an uncuttable source arc instead of the big-M reweighting; big-M is
//! kept below as a differential test oracle. "Uncuttable" is the finite
//! sentinel 1 + Σ|w|, provably above any finite cut.

use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::poset::RootedPoset;

/// A maximum-weight ideal instance: ground set, full order relation
/// (`rel[u*n+v]` meaning u ≤ v), exact weights, and elements forced into the
/// solution.
#[derive(Clone, Debug)]
pub struct ClosureInstance {
    n: usize,
    rel: Vec<bool>,
    weights: Vec<i64>,
    required: VertexSet,
}

impl ClosureInstance {
    pub fn new(n: usize, rel: Vec<bool>, weights: Vec<i64>, required: VertexSet) -> Result<Self> {
        if rel.len() != n * n || weights.len() != n {
            return Err(Error::InvalidInput("relation/weight dimensions do not match".into()));
        }
        if let Some(v) = required.iter().find(|&v| v as usize >= n) {
            return Err(Error::VertexOutOfRange(v, n));
        }
        let total: i128 = weights.iter().map(|&w| (w as i128).abs()).sum();
        if total >= i64::MAX as i128 / 4 / (n.max(1) as i128) {
            return Err(Error::WeightOverflow);
        }
        Ok(ClosureInstance { n, rel, weights, required })
    }

    pub fn from_poset(p: &RootedPoset, weights: Vec<i64>, required: VertexSet) -> Result<Self> {
        ClosureInstance::new(p.len(), p.relation().to_vec(), weights, required)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn le(&self, u: usize, v: usize) -> bool {
        self.rel[u * self.n + v]
    }

    fn weight_of_mask(&self, members: impl Iterator<Item = u32>) -> i64 {
        members.map(|v| self.weights[v as usize]).sum()
    }
}

#[derive(Clone, Debug)]
struct FlowEdge {
    to: u32,
    cap: i64,
}

/// Directed capacitated network with paired residual edges (edge `i ^ 1` is
/// the reverse of edge `i`).
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    adj: Vec<Vec<u32>>,
    edges: Vec<FlowEdge>,
    source: usize,
    sink: usize,
    infinite: i64,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize, infinite: i64) -> Self {
        FlowNetwork { adj: vec![Vec::new(); nodes], edges: Vec::new(), source, sink, infinite }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn infinite(&self) -> i64 {
        self.infinite
    }

    pub fn add_edge(&mut self, u: usize, v: usize, cap: i64) {
        debug_assert!(cap >= 0);
        let idx = self.edges.len() as u32;
        self.edges.push(FlowEdge { to: v as u32, cap });
        self.edges.push(FlowEdge { to: u as u32, cap: 0 });
        self.adj[u].push(idx);
        self.adj[v].push(idx + 1);
    }

    /// DIMACS max-flow format dump for debugging.
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p max {} {}\n", self.node_count(), self.edges.len() / 2));
        out.push_str(&format!("n {} s\n", self.source + 1));
        out.push_str(&format!("n {} t\n", self.sink + 1));
        for (i, e) in self.edges.iter().enumerate().step_by(2) {
            let from = self.edges[i + 1].to;
            out.push_str(&format!("a {} {} {}\n", from + 1, e.to + 1, e.cap));
        }
        out
    }
}

/// Exact max flow by highest-label push-relabel with the gap heuristic.
/// Returns the flow value and the source side of a minimum cut (the residual
/// reachability of the source, which is the unique inclusion-minimal min
/// cut).
pub fn max_flow_min_cut(net: &mut FlowNetwork) -> (i64, Vec<bool>) {
    let n = net.node_count();
    let (s, t) = (net.source, net.sink);
    let mut height = vec![0usize; n];
    let mut excess = vec![0i64; n];
    let mut cur = vec![0usize; n];
    let mut count = vec![0usize; 2 * n + 2];
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); 2 * n + 2];
    let mut highest = 0usize;

    height[s] = n;
    count[0] = n - 1;
    count[n] += 1;

    macro_rules! push {
        ($u:expr, $ei:expr) => {{
            let u = $u;
            let ei = $ei;
            let v = net.edges[ei].to as usize;
            let delta = excess[u].min(net.edges[ei].cap);
            net.edges[ei].cap -= delta;
            net.edges[ei ^ 1].cap += delta;
            excess[u] -= delta;
            let was = excess[v];
            excess[v] += delta;
            if was == 0 && delta > 0 && v != s && v != t {
                buckets[height[v]].push(v as u32);
                highest = highest.max(height[v]);
            }
        }};
    }

    let source_edges: Vec<u32> = net.adj[s].clone();
    excess[s] = source_edges.iter().map(|&ei| net.edges[ei as usize].cap).sum();
    for ei in source_edges {
        push!(s, ei as usize);
    }

    loop {
        while highest > 0 && buckets[highest].is_empty() {
            highest -= 1;
        }
        if highest == 0 && buckets[0].is_empty() {
            break;
        }
        let u = buckets[highest].pop().unwrap() as usize;
        if excess[u] == 0 {
            continue;
        }
        if height[u] != highest {
            // lifted by a gap while queued; requeue at the current height
            buckets[height[u]].push(u as u32);
            highest = highest.max(height[u]);
            continue;
        }
        // discharge
        while excess[u] > 0 {
            if cur[u] == net.adj[u].len() {
                // relabel; a node with excess always has a residual arc back
                // along the flow that reached it, so new_h is finite and
                // below 2n
                let old = height[u];
                let mut new_h = usize::MAX;
                for &ei in &net.adj[u] {
                    let e = &net.edges[ei as usize];
                    if e.cap > 0 {
                        new_h = new_h.min(height[e.to as usize] + 1);
                    }
                }
                debug_assert!(new_h <= 2 * n);
                count[old] -= 1;
                if count[old] == 0 && old < n {
                    // gap: nothing can route through the missing level
                    for v in 0..n {
                        if v != s && old < height[v] && height[v] <= n {
                            count[height[v]] -= 1;
                            height[v] = n + 1;
                            count[n + 1] += 1;
                        }
                    }
                }
                height[u] = height[u].max(new_h.min(2 * n + 1));
                count[height[u]] += 1;
                cur[u] = 0;
                continue;
            }
            let ei = net.adj[u][cur[u]] as usize;
            let e = &net.edges[ei];
            if e.cap > 0 && height[u] == height[e.to as usize] + 1 {
                push!(u, ei);
            } else {
                cur[u] += 1;
            }
        }
    }

    debug_assert!((0..n).all(|v| v == s || v == t || excess[v] == 0));
    let flow = excess[t];
    // residual reachability from the source
    let mut side = vec![false; n];
    side[s] = true;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        for &ei in &net.adj[u] {
            let e = &net.edges[ei as usize];
            if e.cap > 0 && !side[e.to as usize] {
                side[e.to as usize] = true;
                stack.push(e.to as usize);
            }
        }
    }
    (flow, side)
}

/// Builds the Picard network for a closure instance.
pub fn build_network(inst: &ClosureInstance) -> FlowNetwork {
    let n = inst.n;
    let (source, sink) = (n, n + 1);
    let infinite = 1 + inst.weights.iter().map(|w| w.abs()).sum::<i64>();
    let mut net = FlowNetwork::new(n + 2, source, sink, infinite);
    for (v, &w) in inst.weights.iter().enumerate() {
        if w > 0 {
            net.add_edge(source, v, w);
        } else if w < 0 {
            net.add_edge(v, sink, -w);
        }
    }
    for v in 0..n {
        for u in 0..n {
            if u != v && inst.le(u, v) {
                net.add_edge(v, u, infinite);
            }
        }
    }
    for r in inst.required.iter() {
        net.add_edge(source, r as usize, infinite);
    }
    net
}

/// Maximum-weight ideal containing the required set, as (set, exact weight).
pub fn max_weight_ideal(inst: &ClosureInstance) -> Result<(VertexSet, i64)> {
    let mut net = build_network(inst);
    let (flow, side) = max_flow_min_cut(&mut net);
    let ideal = VertexSet::from_iter((0..inst.n as u32).filter(|&v| side[v as usize]));
    if !inst.required.is_subset(&ideal) {
        return Err(Error::Internal("required element forced out of the closure".into()));
    }
    let weight = inst.weight_of_mask(ideal.iter());
    let positives: i64 = inst.weights.iter().filter(|&&w| w > 0).sum();
    if weight != positives - flow {
        return Err(Error::Internal("min-cut value inconsistent with ideal weight".into()));
    }
    debug_assert!(is_downward_closed(inst, &ideal));
    Ok((ideal, weight))
}

/// The big-M forcing route: required elements are reweighted to the sentinel
/// (one above the total magnitude, so forcing is strict) and the unforced
/// optimum is corrected back to true weights. Retained as a test oracle for
/// the uncuttable-arc forcing above.
pub fn max_weight_ideal_big_m(inst: &ClosureInstance) -> Result<(VertexSet, i64)> {
    let m = 1 + inst.weights.iter().map(|w| w.abs()).sum::<i64>();
    let mut weights = inst.weights.clone();
    for r in inst.required.iter() {
        weights[r as usize] = m;
    }
    let relaxed = ClosureInstance::new(inst.n, inst.rel.clone(), weights, VertexSet::new())?;
    let (ideal, _) = max_weight_ideal(&relaxed)?;
    if !inst.required.is_subset(&ideal) {
        return Err(Error::Internal("big-M forcing failed".into()));
    }
    let weight = inst.weight_of_mask(ideal.iter());
    Ok((ideal, weight))
}

fn is_downward_closed(inst: &ClosureInstance, set: &VertexSet) -> bool {
    for v in set.iter() {
        for u in 0..inst.n as u32 {
            if inst.le(u as usize, v as usize) && !set.contains(u) {
                return false;
            }
        }
    }
    true
}
