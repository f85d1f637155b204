//! Maximum-weight monophonically convex vertex sets in chordal graphs.
//!
//! A vertex set is (monophonically) convex when it contains every vertex of
//! every chordless path between two of its members. This crate computes a
//! maximum-weight convex set of a vertex-weighted chordal graph in polynomial
//! time: it builds the clique-separator graph, labels its arcs bottom-up,
//! collapses blocking arcs for each candidate root clique, and solves the
//! residual instances as maximum-weight ideals of a rooted poset via an exact
//! min-cut. An exponential convexity oracle is included for validating the
//! solver on small instances.

pub mod chordal;
pub mod closure;
pub mod convexity;
pub mod error;
pub mod fixtures;
pub mod gen;
pub mod graph;
pub mod poset;
pub mod solver;

pub use error::{Error, Result};
pub use graph::{VertexSet, WeightedGraph};
pub use solver::{solve, solve_with, Solution, SolveOptions, SolveReport};
