use crate::graph::VertexSet;

/// Errors produced by the library.
///
/// The CLI maps these onto its exit-code classes: `Parse*` variants never
/// occur here (parsing lives in the CLI crate), `SizeGuard` is its own class,
/// and everything else is an input/precondition failure except `Internal`.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("vertex {0} out of range (graph has {1} vertices)")]
    VertexOutOfRange(u32, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u32, u32),
    #[error("sequence is not a path in the graph")]
    NotAPath,
    #[error("graph is not chordal")]
    NotChordal,
    #[error("arc index {0} out of range ({1} arcs)")]
    NotAnArc(usize, usize),
    #[error("{0:?} is not a maximal clique of the graph")]
    NotAMaximalClique(VertexSet),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("instance too large for exhaustive procedure: {actual} vertices exceeds limit {limit}")]
    SizeGuard { limit: usize, actual: usize },
    #[error("total weight magnitude too large for exact 64-bit arithmetic")]
    WeightOverflow,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
