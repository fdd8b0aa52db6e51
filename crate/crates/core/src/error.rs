use thiserror::Error;

use crate::graph::VertexSet;

/// Errors produced by graph construction, parsing, and the verification
/// pipeline.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input text; `offset` is the byte offset of the first
    /// offending byte.
    #[error("parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    /// Structurally invalid graph data (loop, duplicate edge, bad order).
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// Vertex index outside `0..n`.
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    /// Input exceeds a hard capacity limit of the requested operation.
    #[error("graph order {n} exceeds the limit {max} for {what}")]
    TooLarge { n: usize, max: usize, what: &'static str },

    /// Operation requires a connected graph.
    #[error("graph is disconnected")]
    Disconnected,

    /// Operation requires a tree (connected, m = n - 1).
    #[error("graph is not a tree: {0}")]
    NotATree(String),

    /// Graph order below the minimum the operation supports.
    #[error("graph order {n} is below the minimum {min} for {what}")]
    OrderTooSmall { n: usize, min: usize, what: &'static str },

    /// Auxiliary digraph requested outside the diameter regime
    /// 2 <= diam <= n - 2 without the relaxed flag.
    #[error("diameter {diameter} of an order-{n} graph is outside the regime 2 <= diam <= n - 2")]
    OutOfRegime { diameter: usize, n: usize },

    /// The anchor set misses a whole component of the host graph.
    #[error("anchor set misses component {component}")]
    ComponentNotCovered { component: VertexSet },

    /// A structural assertion about the auxiliary digraph failed.
    #[error("auxiliary digraph violates rule `{rule}` at set {set}: {detail}")]
    AuxViolation { rule: &'static str, set: VertexSet, detail: String },

    /// A verified claim about tops of the auxiliary digraph failed.
    #[error("claim check `{claim}` failed: {detail}")]
    ClaimViolation { claim: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
