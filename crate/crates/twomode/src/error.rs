//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building graphs, parsing edge
/// lists, or running the verification scans.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("node index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("self-loop at node {node}")]
    SelfLoop { node: usize },

    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },

    #[error("edge {u}-{v} joins two nodes of the same part")]
    IntraPartEdge { u: usize, v: usize },

    #[error("graph is disconnected; total distances are undefined")]
    DisconnectedGraph,

    #[error("part sizes must be at least 1 (got {left}, {right})")]
    InvalidSize { left: usize, right: usize },

    #[error("power iteration did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("input graph is not a tree")]
    NotATree,

    #[error("root {root} is not adjacent to every node of the opposite part")]
    RootNotAdjacentToOppositePart { root: usize },

    #[error("node {node} is not a neighbor of the root in the opposite part")]
    HubNotAdjacentToRoot { node: usize },

    #[error("degree gap too small: deg {from_degree} vs {to_degree} (need a gap of at least 2)")]
    DegreeGapTooSmall { from_degree: usize, to_degree: usize },

    #[error("root has degree at most 1; the rewrite is undefined there")]
    RootDegreeOne,

    #[error("transform context does not match the given graphs: {reason}")]
    ContextMismatch { reason: &'static str },

    #[error("requested size exceeds the enumeration guard ({detail})")]
    SizeLimitExceeded { detail: String },

    #[error("malformed line {line}: expected exactly two fields")]
    MalformedLine { line: usize },

    #[error("duplicate pair `{left}` `{right}`")]
    DuplicatePair { left: String, right: String },

    #[error("label `{label}` appears in both parts")]
    LabelInBothParts { label: String },

    #[error("no node labeled `{label}`")]
    UnknownLabel { label: String },
}
