use thiserror::Error;

use crate::NodeId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Invariant(#[from] Invariant),
}

/// A violated forest invariant, reported with node IDs.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Invariant {
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(NodeId, NodeId),
    #[error("edge {{{0}, {1}}} closes a cycle")]
    Cycle(NodeId, NodeId),
    #[error("node {id} has degree {degree}, above the bound {bound}")]
    DegreeOverflow {
        id: NodeId,
        degree: usize,
        bound: usize,
    },
    #[error("node IDs must be strictly increasing ({0} before {1})")]
    UnorderedIds(NodeId, NodeId),
    #[error("edge refers to unknown node index {0}")]
    UnknownNode(usize),
    #[error("adjacency lists are not symmetric")]
    AsymmetricAdjacency,
}
