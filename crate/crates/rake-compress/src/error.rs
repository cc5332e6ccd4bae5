use graph_core::NodeId;
use mpc_sim::MpcError;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("expected {expected} layer entries, found {found}")]
    Length { expected: usize, found: usize },
    #[error("node {0} has no layer")]
    MissingLayer(NodeId),
    #[error("node {node} in layer {layer} has {degree} neighbors in layers at or above its own")]
    Degree { node: NodeId, layer: usize, degree: usize },
    #[error("layer {layer} has a path of {length} nodes starting at node {first}")]
    PathLength { layer: usize, length: usize, first: NodeId },
    #[error("path node {node} in layer {layer} does not have exactly two neighbors at or above its layer")]
    PathDegree { node: NodeId, layer: usize },
    #[error("top layer contains an edge at node {0}")]
    TopNotIsolated(NodeId),
    #[error("peeling {layers} layers needs vision {layers}, but nodes see radius {vision}")]
    InsufficientVision { layers: usize, vision: usize },
    #[error("DECOMP v1 line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Mpc(#[from] MpcError),
}
