//! Bounded-degree forests with canonical half-edge indexing, seeded
//! generators, exhaustive small-tree enumeration, and the TREE v1 text format.

mod enumerate;
mod error;
mod forest;
mod format;
mod generate;
mod labeling;

pub use enumerate::free_trees;
pub use error::{GraphError, Invariant};
pub use forest::{EdgeKey, Forest, HalfEdge, NodeId};
pub use format::{parse_tree, serialize_tree};
pub use generate::{generate, TreeKind};
pub use labeling::HalfEdgeLabeling;
