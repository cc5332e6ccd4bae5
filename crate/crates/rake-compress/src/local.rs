use graph_core::Forest;

use crate::decomposition::Decomposition;
use crate::promote::promote;
use crate::tags::sequential_tags;

/// The sequential decomposition with the residual size before every tag iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDecomposition {
    pub decomposition: Decomposition,
    pub residual_per_iteration: Vec<usize>,
}

/// Iterates the tag rules until every node is removed, then promotes.
pub fn decompose_local(f: &Forest, l: usize) -> LocalDecomposition {
    assert!(l >= 2, "path-length constant must be at least 2");
    let (tags, residual_per_iteration) = sequential_tags(f, l);
    LocalDecomposition {
        decomposition: promote(f, &tags, l).decomposition,
        residual_per_iteration,
    }
}
