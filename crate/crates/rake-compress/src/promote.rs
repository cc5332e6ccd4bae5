use graph_core::Forest;

use crate::decomposition::Decomposition;
use crate::independent::alpha_beta_independent_set;
use crate::tags::{Tag, TagKind};

/// A decomposition after promotion, with the stage count of the promotion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Promotion {
    pub decomposition: Decomposition,
    pub stages: usize,
}

/// Turns tags into layers: a raked node next to a node compressed in the same
/// iteration moves up one layer, and so does every node of an (l, 2l)-independent
/// set of each compressed path.
pub fn promote(f: &Forest, tags: &[Tag], l: usize) -> Promotion {
    let n = f.node_count();
    assert_eq!(tags.len(), n, "one tag per node");
    let mut promoted = vec![false; n];
    for v in 0..n {
        if tags[v].kind == TagKind::Rake {
            promoted[v] = f
                .neighbors(v)
                .iter()
                .any(|&u| tags[u] == Tag { iteration: tags[v].iteration, kind: TagKind::Compress });
        }
    }
    let mut stages = 0;
    for path in compressed_paths(f, tags) {
        let set = alpha_beta_independent_set(&path, l, 2 * l);
        stages = stages.max(set.stages);
        for v in set.members {
            promoted[v] = true;
        }
    }
    Promotion {
        decomposition: Decomposition::new(f, l, tags.to_vec(), promoted),
        stages: stages + 1,
    }
}

/// Components of nodes compressed in the same iteration, in path order from
/// the smaller-ID end.
fn compressed_paths(f: &Forest, tags: &[Tag]) -> Vec<Vec<usize>> {
    let n = f.node_count();
    let linked = |v: usize| {
        f.neighbors(v)
            .iter()
            .copied()
            .filter(move |&u| tags[u] == tags[v] && tags[v].kind == TagKind::Compress)
    };
    let mut seen = vec![false; n];
    let mut paths = Vec::new();
    for v in 0..n {
        if seen[v] || tags[v].kind != TagKind::Compress || linked(v).count() == 2 {
            continue;
        }
        let mut path = vec![v];
        seen[v] = true;
        let mut prev = usize::MAX;
        while let Some(next) = linked(*path.last().expect("nonempty")).find(|&u| u != prev) {
            prev = *path.last().expect("nonempty");
            seen[next] = true;
            path.push(next);
        }
        if path.len() > 1 && path[0] > path[path.len() - 1] {
            path.reverse();
        }
        paths.push(path);
    }
    debug_assert!((0..n).all(|v| seen[v] || tags[v].kind != TagKind::Compress));
    paths.sort();
    paths
}
