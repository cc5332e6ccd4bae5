use std::collections::{BTreeSet, VecDeque};

use graph_core::Forest;

use crate::ball::{grow, simulate, Ball};
use crate::error::DecompError;
use crate::tags::{tag_iteration, Tag};

/// Tags assigned by a peel and the synchronous rounds it took.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelOutcome {
    pub tags: Vec<Option<Tag>>,
    pub supersteps: usize,
}

/// Removes the next `layers` tag iterations of the residual graph, starting at
/// iteration `first_iteration`, when every node sees its radius-`vision`
/// residual neighborhood.
///
/// With `vision ≥ l`, each node repeatedly simulates `⌊vision / l⌋` iterations
/// on its own ball; otherwise every iteration is a run-length exchange of `l`
/// rounds between neighbors.
pub fn peel(
    f: &Forest,
    residual: &[bool],
    first_iteration: usize,
    layers: usize,
    vision: usize,
    l: usize,
) -> Result<PeelOutcome, DecompError> {
    if vision < layers {
        return Err(DecompError::InsufficientVision { layers, vision });
    }
    let n = f.node_count();
    let mut alive = residual.to_vec();
    let mut tags = vec![None; n];
    let mut supersteps = 0;
    let mut iteration = first_iteration;
    let batch = vision / l;
    let mut left = layers;
    while left > 0 {
        if batch == 0 {
            for (v, tag) in tag_iteration(f, &alive, iteration, l).into_iter().enumerate() {
                if tag.is_some() {
                    tags[v] = tag;
                }
            }
            iteration += 1;
            left -= 1;
            supersteps += l;
        } else {
            let rounds = left.min(batch);
            let removed: Vec<(usize, Tag)> = (0..n)
                .filter(|&v| alive[v])
                .filter_map(|v| {
                    let ball = residual_ball(f, &alive, v, vision);
                    simulate(v, &ball, rounds, l).map(|(j, kind)| (v, Tag { iteration: iteration + j, kind }))
                })
                .collect();
            for (v, tag) in removed {
                tags[v] = Some(tag);
            }
            iteration += rounds;
            left -= rounds;
            supersteps += 1;
        }
        for v in 0..n {
            if tags[v].is_some() {
                alive[v] = false;
            }
        }
    }
    Ok(PeelOutcome { tags, supersteps })
}

fn residual_ball(f: &Forest, alive: &[bool], center: usize, radius: usize) -> Ball {
    let mut edges = Vec::new();
    let mut seen = BTreeSet::from([center]);
    let mut queue = VecDeque::from([(center, 0)]);
    while let Some((v, d)) = queue.pop_front() {
        if d == radius {
            continue;
        }
        for &u in f.neighbors(v) {
            if alive[u] && seen.insert(u) {
                edges.push((v, u));
                queue.push_back((u, d + 1));
            }
        }
    }
    grow(center, edges, radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tags::TagKind;

    fn path(n: usize) -> Forest {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Forest::with_sequential_ids(n, &edges, 2).unwrap()
    }

    #[test]
    fn interior_of_short_path_is_compressed() {
        let f = path(6);
        let out = peel(&f, &[true; 6], 1, 4, 4, 4).unwrap();
        let kinds: Vec<TagKind> = out.tags.iter().map(|t| t.unwrap().kind).collect();
        assert_eq!(kinds[0], TagKind::Rake);
        assert_eq!(kinds[5], TagKind::Rake);
        assert!(kinds[1..5].iter().all(|&k| k == TagKind::Compress));
        assert!(out.tags.iter().all(|t| t.unwrap().iteration == 1));
    }

    #[test]
    fn empty_residual_is_a_no_op() {
        let f = path(5);
        let out = peel(&f, &[false; 5], 1, 4, 4, 4).unwrap();
        assert!(out.tags.iter().all(Option::is_none));
    }

    #[test]
    fn vision_must_cover_layers() {
        let f = path(5);
        assert_eq!(
            peel(&f, &[true; 5], 1, 8, 4, 4),
            Err(DecompError::InsufficientVision { layers: 8, vision: 4 })
        );
    }
}
