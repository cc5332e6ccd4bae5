//! Radius-bounded neighborhoods stored as `(member, parent toward center)` pairs.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::tags::{tag_round, TagKind};

pub(crate) type Ball = Vec<(usize, usize)>;

/// Distance from the center for every ball entry, in entry order.
pub(crate) fn depths(center: usize, ball: &Ball) -> Vec<usize> {
    let parent: BTreeMap<usize, usize> = ball.iter().copied().collect();
    ball.iter()
        .map(|&(m, _)| {
            let (mut d, mut cur) = (0, m);
            while cur != center {
                cur = parent[&cur];
                d += 1;
            }
            d
        })
        .collect()
}

/// Drops removed members and everything behind them.
pub(crate) fn prune(center: usize, ball: &mut Ball, removed: &BTreeSet<usize>) {
    let parent: BTreeMap<usize, usize> = ball.iter().copied().collect();
    ball.retain(|&(m, _)| {
        let mut cur = m;
        while cur != center {
            if removed.contains(&cur) {
                return false;
            }
            cur = parent[&cur];
        }
        true
    });
}

/// BFS from `center` over undirected `edges`, keeping nodes within `radius`.
pub(crate) fn grow(center: usize, edges: impl IntoIterator<Item = (usize, usize)>, radius: usize) -> Ball {
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (a, b) in edges {
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    let mut dist = BTreeMap::from([(center, 0usize)]);
    let mut ball = Vec::new();
    let mut queue = VecDeque::from([center]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        if d == radius {
            continue;
        }
        for &u in adj.get(&v).into_iter().flatten() {
            if let Entry::Vacant(slot) = dist.entry(u) {
                slot.insert(d + 1);
                ball.push((u, v));
                queue.push_back(u);
            }
        }
    }
    ball.sort_unstable();
    ball
}

/// Runs `iterations` tag rounds on the ball and reports when the center left.
///
/// Boundary members may have unseen neighbors, so their degrees can be wrong;
/// the error travels at most `l` hops per round, which keeps the center exact
/// while `iterations · l` does not exceed the ball radius.
pub(crate) fn simulate(center: usize, ball: &Ball, iterations: usize, l: usize) -> Option<(usize, TagKind)> {
    let mut nodes: Vec<usize> = ball.iter().map(|&(m, _)| m).collect();
    nodes.push(center);
    nodes.sort_unstable();
    let local = |v: usize| nodes.binary_search(&v).expect("ball member");
    let mut adj = vec![Vec::new(); nodes.len()];
    for &(m, p) in ball {
        let (a, b) = (local(m), local(p));
        adj[a].push(b);
        adj[b].push(a);
    }
    let me = local(center);
    let mut alive = vec![true; nodes.len()];
    for round in 0..iterations {
        let tags = tag_round(|v| &adj[v], &alive, l);
        if let Some(kind) = tags[me] {
            return Some((round, kind));
        }
        for (v, tag) in tags.iter().enumerate() {
            if tag.is_some() {
                alive[v] = false;
            }
        }
    }
    None
}
