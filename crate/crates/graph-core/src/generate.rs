use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Forest, GraphError};

/// Shapes produced by [`generate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TreeKind {
    Path,
    Star,
    /// Complete tree filled in breadth-first order: the root takes up to Δ
    /// children, every other node up to Δ − 1.
    Balanced,
    /// A spine where every spine node carries up to Δ − 2 legs.
    Caterpillar,
    /// Uniform attachment to an earlier node with spare degree, IDs shuffled.
    RandomTree,
    /// Like `RandomTree`, but each node starts a new component with probability 1/8.
    Forest,
}

impl TreeKind {
    pub const ALL: [TreeKind; 6] = [
        TreeKind::Path,
        TreeKind::Star,
        TreeKind::Balanced,
        TreeKind::Caterpillar,
        TreeKind::RandomTree,
        TreeKind::Forest,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TreeKind::Path => "path",
            TreeKind::Star => "star",
            TreeKind::Balanced => "balanced",
            TreeKind::Caterpillar => "caterpillar",
            TreeKind::RandomTree => "random-tree",
            TreeKind::Forest => "forest",
        }
    }
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TreeKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TreeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| GraphError::InvalidParameters(format!("unknown tree kind `{s}`")))
    }
}

/// Deterministically generates a forest of the given shape on IDs `1..=n`.
pub fn generate(kind: TreeKind, n: usize, max_degree: usize, seed: u64) -> Result<Forest, GraphError> {
    let invalid = |msg: String| Err(GraphError::InvalidParameters(msg));
    if n == 0 {
        return invalid("n must be at least 1".into());
    }
    let needs = match kind {
        TreeKind::Star => n - 1,
        _ => (n - 1).min(2),
    };
    if max_degree < needs {
        return invalid(format!("{kind} on {n} nodes needs Δ ≥ {needs}, got {max_degree}"));
    }
    let edges = match kind {
        TreeKind::Path => (1..n).map(|v| (v - 1, v)).collect(),
        TreeKind::Star => (1..n).map(|v| (0, v)).collect(),
        TreeKind::Balanced => balanced(n, max_degree),
        TreeKind::Caterpillar => caterpillar(n, max_degree),
        TreeKind::RandomTree => random_attachment(n, max_degree, seed, 0.0),
        TreeKind::Forest => random_attachment(n, max_degree, seed, 0.125),
    };
    Forest::with_sequential_ids(n, &edges, max_degree)
}

fn balanced(n: usize, max_degree: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut queue = VecDeque::from([0usize]);
    let mut next = 1;
    while next < n {
        let v = queue.pop_front().expect("queue holds unfilled parents");
        let slots = if v == 0 { max_degree } else { max_degree - 1 };
        for _ in 0..slots {
            if next == n {
                break;
            }
            edges.push((v, next));
            queue.push_back(next);
            next += 1;
        }
    }
    edges
}

fn caterpillar(n: usize, max_degree: usize) -> Vec<(usize, usize)> {
    let legs_per_spine = max_degree.saturating_sub(2);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut spine = 0;
    let mut legs = 0;
    for v in 1..n {
        edges.push((spine, v));
        if legs < legs_per_spine {
            legs += 1;
        } else {
            spine = v;
            legs = 0;
        }
    }
    edges
}

fn random_attachment(n: usize, max_degree: usize, seed: u64, new_component: f64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degree = vec![0usize; n];
    let mut open: Vec<usize> = vec![0];
    let mut raw = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        if new_component > 0.0 && rng.gen_bool(new_component) {
            open.push(v);
            continue;
        }
        let slot = rng.gen_range(0..open.len());
        let parent = open[slot];
        raw.push((parent, v));
        degree[parent] += 1;
        degree[v] += 1;
        if degree[parent] == max_degree {
            open.swap_remove(slot);
        }
        if degree[v] < max_degree {
            open.push(v);
        }
    }
    let mut relabel: Vec<usize> = (0..n).collect();
    relabel.shuffle(&mut rng);
    raw.into_iter()
        .map(|(a, b)| (relabel[a], relabel[b]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_and_star_shapes() {
        let p = generate(TreeKind::Path, 8, 2, 0).unwrap();
        assert_eq!(p.edge_count(), 7);
        assert!((1..7).all(|v| p.degree(v) == 2));
        let s = generate(TreeKind::Star, 4, 3, 0).unwrap();
        assert_eq!(s.degree(0), 3);
        assert!((1..4).all(|v| s.neighbors(v) == [0]));
    }

    #[test]
    fn impossible_star_is_rejected() {
        assert!(matches!(
            generate(TreeKind::Star, 5, 3, 0),
            Err(GraphError::InvalidParameters(_))
        ));
        assert!(generate(TreeKind::Path, 0, 2, 0).is_err());
    }

    #[test]
    fn random_tree_satisfies_invariants() {
        let f = generate(TreeKind::RandomTree, 100, 3, 7).unwrap();
        f.validate().unwrap();
        assert_eq!(f.components().len(), 1);
        assert!((0..100).all(|v| f.degree(v) <= 3));
        assert_eq!(f.half_edges().len(), 2 * 99);
    }

    #[test]
    fn same_seed_same_forest() {
        for kind in TreeKind::ALL.into_iter().filter(|&k| k != TreeKind::Star) {
            let a = generate(kind, 64, 3, 11).unwrap();
            let b = generate(kind, 64, 3, 11).unwrap();
            assert_eq!(a, b, "{kind}");
            a.validate().unwrap();
        }
        assert_ne!(
            generate(TreeKind::RandomTree, 64, 3, 1).unwrap(),
            generate(TreeKind::RandomTree, 64, 3, 2).unwrap()
        );
    }

    #[test]
    fn trees_are_connected_and_forests_are_not_always() {
        for kind in [TreeKind::Path, TreeKind::Balanced, TreeKind::Caterpillar, TreeKind::RandomTree] {
            let f = generate(kind, 50, 3, 3).unwrap();
            assert_eq!(f.edge_count(), 49, "{kind}");
        }
        let f = generate(TreeKind::Forest, 200, 3, 3).unwrap();
        assert!(f.components().len() > 1);
    }
}
