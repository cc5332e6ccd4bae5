//! Deterministic (α, β)-independent sets on paths.
//!
//! Every decision below is local: a node looks at a bounded number of path
//! neighbors and compares IDs. The sequential code walks positions for
//! convenience only.

/// A path with a proper vertex coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredPath {
    pub nodes: Vec<usize>,
    pub colors: Vec<u32>,
}

impl ColoredPath {
    pub fn is_proper(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] != w[1])
    }
}

/// The chosen set and the number of synchronous stages spent computing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentSet {
    pub members: Vec<usize>,
    pub stages: usize,
}

/// Cole–Vishkin color reduction on a rooted forest, down to colors `0..3`.
fn cole_vishkin(keys: &[u64], parent: &[Option<usize>], stages: &mut usize) -> Vec<u32> {
    let n = keys.len();
    let mut color = keys.to_vec();
    while color.iter().any(|&c| c >= 6) {
        color = (0..n)
            .map(|v| match parent[v] {
                Some(p) => {
                    let bit = (color[v] ^ color[p]).trailing_zeros() as u64;
                    2 * bit + ((color[v] >> bit) & 1)
                }
                None => color[v] & 1,
            })
            .collect();
        *stages += 1;
    }
    let mut children = vec![Vec::new(); n];
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            children[p].push(v);
        }
    }
    for target in [5, 4, 3] {
        // Shift down so that all children of a node share one color.
        color = (0..n)
            .map(|v| match parent[v] {
                Some(p) => color[p],
                None => (0..3).find(|&c| c != color[v]).expect("three colors"),
            })
            .collect();
        for v in 0..n {
            if color[v] == target {
                let used: Vec<u64> = parent[v]
                    .iter()
                    .chain(&children[v])
                    .map(|&u| color[u])
                    .collect();
                color[v] = (0..3).find(|c| !used.contains(c)).expect("at most two colors nearby");
            }
        }
        *stages += 2;
    }
    color.into_iter().map(|c| c as u32).collect()
}

/// Properly colors a path with 9 colors from its node keys (distinct IDs).
///
/// Orienting every edge toward its larger endpoint gives each node up to two
/// larger neighbors. Letting the largest be the parent gives one rooted forest
/// and letting the smallest be the parent gives another; every edge is a
/// parent edge in one of them, so the product of their 3-colorings is proper.
pub fn color_path(nodes: &[usize], stages: &mut usize) -> ColoredPath {
    let k = nodes.len();
    let larger = |p: usize| {
        let mut up: Vec<usize> = [p.checked_sub(1), (p + 1 < k).then_some(p + 1)]
            .into_iter()
            .flatten()
            .filter(|&q| nodes[q] > nodes[p])
            .collect();
        up.sort_by_key(|&q| nodes[q]);
        up
    };
    let by_max: Vec<Option<usize>> = (0..k).map(|p| larger(p).last().copied()).collect();
    let by_min: Vec<Option<usize>> = (0..k).map(|p| larger(p).first().copied()).collect();
    let keys: Vec<u64> = nodes.iter().map(|&v| v as u64).collect();
    let mut first_stages = 0;
    let mut second_stages = 0;
    let first = cole_vishkin(&keys, &by_max, &mut first_stages);
    let second = cole_vishkin(&keys, &by_min, &mut second_stages);
    *stages += first_stages.max(second_stages);
    ColoredPath {
        nodes: nodes.to_vec(),
        colors: first.iter().zip(&second).map(|(a, b)| 3 * a + b).collect(),
    }
}

/// Maximal independent set of a path, as positions, by sweeping color classes.
pub fn path_mis(nodes: &[usize], stages: &mut usize) -> Vec<usize> {
    let colored = color_path(nodes, stages);
    debug_assert!(colored.is_proper());
    let mut chosen = vec![false; nodes.len()];
    for class in 0..9 {
        for p in 0..nodes.len() {
            let blocked = (p > 0 && chosen[p - 1]) || chosen.get(p + 1).copied().unwrap_or(false);
            if colored.colors[p] == class && !blocked {
                chosen[p] = true;
            }
        }
        *stages += 1;
    }
    (0..nodes.len()).filter(|&p| chosen[p]).collect()
}

/// An (α, β)-independent set of the path `nodes` (listed in path order, with
/// node indices in ID order).
///
/// Candidates are the nodes with at least `alpha` path nodes on each side. An
/// MIS of the candidates is thinned by repeated MIS computations on the chain
/// of picks until consecutive picks are more than `alpha` apart, and then a
/// spacing pass splits every gap longer than `2·alpha + 1`.
pub fn alpha_beta_independent_set(nodes: &[usize], alpha: usize, beta: usize) -> IndependentSet {
    assert!(alpha >= 1 && beta >= 2 * alpha, "need beta >= 2 alpha >= 2");
    let k = nodes.len();
    let mut stages = 0;
    if k <= 2 * alpha {
        return IndependentSet { members: Vec::new(), stages };
    }
    let first = alpha;
    let candidates = &nodes[first..k - alpha];
    let mut picks: Vec<usize> = path_mis(candidates, &mut stages).into_iter().map(|p| p + first).collect();
    let mut min_gap = 2;
    while min_gap < alpha + 1 {
        let chain: Vec<usize> = picks.iter().map(|&p| nodes[p]).collect();
        picks = path_mis(&chain, &mut stages).into_iter().map(|q| picks[q]).collect();
        min_gap *= 2;
    }
    let mut bounds = vec![-1isize];
    bounds.extend(picks.iter().map(|&p| p as isize));
    bounds.push(k as isize);
    let mut members = Vec::new();
    let step = alpha as isize + 1;
    for w in bounds.windows(2) {
        let (mut cur, b) = (w[0], w[1]);
        if cur >= 0 {
            members.push(cur as usize);
        }
        while b - cur > 2 * alpha as isize + 1 {
            cur += step;
            members.push(cur as usize);
        }
    }
    stages += 1;
    IndependentSet {
        members: members.into_iter().map(|p| nodes[p]).collect(),
        stages,
    }
}

/// Checks the (α, β)-independent set conditions for `set` on the path `nodes`.
pub fn is_alpha_beta_independent(nodes: &[usize], set: &[usize], alpha: usize, beta: usize) -> bool {
    let k = nodes.len();
    let mut chosen = vec![false; k];
    for v in set {
        match nodes.iter().position(|u| u == v) {
            Some(p) if !chosen[p] => chosen[p] = true,
            _ => return false,
        }
    }
    if k < alpha {
        return set.is_empty();
    }
    if k > 0 && (chosen[0] || chosen[k - 1]) {
        return false;
    }
    if chosen.windows(2).any(|w| w[0] && w[1]) {
        return false;
    }
    chosen
        .split(|&c| c)
        .all(|component| (alpha..=beta).contains(&component.len()))
}
