use std::collections::{BTreeMap, VecDeque};

use crate::Forest;

type Adjacency = Vec<Vec<usize>>;

/// Every tree on `n` nodes with maximum degree at most `max_degree`, one per
/// isomorphism class, with IDs assigned in canonical breadth-first order.
pub fn free_trees(n: usize, max_degree: usize) -> Vec<Forest> {
    if n == 0 {
        return Vec::new();
    }
    let mut level: BTreeMap<String, Adjacency> = BTreeMap::new();
    level.insert(canonical(&vec![Vec::new()]).0, vec![Vec::new()]);
    for size in 1..n {
        let mut next = BTreeMap::new();
        for adj in level.values() {
            for v in 0..size {
                if adj[v].len() >= max_degree {
                    continue;
                }
                let mut grown = adj.clone();
                grown.push(vec![v]);
                grown[v].push(size);
                let (code, relabeled) = canonical(&grown);
                next.entry(code).or_insert(relabeled);
            }
        }
        level = next;
    }
    level
        .into_values()
        .map(|adj| {
            let edges: Vec<_> = adj
                .iter()
                .enumerate()
                .flat_map(|(v, list)| list.iter().filter(move |&&u| u > v).map(move |&u| (v, u)))
                .collect();
            Forest::with_sequential_ids(n, &edges, max_degree).expect("enumerated trees are valid")
        })
        .collect()
}

fn centers(adj: &Adjacency) -> Vec<usize> {
    let n = adj.len();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= leaves.len();
        let mut next = Vec::new();
        for &leaf in &leaves {
            for &u in &adj[leaf] {
                degree[u] -= 1;
                if degree[u] == 1 {
                    next.push(u);
                }
            }
        }
        leaves = next;
    }
    leaves.sort_unstable();
    leaves
}

fn encode(adj: &Adjacency, v: usize, parent: usize) -> String {
    let mut parts: Vec<String> = adj[v]
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| encode(adj, u, v))
        .collect();
    parts.sort();
    format!("({})", parts.concat())
}

/// Canonical code and the tree relabeled in canonical breadth-first order.
fn canonical(adj: &Adjacency) -> (String, Adjacency) {
    let (code, root) = centers(adj)
        .into_iter()
        .map(|c| (encode(adj, c, usize::MAX), c))
        .min()
        .expect("non-empty tree has a center");
    let n = adj.len();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        let mut kids: Vec<(String, usize)> = adj[v]
            .iter()
            .filter(|&&u| u != parent[v])
            .map(|&u| (encode(adj, u, v), u))
            .collect();
        kids.sort();
        for (_, u) in kids {
            parent[u] = v;
            queue.push_back(u);
        }
    }
    let mut new_index = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        new_index[v] = i;
    }
    let mut relabeled = vec![Vec::new(); n];
    for (v, list) in adj.iter().enumerate() {
        relabeled[new_index[v]] = list.iter().map(|&u| new_index[u]).collect();
    }
    (code, relabeled)
}
