#![allow(dead_code)]

use graph_core::{Forest, HalfEdgeLabeling};
use lcl_core::{Label, NodeEdgeLcl};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every multiset of size `len` over `0..k`, as sorted vectors.
fn multisets(k: Label, len: usize) -> Vec<Vec<Label>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for m in multisets(k, len - 1) {
        let from = m.last().copied().unwrap_or(0);
        for l in from..k {
            let mut next = m.clone();
            next.push(l);
            out.push(next);
        }
    }
    out
}

/// A random problem with up to three output and two input labels. `density`
/// is the chance that any single configuration is allowed.
pub fn random_lcl(seed: u64, max_degree: usize, density: f64) -> NodeEdgeLcl {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k: Label = rng.gen_range(2..=3);
    let inputs = rng.gen_range(1..=2);
    let node = (1..=max_degree)
        .map(|d| multisets(k, d).into_iter().filter(|_| rng.gen_bool(density)).collect())
        .collect();
    let edge = multisets(k, 2)
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .map(|m| (m[0], m[1]))
        .collect();
    let input_map = (0..inputs)
        .map(|_| (0..k).filter(|_| rng.gen_bool(0.8)).collect())
        .collect();
    NodeEdgeLcl::new(
        (0..inputs).map(|i| format!("i{i}")).collect(),
        (0..k).map(|l| format!("o{l}")).collect(),
        node,
        edge,
        input_map,
    )
    .unwrap()
}

/// Inputs drawn uniformly from the problem's input alphabet.
pub fn random_inputs(f: &Forest, lcl: &NodeEdgeLcl, seed: u64) -> HalfEdgeLabeling<Label> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = lcl.sigma_in().len() as Label;
    HalfEdgeLabeling::from_vec((0..f.half_edge_count()).map(|_| rng.gen_range(0..count)).collect())
}

/// The same tree as an oracle instance, with nodes renumbered in ascending
/// order. Returns the instance and the renumbering.
pub fn to_instance(tree: &compat_solver::CompatTree) -> (oracle::RootedInstance, std::collections::BTreeMap<usize, usize>) {
    let index: std::collections::BTreeMap<usize, usize> = tree.nodes().enumerate().map(|(i, v)| (v, i)).collect();
    let parent = tree.nodes().map(|v| tree.parent(v).map(|p| index[&p])).collect();
    let slots = tree.nodes().map(|v| tree.slots(v).iter().map(|u| index[u]).collect()).collect();
    let node_sets = tree.nodes().map(|v| tree.tuples(v).clone()).collect();
    let up = tree
        .nodes()
        .map(|v| if tree.parent(v).is_some() { tree.up_pairs(v).clone() } else { Default::default() })
        .collect();
    (oracle::RootedInstance::new(tree.label_count(), parent, slots, node_sets, up), index)
}
