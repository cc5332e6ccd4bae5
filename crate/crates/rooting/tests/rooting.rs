use graph_core::{free_trees, generate, Forest, TreeKind};
use mpc_sim::MpcConfig;
use proptest::prelude::*;
use rooting::{find_root, root_tree, Orientation, RootFinding};

fn config() -> MpcConfig {
    MpcConfig::default()
}

/// Each phase keeps at most 7/9 of the residual virtual graph.
fn assert_progress(finding: &RootFinding) {
    for w in finding.stats.residual_per_phase.windows(2) {
        assert!(9 * w[1] <= 7 * w[0], "residual {:?}", finding.stats.residual_per_phase);
    }
}

fn phase_bound(n: usize) -> usize {
    ((n.max(2) as f64).ln() / (9.0f64 / 7.0).ln()).ceil() as usize + 3
}

#[test]
fn single_node_is_its_own_root() {
    let f = Forest::with_sequential_ids(1, &[], 3).unwrap();
    let finding = find_root(&f, &config()).unwrap();
    assert_eq!(finding.roots, vec![0]);
    assert_eq!(finding.stats.phases, 0);
}

#[test]
fn two_node_tree_roots_at_higher_id() {
    let f = Forest::with_sequential_ids(2, &[(0, 1)], 3).unwrap();
    let out = root_tree(&f, &config()).unwrap();
    assert_eq!(out.orientation.roots(), vec![1]);
    assert_eq!(out.orientation.parent(0), Some(1));
}

#[test]
fn star_leaves_set_aside_in_first_phase() {
    let f = generate(TreeKind::Star, 4, 3, 0).unwrap();
    let finding = find_root(&f, &config()).unwrap();
    let center = (0..4).find(|&v| f.degree(v) == 3).unwrap();
    assert_eq!(finding.roots, vec![center]);
    assert_eq!(finding.stats.phases, 1);
    let mut sources: Vec<usize> = finding.records.iter().map(|r| r.source).collect();
    sources.sort_unstable();
    assert_eq!(sources.len(), 3);
    assert!(finding.records.iter().all(|r| r.sink == center));
}

#[test]
fn two_disjoint_edges_root_at_higher_ids() {
    let f = Forest::with_sequential_ids(4, &[(0, 1), (2, 3)], 3).unwrap();
    let out = root_tree(&f, &config()).unwrap();
    assert_eq!(out.orientation.roots(), vec![1, 3]);
}

#[test]
fn path_orientation_matches_bfs_from_root() {
    let f = generate(TreeKind::Path, 8, 2, 0).unwrap();
    let out = root_tree(&f, &config()).unwrap();
    out.orientation.validate(&f).unwrap();
    let root = out.orientation.roots()[0];
    assert_eq!(out.orientation, bfs_orientation(&f, &[root]));
}

#[test]
fn set_aside_path_orients_quickly() {
    // The whole 8-node path is set aside once its ends are linked; orienting
    // it takes at most the three exponentiation steps plus a constant.
    let f = generate(TreeKind::Path, 8, 2, 0).unwrap();
    let out = root_tree(&f, &config()).unwrap();
    assert!(out.stats.orient_steps <= 3 + 2, "{}", out.stats.orient_steps);
}

fn bfs_orientation(f: &Forest, roots: &[usize]) -> Orientation {
    let mut parent = vec![None; f.node_count()];
    let mut seen = vec![false; f.node_count()];
    let mut queue: std::collections::VecDeque<usize> = roots.iter().copied().collect();
    for &r in roots {
        seen[r] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &u in f.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                parent[u] = Some(v);
                queue.push_back(u);
            }
        }
    }
    Orientation::from_parents(parent)
}

#[test]
fn thousand_node_random_tree() {
    let f = generate(TreeKind::RandomTree, 1000, 3, 7).unwrap();
    let out = root_tree(&f, &config()).unwrap();
    out.orientation.validate(&f).unwrap();
    assert_eq!(out.orientation, bfs_orientation(&f, &out.orientation.roots()));
    assert!(out.stats.find.phases <= phase_bound(1000));
    assert!(out.stats.find.max_virtual_edges <= 3);
}

#[test]
fn corpus_progress_and_validity() {
    for kind in TreeKind::ALL {
        for n in [1, 2, 3, 5, 8, 17, 64, 200, 1000] {
            for seed in 0..3 {
                let Ok(f) = generate(kind, n, 3, seed) else { continue };
                let finding = find_root(&f, &config()).unwrap();
                assert_progress(&finding);
                assert!(finding.stats.phases <= phase_bound(n), "{kind:?} n={n}");
                let out = root_tree(&f, &config()).unwrap();
                out.orientation.validate(&f).unwrap();
            }
        }
    }
}

#[test]
fn component_stability_on_small_forests() {
    // Every pair of free trees on at most 8 nodes in total, placed side by side.
    let mut trees = Vec::new();
    for n in 1..=7 {
        trees.extend(free_trees(n, 3));
    }
    for a in &trees {
        for b in &trees {
            if a.node_count() + b.node_count() > 8 {
                continue;
            }
            let forest = disjoint_union(a, b);
            let joint = root_tree(&forest, &config()).unwrap().orientation;
            joint.validate(&forest).unwrap();
            let left = root_tree(a, &config()).unwrap().orientation;
            let right = root_tree(b, &config()).unwrap().orientation;
            let shift = a.node_count();
            let mut expected: Vec<Option<usize>> = left.parents().to_vec();
            expected.extend(right.parents().iter().map(|p| p.map(|p| p + shift)));
            assert_eq!(joint.parents(), expected.as_slice());
        }
    }
}

fn disjoint_union(a: &Forest, b: &Forest) -> Forest {
    let shift = a.node_count();
    let mut edges: Vec<(usize, usize)> = a.edges().map(|e| (e.lo, e.hi)).collect();
    edges.extend(b.edges().map(|e| (e.lo + shift, e.hi + shift)));
    Forest::with_sequential_ids(shift + b.node_count(), &edges, 3).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_trees_root_validly(seed in any::<u64>(), n in 1usize..400) {
        let f = generate(TreeKind::RandomTree, n, 3, seed).unwrap();
        let out = root_tree(&f, &config()).unwrap();
        prop_assert!(out.orientation.validate(&f).is_ok());
        prop_assert_eq!(out.orientation.roots().len(), 1);
    }

    #[test]
    fn random_forests_are_component_stable(seed in any::<u64>(), n in 2usize..120) {
        let f = generate(TreeKind::Forest, n, 3, seed).unwrap();
        let joint = root_tree(&f, &config()).unwrap().orientation;
        for comp in f.components() {
            let sub = f.induced(&comp);
            let alone = root_tree(&sub, &config()).unwrap().orientation;
            for (i, &v) in comp.iter().enumerate() {
                prop_assert_eq!(joint.parent(v), alone.parent(i).map(|p| comp[p]));
            }
        }
    }
}
