mod common;

use compat_solver::{build_g0, phase1, shrink, shrink_steps, CompatTree, MemoEntry, PhaseState};
use graph_core::{generate, TreeKind};
use mpc_sim::MpcConfig;
use oracle::completability_dp;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rooting::root_tree;

use common::{random_inputs, random_lcl, to_instance};

/// Number of links and decided memo entries that disagree with the oracle.
fn disagreements(tree: &CompatTree, state: &PhaseState) -> (usize, usize) {
    let (inst, index) = to_instance(tree);
    let dp = completability_dp(&inst);
    let mut wrong = 0;
    for link in state.links() {
        let expected = dp.pair_set(&inst, index[&link.start], index[&link.end]).expect("end is an ancestor");
        if link.pairs != expected {
            wrong += 1;
        }
    }
    let mut wrong_memo = 0;
    for (v, slot, set) in state.memo().decided() {
        let child = tree.slots(v)[slot];
        assert_eq!(tree.parent(child), Some(v), "memo entries sit on in-edges");
        if set != dp.downward(index[&child]) {
            wrong_memo += 1;
        }
    }
    (wrong, wrong_memo)
}

#[test]
fn links_and_memos_match_completability() {
    let config = MpcConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(0x4c15);
    let mut checked = 0;
    for seed in 0..200u64 {
        let n = rng.gen_range(2..=7);
        let kind = [TreeKind::Path, TreeKind::RandomTree, TreeKind::Caterpillar, TreeKind::Balanced][seed as usize % 4];
        let f = generate(kind, n, 3, seed).unwrap();
        assert!(f.half_edge_count() <= 12);
        let lcl = random_lcl(seed, 3, 0.7);
        let g_in = random_inputs(&f, &lcl, seed);
        let rooting = root_tree(&f, &config).unwrap();
        let parents = rooting.orientation.parents();
        for root in rooting.orientation.roots() {
            let g0 = build_g0(&f, parents, root, &lcl, &g_in);
            let reduced = shrink(&g0, shrink_steps(n)).tree;
            for tree in [&g0, &reduced] {
                let state = phase1(tree, false).unwrap();
                assert_eq!(disagreements(tree, &state), (0, 0), "seed {seed}");
                checked += state.links().len();
            }
        }
    }
    assert!(checked > 1000, "{checked}");
}

#[test]
fn links_match_on_larger_trees() {
    for seed in 0..20u64 {
        let f = generate(TreeKind::RandomTree, 60, 3, seed).unwrap();
        let lcl = random_lcl(seed + 1000, 3, 0.7);
        let g_in = random_inputs(&f, &lcl, seed);
        let rooting = root_tree(&f, &MpcConfig::default()).unwrap();
        let root = rooting.orientation.roots()[0];
        let g0 = build_g0(&f, rooting.orientation.parents(), root, &lcl, &g_in);
        let state = phase1(&g0, false).unwrap();
        assert_eq!(disagreements(&g0, &state), (0, 0), "seed {seed}");
    }
}

#[test]
fn single_edge_takes_one_iteration() {
    let f = graph_core::Forest::with_sequential_ids(2, &[(0, 1)], 1).unwrap();
    let lcl = lcl_core::builtin("three-coloring", 3).unwrap();
    let g_in = lcl_core::uniform_inputs(&f);
    let g0 = build_g0(&f, &[Some(1), None], 1, &lcl, &g_in);
    let state = phase1(&g0, false).unwrap();
    assert_eq!(state.iterations(), 1);
    assert!(state.active().is_empty());
    assert_eq!(state.links().len(), 1);
    let expected: std::collections::BTreeSet<u16> = [0, 1, 2].into();
    assert_eq!(state.memo().get(1, 0), Some(&MemoEntry::Decided(expected)));
}
