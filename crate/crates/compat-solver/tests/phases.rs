mod common;

use compat_solver::{build_g0, check_partition, iteration_bound, phase1, phase2};
use graph_core::{generate, TreeKind};
use lcl_core::builtin;
use oracle::{completability_dp, RootedInstance};
use rooting::root_tree;
use mpc_sim::MpcConfig;

use common::{random_inputs, random_lcl};

#[test]
fn phases_solve_unreduced_trees() {
    let config = MpcConfig::default();
    let mut solvable_seen = 0;
    for seed in 0..100u64 {
        for kind in TreeKind::ALL.into_iter().filter(|&k| k != TreeKind::Star) {
            let n = 2 + (seed as usize * 7) % 120;
            let f = generate(kind, n, 3, seed).unwrap();
            let lcl = if seed % 3 == 0 { builtin("three-coloring", 3).unwrap() } else { random_lcl(seed, 3, 0.6) };
            let g_in = random_inputs(&f, &lcl, seed);
            let rooting = root_tree(&f, &config).unwrap();
            let parents = rooting.orientation.parents();
            let expected = completability_dp(&RootedInstance::from_lcl(&f, &lcl, &g_in, parents)).solvable();
            let mut all = true;
            for root in rooting.orientation.roots() {
                let tree = build_g0(&f, parents, root, &lcl, &g_in);
                for reverse in [false, true] {
                    let state = phase1(&tree, reverse).unwrap_or_else(|e| panic!("{kind:?} seed {seed}: {e}"));
                    assert!(state.iterations() <= iteration_bound(tree.node_count()), "{kind:?} seed {seed}");
                    assert!(state.potential_violations().is_empty(), "{kind:?} seed {seed}: {:?}", state.potential_violations());
                    let prop = if state.is_unsatisfiable() { None } else { phase2(&tree, &state).unwrap() };
                    match prop {
                        Some(p) => {
                            assert!(tree.is_solution(&p.labels), "{kind:?} seed {seed}");
                            assert!(check_partition(&tree, &state, &p.time_sets), "{kind:?} seed {seed}");
                            assert!(p.iterations() <= state.iterations() + 2, "{kind:?} seed {seed}: {} vs {}", p.iterations(), state.iterations());
                        }
                        None => all = false,
                    }
                }
            }
            assert_eq!(all, expected, "{kind:?} seed {seed}");
            solvable_seen += usize::from(expected);
        }
    }
    assert!(solvable_seen > 30, "{solvable_seen}");
}
