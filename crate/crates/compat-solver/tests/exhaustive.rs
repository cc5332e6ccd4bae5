use compat_solver::{solve, SolveOutput};
use graph_core::free_trees;
use lcl_core::{builtin, check_solution, uniform_inputs, BUILTIN_NAMES};
use mpc_sim::MpcConfig;
use oracle::brute_solve;

#[test]
fn agrees_with_brute_force_on_all_small_trees() {
    let config = MpcConfig::default();
    for name in BUILTIN_NAMES {
        let lcl = builtin(name, 3).unwrap();
        for n in 1..=9 {
            for f in free_trees(n, 3) {
                let g_in = uniform_inputs(&f);
                let report = solve(&f, &lcl, &g_in, &config).unwrap_or_else(|e| panic!("{name} n={n}: {e}"));
                let verdict = brute_solve(&f, &lcl, &g_in).unwrap();
                assert_eq!(
                    matches!(report.output, SolveOutput::Solved(_)),
                    verdict.solvable,
                    "{name} on {:?}",
                    f.edges().collect::<Vec<_>>()
                );
                if let SolveOutput::Solved(labels) = &report.output {
                    assert!(check_solution(&f, &lcl, &g_in, labels).unwrap().is_valid());
                }
                for c in &report.stats.components {
                    assert!(c.potential_violations.is_empty(), "{name} n={n}: {:?}", c.potential_violations);
                    assert!(c.phase1_iterations <= c.phase1_bound);
                    assert!(c.partition_holds, "{name} n={n}");
                }
            }
        }
    }
}
