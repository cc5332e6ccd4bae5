use graph_core::{Forest, HalfEdgeLabeling};
use lcl_core::{check_solution, Label, NodeEdgeLcl};
use mpc_sim::{BroadcastTree, MpcConfig, RoundTrace};

use crate::phase1::{iteration_bound, phase1, PhaseState};
use crate::phase2::phase2;
use crate::reduce::{shrink, shrink_steps};
use crate::tree::{build_g0, to_half_edges};
use crate::SolveError;

/// Rounds charged per reduction step on top of the independent-set stages.
pub const REDUCE_ROUNDS: usize = 3;
/// Rounds charged per lifted reduction step.
pub const LIFT_ROUNDS: usize = 2;
/// Rounds charged per iteration of the first phase.
pub const PHASE1_ROUNDS: usize = 3;
/// Rounds charged per iteration of the second phase.
pub const PHASE2_ROUNDS: usize = 2;
/// Stored links allowed per input node; every link is kept at both endpoints.
pub const LINKS_PER_NODE: usize = 16;

/// What the solver outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutput {
    Solved(HalfEdgeLabeling<Label>),
    NoSolution,
}

/// Which phase a trace row belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    First,
    Second,
}

/// One row of the solver trace. Potentials are only defined in the first phase.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    pub component: usize,
    pub iteration: usize,
    pub phase: Phase,
    pub potential: Option<(usize, f64)>,
    pub active_links: usize,
    pub total_links: usize,
}

/// Per-component measurements.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentStats {
    pub root: usize,
    /// Node counts before reduction and after each reduction step.
    pub sizes: Vec<usize>,
    pub phase1_iterations: usize,
    pub phase1_bound: usize,
    pub phase2_iterations: usize,
    pub links: usize,
    /// Iterations at which the potential failed to shrink by 7/8 over two iterations.
    pub potential_violations: Vec<usize>,
    pub partition_holds: bool,
    pub rounds: usize,
}

/// Totals over the whole run.
#[derive(Clone, Debug, PartialEq)]
pub struct SolveStats {
    pub rooting_rounds: usize,
    pub components: Vec<ComponentStats>,
    /// Links stored at both endpoints, over all components.
    pub stored_links: usize,
    pub link_capacity: usize,
    /// Rounds for rooting, the slowest component and the final verdict broadcast.
    pub rounds: usize,
}

impl SolveStats {
    pub fn phase1_iterations(&self) -> usize {
        self.components.iter().map(|c| c.phase1_iterations).max().unwrap_or(0)
    }

    pub fn phase2_iterations(&self) -> usize {
        self.components.iter().map(|c| c.phase2_iterations).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub output: SolveOutput,
    pub stats: SolveStats,
    pub trace: Vec<TraceRow>,
    /// Simulator rounds of the rooting stage.
    pub rooting_trace: Vec<RoundTrace>,
}

/// Solves `lcl` on every component of `f` and checks the result.
///
/// Components are rooted together and then solved independently; a component
/// without a solution makes the whole output "no solution". Node visiting
/// order is reversed when `config.reverse_order` is set.
pub fn solve(
    f: &Forest,
    lcl: &NodeEdgeLcl,
    g_in: &HalfEdgeLabeling<Label>,
    config: &MpcConfig,
) -> Result<SolveReport, SolveError> {
    let n = f.node_count();
    let rooting = rooting::root_tree(f, config)?;
    let parents = rooting.orientation.parents();
    let steps = shrink_steps(n);
    let mut out = HalfEdgeLabeling::empty(f);
    let mut solved = true;
    let mut components = Vec::new();
    let mut trace = Vec::new();

    for (c, root) in rooting.orientation.roots().into_iter().enumerate() {
        let g0 = build_g0(f, parents, root, lcl, g_in);
        let shrunk = shrink(&g0, steps);
        let reduced = &shrunk.tree;
        let state = phase1(reduced, config.reverse_order)?;
        push_first_phase(&mut trace, c, &state);
        let propagation = if state.is_unsatisfiable() {
            None
        } else {
            phase2(reduced, &state)?
        };
        let mut stats = ComponentStats {
            root,
            sizes: shrunk.sizes.clone(),
            phase1_iterations: state.iterations(),
            phase1_bound: iteration_bound(reduced.node_count()),
            phase2_iterations: 0,
            links: state.links().len(),
            potential_violations: state.potential_violations(),
            partition_holds: true,
            rounds: 0,
        };
        let total_links = state.links().len();
        match propagation {
            Some(prop) => {
                stats.phase2_iterations = prop.iterations();
                stats.partition_holds = crate::phase2::check_partition(reduced, &state, &prop.time_sets);
                for (i, set) in prop.time_sets.iter().enumerate() {
                    trace.push(TraceRow {
                        component: c,
                        iteration: i + 1,
                        phase: Phase::Second,
                        potential: None,
                        active_links: set.len(),
                        total_links,
                    });
                }
                let mut labels = prop.labels;
                if shrunk.lift(&mut labels).is_some() && g0.is_solution(&labels) {
                    to_half_edges(f, &g0, &labels, &mut out);
                } else {
                    solved = false;
                }
            }
            None => solved = false,
        }
        let stages: usize = shrunk.records.iter().map(|r| r.stages + REDUCE_ROUNDS + LIFT_ROUNDS).sum();
        stats.rounds = stages + PHASE1_ROUNDS * stats.phase1_iterations + PHASE2_ROUNDS * stats.phase2_iterations;
        components.push(stats);
    }

    let stored_links = 2 * components.iter().map(|c| c.links).sum::<usize>();
    let link_capacity = LINKS_PER_NODE * n.max(1);
    if stored_links > link_capacity {
        return Err(SolveError::LinkCapacity {
            links: stored_links,
            capacity: link_capacity,
        });
    }
    if solved {
        solved = check_solution(f, lcl, g_in, &out)?.is_valid();
    }
    let verdict = 2 * BroadcastTree::new(n.max(1), config.fanout(n.max(1))).depth() + 1;
    let rounds = rooting.stats.rounds + components.iter().map(|c| c.rounds).max().unwrap_or(0) + verdict;
    Ok(SolveReport {
        output: if solved { SolveOutput::Solved(out) } else { SolveOutput::NoSolution },
        stats: SolveStats {
            rooting_rounds: rooting.stats.rounds,
            components,
            stored_links,
            link_capacity,
            rounds,
        },
        trace,
        rooting_trace: rooting.trace,
    })
}

fn push_first_phase(trace: &mut Vec<TraceRow>, component: usize, state: &PhaseState) {
    for r in state.history() {
        trace.push(TraceRow {
            component,
            iteration: r.iteration,
            phase: Phase::First,
            potential: Some((r.potential.leaves, r.potential.blocks)),
            active_links: r.active_links,
            total_links: r.total_links,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lcl_core::{builtin, uniform_inputs};

    fn run(f: &Forest, name: &str) -> SolveReport {
        let lcl = builtin(name, 3).unwrap();
        solve(f, &lcl, &uniform_inputs(f), &MpcConfig::default()).unwrap()
    }

    #[test]
    fn free_problem_takes_smallest_labels() {
        let f = Forest::with_sequential_ids(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)], 3).unwrap();
        let SolveOutput::Solved(labels) = run(&f, "free").output else { panic!("free is solvable") };
        assert!(labels.iter().all(|(_, &l)| l == 0));
    }

    #[test]
    fn components_are_solved_separately() {
        let f = Forest::with_sequential_ids(5, &[(0, 1), (2, 3), (3, 4)], 3).unwrap();
        let report = run(&f, "two-coloring");
        assert_eq!(report.stats.components.len(), 2);
        assert!(matches!(report.output, SolveOutput::Solved(_)));
        assert!(report.stats.stored_links <= report.stats.link_capacity);
        assert!(report.stats.rounds > report.stats.rooting_rounds);
    }

    #[test]
    fn one_unsolvable_component_fails_the_forest() {
        let f = Forest::with_sequential_ids(3, &[(0, 1)], 3).unwrap();
        assert_eq!(run(&f, "unsatisfiable-edge").output, SolveOutput::NoSolution);
        let single = Forest::with_sequential_ids(1, &[], 3).unwrap();
        assert!(matches!(run(&single, "unsatisfiable-edge").output, SolveOutput::Solved(_)));
    }

    #[test]
    fn trace_covers_both_phases() {
        let edges: Vec<(usize, usize)> = (1..40).map(|v| (v - 1, v)).collect();
        let f = Forest::with_sequential_ids(40, &edges, 2).unwrap();
        let report = run(&f, "three-coloring");
        assert!(report.trace.iter().any(|r| r.phase == Phase::First && r.potential.is_some()));
        assert!(report.trace.iter().any(|r| r.phase == Phase::Second && r.potential.is_none()));
    }
}
