//! Generic solver for node-edge-checkable LCL problems on bounded-degree trees.
//!
//! The input is rooted, encoded as a compatibility tree (label-pair sets on
//! edges, label-tuple sets on nodes) and shrunk by repeated reduction steps.
//! The small tree is then solved in two phases: ancestor links carrying
//! completability information are merged leaves-to-root, and labels are fixed
//! root-to-leaves by splitting the links again. The solution is lifted back
//! through the reduction steps and checked.

mod error;
mod format;
mod phase1;
mod phase2;
mod reduce;
mod solve;
mod tree;

pub use error::SolveError;
pub use format::{parse_output, trace_csv, write_output, OutputError, SOLVER_TRACE_HEADER};
pub use phase1::{
    iteration_bound, phase1, potential, AncestorLink, Block, IterationRecord, LinkId, MemoEntry, NodeKind, NodeMemo,
    PhaseState, Potential,
};
pub use phase2::{between, check_partition, phase2, LabelPropagation};
pub use reduce::{lift, reduce_step, shrink, shrink_steps, Bypass, Pruned, RemovedLeaf, ReplayRecord, Shrunk};
pub use solve::{
    solve, ComponentStats, Phase, SolveOutput, SolveReport, SolveStats, TraceRow, LIFT_ROUNDS, LINKS_PER_NODE,
    PHASE1_ROUNDS, PHASE2_ROUNDS, REDUCE_ROUNDS,
};
pub use tree::{build_g0, to_half_edges, CompatNode, CompatTree, PairSet, SlotLabels, TupleSet};
