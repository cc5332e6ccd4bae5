//! Deterministic rooting of bounded-degree forests on the MPC simulator.
//!
//! Root finding repeatedly runs path exponentiation on the maximal paths of
//! degree-two nodes. A leaf that becomes linked to the far end of its path
//! sets the path aside and the far end loses an edge; the last node left in a
//! component is its root. Afterwards all set-aside paths are oriented in
//! parallel, again by path exponentiation.
//!
//! ```
//! use graph_core::{generate, TreeKind};
//! use mpc_sim::MpcConfig;
//!
//! let tree = generate(TreeKind::RandomTree, 200, 3, 1).unwrap();
//! let outcome = rooting::root_tree(&tree, &MpcConfig::default()).unwrap();
//! outcome.orientation.validate(&tree).unwrap();
//! assert_eq!(outcome.orientation.roots().len(), 1);
//! ```

mod engine;
mod exponentiation;
mod find;
mod orient;
mod orientation;
mod state;

use graph_core::Forest;
use mpc_sim::{extend_trace, MpcConfig, MpcError, RoundTrace};

pub use exponentiation::{path_exponentiation, PathExponentiation};
pub use find::{find_root, FindRootStats, RootFinding, SetAsideRecord};
pub use orient::{orient_paths, PathOrientation};
pub use orientation::{Orientation, OrientationError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootingStats {
    pub find: FindRootStats,
    /// Exponentiation supersteps spent orienting set-aside paths.
    pub orient_steps: usize,
    /// Supersteps of the whole pipeline.
    pub rounds: usize,
}

#[derive(Clone, Debug)]
pub struct RootingOutcome {
    pub orientation: Orientation,
    pub stats: RootingStats,
    pub trace: Vec<RoundTrace>,
}

/// Roots every component: root finding, then orientation of the set-aside paths.
pub fn root_tree(f: &Forest, config: &MpcConfig) -> Result<RootingOutcome, MpcError> {
    let finding = find_root(f, config)?;
    let oriented = orient_paths(f, &finding, config)?;
    let mut trace = finding.trace.clone();
    extend_trace(&mut trace, &oriented.trace);
    Ok(RootingOutcome {
        orientation: Orientation::from_parents(oriented.parent),
        stats: RootingStats {
            find: finding.stats,
            orient_steps: oriented.steps,
            rounds: trace.len(),
        },
        trace,
    })
}
