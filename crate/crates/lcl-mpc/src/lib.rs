//! One entry point for the whole pipeline: forests and their text formats,
//! LCL problems and the checker, the MPC simulator, rooting, rake-and-compress
//! decomposition, the generic tree solver and the reference oracles.
//!
//! ```
//! use lcl_mpc::compat_solver::{solve, SolveOutput};
//! use lcl_mpc::graph_core::{generate, TreeKind};
//! use lcl_mpc::lcl_core::{builtin, uniform_inputs};
//! use lcl_mpc::mpc_sim::MpcConfig;
//!
//! let tree = generate(TreeKind::RandomTree, 500, 3, 42).unwrap();
//! let problem = builtin("three-coloring", 3).unwrap();
//! let report = solve(&tree, &problem, &uniform_inputs(&tree), &MpcConfig::default()).unwrap();
//! assert!(matches!(report.output, SolveOutput::Solved(_)));
//! ```

pub use compat_solver;
pub use graph_core;
pub use lcl_core;
pub use mpc_sim;
pub use oracle;
pub use rake_compress;
pub use rooting;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/forests.md")]
    pub mod forests {}
    #[doc = include_str!("../../../book/src/lcl.md")]
    pub mod lcl {}
    #[doc = include_str!("../../../book/src/mpc.md")]
    pub mod mpc {}
    #[doc = include_str!("../../../book/src/rooting.md")]
    pub mod rooting {}
    #[doc = include_str!("../../../book/src/rake-compress.md")]
    pub mod rake_compress {}
    #[doc = include_str!("../../../book/src/solver.md")]
    pub mod solver {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    pub mod oracles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
