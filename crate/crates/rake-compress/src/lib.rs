//! Rake-and-compress decomposition of bounded-degree forests.
//!
//! Nodes are split into layers `V_1, …, V_L`. Each tag iteration removes
//! (rakes) nodes of residual degree at most one and removes (compresses) nodes
//! on long runs of degree-2 nodes; a promotion step then moves a few nodes up
//! one layer so that every multi-node component of a layer is a path of
//! between `l` and `2l` nodes.
//!
//! [`decompose_local`] is the sequential reference. [`decompose`] runs the
//! same rules in the MPC simulator with an exponentiation-batched schedule
//! and produces identical layers.
//!
//! ```
//! use graph_core::{generate, TreeKind};
//! use mpc_sim::MpcConfig;
//! use rake_compress::{decompose, decompose_local, DecomposeParams};
//!
//! let f = generate(TreeKind::RandomTree, 300, 3, 1).unwrap();
//! let out = decompose(&f, &DecomposeParams::default(), &MpcConfig::default()).unwrap();
//! out.decomposition.validate(&f).unwrap();
//! assert_eq!(out.decomposition, decompose_local(&f, 4).decomposition);
//! ```

mod ball;
mod decomposition;
mod error;
mod independent;
mod local;
mod mpc;
mod peel;
mod promote;
mod tags;

pub use decomposition::{parse_layers, validate_layers, Decomposition};
pub use error::DecompError;
pub use independent::{
    alpha_beta_independent_set, color_path, is_alpha_beta_independent, path_mis, ColoredPath, IndependentSet,
};
pub use local::{decompose_local, LocalDecomposition};
pub use mpc::{decompose, peel_constant, planned_phases, DecomposeParams, DecomposeStats, MpcDecomposition};
pub use peel::{peel, PeelOutcome};
pub use promote::{promote, Promotion};
pub use tags::{sequential_tags, tag_iteration, Tag, TagKind};
