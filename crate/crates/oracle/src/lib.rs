//! Reference solvers for small instances.
//!
//! [`brute_solve`] searches output labelings of a forest in lexicographic
//! half-edge order. [`completability_dp`] computes, on a rooted instance with
//! explicit edge pair sets and node tuple sets, which labels can be completed
//! below each edge and which endpoint label pairs can be completed along an
//! ancestor path. Neither shares code with the solvers they certify.

mod brute;
mod dp;
mod error;
mod instance;

pub use brute::{brute_solve, brute_solve_with_budget, OracleVerdict, DEFAULT_BUDGET};
pub use dp::{completability_dp, Completability};
pub use error::OracleError;
pub use instance::{PairSet, RootedInstance, TupleSet};
