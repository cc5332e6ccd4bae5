use lcl_core::LclError;
use mpc_sim::MpcError;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("invariant `{what}` violated at node {node}")]
    Invariant { what: &'static str, node: usize },
    #[error("memo entry of node {node} on slot {slot} is still undecided when merging")]
    UndecidedAtMerge { node: usize, slot: usize },
    #[error("stored links {links} exceed {capacity}")]
    LinkCapacity { links: usize, capacity: usize },
    #[error(transparent)]
    Mpc(#[from] MpcError),
    #[error(transparent)]
    Lcl(#[from] LclError),
}
