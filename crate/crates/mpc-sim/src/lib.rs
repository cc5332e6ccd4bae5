//! A deterministic simulator of the low-space MPC model.
//!
//! Each input node gets one virtual machine with `c_local · ⌈n^δ⌉` words of
//! local memory; all machines together get `c_global · m` words. Algorithms are
//! written as per-machine transition functions over supersteps, and a ledger
//! checks both bounds at every barrier.
//!
//! ```
//! use mpc_sim::{Mpc, MpcConfig, ProblemSize};
//!
//! // Every machine tells its right neighbor its address.
//! let mut mpc: Mpc<u64, u64> = Mpc::new(vec![0; 4], ProblemSize { nodes: 4, edges: 3 }, MpcConfig::default());
//! mpc.superstep(|id, _, _, out| if id + 1 < 4 { out.send(id + 1, id as u64) }).unwrap();
//! mpc.superstep(|_, state, inbox, _| *state = inbox.iter().sum()).unwrap();
//! assert_eq!(mpc.states(), &[0, 0, 1, 2]);
//! assert_eq!(mpc.rounds(), 2);
//! ```

mod config;
mod error;
mod sim;
mod trace;
mod tree;
mod words;

pub use config::MpcConfig;
pub use error::MpcError;
pub use sim::{MemoryLedger, Mpc, Outbox, ProblemSize};
pub use trace::{extend_trace, trace_csv, RoundTrace, TRACE_HEADER};
pub use tree::BroadcastTree;
pub use words::Words;
