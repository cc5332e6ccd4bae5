//! Node-edge-checkable LCL problems: representation, builtin problems, the
//! LCL v1 text format, and a solution checker.

mod builtin;
mod check;
mod error;
mod format;
mod problem;

pub use builtin::{builtin, BUILTIN_NAMES, NO_INPUT};
pub use check::{check_solution, encode_inputs, uniform_inputs, Condition, Site, Verdict, Violation};
pub use error::LclError;
pub use format::{parse_lcl, serialize_lcl};
pub use problem::{Label, NodeEdgeLcl};
