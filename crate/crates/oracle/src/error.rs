use lcl_core::LclError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("search budget of {budget} assignments exceeded")]
    BudgetExceeded { budget: u64 },
    #[error(transparent)]
    Lcl(#[from] LclError),
}
