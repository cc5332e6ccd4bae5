use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MpcError {
    #[error("round {round}: machine {machine} uses {words} words, local capacity is {capacity}")]
    MemoryViolation {
        round: usize,
        machine: usize,
        words: usize,
        capacity: usize,
    },
    #[error("round {round}: {words} words in total, global capacity is {capacity}")]
    GlobalMemoryViolation {
        round: usize,
        words: usize,
        capacity: usize,
    },
    #[error("round {round}: evaluation order changed the outcome")]
    Nondeterminism { round: usize },
    #[error("round {round}: machine {from} sent to unknown machine {to}")]
    InvalidRecipient { round: usize, from: usize, to: usize },
}

impl MpcError {
    pub fn is_memory_violation(&self) -> bool {
        matches!(
            self,
            MpcError::MemoryViolation { .. } | MpcError::GlobalMemoryViolation { .. }
        )
    }
}
