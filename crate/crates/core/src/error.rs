use thiserror::Error;

use crate::key::InvariantKey;

/// Failures raised by the invariant engine and the quantum-product verifier.
///
/// Every variant except [`EngineError::InvalidInput`] indicates a broken
/// internal invariant: a correctly transcribed recursion never produces them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cycle detected while evaluating delta={delta} {key}")]
    Cycle { delta: u32, key: InvariantKey },

    #[error(
        "same-degree chain from delta={delta} {key} reached length {length}, bound is {bound}"
    )]
    DepthExceeded {
        delta: u32,
        key: InvariantKey,
        length: u64,
        bound: u64,
    },

    #[error("recursion {recursion} applied outside its gate at delta={delta} {key}: {reason}")]
    GateViolation {
        recursion: u8,
        delta: u32,
        key: InvariantKey,
        reason: &'static str,
    },

    #[error("binomial with negative upper index {n}")]
    NegativeBinomial { n: i64 },

    #[error("memo conflict at delta={delta} {key}: stored {stored}, offered {offered}")]
    MemoConflict {
        delta: u32,
        key: InvariantKey,
        stored: String,
        offered: String,
    },

    #[error("truncation orders differ: {0} vs {1}")]
    TruncationMismatch(String, String),
}

impl EngineError {
    /// True for errors that signal an implementation bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        !matches!(
            self,
            EngineError::InvalidInput(_) | EngineError::TruncationMismatch(..)
        )
    }
}

pub type Result<T, E = EngineError> = std::result::Result<T, E>;
