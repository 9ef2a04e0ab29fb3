use thiserror::Error;

use crate::arith::RingSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: RingSpec, right: RingSpec },

    #[error("operation requires a field, got {0}")]
    NotAField(RingSpec),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid Jordan type: {0}")]
    InvalidJordanType(String),

    #[error("not Jordan-similar over this ring; supply the block type explicitly ({0})")]
    NotSplit(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("characteristic too small for the trace-form oracle: {0}")]
    SmallCharacteristic(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
