use thiserror::Error;

use crate::lie::Family;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family:?} (minimum {min})")]
    RankTooSmall { family: Family, rank: u64, min: u64 },

    #[error("family {family:?} has fixed rank {expected}, got {rank}")]
    FixedRank { family: Family, rank: u64, expected: u64 },

    #[error("rank {rank} for family {family:?} exceeds the supported maximum {max}")]
    RankTooLarge { family: Family, rank: u64, max: u64 },

    #[error("weight of length {got} does not match factor rank {expected}")]
    WeightLength { expected: u64, got: u64 },

    #[error("summand {summand} has {got} weights but the group has {expected} simple factors")]
    Arity { summand: usize, expected: usize, got: usize },

    #[error("summand {summand} uses torus slot {slot} but the torus has dimension {torus_dim}")]
    SlotOutOfRange { summand: usize, slot: usize, torus_dim: usize },

    #[error("a module needs at least one summand")]
    NoSummands,

    #[error("{count} simple factors exceed the canonicalization limit of {max}")]
    TooManyFactors { count: usize, max: usize },

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("castling move not applicable: {0}")]
    MoveNotApplicable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("parameters {params:?} out of range for {id}: {constraint}")]
    ParamsOutOfRange {
        id: String,
        params: Vec<u64>,
        constraint: String,
    },

    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            message: message.into(),
        }
    }
}
