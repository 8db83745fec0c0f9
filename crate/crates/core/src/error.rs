use thiserror::Error;

use crate::series::SeriesRole;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("expected a series of role {expected}, found {found}")]
    RoleMismatch { expected: SeriesRole, found: SeriesRole },

    #[error("series truncated at order {available}, but order {required} is required")]
    InsufficientOrder { required: usize, available: usize },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),

    #[error("divisibility check failed: {0}")]
    Divisibility(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
