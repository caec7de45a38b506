//! Error type shared by all computational modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("splitting field degree {needed} exceeds the cap {cap}")]
    DegreeCapExceeded { needed: usize, cap: usize },
    #[error("map does not fix the base field")]
    NotAnEmbedding,
    #[error("minimal polynomial has no root in the target field")]
    NoEmbedding,
    #[error("prime {0} is ramified or divides a stored denominator")]
    RamifiedOrBadPrime(u64),
    #[error("infinite place is ramified: field is not totally real")]
    RamifiedInfinitePlace,
    #[error("descent system has no solution: {0}")]
    InconsistentDescent(&'static str),
    #[error("operands belong to different ambient fields")]
    AmbientMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
