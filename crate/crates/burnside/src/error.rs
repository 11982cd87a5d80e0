use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by group construction, table handling and the gluing
/// algorithm.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("invalid permutation images: {0}")]
    InvalidImages(String),

    #[error("cycle syntax error at line {line}, column {col}: {msg}")]
    CycleSyntax {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("a group needs at least one generator")]
    EmptyGenerators,

    #[error("group order {order} exceeds the order cap {cap}")]
    OrderCapExceeded { order: u64, cap: u64 },

    #[error("group generation exceeded the order cap {cap}")]
    GenerationCapExceeded { cap: u64 },

    #[error("invalid order cap {0}: must lie between 1 and 5040")]
    InvalidCap(u64),

    #[error("group spec error at byte {pos}: {msg}")]
    SpecSyntax { pos: usize, msg: String },

    #[error("table syntax error at line {line}, column {col}: {msg}")]
    TomSyntax {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("invalid JSON table document: {0}")]
    TomJson(String),

    #[error("invalid table of marks: {0}")]
    InvalidTom(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no partition supplied for prime {0}")]
    MissingPrimePartition(u64),

    #[error("invalid class partition: {0}")]
    InvalidPartition(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
