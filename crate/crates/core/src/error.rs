use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller supplied something outside the domain (bad prime, `p | N`, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A tabulated arithmetic function was evaluated past its bound.
    #[error("arithmetic function tabulated to {bound} evaluated at {n}")]
    OutOfBound { n: u64, bound: u64 },

    /// A quantity that must be a non-negative integer was not.
    #[error("{identity} at (p={p}, N={n}) is {value}, expected a non-negative integer")]
    NotCardinal {
        identity: &'static str,
        p: u64,
        n: u64,
        value: String,
    },

    /// A computed object violates an internal consistency check.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("cache file {path}: {reason}")]
    Cache { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
