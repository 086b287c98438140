use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("exponent lattice mismatch: denominators {0} and {1} (rescale first)")]
    LatticeMismatch(i64, i64),

    #[error("series is not invertible (zero leading coefficient)")]
    NotInvertible,

    #[error("coefficient at exponent {0} is at or above the truncation order")]
    CoeffOutOfRange(String),

    #[error("exponent {0} does not lie on the lattice (1/{1})Z")]
    OffLattice(String, i64),

    #[error("hypergeometric series diverges for z >= 1")]
    Divergence,

    #[error("integral diverges: requires k > 1")]
    DivergentIntegral,

    #[error("target 0 has an infinite family of divisor pairs")]
    InfiniteFamily,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invariant subspace decomposition failed: {0}")]
    DecompositionFailure(String),

    #[error("dimension formula inapplicable: {0}")]
    InapplicableFormula(String),

    #[error("truncation order too low: tail bound {0} exceeds tolerance")]
    InsufficientTruncation(String),

    #[error("coefficient table too short: need index {needed}, have length {have}")]
    TableTooShort { needed: String, have: usize },

    #[error("cache error: {0}")]
    Cache(String),

    #[error("malformed rational literal: {0}")]
    BadRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
