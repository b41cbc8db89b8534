use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("coefficient at index {index} is not finite")]
    NonFiniteCoefficient { index: usize },

    #[error("a series needs at least one coefficient")]
    EmptySeries,

    #[error("{what} must satisfy {constraint} (got {value})")]
    Domain {
        what: &'static str,
        constraint: &'static str,
        value: f64,
    },

    #[error("{m} samples cannot resolve degree {degree} (need at least degree + 1)")]
    TooFewSamples { m: usize, degree: usize },

    #[error("log/pow recurrences require a nonzero constant term")]
    ZeroConstantTerm,

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("quadrature did not converge with {nodes} nodes (last delta {delta:.3e})")]
    QuadratureNoConvergence { nodes: usize, delta: f64 },

    #[error("symbol is not a self-map of the disc: {0}")]
    NotASelfMap(String),

    #[error("matrix dimension {dim} does not match coefficient count {len}")]
    DimensionMismatch { dim: usize, len: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
