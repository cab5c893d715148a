//! Error type shared by the whole crate.

use crate::dictionary::AtomFamily;

/// Errors produced by construction, fitting and I/O routines.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The Gram matrix AᵀA is numerically singular: the smallest factor
    /// pivot fell below `1e-12` relative to the largest.
    #[error("singular operator: relative pivot {relative_pivot:.3e} below 1e-12")]
    SingularOperator { relative_pivot: f64 },

    /// A vector or matrix dimension does not match what the operation expects.
    #[error("dimension mismatch for {what}: expected {expected}, got {actual}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    /// Φ_MᵀΦ_M is singular beyond the relative tolerance 1e-10; the model
    /// contains linearly dependent atoms and is rejected rather than
    /// pseudo-inverted.
    #[error("rank-deficient model {indices:?}")]
    RankDeficientModel { indices: Vec<usize> },

    /// Exhaustive enumeration was requested over a model space larger than
    /// the enumeration guard.
    #[error("model space too large to enumerate: {models} models exceed the guard of {guard}")]
    SpaceTooLarge { models: u128, guard: u128 },

    /// A dictionary index outside `1..=p`.
    #[error("index {index} out of range 1..={p}")]
    IndexOutOfRange { index: usize, p: usize },

    /// The requested size is not supported (e.g. a non-dyadic grid for the
    /// wavelet dictionary).
    #[error("unsupported size {n}: {reason}")]
    UnsupportedSize { n: usize, reason: &'static str },

    /// A dictionary column with zero norm cannot be normalized.
    #[error("atom {index} has zero norm and cannot be normalized")]
    ZeroNormAtom { index: usize },

    /// A named atom is missing from the dictionary.
    #[error("atom not found: {family:?} level {level} shift {shift}")]
    AtomNotFound {
        family: AtomFamily,
        level: i32,
        shift: i32,
    },

    /// The truth vector has zero norm, so the relative error is undefined.
    #[error("relative error undefined: truth vector has zero norm")]
    ZeroTruth,

    /// A candidate list for aggregation must contain at least one fit.
    #[error("candidate set is empty")]
    EmptyCandidates,

    /// A stochastic routine was invoked without an explicit seed.
    #[error("master seed required: stochastic runs refuse to start without an explicit seed")]
    MissingSeed,

    /// Malformed text input (config file, matrix file, CSV).
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An unrecognized configuration key.
    #[error("unknown configuration key `{key}`")]
    UnknownKey { key: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code the CLI maps this error to: 1 for usage/input
    /// errors, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SingularOperator { .. }
            | Error::RankDeficientModel { .. }
            | Error::SpaceTooLarge { .. }
            | Error::ZeroTruth
            | Error::EmptyCandidates => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
