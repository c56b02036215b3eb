//! Error type shared across the crate.

use num_bigint::BigInt;

/// Errors produced by the library.
///
/// Domain violations (a genus that is too small, an index out of range) are
/// reported eagerly by constructors and entry points; they never panic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The genus for a structured computation must be at least 2.
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u32),

    /// A decomposition stage index outside `0..=g-1`.
    #[error("stage k={k} out of range for genus {g} (expected 0 <= k < g)")]
    StageOutOfRange { g: u32, k: u32 },

    /// A flip step index outside `0..=g-2`.
    #[error("flip step i={i} out of range for genus {g} (expected 0 <= i < g-1)")]
    StepOutOfRange { g: u32, i: u32 },

    /// A brute-force routine was asked for an instance above its size cap.
    #[error("{op} exceeds its size cap: {detail}")]
    SizeCapExceeded { op: &'static str, detail: String },

    /// Two parameters in a list coincide; positions are 1-based.
    #[error("duplicate parameter {value} at positions {first} and {second}")]
    DuplicateParameter {
        value: String,
        first: usize,
        second: usize,
    },

    /// A parameter list has the wrong length.
    #[error("expected {expected} parameters, got {got}")]
    WrongParameterCount { expected: usize, got: usize },

    /// The field characteristic 2 is not supported.
    #[error("characteristic 2 is not supported; the bilinear pairing degenerates")]
    EvenCharacteristic,

    /// The requested field order is not prime.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// A row passed to a subspace constructor is linearly dependent on the
    /// earlier rows.
    #[error("row {row} is linearly dependent on the preceding rows")]
    DependentRow { row: usize },

    /// A row or vector has the wrong number of coordinates.
    #[error("expected vectors of length {expected}, got one of length {got}")]
    WrongVectorLength { expected: usize, got: usize },

    /// The enumeration space is larger than the caller's candidate budget.
    #[error(
        "enumeration space holds {candidates} candidate subspaces, over the budget of {budget}"
    )]
    BudgetExceeded { candidates: BigInt, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
