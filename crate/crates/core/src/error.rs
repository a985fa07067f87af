//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by exact and numeric operations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division by zero, inversion of zero, or zero to a negative power.
    #[error("division by zero in the Golden field")]
    DivisionByZero,
    /// A sequence or derivative order k was zero where a nonzero order is required.
    #[error("order k must be nonzero")]
    InvalidOrder,
    /// A factorial-style index was negative.
    #[error("index must be nonnegative, got {0}")]
    NegativeIndex(i64),
    /// A binomial index pair was out of range (m > n or m < 0).
    #[error("index m={m} out of range for n={n}")]
    IndexOutOfRange { n: i64, m: i64 },
    /// The Golden derivative of a numeric function is not defined at x = 0.
    #[error("Golden derivative evaluation at x = 0")]
    EvaluationAtZero,
    /// Fermionic spectra require odd deformation order k.
    #[error("fermionic spectrum requires odd k, got {0}")]
    EvenOrderForFermionic(i64),
    /// Semiclassical expansion requires even deformation order k.
    #[error("semiclassical expansion requires even k, got {0}")]
    OddOrderForSemiclassical(i64),
    /// Fibonacci multiqubit states require odd deformation order k.
    #[error("Fibonacci multiqubit state requires odd k, got {0}")]
    EvenOrderForState(i64),
    /// Concurrence is defined here for two-qubit states only.
    #[error("expected a 2-qubit state, got {0} qubits")]
    WrongArity(u32),
    /// The operator does not satisfy the Hecke condition (R - φ^k)(R + φ^-k) = 0.
    #[error("operator does not satisfy the Hecke condition for k={0}")]
    NotHecke(i64),
    /// An evaluation point collided with a vortex image.
    #[error("evaluation point hits a vortex image")]
    PoleHit,
    /// A point or configuration lies outside the flow domain.
    #[error("{0}")]
    OutOfDomain(String),
    /// A requested residual bound cannot be certified at the given precision.
    #[error("requested precision cannot be achieved: {0}")]
    PrecisionUnachievable(String),
    /// Malformed textual input for an exact value.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
