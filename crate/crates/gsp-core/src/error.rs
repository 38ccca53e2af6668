//! Error type shared by all core modules.

use alloc::string::String;
use core::fmt;

/// Errors produced by the core algorithms.
///
/// All fallible operations in this crate return [`Result`]; the few
/// operations that are total (for example valuations) return plain values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoreError {
    /// The proposed residue characteristic is not a prime number.
    NotPrime(u64),
    /// A precision (truncation exponent) of zero was requested.
    InvalidPrecision,
    /// Two operands live over different rings `Z/ℓ^N`.
    PrecisionMismatch,
    /// Matrix or vector shapes are incompatible with the operation.
    DimensionMismatch,
    /// The operand is a zero divisor where a unit is required.
    NotInvertible,
    /// The matrix does not satisfy the similitude relation `ᵗM J M = λ J`.
    NotSymplectic,
    /// A documented precondition of the algorithm does not hold.
    PreconditionViolated(String),
    /// A structurally invalid argument (bad descriptor parameters, malformed
    /// chain, empty shape, ...).
    InvalidArgument(String),
    /// The estimated cost of an exhaustive operation exceeds the budget.
    BudgetExceeded {
        /// Base-2 logarithm (rounded up) of the estimated work.
        estimate_log2: u32,
        /// The configured budget, as a base-2 logarithm.
        budget_log2: u32,
    },
}

impl fmt::Display for CoreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoreError::NotPrime(n) => write!(f, "{n} is not prime"),
            CoreError::InvalidPrecision => write!(f, "precision must be at least 1"),
            CoreError::PrecisionMismatch => {
                write!(f, "operands live over different rings Z/l^N")
            }
            CoreError::DimensionMismatch => write!(f, "incompatible dimensions"),
            CoreError::NotInvertible => write!(f, "operand is not invertible"),
            CoreError::NotSymplectic => {
                write!(f, "matrix does not satisfy the similitude relation")
            }
            CoreError::PreconditionViolated(msg) => write!(f, "precondition violated: {msg}"),
            CoreError::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            CoreError::BudgetExceeded {
                estimate_log2,
                budget_log2,
            } => write!(
                f,
                "estimated work 2^{estimate_log2} exceeds budget 2^{budget_log2}"
            ),
        }
    }
}

impl core::error::Error for CoreError {}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, CoreError>;
