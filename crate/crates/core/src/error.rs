//! Error types shared across the library.

use thiserror::Error;

/// Errors raised by field arithmetic, character evaluation, and pairings.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A result could not be decided at the working truncation depth.
    #[error("precision exhausted: {0}")]
    Precision(String),

    /// An operation required a regular semisimple element.
    #[error("element is not regular semisimple: {0}")]
    NonRegular(String),

    /// A character was evaluated on an element of the wrong group.
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    /// The requested operation is not defined for this class of input.
    #[error("unsupported class: {0}")]
    Unsupported(String),

    /// Permutation sums over S_{n+1} with n+1 > 10 need an explicit override.
    #[error("factorial guard: n+1 = {0} > 10; pass the override flag to proceed")]
    FactorialGuard(usize),

    /// Invalid construction data (bad prime, bad precision, bad flags).
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Division by zero (or by a non-unit) in a finite ring.
    #[error("division by zero or non-unit")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;
