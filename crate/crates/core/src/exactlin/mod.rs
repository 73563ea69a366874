//! Exact linear algebra over the rationals or a prime field.
//!
//! All arithmetic is exact; there is no floating point anywhere in this
//! crate. Fields are fixed per value and never coerced.

mod matrix;
mod scalar;

pub use matrix::{quotient_map, Matrix, RowOp, Subspace};
pub use scalar::{Field, Scalar};

/// Errors from scalar and matrix construction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit in 32 bits")]
    ModulusTooLarge(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
