//! Finite-field arithmetic over F_q and the univariate polynomial and matrix
//! operations the codes are built from.

mod field;
mod matrix;
mod poly;

use thiserror::Error;

pub use field::{Elem, FieldContext};
pub use matrix::Matrix;
pub use poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GaloisError {
    #[error("{0} is not a prime power in [2, 65536]")]
    NotPrimePower(u32),
    #[error("modulus is not a monic irreducible polynomial of degree {degree} over F_{characteristic}")]
    ReducibleModulus { characteristic: u32, degree: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("duplicate evaluation point {0}")]
    DuplicateEvaluationPoint(Elem),
}
