//! Scalar abstraction for probability computations.
//!
//! Reliability columns and the closed-form channel expectations are written
//! once over [`Probability`] and instantiated with `f64` for decoding and
//! simulation, `f32` where memory matters, and exact rationals for identity
//! checks.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

pub trait Probability:
    Num + Clone + PartialOrd + Debug + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Slack allowed when checking that a column sums to one.
    fn tolerance() -> Self;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num).unwrap() / Self::from_i64(den).unwrap()
    }

    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).unwrap()
    }

    fn abs_diff(&self, other: &Self) -> Self {
        if self >= other {
            self.clone() - other.clone()
        } else {
            other.clone() - self.clone()
        }
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Probability for f64 {
    fn tolerance() -> Self {
        1e-12
    }
}

impl Probability for f32 {
    fn tolerance() -> Self {
        1e-5
    }
}

impl Probability for BigRational {
    fn tolerance() -> Self {
        BigRational::from_integer(BigInt::from(0))
    }
}

/// Integer power by repeated multiplication.
pub fn powi<T: Probability>(x: &T, e: u32) -> T {
    (0..e).fold(T::one(), |acc, _| acc * x.clone())
}
