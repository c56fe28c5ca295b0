//! Scalar abstraction shared by every indicator.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type a probability can be stored in: `f32` or `f64`.
pub trait Probability:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Slack allowed above 1 when validating that probabilities sum to at most one.
    fn sum_tolerance() -> Self;

    /// Converts a literal; only used for small constants that every float type represents.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("float literal")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits in float")
    }
}

impl Probability for f64 {
    #[inline]
    fn sum_tolerance() -> Self {
        1e-9
    }
}

impl Probability for f32 {
    // f32 rounding of eight four-decimal inputs already reaches ~1e-7.
    #[inline]
    fn sum_tolerance() -> Self {
        1e-5
    }
}
