//! Scalar abstractions.
//!
//! [`Field`] is the minimal arithmetic needed by the Kaplan–Meier and weight
//! computations; it is implemented for the float types and for exact
//! rationals. [`Real`] adds the transcendental operations needed by wavelet
//! evaluation and is implemented for `f32` and `f64`.

use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num};
use std::fmt::Debug;

/// Ordered field with a conversion from counts.
pub trait Field: Clone + Num + PartialOrd + Debug + Send + Sync {
    fn from_count(n: usize) -> Self;
}

impl Field for f32 {
    #[inline]
    fn from_count(n: usize) -> Self {
        n as f32
    }
}

impl Field for f64 {
    #[inline]
    fn from_count(n: usize) -> Self {
        n as f64
    }
}

impl Field for Ratio<i64> {
    fn from_count(n: usize) -> Self {
        Ratio::from_integer(n as i64)
    }
}

impl Field for Ratio<i128> {
    fn from_count(n: usize) -> Self {
        Ratio::from_integer(n as i128)
    }
}

/// Floating-point scalar: `f32` or `f64`.
pub trait Real: Field + Float + FromPrimitive + Copy + 'static {
    /// Lossy conversion from an `f64` literal or table entry.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 is representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}
