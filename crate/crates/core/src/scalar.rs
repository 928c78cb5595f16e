//! Scalar abstractions.
//!
//! The stencil polynomials (sub-stencil values, smoothness indicators and
//! the large-stencil indicators) only need ring operations and rational
//! constants, so they are generic over [`Scalar`] and can be evaluated in
//! exact rational arithmetic. Everything that needs roots, powers or
//! comparisons against tolerances is generic over [`Real`].

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::Neg;

use num_traits::{Float, FloatConst, FromPrimitive, Num};

/// A field element with small rational literals.
pub trait Scalar: Copy + PartialOrd + Num + Neg<Output = Self> + Debug {
    /// The rational constant `num / den`.
    fn ratio(num: i64, den: i64) -> Self;

    #[inline]
    fn int(n: i64) -> Self {
        Self::ratio(n, 1)
    }
}

impl<T> Scalar for T
where
    T: Copy + PartialOrd + Num + Neg<Output = T> + Debug + FromPrimitive,
{
    #[inline]
    fn ratio(num: i64, den: i64) -> Self {
        let n = T::from_i64(num).expect("literal numerator representable");
        let d = T::from_i64(den).expect("literal denominator representable");
        n / d
    }
}

/// Floating-point scalar used by the solver.
pub trait Real:
    Scalar
    + Float
    + FloatConst
    + FromPrimitive
    + Sum
    + Default
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal, rounding to the target precision.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
