//! Interface reconstruction kernels.
//!
//! Every kernel works on a [`FluxWindow`], the six flux samples
//! `f[j-2] ..= f[j+3]` around the interface `x[j+1/2]`. Kernels are pure,
//! allocation-free and generic over the scalar type, so the polynomial parts
//! can be checked in exact rational arithmetic.

mod indicators;
mod weights;

pub use indicators::{
    beta3_cu, beta3_nw, beta_central, beta_upwind, ratio_cutoff, tau5, tau6, tau_cu, tau_nw,
    tau_z, theta_select,
};
pub use weights::{
    reconstruct_minus, reconstruct_plus, weights, Scheme, SchemeConfig, UnknownScheme, WeightSet,
};

use crate::error::KernelError;
use crate::scalar::Scalar;

/// Six flux samples ordered `(f[j-2], f[j-1], f[j], f[j+1], f[j+2], f[j+3])`.
///
/// Five-point schemes read indices `0..5` only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FluxWindow<T>(pub [T; 6]);

impl<T: Copy> FluxWindow<T> {
    #[inline]
    pub fn new(samples: [T; 6]) -> Self {
        Self(samples)
    }

    /// Window reflected about the interface: `(f[j+3], ..., f[j-2])`.
    #[inline]
    pub fn reflect(&self) -> Self {
        let w = &self.0;
        Self([w[5], w[4], w[3], w[2], w[1], w[0]])
    }

    #[inline]
    pub fn map<U>(&self, mut f: impl FnMut(T) -> U) -> FluxWindow<U> {
        let w = &self.0;
        FluxWindow([f(w[0]), f(w[1]), f(w[2]), f(w[3]), f(w[4]), f(w[5])])
    }
}

impl<T> From<[T; 6]> for FluxWindow<T> {
    fn from(samples: [T; 6]) -> Self {
        Self(samples)
    }
}

/// Interface values of the four three-point candidates `S0..S3` at `x[j+1/2]`.
#[inline]
pub fn substencil_values<T: Scalar>(w: &FluxWindow<T>) -> [T; 4] {
    let [a, b, c, d, e, g] = w.0;
    let sixth = T::ratio(1, 6);
    [
        (T::int(2) * a - T::int(7) * b + T::int(11) * c) * sixth,
        (-b + T::int(5) * c + T::int(2) * d) * sixth,
        (T::int(2) * c + T::int(5) * d - e) * sixth,
        (T::int(11) * d - T::int(7) * e + T::int(2) * g) * sixth,
    ]
}

/// Fifth-order upwind-biased linear reconstruction over `f[j-2] ..= f[j+2]`.
#[inline]
pub fn linear_5th<T: Scalar>(w: &FluxWindow<T>) -> T {
    let [a, b, c, d, e, _] = w.0;
    (T::int(2) * a - T::int(13) * b + T::int(47) * c + T::int(27) * d - T::int(3) * e)
        * T::ratio(1, 60)
}

/// Sixth-order central linear reconstruction over the full window.
#[inline]
pub fn linear_6th<T: Scalar>(w: &FluxWindow<T>) -> T {
    let [a, b, c, d, e, g] = w.0;
    (a - T::int(8) * b + T::int(37) * c + T::int(37) * d - T::int(8) * e + g) * T::ratio(1, 60)
}

/// Optimal weights of the fifth-order upwind combination (`S3` unused).
#[inline]
pub fn gamma_upwind5<T: Scalar>() -> [T; 4] {
    [T::ratio(1, 10), T::ratio(6, 10), T::ratio(3, 10), T::zero()]
}

/// Optimal weights of the sixth-order central combination.
#[inline]
pub fn gamma_central6<T: Scalar>() -> [T; 4] {
    [T::ratio(1, 20), T::ratio(9, 20), T::ratio(9, 20), T::ratio(1, 20)]
}

/// Linear weights blending the upwind (`theta = 1`) and central
/// (`theta = 0`) combinations.
pub fn gamma_theta<T: Scalar>(theta: T) -> Result<[T; 4], KernelError> {
    if !(theta >= T::zero() && theta <= T::one()) {
        return Err(KernelError::ThetaOutOfRange(format!("{theta:?}")));
    }
    Ok(gamma_theta_unchecked(theta))
}

#[inline]
pub(crate) fn gamma_theta_unchecked<T: Scalar>(theta: T) -> [T; 4] {
    let one = T::one();
    let three = T::int(3);
    let twenty = T::int(20);
    [
        (one + theta) / twenty,
        three * (three + theta) / twenty,
        three * (three - theta) / twenty,
        (one - theta) / twenty,
    ]
}
