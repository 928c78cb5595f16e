//! Conservation-law systems: physical fluxes, Roe-averaged eigensystems and
//! pointwise characteristic speeds.

mod euler;
mod scalar;

pub use euler::{
    add_gravity_source, cons_to_prim_1d, cons_to_prim_2d, prim_to_cons_1d, prim_to_cons_2d,
    Euler1d, Euler2d, Primitive1, Primitive2,
};
pub use scalar::{Burgers, LinearAdvection};

use crate::error::PhysicsError;
use crate::scalar::Real;

/// Sweep direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

/// Eigenvalues with left (rows) and right (columns) eigenvector matrices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenSystem<T, const M: usize> {
    pub lambdas: [T; M],
    /// `left[s]` is the left eigenvector `l_s`.
    pub left: [[T; M]; M],
    /// `right[r][s]` is component `r` of the right eigenvector `r_s`.
    pub right: [[T; M]; M],
}

impl<T: Real, const M: usize> EigenSystem<T, M> {
    pub fn identity(lambda: T) -> Self {
        let mut left = [[T::zero(); M]; M];
        for (s, row) in left.iter_mut().enumerate() {
            row[s] = T::one();
        }
        Self {
            lambdas: [lambda; M],
            left,
            right: left,
        }
    }

    /// `l_s . v`
    #[inline]
    pub fn project(&self, s: usize, v: &[T; M]) -> T {
        let row = &self.left[s];
        let mut acc = row[0] * v[0];
        for r in 1..M {
            acc = acc + row[r] * v[r];
        }
        acc
    }

    /// `R c`
    #[inline]
    pub fn unproject(&self, c: &[T; M]) -> [T; M] {
        std::array::from_fn(|r| {
            let row = &self.right[r];
            let mut acc = row[0] * c[0];
            for s in 1..M {
                acc = acc + row[s] * c[s];
            }
            acc
        })
    }

    /// Max-norm distance of `L R` from the identity.
    pub fn lr_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..M {
            for j in 0..M {
                let mut acc = T::zero();
                for k in 0..M {
                    acc = acc + self.left[i][k] * self.right[k][j];
                }
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((acc - target).abs());
            }
        }
        worst
    }
}

/// A hyperbolic system of `M` conserved fields.
pub trait Physics<T: Real, const M: usize>: Sync + Send {
    /// Flux along `axis`.
    fn flux(&self, u: &[T; M], axis: Axis) -> [T; M];

    /// Eigensystem of the Roe-averaged Jacobian between `ul` and `ur`.
    fn roe_eigensystem(
        &self,
        ul: &[T; M],
        ur: &[T; M],
        axis: Axis,
    ) -> Result<EigenSystem<T, M>, PhysicsError>;

    /// `|lambda_s|` for every characteristic family at a single state.
    fn wave_speeds(&self, u: &[T; M], axis: Axis) -> Result<[T; M], PhysicsError>;

    /// Mirror image of `u` across a wall normal to `axis`.
    fn reflect(&self, u: &[T; M], axis: Axis) -> [T; M];

    /// Pointwise source term added to the right-hand side.
    fn add_source(&self, _u: &[T; M], _rhs: &mut [T; M]) {}

    fn has_source(&self) -> bool {
        false
    }

    fn component_names(&self) -> [&'static str; M];

    /// Component permutation taking a state into a frame where `axis` plays
    /// the role of `Axis::X`, if one exists. Sweeps along `axis` then run as
    /// x-sweeps, so mirrored flows see bitwise-mirrored arithmetic.
    fn normal_frame(&self, _axis: Axis) -> Option<[usize; M]> {
        None
    }
}

/// `out[c] = u[perm[c]]`
#[inline]
pub fn permute<T: Copy, const M: usize>(u: &[T; M], perm: &[usize; M]) -> [T; M] {
    std::array::from_fn(|c| u[perm[c]])
}

/// Inverse of [`permute`].
#[inline]
pub fn unpermute<T: Copy, const M: usize>(u: &[T; M], perm: &[usize; M]) -> [T; M] {
    let mut out = *u;
    for c in 0..M {
        out[perm[c]] = u[c];
    }
    out
}
