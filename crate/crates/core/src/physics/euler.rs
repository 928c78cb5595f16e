//! Ideal-gas Euler equations in one and two space dimensions.
//!
//! Conserved vectors are `[rho, rho u, E]` in 1D and `[rho, rho u, rho v, E]`
//! in 2D, with `p = (gamma - 1) (E - rho |u|^2 / 2)`.

use super::{Axis, EigenSystem, Physics};
use crate::error::PhysicsError;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Primitive1<T> {
    pub rho: T,
    pub u: T,
    pub p: T,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Primitive2<T> {
    pub rho: T,
    pub u: T,
    pub v: T,
    pub p: T,
}

impl<T: Real> Primitive1<T> {
    pub fn new(rho: T, u: T, p: T) -> Self {
        Self { rho, u, p }
    }

    pub fn sound_speed(&self, gamma: T) -> T {
        (gamma * self.p / self.rho).sqrt()
    }

    /// Mirror image under `x -> -x`.
    pub fn mirrored(&self) -> Self {
        Self {
            u: -self.u,
            ..*self
        }
    }
}

impl<T: Real> Primitive2<T> {
    pub fn new(rho: T, u: T, v: T, p: T) -> Self {
        Self { rho, u, v, p }
    }
}

fn non_physical<T: Real>(field: &'static str, value: T) -> PhysicsError {
    PhysicsError::NonPhysical {
        field,
        value: value.to_f64_lossy(),
    }
}

fn check_positive<T: Real>(field: &'static str, value: T) -> Result<(), PhysicsError> {
    if value > T::zero() && value.is_finite() {
        Ok(())
    } else {
        Err(non_physical(field, value))
    }
}

pub fn prim_to_cons_1d<T: Real>(w: &Primitive1<T>, gamma: T) -> Result<[T; 3], PhysicsError> {
    check_positive("rho", w.rho)?;
    check_positive("p", w.p)?;
    let e = w.p / (gamma - T::one()) + T::ratio(1, 2) * w.rho * w.u * w.u;
    Ok([w.rho, w.rho * w.u, e])
}

pub fn cons_to_prim_1d<T: Real>(u: &[T; 3], gamma: T) -> Result<Primitive1<T>, PhysicsError> {
    check_positive("rho", u[0])?;
    let vel = u[1] / u[0];
    let p = (gamma - T::one()) * (u[2] - T::ratio(1, 2) * u[1] * vel);
    check_positive("p", p)?;
    Ok(Primitive1 {
        rho: u[0],
        u: vel,
        p,
    })
}

pub fn prim_to_cons_2d<T: Real>(w: &Primitive2<T>, gamma: T) -> Result<[T; 4], PhysicsError> {
    check_positive("rho", w.rho)?;
    check_positive("p", w.p)?;
    let e = w.p / (gamma - T::one()) + T::ratio(1, 2) * w.rho * (w.u * w.u + w.v * w.v);
    Ok([w.rho, w.rho * w.u, w.rho * w.v, e])
}

pub fn cons_to_prim_2d<T: Real>(u: &[T; 4], gamma: T) -> Result<Primitive2<T>, PhysicsError> {
    check_positive("rho", u[0])?;
    let vx = u[1] / u[0];
    let vy = u[2] / u[0];
    let p = (gamma - T::one()) * (u[3] - T::ratio(1, 2) * (u[1] * vx + u[2] * vy));
    check_positive("p", p)?;
    Ok(Primitive2 {
        rho: u[0],
        u: vx,
        v: vy,
        p,
    })
}

/// Adds `-g rho` to the y-momentum and `-g rho v` to the energy right-hand side.
#[inline]
pub fn add_gravity_source<T: Real>(u: &[T; 4], g: T, rhs: &mut [T; 4]) {
    rhs[2] = rhs[2] - g * u[0];
    rhs[3] = rhs[3] - g * u[2];
}

/// One-dimensional Euler equations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Euler1d<T> {
    pub gamma: T,
}

impl<T: Real> Default for Euler1d<T> {
    fn default() -> Self {
        Self {
            gamma: T::ratio(7, 5),
        }
    }
}

impl<T: Real> Euler1d<T> {
    pub fn new(gamma: T) -> Self {
        Self { gamma }
    }

    #[inline]
    fn pressure(&self, u: &[T; 3]) -> T {
        (self.gamma - T::one()) * (u[2] - T::ratio(1, 2) * u[1] * u[1] / u[0])
    }

    /// Analytic flux Jacobian at `u`.
    pub fn jacobian(&self, u: &[T; 3]) -> [[T; 3]; 3] {
        let g = self.gamma;
        let one = T::one();
        let half = T::ratio(1, 2);
        let v = u[1] / u[0];
        let h = (u[2] + self.pressure(u)) / u[0];
        [
            [T::zero(), one, T::zero()],
            [half * (g - T::int(3)) * v * v, (T::int(3) - g) * v, g - one],
            [
                v * (half * (g - one) * v * v - h),
                h - (g - one) * v * v,
                g * v,
            ],
        ]
    }
}

#[inline]
fn roe_weights<T: Real>(rho_l: T, rho_r: T) -> (T, T) {
    let sl = rho_l.sqrt();
    let sr = rho_r.sqrt();
    let inv = T::one() / (sl + sr);
    (sl * inv, sr * inv)
}

impl<T: Real> Physics<T, 3> for Euler1d<T> {
    #[inline]
    fn flux(&self, u: &[T; 3], _axis: Axis) -> [T; 3] {
        let vel = u[1] / u[0];
        let p = self.pressure(u);
        [u[1], u[1] * vel + p, (u[2] + p) * vel]
    }

    fn roe_eigensystem(
        &self,
        ul: &[T; 3],
        ur: &[T; 3],
        _axis: Axis,
    ) -> Result<EigenSystem<T, 3>, PhysicsError> {
        let one = T::one();
        let half = T::ratio(1, 2);
        let gm1 = self.gamma - one;
        let (wl, wr) = roe_weights(ul[0], ur[0]);
        let ul_vel = ul[1] / ul[0];
        let ur_vel = ur[1] / ur[0];
        let hl = (ul[2] + self.pressure(ul)) / ul[0];
        let hr = (ur[2] + self.pressure(ur)) / ur[0];
        let u = wl * ul_vel + wr * ur_vel;
        let h = wl * hl + wr * hr;
        let q2 = half * u * u;
        let a2 = gm1 * (h - q2);
        if !(a2 > T::zero()) {
            return Err(PhysicsError::DegenerateState(a2.to_f64_lossy()));
        }
        let a = a2.sqrt();
        let inv_a = one / a;
        let b1 = gm1 / a2;
        let b2 = q2 * b1;
        let right = [
            [one, one, one],
            [u - a, u, u + a],
            [h - u * a, q2, h + u * a],
        ];
        let left = [
            [
                half * (b2 + u * inv_a),
                -half * (b1 * u + inv_a),
                half * b1,
            ],
            [one - b2, b1 * u, -b1],
            [
                half * (b2 - u * inv_a),
                -half * (b1 * u - inv_a),
                half * b1,
            ],
        ];
        Ok(EigenSystem {
            lambdas: [u - a, u, u + a],
            left,
            right,
        })
    }

    #[inline]
    fn wave_speeds(&self, u: &[T; 3], _axis: Axis) -> Result<[T; 3], PhysicsError> {
        let w = cons_to_prim_1d(u, self.gamma)?;
        let a = w.sound_speed(self.gamma);
        Ok([(w.u - a).abs(), w.u.abs(), (w.u + a).abs()])
    }

    fn reflect(&self, u: &[T; 3], _axis: Axis) -> [T; 3] {
        [u[0], -u[1], u[2]]
    }

    fn component_names(&self) -> [&'static str; 3] {
        ["rho", "mom_x", "E"]
    }
}

/// Two-dimensional Euler equations with optional downward gravity `g`
/// acting along `-y`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Euler2d<T> {
    pub gamma: T,
    pub gravity: T,
}

impl<T: Real> Default for Euler2d<T> {
    fn default() -> Self {
        Self {
            gamma: T::ratio(7, 5),
            gravity: T::zero(),
        }
    }
}

impl<T: Real> Euler2d<T> {
    pub fn new(gamma: T) -> Self {
        Self {
            gamma,
            gravity: T::zero(),
        }
    }

    pub fn with_gravity(mut self, g: T) -> Self {
        self.gravity = g;
        self
    }

    #[inline]
    fn pressure(&self, u: &[T; 4]) -> T {
        (self.gamma - T::one()) * (u[3] - T::ratio(1, 2) * (u[1] * u[1] + u[2] * u[2]) / u[0])
    }
}

impl<T: Real> Physics<T, 4> for Euler2d<T> {
    #[inline]
    fn flux(&self, u: &[T; 4], axis: Axis) -> [T; 4] {
        let p = self.pressure(u);
        match axis {
            Axis::X => {
                let vx = u[1] / u[0];
                [u[1], u[1] * vx + p, u[2] * vx, (u[3] + p) * vx]
            }
            Axis::Y => {
                let vy = u[2] / u[0];
                [u[2], u[1] * vy, u[2] * vy + p, (u[3] + p) * vy]
            }
        }
    }

    fn roe_eigensystem(
        &self,
        ul: &[T; 4],
        ur: &[T; 4],
        axis: Axis,
    ) -> Result<EigenSystem<T, 4>, PhysicsError> {
        let one = T::one();
        let zero = T::zero();
        let half = T::ratio(1, 2);
        let gm1 = self.gamma - one;
        let (wl, wr) = roe_weights(ul[0], ur[0]);
        let hl = (ul[3] + self.pressure(ul)) / ul[0];
        let hr = (ur[3] + self.pressure(ur)) / ur[0];
        let u = wl * (ul[1] / ul[0]) + wr * (ur[1] / ur[0]);
        let v = wl * (ul[2] / ul[0]) + wr * (ur[2] / ur[0]);
        let h = wl * hl + wr * hr;
        let q2 = half * (u * u + v * v);
        let a2 = gm1 * (h - q2);
        if !(a2 > zero) {
            return Err(PhysicsError::DegenerateState(a2.to_f64_lossy()));
        }
        let a = a2.sqrt();
        let inv_a = one / a;
        let b1 = gm1 / a2;
        let b2 = q2 * b1;
        let es = match axis {
            Axis::X => EigenSystem {
                lambdas: [u - a, u, u, u + a],
                right: [
                    [one, one, zero, one],
                    [u - a, u, zero, u + a],
                    [v, v, one, v],
                    [h - u * a, q2, v, h + u * a],
                ],
                left: [
                    [
                        half * (b2 + u * inv_a),
                        -half * (b1 * u + inv_a),
                        -half * b1 * v,
                        half * b1,
                    ],
                    [one - b2, b1 * u, b1 * v, -b1],
                    [-v, zero, one, zero],
                    [
                        half * (b2 - u * inv_a),
                        -half * (b1 * u - inv_a),
                        -half * b1 * v,
                        half * b1,
                    ],
                ],
            },
            Axis::Y => EigenSystem {
                lambdas: [v - a, v, v, v + a],
                right: [
                    [one, one, zero, one],
                    [u, u, one, u],
                    [v - a, v, zero, v + a],
                    [h - v * a, q2, u, h + v * a],
                ],
                left: [
                    [
                        half * (b2 + v * inv_a),
                        -half * b1 * u,
                        -half * (b1 * v + inv_a),
                        half * b1,
                    ],
                    [one - b2, b1 * u, b1 * v, -b1],
                    [-u, one, zero, zero],
                    [
                        half * (b2 - v * inv_a),
                        -half * b1 * u,
                        -half * (b1 * v - inv_a),
                        half * b1,
                    ],
                ],
            },
        };
        Ok(es)
    }

    #[inline]
    fn wave_speeds(&self, u: &[T; 4], axis: Axis) -> Result<[T; 4], PhysicsError> {
        let w = cons_to_prim_2d(u, self.gamma)?;
        let a = (self.gamma * w.p / w.rho).sqrt();
        let un = match axis {
            Axis::X => w.u,
            Axis::Y => w.v,
        };
        Ok([(un - a).abs(), un.abs(), un.abs(), (un + a).abs()])
    }

    fn reflect(&self, u: &[T; 4], axis: Axis) -> [T; 4] {
        match axis {
            Axis::X => [u[0], -u[1], u[2], u[3]],
            Axis::Y => [u[0], u[1], -u[2], u[3]],
        }
    }

    fn normal_frame(&self, axis: Axis) -> Option<[usize; 4]> {
        match axis {
            Axis::X => None,
            Axis::Y => Some([0, 2, 1, 3]),
        }
    }

    #[inline]
    fn add_source(&self, u: &[T; 4], rhs: &mut [T; 4]) {
        if self.gravity != T::zero() {
            add_gravity_source(u, self.gravity, rhs);
        }
    }

    fn has_source(&self) -> bool {
        self.gravity != T::zero()
    }

    fn component_names(&self) -> [&'static str; 4] {
        ["rho", "mom_x", "mom_y", "E"]
    }
}
