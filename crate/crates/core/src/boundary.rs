//! Boundary conditions and ghost filling.

use std::fmt;
use std::sync::Arc;

use crate::error::ConfigError;
use crate::mesh::{Field, Grid};
use crate::physics::{prim_to_cons_2d, Axis, Physics, Primitive2};
use crate::scalar::Real;

/// What a time-dependent boundary prescribes at one ghost node.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GhostValue<T, const M: usize> {
    State([T; M]),
    /// Mirror the interior like a reflective wall.
    Reflect,
}

/// Ghost callback of `(x, y, t)` at the ghost node's coordinates.
pub type GhostFn<T, const M: usize> = Arc<dyn Fn(T, T, T) -> GhostValue<T, M> + Send + Sync>;

#[derive(Clone)]
pub enum Boundary<T, const M: usize> {
    Periodic,
    ZeroGradient,
    Reflective,
    Dirichlet([T; M]),
    Function(GhostFn<T, M>),
}

impl<T: fmt::Debug, const M: usize> fmt::Debug for Boundary<T, M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Periodic => f.write_str("Periodic"),
            Self::ZeroGradient => f.write_str("ZeroGradient"),
            Self::Reflective => f.write_str("Reflective"),
            Self::Dirichlet(s) => f.debug_tuple("Dirichlet").field(s).finish(),
            Self::Function(_) => f.write_str("Function(..)"),
        }
    }
}

impl<T, const M: usize> Boundary<T, M> {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Self::Periodic)
    }

    pub fn is_time_dependent(&self) -> bool {
        matches!(self, Self::Function(_))
    }
}

/// Boundary kinds for each side: `[lo, hi]` per axis.
#[derive(Clone, Debug)]
pub struct BoundarySet<T, const M: usize> {
    pub x: [Boundary<T, M>; 2],
    pub y: Option<[Boundary<T, M>; 2]>,
}

impl<T: Real, const M: usize> BoundarySet<T, M> {
    pub fn new_1d(lo: Boundary<T, M>, hi: Boundary<T, M>) -> Self {
        Self {
            x: [lo, hi],
            y: None,
        }
    }

    pub fn new_2d(x: [Boundary<T, M>; 2], y: [Boundary<T, M>; 2]) -> Self {
        Self { x, y: Some(y) }
    }

    pub fn periodic_1d() -> Self {
        Self::new_1d(Boundary::Periodic, Boundary::Periodic)
    }

    pub fn is_time_dependent(&self) -> bool {
        self.x.iter().any(Boundary::is_time_dependent)
            || self
                .y
                .iter()
                .flatten()
                .any(Boundary::is_time_dependent)
    }

    /// Periodic sides must come in pairs that match the axis flags.
    pub fn validate(&self, grid: &Grid<T>) -> Result<(), ConfigError> {
        check_pair(&self.x, grid.x.periodic, "x")?;
        match (&self.y, &grid.y) {
            (Some(y), Some(ay)) => check_pair(y, ay.periodic, "y"),
            (None, None) => Ok(()),
            _ => Err(ConfigError::InvalidGrid(
                "boundary dimension differs from grid dimension".into(),
            )),
        }
    }
}

fn check_pair<T, const M: usize>(
    pair: &[Boundary<T, M>; 2],
    axis_periodic: bool,
    name: &'static str,
) -> Result<(), ConfigError> {
    match (pair[0].is_periodic(), pair[1].is_periodic()) {
        (true, true) if axis_periodic => Ok(()),
        (false, false) if !axis_periodic => Ok(()),
        (true, true) | (false, false) => Err(ConfigError::InvalidGrid(format!(
            "{name}-axis periodicity flag disagrees with its boundaries"
        ))),
        _ => Err(ConfigError::UnmatchedPeriodic(name)),
    }
}

/// Populates all ghost nodes at time `t`.
///
/// In 2D the x-ghosts of interior rows are filled first, then the y-ghosts
/// over the full padded width.
pub fn fill_ghosts<T, P, const M: usize>(
    field: &mut Field<T, M>,
    grid: &Grid<T>,
    bcs: &BoundarySet<T, M>,
    physics: &P,
    t: T,
) where
    T: Real,
    P: Physics<T, M> + ?Sized,
{
    let g = field.ghost() as isize;
    let nx = field.nx() as isize;
    let ny = field.ny() as isize;
    let two_d = field.is_2d();
    for j in 0..ny {
        let y = grid.yc(j);
        for (side, bc) in bcs.x.iter().enumerate() {
            for k in 1..=g {
                let (ghost, mirror, wrap, edge) = if side == 0 {
                    (-k, k, nx - k, 0)
                } else {
                    (nx - 1 + k, nx - 1 - k, k - 1, nx - 1)
                };
                let v = ghost_value(
                    bc,
                    physics,
                    Axis::X,
                    *field.at(mirror, j),
                    *field.at(wrap, j),
                    *field.at(edge, j),
                    grid.xc(ghost),
                    y,
                    t,
                );
                *field.at_mut(ghost, j) = v;
            }
        }
    }
    if !two_d {
        return;
    }
    let ybc = bcs.y.as_ref().expect("2D field needs y boundaries");
    for i in -g..nx + g {
        let x = grid.xc(i);
        for (side, bc) in ybc.iter().enumerate() {
            for k in 1..=g {
                let (ghost, mirror, wrap, edge) = if side == 0 {
                    (-k, k, ny - k, 0)
                } else {
                    (ny - 1 + k, ny - 1 - k, k - 1, ny - 1)
                };
                let v = ghost_value(
                    bc,
                    physics,
                    Axis::Y,
                    *field.at(i, mirror),
                    *field.at(i, wrap),
                    *field.at(i, edge),
                    x,
                    grid.yc(ghost),
                    t,
                );
                *field.at_mut(i, ghost) = v;
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
#[inline]
fn ghost_value<T, P, const M: usize>(
    bc: &Boundary<T, M>,
    physics: &P,
    axis: Axis,
    mirror: [T; M],
    wrap: [T; M],
    edge: [T; M],
    x: T,
    y: T,
    t: T,
) -> [T; M]
where
    T: Real,
    P: Physics<T, M> + ?Sized,
{
    match bc {
        Boundary::Periodic => wrap,
        Boundary::ZeroGradient => edge,
        Boundary::Reflective => physics.reflect(&mirror, axis),
        Boundary::Dirichlet(s) => *s,
        Boundary::Function(f) => match f(x, y, t) {
            GhostValue::State(s) => s,
            GhostValue::Reflect => physics.reflect(&mirror, axis),
        },
    }
}

/// Double Mach reflection constants.
pub mod dmr {
    use super::*;

    /// Wall start on the bottom boundary.
    pub fn x0<T: Real>() -> T {
        T::ratio(1, 6)
    }

    pub fn pre_shock<T: Real>() -> Primitive2<T> {
        Primitive2::new(T::ratio(7, 5), T::zero(), T::zero(), T::one())
    }

    /// Post-shock primitive state `(8, 8.25 cos 30, -8.25 sin 30, 116.5)`.
    pub fn post_shock<T: Real>() -> Primitive2<T> {
        let speed = T::lit(8.25);
        let c30 = T::lit(3.0).sqrt() / T::int(2);
        Primitive2::new(T::int(8), speed * c30, -speed * T::ratio(1, 2), T::lit(116.5))
    }

    pub fn pre_shock_cons<T: Real>(gamma: T) -> [T; 4] {
        prim_to_cons_2d(&pre_shock(), gamma).expect("physical pre-shock state")
    }

    pub fn post_shock_cons<T: Real>(gamma: T) -> [T; 4] {
        prim_to_cons_2d(&post_shock(), gamma).expect("physical post-shock state")
    }

    /// Pre-shock sound speed `sqrt(gamma p / rho)`.
    pub fn a_pre<T: Real>(gamma: T) -> T {
        let w = pre_shock::<T>();
        (gamma * w.p / w.rho).sqrt()
    }

    /// Intersection of the incident shock with the top boundary `y = 1`.
    pub fn shock_position<T: Real>(t: T, gamma: T) -> T {
        let sqrt3 = T::lit(3.0).sqrt();
        let cos30 = sqrt3 / T::int(2);
        x0::<T>() + T::one() / sqrt3 + T::int(10) * a_pre(gamma) / cos30 * t
    }

    /// Boundary set: post-shock inflow left, zero-gradient right, bottom
    /// post-shock ahead of the wall then reflective, top switching across
    /// the moving shock.
    pub fn boundaries<T: Real>(gamma: T) -> BoundarySet<T, 4> {
        let post = post_shock_cons(gamma);
        let pre = pre_shock_cons(gamma);
        let bottom: GhostFn<T, 4> = Arc::new(move |x, _y, _t| {
            if x < x0::<T>() {
                GhostValue::State(post)
            } else {
                GhostValue::Reflect
            }
        });
        let top: GhostFn<T, 4> = Arc::new(move |x, _y, t| {
            if x < shock_position(t, gamma) {
                GhostValue::State(post)
            } else {
                GhostValue::State(pre)
            }
        });
        BoundarySet::new_2d(
            [Boundary::Dirichlet(post), Boundary::ZeroGradient],
            [Boundary::Function(bottom), Boundary::Function(top)],
        )
    }
}
