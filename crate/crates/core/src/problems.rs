//! Catalog of benchmark problems: initial data, boundaries, run parameters
//! and exact references.

use std::fmt;
use std::str::FromStr;

use crate::boundary::{dmr, Boundary, BoundarySet};
use crate::error::{ConfigError, PhysicsError};
use crate::integrate::{DtLaw, StepControl};
use crate::mesh::{Axis1, Grid};
use crate::physics::{prim_to_cons_1d, prim_to_cons_2d, Primitive1, Primitive2};
use crate::riemann;
use crate::scalar::Real;
use crate::stencil::{Scheme, SchemeConfig};

/// Ratio of specific heats used by every gas-dynamics problem.
pub const GAMMA: f64 = 1.4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemId {
    Sin,
    GaussK2,
    GaussK3,
    Critical,
    Composite,
    BurgersSin,
    BurgersShifted,
    Sod,
    Lax,
    OneTwoThree,
    ShuOsher,
    Blast,
    Rt,
    Implosion,
    Riemann2d,
    Dmr,
}

impl ProblemId {
    pub const ALL: [ProblemId; 16] = [
        ProblemId::Sin,
        ProblemId::GaussK2,
        ProblemId::GaussK3,
        ProblemId::Critical,
        ProblemId::Composite,
        ProblemId::BurgersSin,
        ProblemId::BurgersShifted,
        ProblemId::Sod,
        ProblemId::Lax,
        ProblemId::OneTwoThree,
        ProblemId::ShuOsher,
        ProblemId::Blast,
        ProblemId::Rt,
        ProblemId::Implosion,
        ProblemId::Riemann2d,
        ProblemId::Dmr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemId::Sin => "sin",
            ProblemId::GaussK2 => "gauss-k2",
            ProblemId::GaussK3 => "gauss-k3",
            ProblemId::Critical => "critical",
            ProblemId::Composite => "composite",
            ProblemId::BurgersSin => "burgers-sin",
            ProblemId::BurgersShifted => "burgers-shifted",
            ProblemId::Sod => "sod",
            ProblemId::Lax => "lax",
            ProblemId::OneTwoThree => "123",
            ProblemId::ShuOsher => "shu-osher",
            ProblemId::Blast => "blast",
            ProblemId::Rt => "rt",
            ProblemId::Implosion => "implosion",
            ProblemId::Riemann2d => "riemann2d",
            ProblemId::Dmr => "dmr",
        }
    }
}

impl fmt::Display for ProblemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown problem '{0}'; expected one of: {vocabulary}", vocabulary = problem_vocabulary())]
pub struct UnknownProblem(pub String);

pub fn problem_vocabulary() -> String {
    ProblemId::ALL.map(|p| p.name()).join(", ")
}

impl FromStr for ProblemId {
    type Err = UnknownProblem;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        ProblemId::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| UnknownProblem(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhysicsKind {
    LinearAdvection,
    Burgers,
    Euler1d,
    Euler2d { gravity: f64 },
}

impl PhysicsKind {
    pub fn is_2d(self) -> bool {
        matches!(self, PhysicsKind::Euler2d { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Reference {
    /// Periodic translation of the initial profile.
    ExactTranslation,
    /// Similarity solution of a single Riemann problem at `x = jump`.
    ExactRiemann { jump: f64 },
    /// WENO-JS run on a finer grid with this many intervals.
    FineGridJs { intervals: usize },
    None,
}

/// Static description of one benchmark.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProblemSpec {
    pub id: ProblemId,
    pub physics: PhysicsKind,
    pub x: (f64, f64),
    pub y: Option<(f64, f64)>,
    pub periodic_x: bool,
    pub periodic_y: bool,
    /// Default intervals `(nx, ny)`.
    pub grid: (usize, Option<usize>),
    /// Intervals of the published run when they differ from the default.
    pub paper_grid: (usize, Option<usize>),
    pub t_final: f64,
    pub alpha_r: f64,
    pub dt_law: DtLaw<f64>,
    pub cfl: f64,
    pub reference: Reference,
    /// Uses `max(sin(pi x), 0)` instead of `max(-sin(pi x), 0)` for `critical`.
    pub flip_critical_sign: bool,
}

impl ProblemSpec {
    pub fn name(&self) -> &'static str {
        self.id.name()
    }

    pub fn is_2d(&self) -> bool {
        self.physics.is_2d()
    }

    pub fn with_flipped_critical_sign(mut self) -> Self {
        self.flip_critical_sign = true;
        self
    }

    /// Scheme tunables with this problem's cutoff threshold.
    pub fn scheme_config<T: Real>(&self, scheme: Scheme) -> SchemeConfig<T> {
        SchemeConfig::new(scheme).with_alpha_r(T::lit(self.alpha_r))
    }

    pub fn step_control<T: Real>(&self) -> StepControl<T> {
        StepControl {
            cfl: T::lit(self.cfl),
            dt_law: match self.dt_law {
                DtLaw::CflBound => DtLaw::CflBound,
                DtLaw::FixedPower(p) => DtLaw::FixedPower(T::lit(p)),
            },
            t_final: T::lit(self.t_final),
        }
    }

    pub fn grid<T: Real>(&self, nx: usize, ny: Option<usize>) -> Grid<T> {
        let mut ax = Axis1::new(T::lit(self.x.0), T::lit(self.x.1), nx);
        if self.periodic_x {
            ax = ax.periodic();
        }
        match self.y {
            None => Grid::new_1d(ax),
            Some((lo, hi)) => {
                let ny = ny.or(self.grid.1).unwrap_or(nx);
                let mut ay = Axis1::new(T::lit(lo), T::lit(hi), ny);
                if self.periodic_y {
                    ay = ay.periodic();
                }
                Grid::new_2d(ax, ay)
            }
        }
    }

    pub fn default_grid<T: Real>(&self) -> Grid<T> {
        self.grid(self.grid.0, self.grid.1)
    }

    /// Initial value of a scalar problem at `x`.
    pub fn scalar_ic<T: Real>(&self, x: T) -> T {
        let pi = T::PI();
        let half = T::ratio(1, 2);
        match self.id {
            ProblemId::Sin => (pi * x).sin(),
            ProblemId::GaussK2 | ProblemId::GaussK3 => {
                let k = if self.id == ProblemId::GaussK2 { 2 } else { 3 };
                let s = x + half;
                s.powi(k) * (-T::int(100) * s * s).exp()
            }
            ProblemId::Critical => {
                let s = (pi * x).sin();
                let v = if self.flip_critical_sign { s } else { -s };
                v.max(T::zero())
            }
            ProblemId::Composite => composite_profile(x),
            ProblemId::BurgersSin => -(pi * x).sin(),
            ProblemId::BurgersShifted => half + (pi * x).sin(),
            _ => panic!("{} is not a scalar problem", self.id),
        }
    }

    fn riemann_states<T: Real>(&self) -> Option<(Primitive1<T>, Primitive1<T>)> {
        let p = |r: f64, u: f64, pr: f64| Primitive1::new(T::lit(r), T::lit(u), T::lit(pr));
        match self.id {
            ProblemId::Sod => Some((p(0.125, 0.0, 0.1), p(1.0, 0.0, 1.0))),
            ProblemId::Lax => Some((p(0.445, 0.698, 3.528), p(0.5, 0.0, 0.571))),
            ProblemId::OneTwoThree => Some((p(1.0, -2.0, 0.4), p(1.0, 2.0, 0.4))),
            _ => None,
        }
    }

    /// Left and right primitive states of a shock-tube problem.
    pub fn shock_tube_states<T: Real>(&self) -> Option<(Primitive1<T>, Primitive1<T>)> {
        self.riemann_states()
    }

    /// Initial primitive state of a 1D gas-dynamics problem, one-sided.
    ///
    /// Exactly at a jump the right state is returned; use
    /// [`ProblemSpec::euler1d_ic`] for the sampled conserved data.
    pub fn euler1d_prim<T: Real>(&self, x: T) -> Primitive1<T> {
        let p = |r: f64, u: f64, pr: f64| Primitive1::new(T::lit(r), T::lit(u), T::lit(pr));
        if let Some((l, r)) = self.riemann_states() {
            return if x < T::zero() { l } else { r };
        }
        match self.id {
            ProblemId::ShuOsher => {
                if x < T::int(-4) {
                    Primitive1::new(T::lit(3.857143), T::lit(2.629369), T::ratio(31, 3))
                } else {
                    let rho = T::one() + T::lit(0.2) * (T::int(5) * x).sin();
                    Primitive1::new(rho, T::zero(), T::one())
                }
            }
            ProblemId::Blast => {
                if x < T::lit(0.1) {
                    p(1.0, 0.0, 1000.0)
                } else if x < T::lit(0.9) {
                    p(1.0, 0.0, 0.01)
                } else {
                    p(1.0, 0.0, 100.0)
                }
            }
            _ => panic!("{} is not a 1D gas-dynamics problem", self.id),
        }
    }

    fn jumps_1d<T: Real>(&self) -> Vec<T> {
        match self.id {
            ProblemId::Sod | ProblemId::Lax | ProblemId::OneTwoThree => vec![T::zero()],
            ProblemId::ShuOsher => vec![T::int(-4)],
            ProblemId::Blast => vec![T::lit(0.1), T::lit(0.9)],
            _ => Vec::new(),
        }
    }

    /// Sampled conserved initial data. A node lying exactly on a jump takes
    /// the mean of the two one-sided conserved states.
    pub fn euler1d_ic<T: Real>(&self, x: T) -> Result<[T; 3], PhysicsError> {
        let gamma = T::lit(GAMMA);
        let eps = T::lit(1e-9);
        if let Some(j) = self.jumps_1d::<T>().into_iter().find(|&j| x == j) {
            let l = prim_to_cons_1d(&self.euler1d_prim(j - eps), gamma)?;
            let r = prim_to_cons_1d(&self.euler1d_prim(j), gamma)?;
            let half = T::ratio(1, 2);
            return Ok(std::array::from_fn(|c| half * (l[c] + r[c])));
        }
        prim_to_cons_1d(&self.euler1d_prim(x), gamma)
    }

    /// Initial primitive state of a 2D problem.
    pub fn euler2d_prim<T: Real>(&self, x: T, y: T) -> Primitive2<T> {
        let p = |r: f64, u: f64, v: f64, pr: f64| {
            Primitive2::new(T::lit(r), T::lit(u), T::lit(v), T::lit(pr))
        };
        match self.id {
            ProblemId::Rt => {
                let g = T::lit(rt_gravity());
                let rho = if y >= T::zero() { T::int(2) } else { T::one() };
                let pr = T::lit(2.5) - rho * g * y;
                let pi = T::PI();
                let v = T::lit(0.01) / T::int(4)
                    * (T::one() + (T::int(4) * pi * x).cos())
                    * (T::one() + (T::int(4) * pi * y / T::int(3)).cos());
                Primitive2::new(rho, T::zero(), v, pr)
            }
            ProblemId::Implosion => {
                if x + y > T::ratio(1, 2) {
                    p(1.0, 0.0, 0.0, 1.0)
                } else {
                    p(0.125, 0.0, 0.0, 0.14)
                }
            }
            ProblemId::Riemann2d => {
                let right = x >= T::ratio(1, 2);
                let up = y >= T::ratio(1, 2);
                match (right, up) {
                    (true, true) => p(0.5313, 0.0, 0.0, 0.4),
                    (false, true) => p(1.0, 0.7276, 0.0, 1.0),
                    (false, false) => p(0.8, 0.0, 0.0, 1.0),
                    (true, false) => p(1.0, 0.0, 0.7276, 1.0),
                }
            }
            ProblemId::Dmr => {
                if x < dmr::x0::<T>() + y / T::lit(3.0).sqrt() {
                    dmr::post_shock()
                } else {
                    dmr::pre_shock()
                }
            }
            _ => panic!("{} is not a 2D problem", self.id),
        }
    }

    pub fn euler2d_ic<T: Real>(&self, x: T, y: T) -> Result<[T; 4], PhysicsError> {
        prim_to_cons_2d(&self.euler2d_prim(x, y), T::lit(GAMMA))
    }

    pub fn scalar_boundaries<T: Real>(&self) -> BoundarySet<T, 1> {
        BoundarySet::periodic_1d()
    }

    pub fn euler1d_boundaries<T: Real>(&self) -> BoundarySet<T, 3> {
        match self.id {
            ProblemId::Blast => BoundarySet::new_1d(Boundary::Reflective, Boundary::Reflective),
            _ => BoundarySet::new_1d(Boundary::ZeroGradient, Boundary::ZeroGradient),
        }
    }

    pub fn euler2d_boundaries<T: Real>(&self) -> BoundarySet<T, 4> {
        use Boundary::*;
        match self.id {
            ProblemId::Rt => BoundarySet::new_2d([Periodic, Periodic], [Reflective, Reflective]),
            ProblemId::Implosion => {
                BoundarySet::new_2d([Reflective, Reflective], [Reflective, Reflective])
            }
            ProblemId::Riemann2d => BoundarySet::new_2d(
                [ZeroGradient, ZeroGradient],
                [ZeroGradient, ZeroGradient],
            ),
            ProblemId::Dmr => dmr::boundaries(T::lit(GAMMA)),
            _ => panic!("{} is not a 2D problem", self.id),
        }
    }

    /// Exact solution of a scalar advection problem at `(x, t)`.
    pub fn exact_scalar<T: Real>(&self, x: T, t: T) -> Result<T, ConfigError> {
        if self.reference != Reference::ExactTranslation {
            return Err(ConfigError::UnsupportedReference);
        }
        let lo = T::lit(self.x.0);
        let len = T::lit(self.x.1 - self.x.0);
        let s = x - t - lo;
        let wrapped = s - (s / len).floor() * len;
        Ok(self.scalar_ic(lo + wrapped))
    }

    /// Exact solution of a shock-tube problem at `(x, t)`.
    pub fn exact_euler1d<T: Real>(&self, x: T, t: T) -> crate::Result<Primitive1<T>> {
        let Reference::ExactRiemann { jump } = self.reference else {
            return Err(ConfigError::UnsupportedReference.into());
        };
        let (l, r) = self
            .riemann_states::<T>()
            .ok_or(ConfigError::UnsupportedReference)?;
        let dx = x - T::lit(jump);
        if t <= T::zero() {
            return Ok(if dx < T::zero() { l } else { r });
        }
        Ok(riemann::exact_riemann(l, r, T::lit(GAMMA), dx / t)?)
    }
}

/// Gravitational acceleration of the Rayleigh–Taylor setup.
pub fn rt_gravity() -> f64 {
    0.1
}

fn composite_profile<T: Real>(x: T) -> T {
    let l = |v: f64| T::lit(v);
    let one = T::one();
    let six = T::int(6);
    let four = T::int(4);
    let z = l(-0.7);
    let delta = l(0.005);
    let beta = T::LN_2() / (T::int(36) * delta * delta);
    let a = l(0.5);
    let alpha = T::int(10);
    let g = |c: T| (-beta * (x - c) * (x - c)).exp();
    let f = |c: T| (one - alpha * alpha * (x - c) * (x - c)).max(T::zero()).sqrt();
    if x >= l(-0.8) && x <= l(-0.6) {
        (g(z - delta) + four * g(z) + g(z + delta)) / six
    } else if x >= l(-0.4) && x <= l(-0.2) {
        one
    } else if x >= T::zero() && x <= l(0.2) {
        one - (T::int(10) * (x - l(0.1))).abs()
    } else if x >= l(0.4) && x <= l(0.6) {
        (f(a - delta) + four * f(a) + f(a + delta)) / six
    } else {
        T::zero()
    }
}

/// Every benchmark.
pub fn catalog() -> Vec<ProblemSpec> {
    ProblemId::ALL.into_iter().map(spec).collect()
}

pub fn spec(id: ProblemId) -> ProblemSpec {
    let base = ProblemSpec {
        id,
        physics: PhysicsKind::LinearAdvection,
        x: (-1.0, 1.0),
        y: None,
        periodic_x: true,
        periodic_y: false,
        grid: (200, None),
        paper_grid: (200, None),
        t_final: 1.0,
        alpha_r: 50.0,
        dt_law: DtLaw::CflBound,
        cfl: 0.5,
        reference: Reference::ExactTranslation,
        flip_critical_sign: false,
    };
    let shock_tube = ProblemSpec {
        physics: PhysicsKind::Euler1d,
        x: (-5.0, 5.0),
        periodic_x: false,
        grid: (300, None),
        paper_grid: (300, None),
        reference: Reference::ExactRiemann { jump: 0.0 },
        ..base
    };
    let two_d = ProblemSpec {
        physics: PhysicsKind::Euler2d { gravity: 0.0 },
        x: (0.0, 1.0),
        y: Some((0.0, 1.0)),
        periodic_x: false,
        reference: Reference::None,
        ..base
    };
    let convergence = ProblemSpec {
        grid: (80, None),
        paper_grid: (80, None),
        dt_law: DtLaw::FixedPower(2.0),
        ..base
    };
    match id {
        ProblemId::Sin | ProblemId::GaussK2 | ProblemId::GaussK3 => convergence,
        ProblemId::Critical => ProblemSpec {
            t_final: 2.4,
            ..base
        },
        ProblemId::Composite => ProblemSpec {
            grid: (400, None),
            paper_grid: (400, None),
            t_final: 6.3,
            ..base
        },
        ProblemId::BurgersSin => ProblemSpec {
            physics: PhysicsKind::Burgers,
            t_final: 1.5,
            reference: Reference::None,
            ..base
        },
        ProblemId::BurgersShifted => ProblemSpec {
            physics: PhysicsKind::Burgers,
            t_final: 0.55,
            reference: Reference::None,
            ..base
        },
        ProblemId::Sod => ProblemSpec {
            t_final: 1.7,
            ..shock_tube
        },
        ProblemId::Lax => ProblemSpec {
            t_final: 1.3,
            alpha_r: 10.0,
            ..shock_tube
        },
        ProblemId::OneTwoThree => ProblemSpec {
            t_final: 1.0,
            ..shock_tube
        },
        ProblemId::ShuOsher => ProblemSpec {
            t_final: 1.8,
            grid: (400, None),
            paper_grid: (400, None),
            reference: Reference::FineGridJs { intervals: 4000 },
            ..shock_tube
        },
        ProblemId::Blast => ProblemSpec {
            x: (0.0, 1.0),
            t_final: 0.038,
            alpha_r: 10.0,
            grid: (801, None),
            paper_grid: (801, None),
            reference: Reference::FineGridJs { intervals: 4005 },
            ..shock_tube
        },
        ProblemId::Rt => ProblemSpec {
            physics: PhysicsKind::Euler2d {
                gravity: rt_gravity(),
            },
            x: (-0.25, 0.25),
            y: Some((-0.75, 0.75)),
            periodic_x: true,
            grid: (60, Some(180)),
            paper_grid: (120, Some(360)),
            t_final: 9.5,
            ..two_d
        },
        ProblemId::Implosion => ProblemSpec {
            grid: (200, Some(200)),
            paper_grid: (400, Some(400)),
            t_final: 5.0,
            alpha_r: 1.0,
            ..two_d
        },
        ProblemId::Riemann2d => ProblemSpec {
            grid: (400, Some(400)),
            paper_grid: (1000, Some(1000)),
            t_final: 0.25,
            ..two_d
        },
        ProblemId::Dmr => ProblemSpec {
            x: (0.0, 4.0),
            grid: (480, Some(120)),
            paper_grid: (800, Some(200)),
            t_final: 0.2,
            ..two_d
        },
    }
}
