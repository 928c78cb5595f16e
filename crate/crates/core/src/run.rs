//! Drives a catalog problem from its initial data to a final snapshot.

use crate::characteristic::AlphaMode;
use crate::error::{ConfigError, Result};
use crate::integrate::{RunStats, Solver, StepControl};
use crate::mesh::{Field, Grid};
use crate::physics::{
    cons_to_prim_1d, cons_to_prim_2d, prim_to_cons_1d, Burgers, Euler1d, Euler2d,
    LinearAdvection,
};
use crate::problems::{PhysicsKind, ProblemSpec, Reference, GAMMA};
use crate::scalar::Real;
use crate::stencil::{Scheme, SchemeConfig};

/// A solution field of whichever physics the problem uses.
#[derive(Clone, Debug, PartialEq)]
pub enum Snapshot<T> {
    Scalar(Field<T, 1>),
    Euler1(Field<T, 3>),
    Euler2(Field<T, 4>),
}

impl<T: Real> Snapshot<T> {
    pub fn nx(&self) -> usize {
        match self {
            Snapshot::Scalar(f) => f.nx(),
            Snapshot::Euler1(f) => f.nx(),
            Snapshot::Euler2(f) => f.nx(),
        }
    }

    pub fn ny(&self) -> usize {
        match self {
            Snapshot::Scalar(f) => f.ny(),
            Snapshot::Euler1(f) => f.ny(),
            Snapshot::Euler2(f) => f.ny(),
        }
    }

    /// The transported scalar, or density for gas dynamics.
    pub fn primary(&self) -> Vec<T> {
        match self {
            Snapshot::Scalar(f) => f.component(0),
            Snapshot::Euler1(f) => f.component(0),
            Snapshot::Euler2(f) => f.component(0),
        }
    }

    /// Output columns (names and interior values, row-major).
    ///
    /// Scalars give `u`; 1D gas dynamics `rho, u, p, E`; 2D
    /// `rho, u, v, p, E`. Non-physical states produce NaN primitives.
    pub fn columns(&self) -> Vec<(&'static str, Vec<T>)> {
        let g = T::lit(GAMMA);
        let nan = T::nan();
        match self {
            Snapshot::Scalar(f) => vec![("u", f.component(0))],
            Snapshot::Euler1(f) => {
                let prim: Vec<_> = f.interior().map(|u| cons_to_prim_1d(u, g).ok()).collect();
                vec![
                    ("rho", f.component(0)),
                    ("u", prim.iter().map(|w| w.map_or(nan, |w| w.u)).collect()),
                    ("p", prim.iter().map(|w| w.map_or(nan, |w| w.p)).collect()),
                    ("E", f.component(2)),
                ]
            }
            Snapshot::Euler2(f) => {
                let prim: Vec<_> = f.interior().map(|u| cons_to_prim_2d(u, g).ok()).collect();
                vec![
                    ("rho", f.component(0)),
                    ("u", prim.iter().map(|w| w.map_or(nan, |w| w.u)).collect()),
                    ("v", prim.iter().map(|w| w.map_or(nan, |w| w.v)).collect()),
                    ("p", prim.iter().map(|w| w.map_or(nan, |w| w.p)).collect()),
                    ("E", f.component(3)),
                ]
            }
        }
    }

    /// Interior values of each conserved component.
    pub fn conserved(&self) -> Vec<Vec<T>> {
        match self {
            Snapshot::Scalar(f) => vec![f.component(0)],
            Snapshot::Euler1(f) => (0..3).map(|c| f.component(c)).collect(),
            Snapshot::Euler2(f) => (0..4).map(|c| f.component(c)).collect(),
        }
    }
}

/// Everything needed to run one problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunSettings<T> {
    pub scheme: SchemeConfig<T>,
    pub nx: usize,
    pub ny: Option<usize>,
    pub control: StepControl<T>,
    pub alpha_mode: AlphaMode,
}

impl<T: Real> RunSettings<T> {
    /// Defaults of `spec` with the given scheme.
    pub fn for_spec(spec: &ProblemSpec, scheme: Scheme) -> Self {
        Self {
            scheme: spec.scheme_config(scheme),
            nx: spec.grid.0,
            ny: spec.grid.1,
            control: spec.step_control(),
            alpha_mode: AlphaMode::PerField,
        }
    }

    pub fn with_grid(mut self, nx: usize, ny: Option<usize>) -> Self {
        self.nx = nx;
        if ny.is_some() {
            self.ny = ny;
        }
        self
    }

    pub fn with_t_final(mut self, t: T) -> Self {
        self.control.t_final = t;
        self
    }
}

#[derive(Clone, Debug)]
pub struct RunOutput<T> {
    pub grid: Grid<T>,
    pub initial: Snapshot<T>,
    pub state: Snapshot<T>,
    pub stats: RunStats<T>,
}

/// Initial data of `spec` sampled on `grid`.
pub fn initial_state<T: Real>(spec: &ProblemSpec, grid: &Grid<T>) -> Result<Snapshot<T>> {
    Ok(match spec.physics {
        PhysicsKind::LinearAdvection | PhysicsKind::Burgers => {
            Snapshot::Scalar(Field::from_fn(grid, |x, _| [spec.scalar_ic(x)]))
        }
        PhysicsKind::Euler1d => {
            Snapshot::Euler1(Field::try_from_fn(grid, |x, _| spec.euler1d_ic(x))?)
        }
        PhysicsKind::Euler2d { .. } => {
            Snapshot::Euler2(Field::try_from_fn(grid, |x, y| spec.euler2d_ic(x, y))?)
        }
    })
}

/// Runs `spec` to `settings.control.t_final`, reporting `(step, t, dt)`
/// after every step.
pub fn simulate<T: Real>(
    spec: &ProblemSpec,
    settings: &RunSettings<T>,
    mut observe: impl FnMut(usize, T, T),
) -> Result<RunOutput<T>> {
    let grid = spec.grid::<T>(settings.nx, settings.ny);
    grid.validate()?;
    let initial = initial_state(spec, &grid)?;
    let gamma = T::lit(GAMMA);
    let ctl = &settings.control;
    let t0 = T::zero();
    let (state, stats) = match (&initial, spec.physics) {
        (Snapshot::Scalar(f), PhysicsKind::LinearAdvection) => {
            let mut u = f.clone();
            let mut s = Solver::new(
                LinearAdvection::default(),
                grid,
                spec.scalar_boundaries(),
                settings.scheme,
            )?
            .with_alpha_mode(settings.alpha_mode);
            let st = s.run(&mut u, t0, ctl, &mut observe)?;
            (Snapshot::Scalar(u), st)
        }
        (Snapshot::Scalar(f), PhysicsKind::Burgers) => {
            let mut u = f.clone();
            let mut s = Solver::new(Burgers, grid, spec.scalar_boundaries(), settings.scheme)?
                .with_alpha_mode(settings.alpha_mode);
            let st = s.run(&mut u, t0, ctl, &mut observe)?;
            (Snapshot::Scalar(u), st)
        }
        (Snapshot::Euler1(f), _) => {
            let mut u = f.clone();
            let mut s = Solver::new(
                Euler1d::new(gamma),
                grid,
                spec.euler1d_boundaries(),
                settings.scheme,
            )?
            .with_alpha_mode(settings.alpha_mode);
            let st = s.run(&mut u, t0, ctl, &mut observe)?;
            (Snapshot::Euler1(u), st)
        }
        (Snapshot::Euler2(f), PhysicsKind::Euler2d { gravity }) => {
            let mut u = f.clone();
            let physics = Euler2d::new(gamma).with_gravity(T::lit(gravity));
            let mut s = Solver::new(physics, grid, spec.euler2d_boundaries(), settings.scheme)?
                .with_alpha_mode(settings.alpha_mode);
            let st = s.run(&mut u, t0, ctl, &mut observe)?;
            (Snapshot::Euler2(u), st)
        }
        _ => unreachable!("initial state matches the physics kind"),
    };
    Ok(RunOutput {
        grid,
        initial,
        state,
        stats,
    })
}

/// Reference solution of `spec` at time `t` on `grid`.
///
/// Exact references are sampled directly. Fine-grid references run WENO-JS
/// on the finer grid and keep every `fine / coarse`-th node.
pub fn reference_solution<T: Real>(
    spec: &ProblemSpec,
    grid: &Grid<T>,
    t: T,
) -> Result<Snapshot<T>> {
    match spec.reference {
        Reference::ExactTranslation => {
            let mut err = None;
            let f = Field::from_fn(grid, |x, _| match spec.exact_scalar(x, t) {
                Ok(v) => [v],
                Err(e) => {
                    err = Some(e);
                    [T::nan()]
                }
            });
            match err {
                Some(e) => Err(e.into()),
                None => Ok(Snapshot::Scalar(f)),
            }
        }
        Reference::ExactRiemann { .. } => {
            let gamma = T::lit(GAMMA);
            let f = Field::try_from_fn(grid, |x, _| -> Result<[T; 3]> {
                let w = spec.exact_euler1d(x, t)?;
                Ok(prim_to_cons_1d(&w, gamma)?)
            })?;
            Ok(Snapshot::Euler1(f))
        }
        Reference::FineGridJs { intervals } => {
            let coarse = grid.x.intervals;
            if grid.is_2d() || coarse == 0 || intervals % coarse != 0 {
                return Err(ConfigError::InvalidGrid(format!(
                    "reference grid of {intervals} intervals is not a multiple of {coarse}"
                ))
                .into());
            }
            let ratio = intervals / coarse;
            let settings = RunSettings::for_spec(spec, Scheme::Js)
                .with_grid(intervals, None)
                .with_t_final(t);
            let fine = simulate(spec, &settings, |_, _, _| {})?;
            Ok(subsample(&fine.state, grid, ratio))
        }
        Reference::None => Err(ConfigError::UnsupportedReference.into()),
    }
}

fn subsample<T: Real>(fine: &Snapshot<T>, grid: &Grid<T>, ratio: usize) -> Snapshot<T> {
    fn pick<T: Real, const M: usize>(f: &Field<T, M>, grid: &Grid<T>, r: usize) -> Field<T, M> {
        let mut out = Field::zeros(grid);
        for i in 0..out.nx() {
            *out.get_mut(i, 0) = *f.get(i * r, 0);
        }
        out
    }
    match fine {
        Snapshot::Scalar(f) => Snapshot::Scalar(pick(f, grid, ratio)),
        Snapshot::Euler1(f) => Snapshot::Euler1(pick(f, grid, ratio)),
        Snapshot::Euler2(f) => Snapshot::Euler2(pick(f, grid, ratio)),
    }
}
