//! SSP Runge–Kutta stepping, time-step control and the semi-discrete
//! right-hand side.

use rayon::prelude::*;

use crate::boundary::{fill_ghosts, BoundarySet};
use crate::characteristic::{max_wave_speed, sweep_line, AlphaMode, WaveSpeeds};
use crate::error::{ConfigError, Error, NanAbort, Result};
use crate::mesh::{Field, Grid};
use crate::physics::{permute, unpermute, Axis, Physics};
use crate::scalar::Real;
use crate::stencil::SchemeConfig;

/// How the step size is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DtLaw<T> {
    /// `dt = cfl / (alpha_x / dx + alpha_y / dy)`.
    CflBound,
    /// `dt = dx^p`, independent of the solution.
    FixedPower(T),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepControl<T> {
    pub cfl: T,
    pub dt_law: DtLaw<T>,
    pub t_final: T,
}

impl<T: Real> StepControl<T> {
    pub fn cfl(cfl: T, t_final: T) -> Self {
        Self {
            cfl,
            dt_law: DtLaw::CflBound,
            t_final,
        }
    }

    pub fn fixed_power(p: T, t_final: T) -> Self {
        Self {
            cfl: T::ratio(1, 2),
            dt_law: DtLaw::FixedPower(p),
            t_final,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.cfl > T::zero() && self.cfl <= T::one()) {
            return Err(ConfigError::InvalidStepControl(format!(
                "cfl must lie in (0, 1], got {}",
                self.cfl
            )));
        }
        if !(self.t_final >= T::zero() && self.t_final.is_finite()) {
            return Err(ConfigError::InvalidStepControl(format!(
                "t_final must be finite and non-negative, got {}",
                self.t_final
            )));
        }
        if let DtLaw::FixedPower(p) = self.dt_law {
            if !(p > T::zero() && p.is_finite()) {
                return Err(ConfigError::InvalidStepControl(format!(
                    "dt power must be positive, got {p}"
                )));
            }
        }
        Ok(())
    }
}

/// Step size from the law, clipped so that `t + dt` does not pass `t_final`.
///
/// `alphas` holds the overall wave-speed bound per axis (`y` only in 2D).
pub fn compute_dt<T: Real>(
    control: &StepControl<T>,
    dx: T,
    dy: Option<T>,
    alpha_x: T,
    alpha_y: Option<T>,
    t: T,
) -> Result<T, ConfigError> {
    let dt = match control.dt_law {
        DtLaw::FixedPower(p) => dx.powf(p),
        DtLaw::CflBound => {
            let mut rate = alpha_x / dx;
            if let (Some(dy), Some(ay)) = (dy, alpha_y) {
                rate = rate + ay / dy;
            }
            if !(rate > T::zero()) {
                return Err(ConfigError::ZeroWaveSpeed);
            }
            control.cfl / rate
        }
    };
    let remaining = control.t_final - t;
    Ok(if dt > remaining { remaining } else { dt })
}

fn first_non_finite<T: Real, const M: usize>(u: &[[T; M]]) -> Option<usize> {
    u.iter().position(|s| s.iter().any(|v| !v.is_finite()))
}

/// One third-order SSP Runge–Kutta step on a flat array of states.
///
/// `rhs(u, t, out)` writes `L(u)` at time `t`. The stages are evaluated at
/// `t`, `t + dt` and `t + dt / 2`. After every stage the state is checked
/// for non-finite values.
pub fn rk3_step<T, const M: usize, F>(u: &mut [[T; M]], t: T, dt: T, mut rhs: F) -> Result<()>
where
    T: Real,
    F: FnMut(&[[T; M]], T, &mut [[T; M]]) -> Result<()>,
{
    let n = u.len();
    let zero = [T::zero(); M];
    let mut l = vec![zero; n];
    let mut stage = vec![zero; n];
    let q = T::ratio(1, 4);
    let tq = T::ratio(3, 4);
    let third = T::ratio(1, 3);
    let two_thirds = T::ratio(2, 3);

    let check = |v: &[[T; M]], stage_id: usize, time: T| -> Result<()> {
        match first_non_finite(v) {
            Some(index) => Err(Error::NanAbort(NanAbort {
                stage: stage_id,
                index,
                time: time.to_f64_lossy(),
            })),
            None => Ok(()),
        }
    };

    rhs(u, t, &mut l)?;
    for k in 0..n {
        for c in 0..M {
            stage[k][c] = u[k][c] + dt * l[k][c];
        }
    }
    check(&stage, 1, t)?;

    let t2 = t + dt;
    rhs(&stage, t2, &mut l)?;
    for k in 0..n {
        for c in 0..M {
            stage[k][c] = tq * u[k][c] + q * stage[k][c] + q * dt * l[k][c];
        }
    }
    check(&stage, 2, t2)?;

    let t3 = t + T::ratio(1, 2) * dt;
    rhs(&stage, t3, &mut l)?;
    for k in 0..n {
        for c in 0..M {
            u[k][c] = third * u[k][c] + two_thirds * stage[k][c] + two_thirds * dt * l[k][c];
        }
    }
    check(u, 3, t3)
}

/// Summary of a completed run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunStats<T> {
    pub steps: usize,
    pub t: T,
    pub last_dt: T,
}

/// Method-of-lines solver for one physics on one grid.
pub struct Solver<T: Real, P, const M: usize> {
    pub physics: P,
    pub grid: Grid<T>,
    pub bcs: BoundarySet<T, M>,
    pub scheme: SchemeConfig<T>,
    pub alpha_mode: AlphaMode,
    work: Field<T, M>,
    column_rhs: Vec<[T; M]>,
}

impl<T, P, const M: usize> Solver<T, P, M>
where
    T: Real,
    P: Physics<T, M>,
{
    pub fn new(
        physics: P,
        grid: Grid<T>,
        bcs: BoundarySet<T, M>,
        scheme: SchemeConfig<T>,
    ) -> Result<Self> {
        grid.validate()?;
        bcs.validate(&grid)?;
        scheme.validate()?;
        Ok(Self {
            physics,
            work: Field::zeros(&grid),
            grid,
            bcs,
            scheme,
            alpha_mode: AlphaMode::PerField,
            column_rhs: Vec::new(),
        })
    }

    pub fn with_alpha_mode(mut self, mode: AlphaMode) -> Self {
        self.alpha_mode = mode;
        self
    }

    /// Ghost-filled copy of `interior` at time `t`.
    pub fn padded(&mut self, interior: &[[T; M]], t: T) -> &Field<T, M> {
        self.work.set_interior(interior);
        fill_ghosts(&mut self.work, &self.grid, &self.bcs, &self.physics, t);
        &self.work
    }

    /// Global wave-speed bounds over the interior along each axis.
    pub fn wave_speeds(
        &self,
        interior: &[[T; M]],
    ) -> Result<(WaveSpeeds<T, M>, Option<WaveSpeeds<T, M>>)> {
        let wx = max_wave_speed(&self.physics, interior, Axis::X, 0)?;
        let wy = if self.grid.is_2d() {
            Some(max_wave_speed(&self.physics, interior, Axis::Y, 0)?)
        } else {
            None
        };
        Ok((wx, wy))
    }

    /// Semi-discrete right-hand side at time `t`.
    pub fn rhs(&mut self, interior: &[[T; M]], t: T, out: &mut [[T; M]]) -> Result<()> {
        let (wx, wy) = self.wave_speeds(interior)?;
        self.padded(interior, t);
        let nx = self.work.nx();
        let ny = self.work.ny();
        let g = self.work.ghost();
        let dx = self.grid.dx();
        let physics = &self.physics;
        let scheme = &self.scheme;
        let work = &self.work;

        let ax = wx.alphas(self.alpha_mode);
        out.par_chunks_mut(nx)
            .enumerate()
            .try_for_each_init(
                || (vec![[T::zero(); M]; nx + 2 * g], vec![[T::zero(); M]; nx + 1]),
                |(fl, h), (j, row_out)| {
                    sweep_line(physics, scheme, work.row(j), g, &ax, Axis::X, fl, h)
                        .map_err(|e| offset_error(e, j * nx))?;
                    for i in 0..nx {
                        for c in 0..M {
                            row_out[i][c] = -(h[i + 1][c] - h[i][c]) / dx;
                        }
                    }
                    Ok::<(), Error>(())
                },
            )?;

        if let Some(wy) = wy {
            let dy = self.grid.dy().unwrap();
            let ay = wy.alphas(self.alpha_mode);
            self.column_rhs.resize(nx * ny, [T::zero(); M]);
            self.column_rhs
                .par_chunks_mut(ny)
                .enumerate()
                .try_for_each_init(
                    || {
                        (
                            Vec::with_capacity(ny + 2 * g),
                            vec![[T::zero(); M]; ny + 2 * g],
                            vec![[T::zero(); M]; ny + 1],
                        )
                    },
                    |(col, fl, h), (i, col_out)| {
                        work.column_into(i, col);
                        let frame = physics.normal_frame(Axis::Y);
                        let axis = match frame {
                            Some(perm) => {
                                col.iter_mut().for_each(|u| *u = permute(u, &perm));
                                Axis::X
                            }
                            None => Axis::Y,
                        };
                        sweep_line(physics, scheme, col, g, &ay, axis, fl, h)
                            .map_err(|e| offset_error(e, i))?;
                        if let Some(perm) = frame {
                            h.iter_mut().for_each(|f| *f = unpermute(f, &perm));
                        }
                        for j in 0..ny {
                            for c in 0..M {
                                col_out[j][c] = -(h[j + 1][c] - h[j][c]) / dy;
                            }
                        }
                        Ok::<(), Error>(())
                    },
                )?;
            let col = &self.column_rhs;
            out.par_chunks_mut(nx).enumerate().for_each(|(j, row)| {
                for (i, o) in row.iter_mut().enumerate() {
                    let y = &col[i * ny + j];
                    for c in 0..M {
                        o[c] = o[c] + y[c];
                    }
                }
            });
        }

        if self.physics.has_source() {
            for (u, o) in interior.iter().zip(out.iter_mut()) {
                self.physics.add_source(u, o);
            }
        }
        Ok(())
    }

    /// Step size for the state `interior` at time `t`.
    pub fn compute_dt(&self, interior: &[[T; M]], control: &StepControl<T>, t: T) -> Result<T> {
        let (ax, ay) = match control.dt_law {
            DtLaw::FixedPower(_) => (T::zero(), None),
            DtLaw::CflBound => {
                let (wx, wy) = self.wave_speeds(interior)?;
                (wx.overall, wy.map(|w| w.overall))
            }
        };
        Ok(compute_dt(control, self.grid.dx(), self.grid.dy(), ax, ay, t)?)
    }

    /// Advances `u` by one RK3 step.
    pub fn step(&mut self, u: &mut Field<T, M>, t: T, dt: T) -> Result<()> {
        let mut flat = u.interior_vec();
        rk3_step(&mut flat, t, dt, |v, ts, out| self.rhs(v, ts, out))?;
        u.set_interior(&flat);
        Ok(())
    }

    /// Integrates from `t0` to `control.t_final`, calling `observe(step, t,
    /// dt)` after each step.
    pub fn run(
        &mut self,
        u: &mut Field<T, M>,
        t0: T,
        control: &StepControl<T>,
        mut observe: impl FnMut(usize, T, T),
    ) -> Result<RunStats<T>> {
        control.validate()?;
        let mut flat = u.interior_vec();
        let mut t = t0;
        let mut steps = 0;
        let mut last_dt = T::zero();
        while t < control.t_final {
            let dt = self.compute_dt(&flat, control, t)?;
            if !(dt > T::zero() && dt.is_finite()) {
                return Err(ConfigError::InvalidStepControl(format!(
                    "step size collapsed to {dt} at t = {t}"
                ))
                .into());
            }
            rk3_step(&mut flat, t, dt, |v, ts, out| self.rhs(v, ts, out))?;
            let clipped = t + dt >= control.t_final || control.t_final - t == dt;
            t = if clipped { control.t_final } else { t + dt };
            steps += 1;
            last_dt = dt;
            observe(steps, t, dt);
        }
        u.set_interior(&flat);
        Ok(RunStats { steps, t, last_dt })
    }
}

fn offset_error(e: crate::error::PhysicsError, base: usize) -> Error {
    use crate::error::PhysicsError;
    match e {
        PhysicsError::NonPhysicalAt {
            index,
            field,
            value,
        } => PhysicsError::NonPhysicalAt {
            index: base + index,
            field,
            value,
        }
        .into(),
        other => other.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::BoundarySet;
    use crate::mesh::Axis1;
    use crate::physics::LinearAdvection;
    use crate::stencil::Scheme;

    #[test]
    fn dt_laws() {
        let c = StepControl::cfl(0.5f64, 10.0);
        assert_eq!(compute_dt(&c, 0.1, None, 2.0, None, 0.0).unwrap(), 0.025);
        let f = StepControl::fixed_power(2.0f64, 10.0);
        let dt = compute_dt(&f, 1.0 / 40.0, None, 0.0, None, 0.0).unwrap();
        assert!((dt * 1600.0 - 1.0).abs() < 1e-15);
        let c = StepControl::cfl(0.5f64, 1.0);
        let dt = compute_dt(&c, 0.1, None, 2.0, None, 0.99).unwrap();
        assert!((dt - 0.01).abs() < 1e-15);
        assert_eq!(
            compute_dt(&c, 0.1, None, 0.0, None, 0.0),
            Err(ConfigError::ZeroWaveSpeed)
        );
        let c2 = StepControl::cfl(0.5f64, 1.0);
        let dt = compute_dt(&c2, 0.1, Some(0.2), 1.0, Some(1.0), 0.0).unwrap();
        assert!((dt - 0.5 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn step_control_validation() {
        assert!(StepControl::cfl(0.0, 1.0).validate().is_err());
        assert!(StepControl::cfl(0.5, -1.0).validate().is_err());
        assert!(StepControl::fixed_power(0.0, 1.0).validate().is_err());
        assert!(StepControl::cfl(1.0, 0.0).validate().is_ok());
    }

    #[test]
    fn rk3_with_zero_and_constant_operators() {
        let mut u = vec![[1.5f64], [-2.0]];
        rk3_step(&mut u, 0.0, 0.1, |_, _, out| {
            out.fill([0.0]);
            Ok(())
        })
        .unwrap();
        assert_eq!(u, vec![[1.5], [-2.0]]);
        rk3_step(&mut u, 0.0, 0.125, |_, _, out| {
            out.fill([2.0]);
            Ok(())
        })
        .unwrap();
        assert!((u[0][0] - 1.75).abs() < 1e-15 && (u[1][0] + 1.75).abs() < 1e-15);
    }

    #[test]
    fn rk3_reports_nan_stage() {
        let mut u = vec![[1.0f64]; 4];
        let err = rk3_step(&mut u, 0.0, 0.1, |v, t, out| {
            for (k, o) in out.iter_mut().enumerate() {
                o[0] = if t > 0.05 && k == 2 { f64::NAN } else { -v[k][0] };
            }
            Ok(())
        })
        .unwrap_err();
        assert_eq!(
            err,
            Error::NanAbort(NanAbort {
                stage: 2,
                index: 2,
                time: 0.1
            })
        );
    }

    #[test]
    fn constant_field_has_zero_rhs() {
        let grid = Grid::new_1d(Axis1::new(-1.0, 1.0, 20).periodic());
        for scheme in Scheme::ALL {
            let mut s = Solver::new(
                LinearAdvection::default(),
                grid,
                BoundarySet::periodic_1d(),
                SchemeConfig::new(scheme),
            )
            .unwrap();
            let u = vec![[0.375f64]; 20];
            let mut out = vec![[1.0]; 20];
            s.rhs(&u, 0.0, &mut out).unwrap();
            assert!(out.iter().all(|o| o[0].abs() <= 1e-13), "{scheme}");
        }
    }
}
