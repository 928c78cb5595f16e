//! Global Lax–Friedrichs splitting and characteristic-wise interface fluxes.

use crate::error::PhysicsError;
use crate::physics::{Axis, EigenSystem, Physics};
use crate::scalar::Real;
use crate::stencil::{reconstruct_minus, reconstruct_plus, FluxWindow, SchemeConfig};

/// `f = f+ + f-` with `f+ = (f + alpha u) / 2`.
///
/// `f+` is nudged until `f+ + f-` rounds back to `f`. That always succeeds
/// when `|alpha u| <= |f|`; for larger `alpha u` both halves share a
/// quantum coarser than the low bits of `f`, and the sum is within half an
/// ulp of the larger half.
#[inline]
pub fn lf_split<T: Real>(f: T, u: T, alpha: T) -> (T, T) {
    let mut plus = T::ratio(1, 2) * (f + alpha * u);
    let mut minus = f - plus;
    for _ in 0..4 {
        if plus + minus == f {
            break;
        }
        plus = f - minus;
        minus = f - plus;
    }
    (plus, minus)
}

/// How the splitting speed is chosen per characteristic family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AlphaMode {
    /// Global max of each family's `|lambda_s|`.
    #[default]
    PerField,
    /// Global max over all families, shared by every field.
    Overall,
}

/// Global wave-speed bounds over a set of states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveSpeeds<T, const M: usize> {
    pub per_field: [T; M],
    pub overall: T,
}

impl<T: Real, const M: usize> WaveSpeeds<T, M> {
    pub fn zero() -> Self {
        Self {
            per_field: [T::zero(); M],
            overall: T::zero(),
        }
    }

    pub fn merge(&self, other: &Self) -> Self {
        Self {
            per_field: std::array::from_fn(|s| self.per_field[s].max(other.per_field[s])),
            overall: self.overall.max(other.overall),
        }
    }

    /// Splitting speeds under `mode`.
    pub fn alphas(&self, mode: AlphaMode) -> [T; M] {
        match mode {
            AlphaMode::PerField => self.per_field,
            AlphaMode::Overall => [self.overall; M],
        }
    }
}

/// Max of `|lambda_s|` per family over `states`; errors carry the position
/// of the first non-physical state plus `offset`.
pub fn max_wave_speed<'a, T, P, const M: usize>(
    physics: &P,
    states: impl IntoIterator<Item = &'a [T; M]>,
    axis: Axis,
    offset: usize,
) -> Result<WaveSpeeds<T, M>, PhysicsError>
where
    T: Real,
    P: Physics<T, M> + ?Sized,
{
    let mut out = WaveSpeeds::<T, M>::zero();
    for (i, u) in states.into_iter().enumerate() {
        let speeds = physics.wave_speeds(u, axis).map_err(|e| at_index(e, offset + i))?;
        for s in 0..M {
            let v = speeds[s];
            if !v.is_finite() {
                return Err(PhysicsError::NonPhysicalAt {
                    index: offset + i,
                    field: "wave speed",
                    value: v.to_f64_lossy(),
                });
            }
            out.per_field[s] = out.per_field[s].max(v);
        }
    }
    out.overall = out
        .per_field
        .iter()
        .copied()
        .fold(T::zero(), |a, b| a.max(b));
    Ok(out)
}

fn at_index(e: PhysicsError, index: usize) -> PhysicsError {
    match e {
        PhysicsError::NonPhysical { field, value } => PhysicsError::NonPhysicalAt {
            index,
            field,
            value,
        },
        other => other,
    }
}

/// Interface flux at `x[j+1/2]` from six states and their physical fluxes
/// at `j-2 ..= j+3`, reconstructed field by field in characteristic space.
#[inline]
pub fn char_interface_flux<T: Real, const M: usize>(
    states: &[[T; M]; 6],
    fluxes: &[[T; M]; 6],
    eig: &EigenSystem<T, M>,
    alphas: &[T; M],
    cfg: &SchemeConfig<T>,
) -> [T; M] {
    let mut chars = [T::zero(); M];
    for s in 0..M {
        let mut plus = [T::zero(); 6];
        let mut minus = [T::zero(); 6];
        for k in 0..6 {
            let fc = eig.project(s, &fluxes[k]);
            let uc = eig.project(s, &states[k]);
            let (p, m) = lf_split(fc, uc, alphas[s]);
            plus[k] = p;
            minus[k] = m;
        }
        chars[s] =
            reconstruct_plus(cfg, &FluxWindow(plus)) + reconstruct_minus(cfg, &FluxWindow(minus));
    }
    eig.unproject(&chars)
}

/// Interface fluxes along one padded line.
///
/// `line` holds `ghost` padding states on each side of `nodes` interior
/// states. `fluxes` is scratch of the same length. On return
/// `out[k]` (`k = 0..=nodes`) is the flux between padded cells
/// `ghost - 1 + k` and `ghost + k`.
pub fn sweep_line<T, P, const M: usize>(
    physics: &P,
    cfg: &SchemeConfig<T>,
    line: &[[T; M]],
    ghost: usize,
    alphas: &[T; M],
    axis: Axis,
    fluxes: &mut [[T; M]],
    out: &mut [[T; M]],
) -> Result<(), PhysicsError>
where
    T: Real,
    P: Physics<T, M> + ?Sized,
{
    debug_assert!(ghost >= 3);
    let nodes = line.len() - 2 * ghost;
    debug_assert!(out.len() > nodes);
    for (f, u) in fluxes.iter_mut().zip(line) {
        *f = physics.flux(u, axis);
    }
    for k in 0..=nodes {
        let p = ghost - 1 + k;
        let st: &[[T; M]; 6] = line[p - 2..p + 4].try_into().unwrap();
        let fl: &[[T; M]; 6] = fluxes[p - 2..p + 4].try_into().unwrap();
        let eig = physics.roe_eigensystem(&line[p], &line[p + 1], axis)?;
        out[k] = char_interface_flux(st, fl, &eig, alphas, cfg);
    }
    Ok(())
}
