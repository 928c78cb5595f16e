//! Nonlinear weights and the reconstructed interface flux.

use std::fmt;
use std::str::FromStr;

use super::indicators::{
    beta3_cu, beta3_nw, beta_central, beta_upwind, ratio_cutoff, tau5, tau6, tau_cu, tau_nw,
    theta_select,
};
use super::{gamma_central6, gamma_theta_unchecked, gamma_upwind5, substencil_values, FluxWindow};
use crate::error::KernelError;
use crate::scalar::Real;

/// Reconstruction scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Fifth-order upwind, Jiang–Shu weights.
    Js,
    /// Fifth-order upwind, Borges et al. weights.
    Z,
    /// Sixth-order central with the Yamaleev–Carpenter indicators.
    Nw6,
    /// Sixth-order adaptive central-upwind (Hu et al.).
    Cu6,
    /// Switches between fifth-order upwind and sixth-order central linear
    /// weights, central indicators with a ratio cutoff.
    Theta6,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [Scheme::Js, Scheme::Z, Scheme::Nw6, Scheme::Cu6, Scheme::Theta6];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Js => "js",
            Scheme::Z => "z",
            Scheme::Nw6 => "nw6",
            Scheme::Cu6 => "cu6",
            Scheme::Theta6 => "theta6",
        }
    }

    /// Whether the scheme reads `f[j+3]` (the downwind sub-stencil).
    pub fn is_six_point(self) -> bool {
        matches!(self, Scheme::Nw6 | Scheme::Cu6 | Scheme::Theta6)
    }

    pub fn default_epsilon(self) -> f64 {
        match self {
            Scheme::Js => 1e-6,
            Scheme::Z => 1e-40,
            Scheme::Nw6 | Scheme::Cu6 | Scheme::Theta6 => 1e-10,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown scheme `{0}`; expected one of: js, z, nw6, cu6, theta6")]
pub struct UnknownScheme(pub String);

impl FromStr for Scheme {
    type Err = UnknownScheme;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "js" | "weno-js" => Ok(Scheme::Js),
            "z" | "weno-z" => Ok(Scheme::Z),
            "nw6" | "weno-nw6" => Ok(Scheme::Nw6),
            "cu6" | "weno-cu6" => Ok(Scheme::Cu6),
            "theta6" | "theta" | "weno-theta6" => Ok(Scheme::Theta6),
            _ => Err(UnknownScheme(s.to_string())),
        }
    }
}

/// Scheme selector plus its tunables.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchemeConfig<T> {
    pub scheme: Scheme,
    pub epsilon: T,
    /// Power of the Jiang–Shu weights.
    pub p_js: i32,
    /// Power of the Z-type weights (also used by NW6).
    pub q_z: i32,
    /// Amplification of the linear weights in CU6.
    pub c_cu: T,
    /// Ratio-cutoff threshold of the theta scheme.
    pub alpha_r: T,
}

impl<T: Real> SchemeConfig<T> {
    pub fn new(scheme: Scheme) -> Self {
        Self {
            scheme,
            epsilon: T::lit(scheme.default_epsilon()),
            p_js: 2,
            q_z: 1,
            c_cu: T::int(20),
            alpha_r: T::int(50),
        }
    }

    pub fn with_epsilon(mut self, epsilon: T) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_alpha_r(mut self, alpha_r: T) -> Self {
        self.alpha_r = alpha_r;
        self
    }

    pub fn validate(&self) -> Result<(), KernelError> {
        let bad = |msg: String| Err(KernelError::InvalidConfig(msg));
        if !(self.epsilon > T::zero()) {
            return bad(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if self.p_js < 1 {
            return bad(format!("p must be >= 1, got {}", self.p_js));
        }
        if self.q_z < 1 {
            return bad(format!("q must be >= 1, got {}", self.q_z));
        }
        if !(self.c_cu >= T::one()) {
            return bad(format!("C must be >= 1, got {}", self.c_cu));
        }
        if !(self.alpha_r >= T::zero()) {
            return bad(format!("alpha_R must be >= 0, got {}", self.alpha_r));
        }
        Ok(())
    }
}

/// Normalized nonlinear weights with the linear weights they target.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightSet<T> {
    pub omega: [T; 4],
    pub gamma: [T; 4],
    /// Only meaningful for the theta scheme; zero otherwise.
    pub theta: T,
    /// Large-stencil indicator used.
    pub tau: T,
}

#[inline]
fn normalize<T: Real>(alpha: [T; 4]) -> [T; 4] {
    let s = alpha[0] + alpha[1] + alpha[2] + alpha[3];
    let inv = T::one() / s;
    [alpha[0] * inv, alpha[1] * inv, alpha[2] * inv, alpha[3] * inv]
}

#[inline]
fn ratio_pow<T: Real>(x: T, q: i32) -> T {
    if q == 1 {
        x
    } else {
        x.powi(q)
    }
}

/// Nonlinear weights of `cfg.scheme` on window `w`.
#[inline]
pub fn weights<T: Real>(cfg: &SchemeConfig<T>, w: &FluxWindow<T>) -> WeightSet<T> {
    let eps = cfg.epsilon;
    let one = T::one();
    let zero = T::zero();
    match cfg.scheme {
        Scheme::Js => {
            let beta = beta_upwind(w);
            let gamma = gamma_upwind5();
            let mut alpha = [zero; 4];
            for k in 0..3 {
                alpha[k] = gamma[k] / (eps + beta[k]).powi(cfg.p_js);
            }
            WeightSet {
                omega: normalize(alpha),
                gamma,
                theta: zero,
                tau: zero,
            }
        }
        Scheme::Z => {
            let beta = beta_upwind(w);
            let tau = (beta[0] - beta[2]).abs();
            let gamma = gamma_upwind5();
            let mut alpha = [zero; 4];
            for k in 0..3 {
                alpha[k] = gamma[k] * (one + ratio_pow(tau / (eps + beta[k]), cfg.q_z));
            }
            WeightSet {
                omega: normalize(alpha),
                gamma,
                theta: zero,
                tau,
            }
        }
        Scheme::Nw6 => {
            let [b0, b1, b2] = beta_upwind(w);
            let b3 = beta3_nw(w);
            let beta = [b0, b1, b2, b3];
            let tau = tau_nw(w);
            let gamma = gamma_central6();
            let alpha: [T; 4] = std::array::from_fn(|k| {
                gamma[k] * (one + ratio_pow(tau / (eps + beta[k]), cfg.q_z))
            });
            WeightSet {
                omega: normalize(alpha),
                gamma,
                theta: zero,
                tau,
            }
        }
        Scheme::Cu6 => {
            let [b0, b1, b2] = beta_upwind(w);
            let beta = [b0, b1, b2, beta3_cu(w)];
            let tau = tau_cu(beta);
            let gamma = gamma_central6();
            let alpha: [T; 4] =
                std::array::from_fn(|k| gamma[k] * (cfg.c_cu + tau / (eps + beta[k])));
            WeightSet {
                omega: normalize(alpha),
                gamma,
                theta: zero,
                tau,
            }
        }
        Scheme::Theta6 => {
            let beta = ratio_cutoff(beta_central(w), cfg.alpha_r, eps);
            let (tau, theta) = theta_select(tau5(w), tau6(w));
            let gamma = gamma_theta_unchecked(theta);
            let alpha: [T; 4] = std::array::from_fn(|k| gamma[k] * (one + tau / (eps + beta[k])));
            WeightSet {
                omega: normalize(alpha),
                gamma,
                theta,
                tau,
            }
        }
    }
}

/// Reconstructs the positive-flux interface value `f+[j+1/2]` from a
/// left-to-right window.
#[inline]
pub fn reconstruct_plus<T: Real>(cfg: &SchemeConfig<T>, w: &FluxWindow<T>) -> T {
    let ws = weights(cfg, w);
    let v = substencil_values(w);
    ws.omega[0] * v[0] + ws.omega[1] * v[1] + ws.omega[2] * v[2] + ws.omega[3] * v[3]
}

/// Reconstructs the negative-flux interface value `f-[j+1/2]` from samples
/// given in grid order `f-[j-2] ..= f-[j+3]`; the window is mirrored about
/// the interface and passed through [`reconstruct_plus`].
#[inline]
pub fn reconstruct_minus<T: Real>(cfg: &SchemeConfig<T>, w: &FluxWindow<T>) -> T {
    reconstruct_plus(cfg, &w.reflect())
}
