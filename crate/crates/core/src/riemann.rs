//! Exact Riemann solver for the 1D ideal-gas Euler equations.
//!
//! The star pressure is the root of the classical pressure function, found by
//! Newton iteration from the two-rarefaction guess, with bisection as the
//! fallback.

use crate::error::PhysicsError;
use crate::physics::Primitive1;
use crate::scalar::Real;

const MAX_ITER: usize = 100;

/// Star-region values and wave structure of one Riemann problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiemannSolution<T> {
    pub left: Primitive1<T>,
    pub right: Primitive1<T>,
    pub gamma: T,
    pub p_star: T,
    pub u_star: T,
    pub iterations: usize,
}

/// A wave bounding the star region on one side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Wave<T> {
    Shock { speed: T },
    Rarefaction { head: T, tail: T },
}

struct Side<T> {
    rho: T,
    p: T,
    a: T,
}

impl<T: Real> Side<T> {
    fn of(w: &Primitive1<T>, gamma: T) -> Self {
        Self {
            rho: w.rho,
            p: w.p,
            a: w.sound_speed(gamma),
        }
    }

    /// Pressure function `f_K(p)` and its derivative.
    fn f(&self, p: T, g: T) -> (T, T) {
        let one = T::one();
        let two = T::int(2);
        if p > self.p {
            let a = two / ((g + one) * self.rho);
            let b = (g - one) / (g + one) * self.p;
            let q = (a / (p + b)).sqrt();
            (
                (p - self.p) * q,
                q * (one - (p - self.p) / (two * (b + p))),
            )
        } else {
            let z = (g - one) / (two * g);
            let r = p / self.p;
            (
                two * self.a / (g - one) * (r.powf(z) - one),
                one / (self.rho * self.a) * r.powf(-(g + one) / (two * g)),
            )
        }
    }
}

/// Solves the Riemann problem with initial data `left | right`.
pub fn solve<T: Real>(
    left: Primitive1<T>,
    right: Primitive1<T>,
    gamma: T,
) -> Result<RiemannSolution<T>, PhysicsError> {
    for w in [&left, &right] {
        for (field, v) in [("rho", w.rho), ("p", w.p)] {
            if !(v > T::zero() && v.is_finite()) {
                return Err(PhysicsError::NonPhysical {
                    field,
                    value: v.to_f64_lossy(),
                });
            }
        }
    }
    let g = gamma;
    let one = T::one();
    let two = T::int(2);
    let half = T::ratio(1, 2);
    let sl = Side::of(&left, g);
    let sr = Side::of(&right, g);
    let du = right.u - left.u;
    if two / (g - one) * (sl.a + sr.a) <= du {
        return Err(PhysicsError::Vacuum);
    }
    let pf = |p: T| {
        let (fl, dl) = sl.f(p, g);
        let (fr, dr) = sr.f(p, g);
        (fl + fr + du, dl + dr)
    };

    let tol = T::lit(1e-12);
    let floor = tol * left.p.min(right.p);
    let z = (g - one) / (two * g);
    let guess = ((sl.a + sr.a - half * (g - one) * du)
        / (sl.a / sl.p.powf(z) + sr.a / sr.p.powf(z)))
    .powf(one / z);
    let mut p = if guess.is_finite() && guess > T::zero() {
        guess
    } else {
        half * (left.p + right.p)
    };

    let mut newton = None;
    for it in 1..=MAX_ITER {
        let (f, df) = pf(p);
        let mut next = p - f / df;
        if !next.is_finite() {
            break;
        }
        if next <= T::zero() {
            next = floor;
        }
        let change = (next - p).abs() / (half * (next + p));
        p = next;
        if change <= tol {
            newton = Some((p, it));
            break;
        }
    }

    let (p_star, iterations) = match newton {
        Some(found) => found,
        None => bisect(&pf, floor, left.p.max(right.p), tol)?,
    };
    let (fl, _) = sl.f(p_star, g);
    let (fr, _) = sr.f(p_star, g);
    let u_star = half * (left.u + right.u) + half * (fr - fl);
    Ok(RiemannSolution {
        left,
        right,
        gamma,
        p_star,
        u_star,
        iterations,
    })
}

fn bisect<T: Real>(
    pf: &impl Fn(T) -> (T, T),
    lo: T,
    hi_start: T,
    tol: T,
) -> Result<(T, usize), PhysicsError> {
    let half = T::ratio(1, 2);
    let mut lo = lo;
    let mut hi = hi_start;
    let mut it = 0;
    while pf(hi).0 < T::zero() {
        hi = hi * T::int(2);
        it += 1;
        if it > MAX_ITER {
            return Err(PhysicsError::NoConvergence(MAX_ITER));
        }
    }
    if pf(lo).0 > T::zero() {
        return Ok((lo, it));
    }
    for k in 0..4 * MAX_ITER {
        let mid = half * (lo + hi);
        if pf(mid).0 > T::zero() {
            hi = mid;
        } else {
            lo = mid;
        }
        if (hi - lo) <= tol * mid {
            return Ok((half * (lo + hi), it + k + 1));
        }
    }
    Err(PhysicsError::NoConvergence(4 * MAX_ITER))
}

impl<T: Real> RiemannSolution<T> {
    fn star_density(&self, w: &Primitive1<T>) -> T {
        let g = self.gamma;
        let one = T::one();
        let r = self.p_star / w.p;
        if self.p_star > w.p {
            let k = (g - one) / (g + one);
            w.rho * (r + k) / (k * r + one)
        } else {
            w.rho * r.powf(one / g)
        }
    }

    pub fn star_density_left(&self) -> T {
        self.star_density(&self.left)
    }

    pub fn star_density_right(&self) -> T {
        self.star_density(&self.right)
    }

    fn wave(&self, w: &Primitive1<T>, sign: T) -> Wave<T> {
        let g = self.gamma;
        let one = T::one();
        let two = T::int(2);
        let a = w.sound_speed(g);
        if self.p_star > w.p {
            let m = ((g + one) / (two * g) * self.p_star / w.p + (g - one) / (two * g)).sqrt();
            Wave::Shock {
                speed: w.u + sign * a * m,
            }
        } else {
            let a_star = a * (self.p_star / w.p).powf((g - one) / (two * g));
            Wave::Rarefaction {
                head: w.u + sign * a,
                tail: self.u_star + sign * a_star,
            }
        }
    }

    /// Left-facing wave (`u - a` family).
    pub fn left_wave(&self) -> Wave<T> {
        self.wave(&self.left, -T::one())
    }

    /// Right-facing wave (`u + a` family).
    pub fn right_wave(&self) -> Wave<T> {
        self.wave(&self.right, T::one())
    }

    /// Similarity solution at `xi = x / t`.
    pub fn sample(&self, xi: T) -> Primitive1<T> {
        let g = self.gamma;
        let one = T::one();
        let two = T::int(2);
        let (w, sign, wave, rho_star) = if xi <= self.u_star {
            (self.left, -one, self.left_wave(), self.star_density_left())
        } else {
            (self.right, one, self.right_wave(), self.star_density_right())
        };
        let star = Primitive1::new(rho_star, self.u_star, self.p_star);
        // `sign * (xi - s) > 0` means `xi` lies outside the wave, in the
        // undisturbed state.
        match wave {
            Wave::Shock { speed } => {
                if sign * (xi - speed) > T::zero() {
                    w
                } else {
                    star
                }
            }
            Wave::Rarefaction { head, tail } => {
                if sign * (xi - head) > T::zero() {
                    w
                } else if sign * (xi - tail) <= T::zero() {
                    star
                } else {
                    let a = w.sound_speed(g);
                    let gp1 = g + one;
                    let gm1 = g - one;
                    let c = two / gp1 - sign * gm1 / (gp1 * a) * (w.u - xi);
                    let rho = w.rho * c.powf(two / gm1);
                    let u = two / gp1 * (-sign * a + gm1 / two * w.u + xi);
                    let p = w.p * c.powf(two * g / gm1);
                    Primitive1::new(rho, u, p)
                }
            }
        }
    }
}

/// Exact solution at similarity coordinate `xi` for data `left | right`.
pub fn exact_riemann<T: Real>(
    left: Primitive1<T>,
    right: Primitive1<T>,
    gamma: T,
    xi: T,
) -> Result<Primitive1<T>, PhysicsError> {
    Ok(solve(left, right, gamma)?.sample(xi))
}
