//! Smoothness indicators of the sub-stencils and of the large stencil.

use super::FluxWindow;
use crate::scalar::{Real, Scalar};

#[inline]
fn sq<T: Scalar>(x: T) -> T {
    x * x
}

#[inline]
fn abs<T: Scalar>(x: T) -> T {
    if x < T::zero() {
        -x
    } else {
        x
    }
}

#[inline]
fn max4<T: Scalar>(b: &[T; 4]) -> T {
    let mut m = b[0];
    for &x in &b[1..] {
        if x > m {
            m = x;
        }
    }
    m
}

#[inline]
fn min4<T: Scalar>(b: &[T; 4]) -> T {
    let mut m = b[0];
    for &x in &b[1..] {
        if x < m {
            m = x;
        }
    }
    m
}

/// Jiang–Shu indicators of the three upwind sub-stencils `S0, S1, S2`.
#[inline]
pub fn beta_upwind<T: Scalar>(w: &FluxWindow<T>) -> [T; 3] {
    let [a, b, c, d, e, _] = w.0;
    let two = T::int(2);
    let c13 = T::ratio(13, 12);
    let c14 = T::ratio(1, 4);
    [
        c13 * sq(a - two * b + c) + c14 * sq(a - T::int(4) * b + T::int(3) * c),
        c13 * sq(b - two * c + d) + c14 * sq(d - b),
        c13 * sq(c - two * d + e) + c14 * sq(T::int(3) * c - T::int(4) * d + e),
    ]
}

/// Upwind-style indicator of the downwind sub-stencil `S3 = {j+1, j+2, j+3}`.
#[inline]
pub(crate) fn beta3_upwind_downwind<T: Scalar>(w: &FluxWindow<T>) -> T {
    let [_, _, _, d, e, g] = w.0;
    T::ratio(13, 12) * sq(d - T::int(2) * e + g)
        + T::ratio(1, 4) * sq(-T::int(5) * d + T::int(8) * e - T::int(3) * g)
}

/// Six-point indicator of `S3` for the energy-stable (NW6) scheme: the
/// quartic mean of the three upwind indicators and the plain `S3` indicator,
/// scaled by 1/4.
#[inline]
pub fn beta3_nw<T: Real>(w: &FluxWindow<T>) -> T {
    let [b0, b1, b2] = beta_upwind(w);
    quartic_mean_quarter([b0, b1, b2, beta3_upwind_downwind(w)])
}

/// `(1/4) (b0^4 + b1^4 + b2^4 + b3^4)^(1/4)`, scaled by the largest entry
/// so that large windows do not overflow.
#[inline]
pub(crate) fn quartic_mean_quarter<T: Real>(b: [T; 4]) -> T {
    let m = max4(&b);
    if m <= T::zero() {
        return T::zero();
    }
    let s: T = b
        .iter()
        .map(|&x| {
            let r = x / m;
            let r2 = r * r;
            r2 * r2
        })
        .sum();
    T::ratio(1, 4) * m * s.sqrt().sqrt()
}

/// Six-point indicator of the central-upwind (CU6) scheme, the 28-term
/// quadratic form with the corrected coefficient set.
#[inline]
pub fn beta3_cu<T: Scalar>(w: &FluxWindow<T>) -> T {
    let [a, b, c, d, e, g] = w.0;
    let k = T::int;
    let s = k(271779) * a * a
        + a * (k(-2380800) * b + k(4086352) * c - k(3462252) * d + k(1458762) * e
            - k(245620) * g)
        + b * (k(5653317) * b - k(20427884) * c + k(17905032) * d - k(7727988) * e
            + k(1325006) * g)
        + c * (k(19510972) * c - k(35817664) * d + k(15929912) * e - k(2792660) * g)
        + d * (k(17195652) * d - k(15880404) * e + k(2863984) * g)
        + e * (k(3824847) * e - k(1429976) * g)
        + k(139633) * g * g;
    s * T::ratio(1, 120960)
}

/// Central indicators built from interface-centred candidate polynomials,
/// with `S3` extended to `{j, j+1, j+2, j+3}`.
#[inline]
pub fn beta_central<T: Scalar>(w: &FluxWindow<T>) -> [T; 4] {
    let [a, b, c, d, e, g] = w.0;
    let two = T::int(2);
    let three = T::int(3);
    let c13 = T::ratio(13, 12);
    [
        c13 * sq(a - two * b + c) + sq(a - three * b + two * c),
        c13 * sq(b - two * c + d) + sq(d - c),
        c13 * sq(c - two * d + e) + sq(c - d),
        T::ratio(13, 48) * sq(three * c - T::int(7) * d + T::int(5) * e - g)
            + sq(two * d - three * e + g),
    ]
}

/// Zeroes all indicators when `max(beta) / (eps + min(beta)) <= alpha_r`.
#[inline]
pub fn ratio_cutoff<T: Scalar>(betas: [T; 4], alpha_r: T, epsilon: T) -> [T; 4] {
    let r = max4(&betas) / (epsilon + min4(&betas));
    if r <= alpha_r {
        [T::zero(); 4]
    } else {
        betas
    }
}

/// `|beta0 - beta2|` from the upwind indicators.
#[inline]
pub fn tau_z<T: Scalar>(w: &FluxWindow<T>) -> T {
    let [b0, _, b2] = beta_upwind(w);
    abs(b0 - b2)
}

/// Squared fifth undivided difference over the six-point stencil.
#[inline]
pub fn tau_nw<T: Scalar>(w: &FluxWindow<T>) -> T {
    let [a, b, c, d, e, g] = w.0;
    let five = T::int(5);
    let ten = T::int(10);
    sq(a - five * b + ten * c - ten * d + five * e - g)
}

/// `beta3 - (beta0 + 4 beta1 + beta2) / 6` for the CU6 indicators.
///
/// Negative values within `1e-14 * sum(beta)` are roundoff and clamp to zero.
#[inline]
pub fn tau_cu<T: Real>(betas: [T; 4]) -> T {
    let [b0, b1, b2, b3] = betas;
    let t = b3 - (b0 + T::int(4) * b1 + b2) * T::ratio(1, 6);
    if t < T::zero() {
        let scale = b0 + b1 + b2 + b3;
        if -t <= T::lit(1e-14) * scale {
            return T::zero();
        }
    }
    t
}

/// Higher-order variation of the fifth-order central polynomial.
#[inline]
pub fn tau5<T: Scalar>(w: &FluxWindow<T>) -> T {
    let [a, b, c, d, e, _] = w.0;
    let three = T::int(3);
    let four = T::int(4);
    T::ratio(13, 12) * sq(a - four * b + T::int(6) * c - four * d + e)
        + sq(-b + three * c - three * d + e)
}

/// Higher-order variation of the sixth-order central polynomial.
#[inline]
pub fn tau6<T: Scalar>(w: &FluxWindow<T>) -> T {
    let [a, b, c, d, e, g] = w.0;
    let two = T::int(2);
    let three = T::int(3);
    let five = T::int(5);
    let ten = T::int(10);
    T::ratio(13, 12) * sq(-a + five * b - ten * c + ten * d - five * e + g)
        + T::ratio(1, 4) * sq(a - three * b + two * c + two * d - three * e + g)
}

/// `(tau6, 0)` when `tau6 < tau5`, otherwise `(tau5, 1)`.
#[inline]
pub fn theta_select<T: Scalar>(tau5: T, tau6: T) -> (T, T) {
    if tau6 < tau5 {
        (tau6, T::zero())
    } else {
        (tau5, T::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n, d)
    }

    fn qw(v: [i64; 6]) -> FluxWindow<Q> {
        FluxWindow(v.map(Q::from_integer))
    }

    fn zero() -> Q {
        Q::from_integer(0)
    }

    const LINEAR: [i64; 6] = [-2, -1, 0, 1, 2, 3];
    const SPIKE: [i64; 6] = [0, 0, 0, 1, 0, 0];
    const QUADRATIC: [i64; 6] = [4, 1, 0, 1, 4, 9];
    const CUBIC: [i64; 6] = [-8, -1, 0, 1, 8, 27];

    #[test]
    fn upwind_indicators() {
        assert_eq!(beta_upwind(&qw([7; 6])), [zero(); 3]);
        assert_eq!(beta_upwind(&qw(LINEAR)), [Q::from_integer(1); 3]);
        assert_eq!(beta_upwind(&qw(SPIKE)), [zero(), q(4, 3), q(25, 3)]);
    }

    #[test]
    fn nw_downwind_indicator() {
        assert_eq!(beta3_nw(&FluxWindow([3.0f64; 6])), 0.0);
        let b = beta3_nw(&FluxWindow([0.0f64, 0.0, 0.0, 0.0, 0.0, 1.0]));
        assert!((b - 0.25 * 10.0 / 3.0).abs() < 1e-15);
        // homogeneity of the quartic mean
        let v = 2.5f64;
        let m = quartic_mean_quarter([v; 4]);
        assert!((m - 0.25 * 4f64.powf(0.25) * v).abs() < 1e-15);
        assert_eq!(beta3_upwind_downwind(&qw([0, 0, 0, 0, 0, 1])), q(10, 3));
    }

    #[test]
    fn cu_indicator_transcription() {
        assert_eq!(beta3_cu(&qw([5; 6])), zero());
        assert_eq!(beta3_cu(&qw(LINEAR)), Q::from_integer(1));
        assert_eq!(beta3_cu(&qw(QUADRATIC)), q(13, 3));
        assert_eq!(beta3_cu(&FluxWindow([1.0f64; 6])), 0.0);
        assert_eq!(beta3_cu(&FluxWindow([2.0f64; 6])), 0.0);
        let c = 0.3f64;
        assert!(beta3_cu(&FluxWindow([c; 6])).abs() <= 1e-10 * c * c);
    }

    #[test]
    fn central_indicators() {
        assert_eq!(beta_central(&qw([1; 6])), [zero(); 4]);
        assert_eq!(beta_central(&qw(LINEAR)), [Q::from_integer(1); 4]);
        assert_eq!(
            beta_central(&qw(SPIKE)),
            [zero(), q(25, 12), q(16, 3), q(829, 48)]
        );
    }

    #[test]
    fn cutoff_rule() {
        let one = 1.0f64;
        assert_eq!(ratio_cutoff([one; 4], 50.0, 1e-10), [0.0; 4]);
        let b = [1e-8, 1.0, 1.0, 1.0];
        assert_eq!(ratio_cutoff(b, 50.0, 1e-10), b);
        assert_eq!(ratio_cutoff([0.0; 4], 0.0, 1e-10), [0.0; 4]);
    }

    #[test]
    fn large_stencil_indicators() {
        for t in [tau_z(&qw([2; 6])), tau_nw(&qw([2; 6]))] {
            assert_eq!(t, zero());
        }
        assert_eq!(tau_cu([0.0f64; 4]), 0.0);
        assert_eq!(tau_nw(&qw(LINEAR)), zero());
        assert_eq!(tau_nw(&qw(SPIKE)), Q::from_integer(100));
        assert_eq!(tau_z(&qw(SPIKE)), q(25, 3));
    }

    #[test]
    fn tau_cu_clamps_roundoff_only() {
        assert_eq!(tau_cu([1.0f64, 1.0, 1.0, 1.0 - 1e-16]), 0.0);
        assert!(tau_cu([1.0f64, 1.0, 1.0, 0.5]) < 0.0);
        assert!((tau_cu([1.0f64, 1.0, 1.0, 2.0]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn tau5_tau6_annihilation() {
        assert_eq!(tau5(&qw(QUADRATIC)), zero());
        assert_eq!(tau6(&qw(QUADRATIC)), zero());
        assert_eq!(tau5(&qw([9; 6])), zero());
        assert_eq!(tau6(&qw([9; 6])), zero());
        // cubic: fourth difference vanishes, third difference is 6
        assert_eq!(tau5(&qw(CUBIC)), Q::from_integer(36));
        assert_eq!(tau6(&qw(CUBIC)), zero());
    }

    #[test]
    fn theta_rule() {
        assert_eq!(theta_select(2.0, 1.0), (1.0, 0.0));
        assert_eq!(theta_select(1.0, 1.0), (1.0, 1.0));
        assert_eq!(theta_select(0.0, 0.0), (0.0, 1.0));
    }

    #[test]
    fn theta_is_central_on_resolved_sine() {
        let dx = 0.01f64;
        let w = FluxWindow(std::array::from_fn(|k| ((k as f64 - 2.0) * dx + 0.3).sin()));
        let (_, theta) = theta_select(tau5(&w), tau6(&w));
        assert_eq!(theta, 0.0);
    }
}
