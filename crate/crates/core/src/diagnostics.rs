//! Error norms, observed orders, symmetry probes and convergence tables.

use std::fmt::Write as _;

use crate::error::ConfigError;
use crate::mesh::Grid;
use crate::scalar::Real;

fn check_len<T>(a: &[T], b: &[T]) -> Result<(), ConfigError> {
    if a.len() != b.len() {
        return Err(ConfigError::ShapeMismatch(format!(
            "{} vs {} nodes",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// Pairwise sum, so results do not depend on thread count or chunking.
pub fn pairwise_sum<T: Real>(v: &[T]) -> T {
    if v.len() <= 16 {
        return v.iter().fold(T::zero(), |a, &b| a + b);
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}

/// `measure * sum |a - b|` over the given nodes.
pub fn l1_error<T: Real>(a: &[T], b: &[T], measure: T) -> Result<T, ConfigError> {
    check_len(a, b)?;
    let d: Vec<T> = a.iter().zip(b).map(|(&x, &y)| (x - y).abs()).collect();
    Ok(measure * pairwise_sum(&d))
}

/// `max |a - b|`; NaN anywhere gives NaN.
pub fn linf_error<T: Real>(a: &[T], b: &[T]) -> Result<T, ConfigError> {
    check_len(a, b)?;
    let mut worst = T::zero();
    for (&x, &y) in a.iter().zip(b) {
        let d = (x - y).abs();
        if d.is_nan() {
            return Ok(d);
        }
        worst = worst.max(d);
    }
    Ok(worst)
}

/// `log2(coarse / fine)`, absent when either error is not positive.
pub fn observed_order<T: Real>(coarse: T, fine: T) -> Option<T> {
    if coarse > T::zero() && fine > T::zero() && coarse.is_finite() && fine.is_finite() {
        Some((coarse / fine).log2())
    } else {
        None
    }
}

/// Total variation `sum |v[i+1] - v[i]|` of a 1D profile.
pub fn total_variation<T: Real>(v: &[T]) -> T {
    let d: Vec<T> = v.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    pairwise_sum(&d)
}

/// Measure-weighted sum of each conserved component.
pub fn total_conserved<T: Real>(components: &[Vec<T>], measure: T) -> Vec<T> {
    components
        .iter()
        .map(|c| measure * pairwise_sum(c))
        .collect()
}

/// Mirror used by [`symmetry_error`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mirror {
    /// `x -> x_lo + x_hi - x`.
    X,
    /// `y -> y_lo + y_hi - y`.
    Y,
    /// `(x, y) -> (y, x)`.
    Diagonal,
}

fn mirror_index(i: usize, n: usize, periodic: bool) -> usize {
    if periodic {
        (n - i) % n
    } else {
        n - 1 - i
    }
}

/// `max |rho(P) - rho(mirror P)|` over interior nodes, for a row-major
/// density array on `grid`.
pub fn symmetry_error<T: Real>(rho: &[T], grid: &Grid<T>, mirror: Mirror) -> Result<T, ConfigError> {
    let nx = grid.nx();
    let ny = grid.ny();
    if rho.len() != nx * ny {
        return Err(ConfigError::ShapeMismatch(format!(
            "{} values on a {nx}x{ny} grid",
            rho.len()
        )));
    }
    let map: Box<dyn Fn(usize, usize) -> (usize, usize)> = match mirror {
        Mirror::X => {
            let p = grid.x.periodic;
            Box::new(move |i, j| (mirror_index(i, nx, p), j))
        }
        Mirror::Y => {
            let ay = grid.y.ok_or(ConfigError::AsymmetricGrid)?;
            let p = ay.periodic;
            Box::new(move |i, j| (i, mirror_index(j, ny, p)))
        }
        Mirror::Diagonal => {
            let ay = grid.y.ok_or(ConfigError::AsymmetricGrid)?;
            let ax = grid.x;
            if ax.lo != ay.lo || ax.hi != ay.hi || ax.intervals != ay.intervals
                || ax.periodic != ay.periodic
            {
                return Err(ConfigError::AsymmetricGrid);
            }
            Box::new(|i, j| (j, i))
        }
    };
    let mut worst = T::zero();
    for j in 0..ny {
        for i in 0..nx {
            let (mi, mj) = map(i, j);
            let d = (rho[j * nx + i] - rho[mj * nx + mi]).abs();
            if d.is_nan() {
                return Ok(d);
            }
            worst = worst.max(d);
        }
    }
    Ok(worst)
}

/// One line of a convergence table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub l1: f64,
    pub linf: f64,
    pub order_l1: Option<f64>,
    pub order_linf: Option<f64>,
}

/// Attaches observed orders computed from successive rows.
pub fn convergence_rows(errors: &[(usize, f64, f64)]) -> Vec<ConvergenceRow> {
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(errors.len());
    for (k, &(n, l1, linf)) in errors.iter().enumerate() {
        let (order_l1, order_linf) = if k == 0 {
            (None, None)
        } else {
            let (_, pl1, plinf) = errors[k - 1];
            (observed_order(pl1, l1), observed_order(plinf, linf))
        };
        rows.push(ConvergenceRow {
            n,
            l1,
            linf,
            order_l1,
            order_linf,
        });
    }
    rows
}

/// Error in two-significant-digit scientific notation, e.g. `4.5E-07`.
pub fn format_error(e: f64) -> String {
    if !e.is_finite() {
        return format!("{e}");
    }
    let s = format!("{e:.1E}");
    match s.split_once('E') {
        Some((m, x)) => {
            let exp: i32 = x.parse().unwrap_or(0);
            let sign = if exp < 0 { '-' } else { '+' };
            format!("{m}E{sign}{:02}", exp.abs())
        }
        None => s,
    }
}

fn format_order(o: Option<f64>) -> String {
    o.map_or_else(|| "-".to_string(), |v| format!("{v:.1}"))
}

/// Aligned plain-text table in the layout `N  L1 (order)  Linf (order)`.
pub fn format_table(title: &str, rows: &[ConvergenceRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let _ = writeln!(out, "{:>6}  {:>16}  {:>16}", "N", "L1 error", "Linf error");
    for r in rows {
        let _ = writeln!(
            out,
            "{:>6}  {:>16}  {:>16}",
            r.n,
            format!("{} ({})", format_error(r.l1), format_order(r.order_l1)),
            format!("{} ({})", format_error(r.linf), format_order(r.order_linf)),
        );
    }
    out
}

/// CSV with columns `n,l1,order_l1,linf,order_linf`.
pub fn format_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("n,l1,order_l1,linf,order_linf\n");
    let opt = |o: Option<f64>| o.map_or(String::new(), |v| format!("{v:.3}"));
    for r in rows {
        let _ = writeln!(
            out,
            "{},{:.6e},{},{:.6e},{}",
            r.n,
            r.l1,
            opt(r.order_l1),
            r.linf,
            opt(r.order_linf)
        );
    }
    out
}
