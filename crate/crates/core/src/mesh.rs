//! Uniform node-centred grids and ghost-padded fields.
//!
//! An axis with `n` intervals has nodes `x_i = lo + i dx`, `i = 0..=n`.
//! A periodic axis stores only the `n` unique nodes `0..n`.

use crate::error::ConfigError;
use crate::scalar::Real;

/// Minimum padding needed by the six-point reconstruction window.
pub const MIN_GHOST: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis1<T> {
    pub lo: T,
    pub hi: T,
    pub intervals: usize,
    pub periodic: bool,
}

impl<T: Real> Axis1<T> {
    pub fn new(lo: T, hi: T, intervals: usize) -> Self {
        Self {
            lo,
            hi,
            intervals,
            periodic: false,
        }
    }

    pub fn periodic(mut self) -> Self {
        self.periodic = true;
        self
    }

    /// Number of stored (unique) nodes.
    pub fn nodes(&self) -> usize {
        if self.periodic {
            self.intervals
        } else {
            self.intervals + 1
        }
    }

    pub fn dx(&self) -> T {
        (self.hi - self.lo) / T::from_usize(self.intervals).unwrap()
    }

    /// Coordinate of node `i`, which may lie in the padding.
    ///
    /// Evaluated as `(lo (n - i) + hi i) / n` so that a domain symmetric
    /// about zero yields exactly mirrored coordinates.
    pub fn coord(&self, i: isize) -> T {
        let n = self.intervals as i64;
        let i = i as i64;
        let a = T::from_i64(n - i).unwrap();
        let b = T::from_i64(i).unwrap();
        (self.lo * a + self.hi * b) / T::from_i64(n).unwrap()
    }

    pub fn validate(&self, name: &str, ghost: usize) -> Result<(), ConfigError> {
        if !(self.hi > self.lo) || !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(ConfigError::InvalidGrid(format!(
                "{name}-axis bounds must satisfy lo < hi"
            )));
        }
        if self.nodes() <= ghost {
            return Err(ConfigError::InvalidGrid(format!(
                "{name}-axis needs more than {ghost} nodes, got {}",
                self.nodes()
            )));
        }
        Ok(())
    }
}

/// A 1D grid (`y = None`) or 2D tensor-product grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid<T> {
    pub x: Axis1<T>,
    pub y: Option<Axis1<T>>,
    pub ghost: usize,
}

impl<T: Real> Grid<T> {
    pub fn new_1d(x: Axis1<T>) -> Self {
        Self {
            x,
            y: None,
            ghost: MIN_GHOST,
        }
    }

    pub fn new_2d(x: Axis1<T>, y: Axis1<T>) -> Self {
        Self {
            x,
            y: Some(y),
            ghost: MIN_GHOST,
        }
    }

    pub fn with_ghost(mut self, ghost: usize) -> Self {
        self.ghost = ghost;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.ghost < MIN_GHOST {
            return Err(ConfigError::GhostTooNarrow(self.ghost));
        }
        self.x.validate("x", self.ghost)?;
        if let Some(y) = &self.y {
            y.validate("y", self.ghost)?;
        }
        Ok(())
    }

    pub fn is_2d(&self) -> bool {
        self.y.is_some()
    }

    pub fn nx(&self) -> usize {
        self.x.nodes()
    }

    pub fn ny(&self) -> usize {
        self.y.map_or(1, |y| y.nodes())
    }

    pub fn dx(&self) -> T {
        self.x.dx()
    }

    pub fn dy(&self) -> Option<T> {
        self.y.map(|y| y.dx())
    }

    pub fn xc(&self, i: isize) -> T {
        self.x.coord(i)
    }

    pub fn yc(&self, j: isize) -> T {
        self.y.map_or(T::zero(), |y| y.coord(j))
    }

    /// Padded extent along x and y (y is 1 for 1D grids).
    pub fn padded_dims(&self) -> (usize, usize) {
        let g = self.ghost;
        let py = if self.is_2d() { self.ny() + 2 * g } else { 1 };
        (self.nx() + 2 * g, py)
    }

    /// Volume element used by integral diagnostics.
    pub fn cell_measure(&self) -> T {
        self.dx() * self.dy().unwrap_or_else(T::one)
    }
}

/// Ghost-padded storage of `M`-component states, row-major with x fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct Field<T, const M: usize> {
    data: Vec<[T; M]>,
    nx: usize,
    ny: usize,
    px: usize,
    py: usize,
    ghost: usize,
    two_d: bool,
}

impl<T: Real, const M: usize> Field<T, M> {
    pub fn zeros(grid: &Grid<T>) -> Self {
        let (px, py) = grid.padded_dims();
        Self {
            data: vec![[T::zero(); M]; px * py],
            nx: grid.nx(),
            ny: grid.ny(),
            px,
            py,
            ghost: grid.ghost,
            two_d: grid.is_2d(),
        }
    }

    /// Interior sampled from `f(x, y)`; `y` is 0 on 1D grids.
    pub fn from_fn(grid: &Grid<T>, mut f: impl FnMut(T, T) -> [T; M]) -> Self {
        let mut out = Self::zeros(grid);
        for j in 0..out.ny {
            let y = grid.yc(j as isize);
            for i in 0..out.nx {
                *out.get_mut(i, j) = f(grid.xc(i as isize), y);
            }
        }
        out
    }

    /// Same as [`Field::from_fn`] with a fallible sampler.
    pub fn try_from_fn<E>(
        grid: &Grid<T>,
        mut f: impl FnMut(T, T) -> Result<[T; M], E>,
    ) -> Result<Self, E> {
        let mut out = Self::zeros(grid);
        for j in 0..out.ny {
            let y = grid.yc(j as isize);
            for i in 0..out.nx {
                *out.get_mut(i, j) = f(grid.xc(i as isize), y)?;
            }
        }
        Ok(out)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn ghost(&self) -> usize {
        self.ghost
    }

    pub fn is_2d(&self) -> bool {
        self.two_d
    }

    pub fn padded_dims(&self) -> (usize, usize) {
        (self.px, self.py)
    }

    /// Flat index of padded cell `(pi, pj)`.
    #[inline]
    pub fn pidx(&self, pi: usize, pj: usize) -> usize {
        pj * self.px + pi
    }

    /// Flat padded index of interior node `(i, j)`.
    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        let pj = if self.two_d { j + self.ghost } else { 0 };
        pj * self.px + i + self.ghost
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &[T; M] {
        &self.data[self.idx(i, j)]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut [T; M] {
        let k = self.idx(i, j);
        &mut self.data[k]
    }

    /// Signed access relative to the interior origin, reaching into padding.
    #[inline]
    pub fn at(&self, i: isize, j: isize) -> &[T; M] {
        let g = self.ghost as isize;
        let pj = if self.two_d { j + g } else { 0 };
        &self.data[pj as usize * self.px + (i + g) as usize]
    }

    #[inline]
    pub fn at_mut(&mut self, i: isize, j: isize) -> &mut [T; M] {
        let g = self.ghost as isize;
        let pj = if self.two_d { j + g } else { 0 };
        let k = pj as usize * self.px + (i + g) as usize;
        &mut self.data[k]
    }

    /// Whole padded buffer.
    pub fn raw(&self) -> &[[T; M]] {
        &self.data
    }

    pub fn raw_mut(&mut self) -> &mut [[T; M]] {
        &mut self.data
    }

    /// Padded row `j` (interior index), including x-ghosts.
    pub fn row(&self, j: usize) -> &[[T; M]] {
        let k = self.idx(0, j) - self.ghost;
        &self.data[k..k + self.px]
    }

    /// Interior slice of row `j`.
    pub fn interior_row(&self, j: usize) -> &[[T; M]] {
        let k = self.idx(0, j);
        &self.data[k..k + self.nx]
    }

    pub fn interior_row_mut(&mut self, j: usize) -> &mut [[T; M]] {
        let k = self.idx(0, j);
        &mut self.data[k..k + self.nx]
    }

    /// Copies padded column `i` (interior index) into `out`.
    pub fn column_into(&self, i: usize, out: &mut Vec<[T; M]>) {
        out.clear();
        let pi = i + self.ghost;
        out.extend((0..self.py).map(|pj| self.data[pj * self.px + pi]));
    }

    /// Interior states in row-major order.
    pub fn interior(&self) -> impl Iterator<Item = &[T; M]> + '_ {
        (0..self.ny).flat_map(move |j| self.interior_row(j).iter())
    }

    /// Interior states as a compact vector.
    pub fn interior_vec(&self) -> Vec<[T; M]> {
        self.interior().copied().collect()
    }

    /// Overwrites the interior from a compact row-major vector.
    pub fn set_interior(&mut self, values: &[[T; M]]) {
        assert_eq!(values.len(), self.nx * self.ny, "interior size mismatch");
        for j in 0..self.ny {
            let nx = self.nx;
            self.interior_row_mut(j)
                .copy_from_slice(&values[j * nx..(j + 1) * nx]);
        }
    }

    /// Component `c` of the interior, row-major.
    pub fn component(&self, c: usize) -> Vec<T> {
        self.interior().map(|u| u[c]).collect()
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.nx == other.nx && self.ny == other.ny && self.two_d == other.two_d
    }
}
