//! Uniform grids and sampled (complex-valued) grid functions.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Uniform one-dimensional grid with at least 16 points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<R> {
    x_lo: R,
    x_hi: R,
    n: usize,
    h: R,
}

impl<R: Real> Grid<R> {
    pub fn new(x_lo: R, x_hi: R, n: usize) -> Result<Self> {
        if n < 16 {
            return Err(Error::parameter(format!("grid needs n >= 16, got {n}")));
        }
        if !(x_hi > x_lo) {
            return Err(Error::parameter(format!(
                "grid needs x_lo < x_hi, got [{x_lo}, {x_hi}]"
            )));
        }
        let h = (x_hi - x_lo) / R::from_usize(n - 1).unwrap();
        Ok(Grid { x_lo, x_hi, n, h })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn h(&self) -> R {
        self.h
    }

    #[inline]
    pub fn x_lo(&self) -> R {
        self.x_lo
    }

    #[inline]
    pub fn x_hi(&self) -> R {
        self.x_hi
    }

    #[inline]
    pub fn x(&self, i: usize) -> R {
        debug_assert!(i < self.n);
        self.x_lo + R::from_usize(i).unwrap() * self.h
    }

    pub fn points(&self) -> impl Iterator<Item = R> + '_ {
        (0..self.n).map(move |i| self.x(i))
    }

    /// Index of the grid point closest to `x`.
    pub fn nearest_index(&self, x: R) -> usize {
        let t = ((x - self.x_lo) / self.h).round();
        let i = t.to_usize().unwrap_or(0);
        i.min(self.n - 1)
    }

    /// Same span, with the point count refined by `factor` (panel doubling).
    pub fn refine(&self, factor: usize) -> Grid<R> {
        Grid::new(self.x_lo, self.x_hi, (self.n - 1) * factor + 1).expect("refined grid")
    }
}

/// Function sampled on a grid. Values are complex; purely real data carries
/// zero imaginary parts.
#[derive(Debug, Clone)]
pub struct SampledFunction<R> {
    grid: Grid<R>,
    values: Vec<Complex<R>>,
}

impl<R: Real> SampledFunction<R> {
    pub fn new(grid: Grid<R>, values: Vec<Complex<R>>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::parameter(format!(
                "sample length {} does not match grid size {}",
                values.len(),
                grid.n()
            )));
        }
        Ok(SampledFunction { grid, values })
    }

    pub fn zeros(grid: Grid<R>) -> Self {
        SampledFunction {
            grid,
            values: vec![Complex::new(R::zero(), R::zero()); grid.n()],
        }
    }

    pub fn from_real_fn(grid: Grid<R>, f: impl Fn(R) -> R) -> Self {
        let values = grid
            .points()
            .map(|x| Complex::new(f(x), R::zero()))
            .collect();
        SampledFunction { grid, values }
    }

    pub fn from_complex_fn(grid: Grid<R>, f: impl Fn(R) -> Complex<R>) -> Self {
        let values = grid.points().map(f).collect();
        SampledFunction { grid, values }
    }

    #[inline]
    pub fn grid(&self) -> &Grid<R> {
        &self.grid
    }

    #[inline]
    pub fn values(&self) -> &[Complex<R>] {
        &self.values
    }

    #[inline]
    pub fn values_mut(&mut self) -> &mut [Complex<R>] {
        &mut self.values
    }

    pub fn real_values(&self) -> Vec<R> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn map(&self, f: impl Fn(Complex<R>) -> Complex<R>) -> Self {
        SampledFunction {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pointwise combination of two samples on the same grid.
    pub fn zip_with(
        &self,
        other: &SampledFunction<R>,
        f: impl Fn(Complex<R>, Complex<R>) -> Complex<R>,
    ) -> Self {
        assert_eq!(self.grid.n(), other.grid.n(), "grid mismatch");
        SampledFunction {
            grid: self.grid,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex<R>) -> Self {
        self.map(|v| v * c)
    }

    pub fn add(&self, other: &SampledFunction<R>) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SampledFunction<R>) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    /// Discrete L2 norm with trapezoid-free weight `h` per point.
    pub fn norm(&self) -> R {
        let h = self.grid.h();
        let s: R = self.values.iter().map(|v| v.norm_sqr()).sum();
        (h * s).sqrt()
    }

    /// h-weighted inner product, conjugate-linear in `self`.
    pub fn inner(&self, other: &SampledFunction<R>) -> Complex<R> {
        assert_eq!(self.grid.n(), other.grid.n(), "grid mismatch");
        let mut acc = Complex::new(R::zero(), R::zero());
        for (a, b) in self.values.iter().zip(&other.values) {
            acc += a.conj() * b;
        }
        acc * self.grid.h()
    }

    pub fn max_abs(&self) -> R {
        self.values
            .iter()
            .map(|v| v.norm())
            .fold(R::zero(), |a, b| a.max(b))
    }

    /// Maximum pointwise modulus difference against another sample.
    pub fn linf_diff(&self, other: &SampledFunction<R>) -> R {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (*a - *b).norm())
            .fold(R::zero(), |m, d| m.max(d))
    }

    /// Rescales to unit discrete L2 norm; returns the normalization constant.
    pub fn normalize(&mut self) -> Result<R> {
        let n = self.norm();
        if !(n > R::zero()) || !n.is_finite() {
            return Err(Error::numeric("cannot normalize zero or non-finite sample"));
        }
        let inv = R::one() / n;
        for v in &mut self.values {
            *v *= inv;
        }
        Ok(n)
    }
}
