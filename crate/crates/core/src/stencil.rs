//! Second-order finite-difference stencils.
//!
//! Interior points use central differences; endpoints use one-sided
//! three/four-point formulas of the same order, so the whole derivative is
//! O(h^2) uniformly on the grid.

use num_complex::Complex;

use crate::grid::SampledFunction;
use crate::scalar::Real;

/// First derivative of a grid function.
///
/// Exact on polynomials of degree <= 2.
pub fn derivative<R: Real>(f: &SampledFunction<R>) -> SampledFunction<R> {
    let n = f.grid().n();
    assert!(n >= 3, "derivative stencil needs at least 3 points");
    let h = f.grid().h();
    let v = f.values();
    let two_h = h * R::two();
    let mut out = Vec::with_capacity(n);

    // (-3 f0 + 4 f1 - f2) / (2h)
    out.push((v[0] * R::lit(-3.0) + v[1] * R::lit(4.0) - v[2]) / two_h);
    for i in 1..n - 1 {
        out.push((v[i + 1] - v[i - 1]) / two_h);
    }
    // (3 f_{n-1} - 4 f_{n-2} + f_{n-3}) / (2h)
    out.push((v[n - 1] * R::lit(3.0) - v[n - 2] * R::lit(4.0) + v[n - 3]) / two_h);

    SampledFunction::new(*f.grid(), out).expect("same length")
}

/// Second derivative of a grid function, O(h^2) including endpoints.
pub fn second_derivative<R: Real>(f: &SampledFunction<R>) -> SampledFunction<R> {
    let n = f.grid().n();
    assert!(n >= 4, "second derivative stencil needs at least 4 points");
    let h = f.grid().h();
    let h2 = h * h;
    let v = f.values();
    let mut out = Vec::with_capacity(n);

    // (2 f0 - 5 f1 + 4 f2 - f3) / h^2
    out.push((v[0] * R::two() - v[1] * R::lit(5.0) + v[2] * R::lit(4.0) - v[3]) / h2);
    for i in 1..n - 1 {
        out.push((v[i + 1] - v[i] * R::two() + v[i - 1]) / h2);
    }
    out.push((v[n - 1] * R::two() - v[n - 2] * R::lit(5.0) + v[n - 3] * R::lit(4.0) - v[n - 4]) / h2);

    SampledFunction::new(*f.grid(), out).expect("same length")
}

/// First derivative of plain real samples with spacing `h`.
pub fn derivative_real<R: Real>(v: &[R], h: R) -> Vec<R> {
    let n = v.len();
    assert!(n >= 3);
    let two_h = h * R::two();
    let mut out = Vec::with_capacity(n);
    out.push((R::lit(-3.0) * v[0] + R::lit(4.0) * v[1] - v[2]) / two_h);
    for i in 1..n - 1 {
        out.push((v[i + 1] - v[i - 1]) / two_h);
    }
    out.push((R::lit(3.0) * v[n - 1] - R::lit(4.0) * v[n - 2] + v[n - 3]) / two_h);
    out
}

/// Central difference of a scalar function at a point, step `h`.
pub fn central_diff<R: Real>(f: impl Fn(R) -> R, x: R, h: R) -> R {
    (f(x + h) - f(x - h)) / (R::two() * h)
}

/// Central second difference of a scalar function at a point, step `h`.
pub fn central_diff2<R: Real>(f: impl Fn(R) -> R, x: R, h: R) -> R {
    (f(x + h) - R::two() * f(x) + f(x - h)) / (h * h)
}

#[allow(dead_code)]
pub(crate) fn complex_zero<R: Real>() -> Complex<R> {
    Complex::new(R::zero(), R::zero())
}
