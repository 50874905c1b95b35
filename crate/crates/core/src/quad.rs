//! Quadrature: composite Simpson on grids and adaptive Simpson for the
//! deformed-coordinate integrals.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::SampledFunction;
use crate::scalar::Real;

/// Composite Simpson integral of a sampled function over its grid.
///
/// Needs an odd point count for pure Simpson; with an even count the last
/// panel falls back to the trapezoid rule.
pub fn integrate<R: Real>(f: &SampledFunction<R>) -> Complex<R> {
    let n = f.grid().n();
    let h = f.grid().h();
    let v = f.values();
    let simpson_end = if n % 2 == 1 { n } else { n - 1 };

    let four = R::lit(4.0);
    let two = R::two();
    let mut acc = Complex::new(R::zero(), R::zero());
    for (j, val) in v[..simpson_end].iter().enumerate() {
        let w = if j == 0 || j == simpson_end - 1 {
            R::one()
        } else if j % 2 == 1 {
            four
        } else {
            two
        };
        acc += *val * w;
    }
    let mut out = acc * (h / R::lit(3.0));
    if simpson_end < n {
        out += (v[n - 2] + v[n - 1]) * (h * R::half());
    }
    out
}

/// Integral of purely real samples with spacing `h` (Simpson, trapezoid tail).
pub fn integrate_real<R: Real>(v: &[R], h: R) -> R {
    let n = v.len();
    let simpson_end = if n % 2 == 1 { n } else { n - 1 };
    let four = R::lit(4.0);
    let two = R::two();
    let mut acc = R::zero();
    for (j, val) in v[..simpson_end].iter().enumerate() {
        let w = if j == 0 || j == simpson_end - 1 {
            R::one()
        } else if j % 2 == 1 {
            four
        } else {
            two
        };
        acc += w * *val;
    }
    let mut out = acc * h / R::lit(3.0);
    if simpson_end < n {
        out += (v[n - 2] + v[n - 1]) * h * R::half();
    }
    out
}

/// Default relative tolerance for adaptive quadrature: the documented
/// 1e-10 target, floored by scalar precision.
pub fn default_quad_tol<R: Real>() -> R {
    R::lit(1e-10).max(R::epsilon() * R::lit(100.0))
}

/// Adaptive composite Simpson with interval halving.
///
/// Splits until the classic |S2 - S1|/15 estimate meets the requested
/// relative tolerance (with an absolute floor for near-zero integrals).
/// Fails with the achieved tolerance attached if the depth budget runs out.
pub fn adaptive_simpson<R: Real>(f: &impl Fn(R) -> R, a: R, b: R, rel_tol: R) -> Result<R> {
    if a == b {
        return Ok(R::zero());
    }
    let fa = f(a);
    let fb = f(b);
    let m = (a + b) * R::half();
    let fm = f(m);
    let whole = simpson_rule(a, b, fa, fm, fb);
    let scale = whole.abs().max(R::one());
    let mut worst = R::zero();
    let out = adaptive_step(
        f,
        a,
        b,
        fa,
        fm,
        fb,
        whole,
        rel_tol * scale,
        40,
        &mut worst,
    );
    if worst > rel_tol * scale.max(out.abs()) {
        return Err(Error::Numeric(format!(
            "adaptive quadrature did not converge: achieved {:e}, requested {:e}",
            worst.to_f64().unwrap_or(f64::NAN),
            (rel_tol * scale).to_f64().unwrap_or(f64::NAN)
        )));
    }
    Ok(out)
}

fn simpson_rule<R: Real>(a: R, b: R, fa: R, fm: R, fb: R) -> R {
    (b - a) / R::lit(6.0) * (fa + R::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_step<R: Real>(
    f: &impl Fn(R) -> R,
    a: R,
    b: R,
    fa: R,
    fm: R,
    fb: R,
    whole: R,
    tol: R,
    depth: u32,
    worst: &mut R,
) -> R {
    let m = (a + b) * R::half();
    let lm = (a + m) * R::half();
    let rm = (m + b) * R::half();
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_rule(a, m, fa, flm, fm);
    let right = simpson_rule(m, b, fm, frm, fb);
    let err = (left + right - whole).abs() / R::lit(15.0);
    if err <= tol || depth == 0 {
        if depth == 0 {
            *worst = (*worst).max(err);
        }
        // Richardson refinement of the two halves
        return left + right + (left + right - whole) / R::lit(15.0);
    }
    let half_tol = tol * R::half();
    adaptive_step(f, a, m, fa, flm, fm, left, half_tol, depth - 1, worst)
        + adaptive_step(f, m, b, fm, frm, fb, right, half_tol, depth - 1, worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    #[test]
    fn simpson_cubic_polynomial() {
        // oracle: integral of x^2 on [0, 1] is 1/3
        let g = Grid::new(0.0, 1.0, 2001).unwrap();
        let f = SampledFunction::from_real_fn(g, |x: f64| x * x);
        let v = integrate(&f);
        assert!((v.re - 1.0 / 3.0).abs() < 1e-10);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn simpson_zero_function() {
        let g = Grid::new(-5.0, 3.0, 64).unwrap();
        let f = SampledFunction::zeros(g);
        assert_eq!(integrate(&f).norm(), 0.0);
    }

    #[test]
    fn simpson_gaussian_matches_sqrt_pi() {
        // oracle: integral of exp(-x^2) over R is sqrt(pi); tails at |x|=8
        // are below 1e-27 so the truncated integral matches to 1e-8.
        let g = Grid::new(-8.0, 8.0, 4097).unwrap();
        let f = SampledFunction::from_real_fn(g, |x: f64| (-x * x).exp());
        let v = integrate(&f);
        assert!((v.re - std::f64::consts::PI.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn simpson_even_point_count_falls_back_to_trapezoid_tail() {
        let g = Grid::new(0.0, 1.0, 2000).unwrap();
        let f = SampledFunction::from_real_fn(g, |x: f64| x * x);
        assert!((integrate(&f).re - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn simpson_order_at_least_three_point_five() {
        let err = |n: usize| {
            let g = Grid::new(0.0f64, 2.0, n).unwrap();
            let f = SampledFunction::from_real_fn(g, |x: f64| (x.sin() + 1.2).ln());
            let exact = {
                // reference by very fine Simpson
                let gf = Grid::new(0.0f64, 2.0, 65537).unwrap();
                let ff = SampledFunction::from_real_fn(gf, |x: f64| (x.sin() + 1.2).ln());
                integrate(&ff).re
            };
            (integrate(&f).re - exact).abs()
        };
        let (e1, e2) = (err(129), err(257));
        let order = (e1 / e2).log2();
        assert!(order >= 3.5, "order {order}");
    }

    #[test]
    fn adaptive_simpson_arctan_kernel() {
        // integral of 1/(1+x^2) from 0 to 1 = pi/4
        let v = adaptive_simpson(&|x: f64| 1.0 / (1.0 + x * x), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - std::f64::consts::FRAC_PI_4).abs() < 1e-11);
    }

    #[test]
    fn adaptive_simpson_signed_interval() {
        let v = adaptive_simpson(&|x: f64| x.exp(), 1.0, 0.0, 1e-11).unwrap();
        assert!((v - (1.0 - std::f64::consts::E)).abs() < 1e-9);
    }
}
