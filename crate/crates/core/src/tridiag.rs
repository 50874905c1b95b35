//! Symmetric tridiagonal matrices, a Sturm-sequence bisection eigensolver
//! with inverse iteration, and the flux-form discretization of
//!
//! ```text
//! h = -1/2 d/dx U^4(x) d/dx + V(x)
//! ```
//!
//! on a uniform grid with Dirichlet endpoints. The flux form keeps the
//! matrix symmetric by construction, so its spectrum is real.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::{Grid, SampledFunction};
use crate::scalar::Real;

/// Symmetric tridiagonal matrix stored as its two bands.
#[derive(Debug, Clone)]
pub struct TridiagonalSymmetric<R> {
    diag: Vec<R>,
    offdiag: Vec<R>,
}

/// One converged eigenpair; the vector is normalized in the weighted
/// discrete L2 norm used at construction.
#[derive(Debug, Clone)]
pub struct EigenPair<R> {
    pub value: R,
    pub vector: Vec<R>,
}

impl<R: Real> TridiagonalSymmetric<R> {
    pub fn new(diag: Vec<R>, offdiag: Vec<R>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::parameter("empty matrix"));
        }
        if offdiag.len() + 1 != diag.len() {
            return Err(Error::parameter(format!(
                "offdiag length {} must be diag length {} minus one",
                offdiag.len(),
                diag.len()
            )));
        }
        Ok(TridiagonalSymmetric { diag, offdiag })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[R] {
        &self.diag
    }

    pub fn offdiag(&self) -> &[R] {
        &self.offdiag
    }

    /// y = A x.
    pub fn matvec(&self, x: &[R]) -> Vec<R> {
        let n = self.n();
        let mut y = vec![R::zero(); n];
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = self.diag[i] * x[i];
            if i > 0 {
                acc += self.offdiag[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                acc += self.offdiag[i] * x[i + 1];
            }
            *yi = acc;
        }
        y
    }

    fn gershgorin(&self) -> (R, R) {
        let n = self.n();
        let mut lo = R::infinity();
        let mut hi = R::neg_infinity();
        for i in 0..n {
            let mut r = R::zero();
            if i > 0 {
                r += self.offdiag[i - 1].abs();
            }
            if i + 1 < n {
                r += self.offdiag[i].abs();
            }
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn band_norm(&self) -> R {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(R::one())
    }

    /// Number of eigenvalues strictly below `sigma` (Sturm sequence via the
    /// LDL^T recurrence with a pivot floor).
    pub fn count_below(&self, sigma: R) -> usize {
        let pivmin = R::epsilon() * self.band_norm() * R::epsilon().sqrt();
        let mut count = 0usize;
        let mut d = self.diag[0] - sigma;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d < R::zero() {
            count += 1;
        }
        for i in 1..self.n() {
            let b = self.offdiag[i - 1];
            let mut di = self.diag[i] - sigma - b * b / d;
            if di.abs() < pivmin {
                di = -pivmin;
            }
            if di < R::zero() {
                count += 1;
            }
            d = di;
        }
        count
    }

    /// `k` smallest eigenvalues with eigenvectors, normalized so that
    /// `weight * sum v_i^2 = 1` (pass `weight = 1` for the Euclidean norm,
    /// or the grid spacing for discrete-L2 normalization).
    ///
    /// Eigenvalues come from bisection to 1e-12 absolute (floored by scalar
    /// precision); eigenvectors from inverse iteration with a deterministic
    /// start, so repeated runs are bit-identical.
    pub fn lowest_eigenpairs(&self, k: usize, weight: R) -> Result<Vec<EigenPair<R>>> {
        if k == 0 || k > self.n() {
            return Err(Error::parameter(format!(
                "need 1 <= k <= n, got k = {k}, n = {}",
                self.n()
            )));
        }
        if k > 10 {
            return Err(Error::parameter("k must be at most 10"));
        }
        let (glo, ghi) = self.gershgorin();
        let abs_tol = R::lit(1e-12).max(self.band_norm() * R::epsilon() * R::lit(4.0));
        let mut pairs: Vec<EigenPair<R>> = Vec::with_capacity(k);
        for idx in 0..k {
            let mut lo = glo;
            let mut hi = ghi;
            // λ_idx = inf { σ : count_below(σ) >= idx + 1 }
            while hi - lo > abs_tol {
                let mid = (lo + hi) * R::half();
                if mid <= lo || mid >= hi {
                    break; // spacing exhausted
                }
                if self.count_below(mid) > idx {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let value = (lo + hi) * R::half();
            let prev = pairs
                .last()
                .filter(|p| (value - p.value).abs() < abs_tol * R::lit(100.0))
                .map(|p| p.vector.clone());
            let vector = self.inverse_iteration(value, idx, prev.as_deref(), weight)?;
            pairs.push(EigenPair { value, vector });
        }
        Ok(pairs)
    }

    fn inverse_iteration(
        &self,
        value: R,
        index: usize,
        orthogonal_to: Option<&[R]>,
        weight: R,
    ) -> Result<Vec<R>> {
        let n = self.n();
        let norm = self.band_norm();
        // shift slightly off the eigenvalue so the solve stays bounded
        let shift = value + norm * R::epsilon() * R::lit(16.0);
        // deterministic pseudo-random start (integer LCG, platform-stable)
        let mut state: u64 = 0x9e3779b97f4a7c15 ^ (index as u64 + 1);
        let mut v: Vec<R> = (0..n)
            .map(|_| {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let u = ((state >> 11) as f64) / ((1u64 << 53) as f64);
                R::lit(2.0 * u - 1.0)
            })
            .collect();
        normalize_euclid(&mut v);

        let mut best_res = R::infinity();
        for _ in 0..8 {
            let mut w = self.solve_shifted(shift, &v)?;
            if let Some(prev) = orthogonal_to {
                let dot: R = w.iter().zip(prev).map(|(&a, &b)| a * b).sum();
                for (wi, &pi) in w.iter_mut().zip(prev) {
                    *wi -= dot * pi;
                }
            }
            normalize_euclid(&mut w);
            let av = self.matvec(&w);
            let res: R = av
                .iter()
                .zip(&w)
                .map(|(&a, &b)| (a - value * b) * (a - value * b))
                .sum::<R>()
                .sqrt();
            v = w;
            if res < best_res {
                best_res = res;
            }
            if res <= norm * R::epsilon() * R::lit(64.0) || res <= R::lit(1e-10) {
                break;
            }
        }
        let tol = (norm * R::epsilon() * R::lit(1e4)).max(R::lit(1e-8));
        if best_res > tol {
            return Err(Error::Numeric(format!(
                "inverse iteration stagnated for eigenvalue index {index}: residual {:e}",
                best_res.to_f64().unwrap_or(f64::NAN)
            )));
        }
        // deterministic sign: largest-magnitude component positive
        let mut imax = 0;
        for i in 1..n {
            if v[i].abs() > v[imax].abs() {
                imax = i;
            }
        }
        if v[imax] < R::zero() {
            for vi in &mut v {
                *vi = -*vi;
            }
        }
        // weighted normalization
        let s: R = v.iter().map(|&a| a * a).sum();
        let scale = R::one() / (weight * s).sqrt();
        for vi in &mut v {
            *vi *= scale;
        }
        Ok(v)
    }

    /// Solves (A - shift I) x = b by LU with partial pivoting (tridiagonal).
    fn solve_shifted(&self, shift: R, b: &[R]) -> Result<Vec<R>> {
        let n = self.n();
        let mut d: Vec<R> = self.diag.iter().map(|&a| a - shift).collect();
        let mut du: Vec<R> = self.offdiag.clone();
        let dl: Vec<R> = self.offdiag.clone();
        let mut du2 = vec![R::zero(); n.saturating_sub(2)];
        let mut x = b.to_vec();
        let pivmin = self.band_norm() * R::min_positive_value().sqrt();
        let floor = |v: R| {
            if v.abs() < pivmin {
                if v < R::zero() {
                    -pivmin
                } else {
                    pivmin
                }
            } else {
                v
            }
        };

        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                // no swap
                d[i] = floor(d[i]);
                let m = dl[i] / d[i];
                d[i + 1] -= m * du[i];
                x[i + 1] = x[i + 1] - m * x[i];
            } else {
                // swap rows i and i+1
                let m = d[i] / dl[i];
                d[i] = dl[i];
                let tmp = d[i + 1];
                d[i + 1] = du[i] - m * tmp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -m * du[i + 1];
                }
                du[i] = tmp;
                x.swap(i, i + 1);
                x[i + 1] = x[i + 1] - m * x[i];
            }
        }
        let last = n - 1;
        d[last] = floor(d[last]);
        x[last] /= d[last];
        if n >= 2 {
            x[last - 1] = (x[last - 1] - du[last - 1] * x[last]) / d[last - 1];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
        }
        Ok(x)
    }
}

fn normalize_euclid<R: Real>(v: &mut [R]) {
    let s: R = v.iter().map(|&a| a * a).sum();
    let inv = R::one() / s.sqrt();
    for vi in v {
        *vi *= inv;
    }
}

/// Flux-form discretization of `-1/2 d/dx u4 d/dx + v` with Dirichlet
/// endpoints. `u4` and `v` are sampled on the full grid; the matrix acts on
/// the interior points, with half-point fluxes from arithmetic averaging:
///
/// ```text
/// diag_i = (u4_{i-1/2} + u4_{i+1/2}) / (2 h^2) + v_i
/// off_i  = -u4_{i+1/2} / (2 h^2)
/// ```
pub fn build_divergence_hamiltonian<R: Real>(
    grid: &Grid<R>,
    u4: &[R],
    v: &[R],
) -> Result<TridiagonalSymmetric<R>> {
    let n = grid.n();
    if u4.len() != n || v.len() != n {
        return Err(Error::parameter("u4/v samples must match the grid"));
    }
    if u4.iter().any(|&u| !(u > R::zero())) {
        return Err(Error::parameter("u4 must be strictly positive"));
    }
    let h2 = grid.h() * grid.h();
    let two_h2 = R::two() * h2;
    let half_point = |i: usize| (u4[i] + u4[i + 1]) * R::half();
    let mut diag = Vec::with_capacity(n - 2);
    let mut off = Vec::with_capacity(n - 3);
    for i in 1..n - 1 {
        diag.push((half_point(i - 1) + half_point(i)) / two_h2 + v[i]);
        if i < n - 2 {
            off.push(-half_point(i) / two_h2);
        }
    }
    TridiagonalSymmetric::new(diag, off)
}

/// Eigenmodes of the flux-form operator, embedded back onto the full grid
/// (zero at the Dirichlet endpoints) and normalized in discrete L2.
pub fn lowest_modes<R: Real>(
    grid: &Grid<R>,
    matrix: &TridiagonalSymmetric<R>,
    k: usize,
) -> Result<Vec<(R, SampledFunction<R>)>> {
    let pairs = matrix.lowest_eigenpairs(k, grid.h())?;
    pairs
        .into_iter()
        .map(|p| {
            let mut vals = Vec::with_capacity(grid.n());
            vals.push(Complex::new(R::zero(), R::zero()));
            vals.extend(p.vector.iter().map(|&v| Complex::new(v, R::zero())));
            vals.push(Complex::new(R::zero(), R::zero()));
            Ok((p.value, SampledFunction::new(*grid, vals)?))
        })
        .collect()
}
