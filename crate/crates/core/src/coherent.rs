//! Coherent states of the factorized system.
//!
//! With gamma(kappa) = 1/kappa and the rescaled superpotential
//! Wb = ((kappa+1)/kappa) W, the displaced states read
//!
//! ```text
//! |xi>  = m^(1/4) exp(sqrt2 xi Wb(x)) exp(-kappa Int Wb dmu)    (Hermitian side)
//! |Xi>  = m^(1/4) exp(sqrt2 xi Wb(x)) exp(-      Int Wb dmu)    (pseudo-Hermitian side)
//! ```
//!
//! xi is restricted to the imaginary axis at the type level, so the phase
//! factor is unimodular and |xi> shares its modulus with the ground state.
//! The annihilation operator acts on |xi> through the exact pointwise
//! identity eta |xi> = xi_k F(x) |xi> with F the structure function; for
//! constant F this is the familiar eigenvalue relation.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::factorization::FactorizedSystem;
use crate::grid::{Grid, SampledFunction};
use crate::quad::integrate;
use crate::scalar::{Real, RealFn};
use crate::stencil::derivative;

/// gamma(kappa) = 1/kappa and f(kappa) = kappa - 1/kappa, defined away from
/// kappa in {0, +1, -1}.
pub fn gamma_f<R: Real>(kappa: R) -> Result<(R, R)> {
    if kappa == R::zero() || kappa == R::one() || kappa == -R::one() {
        return Err(Error::parameter(format!(
            "kappa = {kappa} rejected: the metric pair (gamma, f) exists for κ≠0,±1"
        )));
    }
    Ok((R::one() / kappa, kappa - R::one() / kappa))
}

/// Displacement parameters for coherent-state construction.
///
/// `f_kappa` is present only for kappa outside {+1, -1}; the Hermitian-side
/// states need only gamma = 1/kappa and remain available at kappa = ±1,
/// while the metric/pseudo-Hermitian operations require `f_kappa`.
#[derive(Debug, Clone, Copy)]
pub struct CoherentParams<R> {
    kappa: R,
    xi_im: R,
    gamma: R,
    f_kappa: Option<R>,
}

impl<R: Real> CoherentParams<R> {
    /// `xi = i xi_im`; kappa must avoid 0 and -1.
    pub fn new(kappa: R, xi_im: R) -> Result<Self> {
        if kappa == R::zero() {
            return Err(Error::parameter("kappa = 0 rejected: gamma = 1/kappa"));
        }
        if kappa == -R::one() {
            return Err(Error::parameter("kappa = -1 rejected: degenerate system"));
        }
        let f_kappa = gamma_f(kappa).ok().map(|(_, f)| f);
        Ok(CoherentParams {
            kappa,
            xi_im,
            gamma: R::one() / kappa,
            f_kappa,
        })
    }

    pub fn kappa(&self) -> R {
        self.kappa
    }

    /// xi, purely imaginary by construction.
    pub fn xi(&self) -> Complex<R> {
        Complex::new(R::zero(), self.xi_im)
    }

    pub fn gamma(&self) -> R {
        self.gamma
    }

    /// f(kappa), when defined (kappa != ±1).
    pub fn f_kappa(&self) -> Option<R> {
        self.f_kappa
    }

    /// xi_k = gamma(kappa) xi.
    pub fn xi_kappa(&self) -> Complex<R> {
        Complex::new(R::zero(), self.gamma * self.xi_im)
    }

    /// Rescaled superpotential Wb(x) = ((kappa+1)/kappa) W(mu(x)), the
    /// common weight of both displaced-state families.
    pub fn w_bar(&self, sys: &FactorizedSystem<R>) -> RealFn<R> {
        let scale = self.gamma;
        let wt = sys.w_mod();
        RealFn::new(move |x| scale * wt.eval(x))
    }

    fn check_system(&self, sys: &FactorizedSystem<R>) -> Result<()> {
        if self.kappa != sys.kappa() {
            return Err(Error::parameter(format!(
                "kappa mismatch: params carry {}, system carries {}",
                self.kappa,
                sys.kappa()
            )));
        }
        Ok(())
    }
}

/// Unitary displacement realized as pointwise multiplication by
/// `exp(sqrt2 xi_k Wt(x))`; unimodular because xi_k is imaginary.
#[derive(Debug, Clone)]
pub struct DisplacementOperator<R> {
    phase_exponent: RealFn<R>, // theta(x) with phase = exp(i theta)
}

impl<R: Real> DisplacementOperator<R> {
    pub fn new(params: &CoherentParams<R>, sys: &FactorizedSystem<R>) -> Result<Self> {
        params.check_system(sys)?;
        let wt = sys.w_mod();
        let c = R::two().sqrt() * params.xi_kappa().im;
        Ok(DisplacementOperator {
            phase_exponent: RealFn::new(move |x| c * wt.eval(x)),
        })
    }

    pub fn phase_fn(&self, x: R) -> Complex<R> {
        Complex::from_polar(R::one(), self.phase_exponent.eval(x))
    }

    pub fn apply(&self, f: &SampledFunction<R>) -> SampledFunction<R> {
        SampledFunction::from_complex_fn(*f.grid(), |x| self.phase_fn(x))
            .zip_with(f, |p, v| p * v)
    }

    pub fn apply_inverse(&self, f: &SampledFunction<R>) -> SampledFunction<R> {
        SampledFunction::from_complex_fn(*f.grid(), |x| self.phase_fn(x).conj())
            .zip_with(f, |p, v| p * v)
    }
}

/// Unnormalized Hermitian-side coherent samples:
/// phase(x) * ground(x) with the shared exponent -(kappa+1) Int W dmu.
pub fn hcs_raw<R: Real>(
    params: &CoherentParams<R>,
    sys: &FactorizedSystem<R>,
    grid: &Grid<R>,
) -> Result<SampledFunction<R>> {
    params.check_system(sys)?;
    let ground = sys.ground_state_raw(grid)?;
    let disp = DisplacementOperator::new(params, sys)?;
    Ok(disp.apply(&ground))
}

/// Normalized Hermitian-side coherent state.
pub fn hcs_evaluate<R: Real>(
    params: &CoherentParams<R>,
    sys: &FactorizedSystem<R>,
    grid: &Grid<R>,
) -> Result<SampledFunction<R>> {
    let mut psi = hcs_raw(params, sys, grid)?;
    let peak = psi.max_abs();
    if !(peak > R::zero()) || !peak.is_finite() {
        return Err(Error::Normalizability("coherent samples degenerate".into()));
    }
    psi.normalize()?;
    Ok(psi)
}

/// Alternate sampler for the same state written through gamma(kappa) and
/// the unreduced superpotential (regression reference for `hcs_raw`).
pub fn hcs_raw_gamma_form<R: Real>(
    params: &CoherentParams<R>,
    sys: &FactorizedSystem<R>,
    grid: &Grid<R>,
) -> Result<SampledFunction<R>> {
    params.check_system(sys)?;
    let p = sys.p();
    let gamma = params.gamma();
    let t = params.xi().im;
    let sp = sys.superpotential().clone();
    let profile = sys.profile().clone();
    let sqrt2 = R::two().sqrt();
    let values = grid
        .points()
        .map(|x| {
            let mu = profile.mu_of_x(x)?;
            let quarter = profile.m_of_x(x)?.powf(R::lit(0.25));
            let modulus = quarter * (-p * sp.w_antideriv.eval(mu)).exp();
            let theta = sqrt2 * p * gamma * t * sp.w.eval(mu);
            Ok(Complex::from_polar(modulus, theta))
        })
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(*grid, values)
}

/// Unnormalized pseudo-Hermitian-side coherent samples: the ground exponent
/// is divided by kappa relative to the Hermitian side.
pub fn phcs_raw<R: Real>(
    params: &CoherentParams<R>,
    sys: &FactorizedSystem<R>,
    grid: &Grid<R>,
) -> Result<SampledFunction<R>> {
    params.check_system(sys)?;
    if params.f_kappa().is_none() {
        return Err(Error::parameter(
            "pseudo-Hermitian states need the metric pair, defined for κ≠0,±1",
        ));
    }
    let p = sys.p();
    let over_kappa = p / params.kappa();
    let t = params.xi().im;
    let sp = sys.superpotential().clone();
    let profile = sys.profile().clone();
    let sqrt2 = R::two().sqrt();
    let gamma = params.gamma();
    let values = grid
        .points()
        .map(|x| {
            let mu = profile.mu_of_x(x)?;
            let quarter = profile.m_of_x(x)?.powf(R::lit(0.25));
            let modulus = quarter * (-over_kappa * sp.w_antideriv.eval(mu)).exp();
            let theta = sqrt2 * p * gamma * t * sp.w.eval(mu);
            Ok(Complex::from_polar(modulus, theta))
        })
        .collect::<Result<Vec<_>>>()?;
    SampledFunction::new(*grid, values)
}

/// Normalized pseudo-Hermitian coherent state.
pub fn phcs_evaluate<R: Real>(
    params: &CoherentParams<R>,
    sys: &FactorizedSystem<R>,
    grid: &Grid<R>,
) -> Result<SampledFunction<R>> {
    let mut psi = phcs_raw(params, sys, grid)?;
    let peak = psi.max_abs();
    if !(peak > R::zero()) || !peak.is_finite() {
        return Err(Error::Normalizability("coherent samples degenerate".into()));
    }
    psi.normalize()?;
    Ok(psi)
}

/// Max over the test set of the relative defect of the displacement
/// identity `D^{-1} eta D = eta + xi_k F`.
pub fn displacement_identity_check<R: Real>(
    params: &CoherentParams<R>,
    sys: &FactorizedSystem<R>,
    testset: &[SampledFunction<R>],
) -> Result<R> {
    let disp = DisplacementOperator::new(params, sys)?;
    let xi_k = params.xi_kappa();
    let mut worst = R::zero();
    for f in testset {
        let grid = *f.grid();
        let f_fn = sys.structure_function();
        let lhs = disp.apply_inverse(&sys.apply_annihilation(&disp.apply(f))?);
        let base = sys.apply_annihilation(f)?;
        let weighted = SampledFunction::from_real_fn(grid, |x| f_fn.eval(x))
            .zip_with(f, |w, v| v * w * xi_k);
        let resid = lhs.sub(&base).sub(&weighted).norm() / f.norm();
        worst = worst.max(resid);
    }
    Ok(worst)
}

/// Report of how the annihilation operator acts on a coherent state.
#[derive(Debug, Clone)]
pub struct AnnihilationActionReport<R> {
    /// Relative residual of the exact identity eta|xi> = xi_k F(x) |xi>.
    pub identity_residual: R,
    /// Best least-squares constant lambda for eta|xi> ~ lambda |xi>.
    pub best_constant: Complex<R>,
    /// Relative residual at that constant (diagnostic; O(1) unless F is
    /// constant).
    pub constant_residual: R,
}

/// Evaluates the identity eta|xi> = xi_k F(x)|xi> pointwise and, separately,
/// the best constant-eigenvalue fit.
pub fn annihilation_action_check<R: Real>(
    params: &CoherentParams<R>,
    sys: &FactorizedSystem<R>,
    grid: &Grid<R>,
) -> Result<AnnihilationActionReport<R>> {
    let psi = hcs_raw(params, sys, grid)?;
    let eta_psi = sys.apply_annihilation(&psi)?;
    let f_fn = sys.structure_function();
    let xi_k = params.xi_kappa();
    let weighted =
        SampledFunction::from_real_fn(*grid, |x| f_fn.eval(x)).zip_with(&psi, |w, v| v * w * xi_k);
    let identity_residual = eta_psi.sub(&weighted).norm() / psi.norm();

    let num = psi.inner(&eta_psi);
    let den = psi.inner(&psi).re;
    let best_constant = num / den;
    let constant_residual = eta_psi.sub(&psi.scale(best_constant)).norm() / psi.norm();
    Ok(AnnihilationActionReport {
        identity_residual,
        best_constant,
        constant_residual,
    })
}

/// Both sides of the generalized position-momentum uncertainty product in
/// the coherent state: `lhs = Var(Wt) Var(Pi)`, `rhs = <F>^2 / 4`, with the
/// deformed momentum Pi = U p U applied by stencils and all moments by
/// quadrature. Equality is expected only where F is constant.
pub fn uncertainty_product<R: Real>(
    params: &CoherentParams<R>,
    sys: &FactorizedSystem<R>,
    grid: &Grid<R>,
) -> Result<(R, R)> {
    let psi = hcs_evaluate(params, sys, grid)?;
    let wt = sys.w_mod();
    let f_fn = sys.structure_function();

    let density = SampledFunction::new(
        *grid,
        psi.values()
            .iter()
            .map(|v| Complex::new(v.norm_sqr(), R::zero()))
            .collect(),
    )?;
    let moment = |g: &RealFn<R>, pow2: bool| -> R {
        let vals = SampledFunction::new(
            *grid,
            grid.points()
                .zip(density.values())
                .map(|(x, &d)| {
                    let w = g.eval(x);
                    d * if pow2 { w * w } else { w }
                })
                .collect(),
        )
        .unwrap();
        integrate(&vals).re
    };
    let mean_wt = moment(&wt, false);
    let mean_wt2 = moment(&wt, true);
    let var_wt = mean_wt2 - mean_wt * mean_wt;

    // Pi psi = -i U (U psi)'
    let u: Vec<R> = grid
        .points()
        .map(|x| sys.profile().u_of_x(x))
        .collect::<Result<_>>()?;
    let upsi = SampledFunction::new(
        *grid,
        psi.values()
            .iter()
            .zip(&u)
            .map(|(&v, &ui)| v * ui)
            .collect(),
    )?;
    let d = derivative(&upsi);
    let minus_i = Complex::new(R::zero(), -R::one());
    let pi_psi = SampledFunction::new(
        *grid,
        d.values()
            .iter()
            .zip(&u)
            .map(|(&v, &ui)| v * ui * minus_i)
            .collect(),
    )?;
    let mean_pi = psi.inner(&pi_psi).re;
    let mean_pi2 = pi_psi.inner(&pi_psi).re;
    let var_pi = mean_pi2 - mean_pi * mean_pi;

    let mean_f = moment(&f_fn, false);
    Ok((var_wt * var_pi, mean_f * mean_f / R::lit(4.0)))
}

/// Expectation of the deformed momentum in the coherent state (diagnostic).
pub fn momentum_expectation<R: Real>(
    params: &CoherentParams<R>,
    sys: &FactorizedSystem<R>,
    grid: &Grid<R>,
) -> Result<R> {
    let psi = hcs_evaluate(params, sys, grid)?;
    let u: Vec<R> = grid
        .points()
        .map(|x| sys.profile().u_of_x(x))
        .collect::<Result<_>>()?;
    let upsi = SampledFunction::new(
        *grid,
        psi.values()
            .iter()
            .zip(&u)
            .map(|(&v, &ui)| v * ui)
            .collect(),
    )?;
    let d = derivative(&upsi);
    let minus_i = Complex::new(R::zero(), -R::one());
    let pi_psi = SampledFunction::new(
        *grid,
        d.values()
            .iter()
            .zip(&u)
            .map(|(&v, &ui)| v * ui * minus_i)
            .collect(),
    )?;
    Ok(psi.inner(&pi_psi).re)
}
