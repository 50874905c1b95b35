//! Factorization of the deformed Hermitian Hamiltonian.
//!
//! With U = m^(-1/4), a superpotential W(mu) and a deformation strength
//! kappa != -1, the ladder pair
//!
//! ```text
//! eta       = (1/sqrt 2) ( U d/dx U + Wt )      Wt(x) = (kappa+1) W(mu(x))
//! eta_dag   = (1/sqrt 2) (-U d/dx U + Wt )
//! ```
//!
//! factorizes h = eta_dag eta + delta, delta = (kappa+1)/2, whose
//! multiplication part is the effective potential
//!
//! ```text
//! Vt(x) = ((kappa+1)^2/2) W^2 - ((kappa+1)/2) dW/dmu + delta .
//! ```
//!
//! The same operator in divergence form reads
//! -1/2 d/dx U^4 d/dx + Vt + V_U with the mass-induced potential
//! V_U = -U^2 U'^2 - U^3 U''/2; the two routes agreeing to stencil order is
//! the central operator-identity test of this module. The commutator
//! [eta, eta_dag] is multiplication by the structure function
//! F(x) = (kappa+1) (dW/dmu)(mu(x)), which generates the deformed
//! oscillator algebra.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::grid::{Grid, SampledFunction};
use crate::mass::MassProfile;
use crate::quad::adaptive_simpson;
use crate::scalar::{Real, RealFn};
use crate::stencil::derivative;

/// Superpotential data in the deformed coordinate: W, dW/dmu, and an
/// antiderivative of W (any fixed integration constant).
#[derive(Debug, Clone)]
pub struct Superpotential<R> {
    pub w: RealFn<R>,
    pub w_prime: RealFn<R>,
    pub w_antideriv: RealFn<R>,
}

impl<R: Real> Superpotential<R> {
    /// Builds the antiderivative by per-call adaptive quadrature from
    /// `mu_ref` when no closed form is available.
    pub fn with_numeric_antideriv(w: RealFn<R>, w_prime: RealFn<R>, mu_ref: R) -> Self {
        let wq = w.clone();
        let w_antideriv = RealFn::new(move |mu: R| {
            let f = wq.clone();
            adaptive_simpson(&move |y: R| f.eval(y), mu_ref, mu, R::lit(1e-12))
                .unwrap_or(R::nan())
        });
        Superpotential {
            w,
            w_prime,
            w_antideriv,
        }
    }
}

/// Reduces the two quadratic-coupling parameters to the single deformation
/// strength kappa. Exactly one of the two must vanish; `p = kappa + 1`.
pub fn kappa_reduce<R: Real>(alpha: R, beta: R) -> Result<(R, R)> {
    let kappa = if beta == R::zero() {
        alpha
    } else if alpha == R::zero() {
        beta
    } else {
        return Err(Error::parameter(format!(
            "kappa reduction needs alpha = 0 or beta = 0, got alpha = {alpha}, beta = {beta}"
        )));
    };
    Ok((kappa, kappa + R::one()))
}

/// A factorized position-dependent-mass system.
#[derive(Debug, Clone)]
pub struct FactorizedSystem<R> {
    profile: MassProfile<R>,
    kappa: R,
    p: R,
    q: R,
    q1: R,
    delta: R,
    sp: Superpotential<R>,
}

impl<R: Real> FactorizedSystem<R> {
    pub fn new(profile: MassProfile<R>, kappa: R, sp: Superpotential<R>) -> Result<Self> {
        Self::with_gauge(profile, kappa, sp, R::zero())
    }

    /// `q1` is a free gauge constant: the modified superpotential is
    /// (kappa+1) W no matter what q and q1 are, as long as p q1 + q = 0.
    /// They are stored for fidelity and have no runtime effect.
    pub fn with_gauge(
        profile: MassProfile<R>,
        kappa: R,
        sp: Superpotential<R>,
        q1: R,
    ) -> Result<Self> {
        if kappa == -R::one() {
            return Err(Error::parameter(
                "kappa = -1 is rejected: the factorized potential vanishes",
            ));
        }
        let p = kappa + R::one();
        Ok(FactorizedSystem {
            profile,
            kappa,
            p,
            q: -p * q1,
            q1,
            delta: p * R::half(),
            sp,
        })
    }

    pub fn profile(&self) -> &MassProfile<R> {
        &self.profile
    }

    pub fn kappa(&self) -> R {
        self.kappa
    }

    /// p = kappa + 1.
    pub fn p(&self) -> R {
        self.p
    }

    pub fn q(&self) -> R {
        self.q
    }

    pub fn q1(&self) -> R {
        self.q1
    }

    /// Ground offset delta = (kappa+1)/2.
    pub fn delta(&self) -> R {
        self.delta
    }

    pub fn superpotential(&self) -> &Superpotential<R> {
        &self.sp
    }

    /// W(mu(x)).
    pub fn w_at_x(&self, x: R) -> Result<R> {
        Ok(self.sp.w.eval(self.profile.mu_of_x(x)?))
    }

    /// Modified superpotential Wt(x) = (kappa+1) W(mu(x)).
    pub fn w_mod(&self) -> RealFn<R> {
        let sys = self.clone();
        RealFn::new(move |x| sys.p * sys.sp.w.eval(sys.profile.mu_of_x(x).unwrap_or(R::nan())))
    }

    /// Mass-induced potential V_U(x) of the divergence form.
    pub fn mass_potential(&self) -> RealFn<R> {
        self.profile.mass_potential()
    }

    /// Structure function F(x) = (kappa+1) U^2 W' = (kappa+1) (dW/dmu)(mu(x)).
    pub fn structure_function(&self) -> RealFn<R> {
        let sys = self.clone();
        RealFn::new(move |x| {
            sys.p * sys.sp.w_prime.eval(sys.profile.mu_of_x(x).unwrap_or(R::nan()))
        })
    }

    /// Effective potential of the factorized operator,
    /// Vt = (p^2/2) W^2 - (p/2) dW/dmu + delta evaluated through mu(x).
    pub fn effective_potential(&self) -> RealFn<R> {
        let sys = self.clone();
        RealFn::new(move |x| {
            let mu = sys.profile.mu_of_x(x).unwrap_or(R::nan());
            let w = sys.sp.w.eval(mu);
            let wp = sys.sp.w_prime.eval(mu);
            sys.p * sys.p * R::half() * w * w - sys.p * R::half() * wp + sys.delta
        })
    }

    fn mu_samples(&self, grid: &Grid<R>) -> Result<Vec<R>> {
        let points: Vec<R> = grid.points().collect();
        self.profile.mu_on_points(&points)
    }

    fn u_samples(&self, grid: &Grid<R>) -> Result<Vec<R>> {
        grid.points().map(|x| self.profile.u_of_x(x)).collect()
    }

    /// Applies `U d/dx U` with the derivative stencil.
    fn apply_u_d_u(&self, f: &SampledFunction<R>, u: &[R]) -> SampledFunction<R> {
        let uf = SampledFunction::new(
            *f.grid(),
            f.values()
                .iter()
                .zip(u)
                .map(|(&v, &ui)| v * ui)
                .collect(),
        )
        .expect("same grid");
        let d = derivative(&uf);
        SampledFunction::new(
            *f.grid(),
            d.values()
                .iter()
                .zip(u)
                .map(|(&v, &ui)| v * ui)
                .collect(),
        )
        .expect("same grid")
    }

    /// Annihilation operator: eta f = (1/sqrt 2) (U (U f)' + Wt f).
    pub fn apply_annihilation(&self, f: &SampledFunction<R>) -> Result<SampledFunction<R>> {
        self.apply_ladder(f, R::one())
    }

    /// Creation operator: eta_dag f = (1/sqrt 2) (-U (U f)' + Wt f).
    pub fn apply_creation(&self, f: &SampledFunction<R>) -> Result<SampledFunction<R>> {
        self.apply_ladder(f, -R::one())
    }

    fn apply_ladder(&self, f: &SampledFunction<R>, sign: R) -> Result<SampledFunction<R>> {
        let grid = *f.grid();
        let u = self.u_samples(&grid)?;
        let mu = self.mu_samples(&grid)?;
        let udu = self.apply_u_d_u(f, &u);
        let inv_sqrt2 = R::half().sqrt();
        let values = (0..grid.n())
            .map(|i| {
                let wt = self.p * self.sp.w.eval(mu[i]);
                (udu.values()[i] * sign + f.values()[i] * wt) * inv_sqrt2
            })
            .collect();
        SampledFunction::new(grid, values)
    }

    /// Factorized application h f = eta_dag (eta f) + delta f.
    pub fn hamiltonian_apply_factorized(
        &self,
        f: &SampledFunction<R>,
    ) -> Result<SampledFunction<R>> {
        let ef = self.apply_annihilation(f)?;
        let out = self.apply_creation(&ef)?;
        Ok(out.zip_with(f, |a, b| a + b * self.delta))
    }

    /// Divergence-form application
    /// h f = -1/2 (U^4 f')' + (Vt + V_U) f, stencils throughout.
    pub fn hamiltonian_apply_direct(&self, f: &SampledFunction<R>) -> Result<SampledFunction<R>> {
        let grid = *f.grid();
        let u = self.u_samples(&grid)?;
        let mu = self.mu_samples(&grid)?;
        let vu = self.mass_potential();
        let df = derivative(f);
        let flux = SampledFunction::new(
            grid,
            df.values()
                .iter()
                .zip(&u)
                .map(|(&v, &ui)| {
                    let u2 = ui * ui;
                    v * (u2 * u2)
                })
                .collect(),
        )?;
        let dflux = derivative(&flux);
        let values = (0..grid.n())
            .map(|i| {
                let x = grid.x(i);
                let w = self.sp.w.eval(mu[i]);
                let wp = self.sp.w_prime.eval(mu[i]);
                let vt =
                    self.p * self.p * R::half() * w * w - self.p * R::half() * wp + self.delta;
                let v = vt + vu.eval(x);
                dflux.values()[i] * (-R::half()) + f.values()[i] * v
            })
            .collect();
        SampledFunction::new(grid, values)
    }

    /// Unnormalized ground-state samples
    /// m^(1/4)(x) exp(-(kappa+1) A(mu(x))) with A an antiderivative of W.
    pub fn ground_state_raw(&self, grid: &Grid<R>) -> Result<SampledFunction<R>> {
        let mu = self.mu_samples(grid)?;
        let values = grid
            .points()
            .zip(&mu)
            .map(|(x, &m)| {
                let quarter = self.profile.m_of_x(x)?.powf(R::lit(0.25));
                Ok(Complex::new(
                    quarter * (-self.p * self.sp.w_antideriv.eval(m)).exp(),
                    R::zero(),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        SampledFunction::new(*grid, values)
    }

    /// Normalized ground state. Fails when the boundary samples exceed
    /// 1e-6 of the peak (the grid does not contain the state).
    pub fn ground_state(&self, grid: &Grid<R>) -> Result<GroundState<R>> {
        let mut psi = self.ground_state_raw(grid)?;
        let peak = psi.max_abs();
        if !(peak > R::zero()) || !peak.is_finite() {
            return Err(Error::Normalizability(
                "ground-state samples vanish or overflow on this grid".into(),
            ));
        }
        let b0 = psi.values()[0].norm();
        let b1 = psi.values()[grid.n() - 1].norm();
        let bound = R::lit(1e-6) * peak;
        if b0 > bound || b1 > bound {
            return Err(Error::Normalizability(format!(
                "boundary samples ({:e}, {:e}) exceed 1e-6 of the peak {:e}",
                b0.to_f64().unwrap_or(f64::NAN),
                b1.to_f64().unwrap_or(f64::NAN),
                peak.to_f64().unwrap_or(f64::NAN)
            )));
        }
        let norm_constant = psi.normalize()?;
        Ok(GroundState {
            psi0: psi,
            norm_constant,
            energy: None,
        })
    }
}

/// Normalized ground state of a factorized system.
#[derive(Debug, Clone)]
pub struct GroundState<R> {
    pub psi0: SampledFunction<R>,
    pub norm_constant: R,
    /// Ground energy when known in closed form (catalog systems).
    pub energy: Option<R>,
}

/// Relative annihilation residual ||eta psi0|| / ||psi0|| on the grid.
pub fn annihilation_residual<R: Real>(sys: &FactorizedSystem<R>, grid: &Grid<R>) -> Result<R> {
    let psi = sys.ground_state_raw(grid)?;
    let e = sys.apply_annihilation(&psi)?;
    Ok(e.norm() / psi.norm())
}

/// Suite of smooth test functions vanishing at the window edges, used by
/// the operator-identity checks.
pub fn test_suite<R: Real>(grid: &Grid<R>) -> Vec<SampledFunction<R>> {
    let lo = grid.x_lo();
    let hi = grid.x_hi();
    let mid = (lo + hi) * R::half();
    let span = (hi - lo) * R::half();
    // bump(t) = exp(-1/(1-t^2)) on |t| < 1, zero outside: smooth, compact
    let bump = move |x: R| {
        let t = (x - mid) / span;
        let t2 = t * t;
        if t2 < R::lit(0.98) {
            (-R::one() / (R::one() - t2)).exp()
        } else {
            R::zero()
        }
    };
    let shapes: Vec<Box<dyn Fn(R) -> R>> = vec![
        Box::new(bump),
        Box::new(move |x| bump(x) * ((x - mid) / span)),
        Box::new(move |x| bump(x) * (R::lit(3.0) * (x - mid) / span).sin()),
        Box::new(move |x| bump(x) * (R::lit(5.0) * (x - mid) / span).cos()),
        Box::new(move |x| {
            let t = (x - mid) / span;
            bump(x) * (t * t - R::lit(0.3))
        }),
    ];
    shapes
        .into_iter()
        .map(|f| SampledFunction::from_real_fn(*grid, f))
        .collect()
}

/// Max over the suite of the relative commutator defect
/// ||(eta eta_dag - eta_dag eta) f - F f|| / ||f||.
pub fn commutator_residual<R: Real>(sys: &FactorizedSystem<R>, grid: &Grid<R>) -> Result<R> {
    let f_fn = sys.structure_function();
    let fs: Vec<R> = grid.points().map(|x| f_fn.eval(x)).collect();
    let mut worst = R::zero();
    for f in test_suite(grid) {
        let a = sys.apply_creation(&sys.apply_annihilation(&f)?)?;
        let b = sys.apply_annihilation(&sys.apply_creation(&f)?)?;
        let comm = b.sub(&a);
        let weighted = SampledFunction::new(
            *grid,
            f.values()
                .iter()
                .zip(&fs)
                .map(|(&v, &w)| v * w)
                .collect(),
        )?;
        let r = comm.sub(&weighted).norm() / f.norm();
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Max over the suite of the relative factorized/divergence-form gap.
pub fn hamiltonian_route_residual<R: Real>(sys: &FactorizedSystem<R>, grid: &Grid<R>) -> Result<R> {
    let mut worst = R::zero();
    for f in test_suite(grid) {
        let a = sys.hamiltonian_apply_factorized(&f)?;
        let b = sys.hamiltonian_apply_direct(&f)?;
        let r = a.sub(&b).norm() / f.norm();
        worst = worst.max(r);
    }
    Ok(worst)
}
