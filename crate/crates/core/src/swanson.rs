//! The non-Hermitian quadratic Hamiltonian, its similarity map and metric.
//!
//! Built from the unmodified ladder pair (U d/dx U ± W)/sqrt2, the operator
//!
//! ```text
//! H = omega (eta_dag eta + 1/2) + alpha eta^2 + beta eta_dag^2
//! ```
//!
//! expands, with the convention omega = alpha + beta + 1, into
//!
//! ```text
//! H = -1/2 U^4 d^2/dx^2 + K d/dx + R
//! K = (alpha - beta) U^2 W - 2 U^3 U'
//! R = 1/2 { omega (1 - U^2 W') + (omega + alpha + beta) W^2
//!           + (alpha - beta) (U^2 W)' - U^2 (2 U'^2 + U U'') }
//! ```
//!
//! The multiplicative similarity weight rho = exp(-(alpha-beta) Int W dmu)
//! removes the drift term: rho H rho^{-1} is the symmetric divergence-form
//! operator with the effective potential
//!
//! ```text
//! V_eff = ((omega^2 - 4 alpha beta)/2) W^2 - (omega/2) U^2 W' + omega/2 + V_U ,
//! ```
//!
//! and zeta = rho^2 > 0 is the metric that makes H pseudo-symmetric:
//! zeta H = H^T zeta in the weak (inner-product) sense checked here.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::factorization::Superpotential;
use crate::grid::{Grid, SampledFunction};
use crate::mass::MassProfile;
use crate::scalar::{Real, RealFn};
use crate::stencil::{derivative, second_derivative};
use crate::tridiag::{build_divergence_hamiltonian, lowest_modes};

/// The quadratic non-Hermitian system with its drift/potential evaluators.
#[derive(Debug, Clone)]
pub struct SwansonSystem<R> {
    profile: MassProfile<R>,
    sp: Superpotential<R>,
    alpha: R,
    beta: R,
    omega: R,
    omega_plus: R,
}

impl<R: Real> SwansonSystem<R> {
    /// omega is derived from the convention omega = alpha + beta + 1.
    pub fn new(alpha: R, beta: R, profile: MassProfile<R>, sp: Superpotential<R>) -> Self {
        let omega = alpha + beta + R::one();
        SwansonSystem {
            profile,
            sp,
            alpha,
            beta,
            omega,
            omega_plus: omega + alpha + beta,
        }
    }

    pub fn alpha(&self) -> R {
        self.alpha
    }

    pub fn beta(&self) -> R {
        self.beta
    }

    pub fn omega(&self) -> R {
        self.omega
    }

    /// omega + alpha + beta.
    pub fn omega_plus(&self) -> R {
        self.omega_plus
    }

    pub fn profile(&self) -> &MassProfile<R> {
        &self.profile
    }

    pub fn superpotential(&self) -> &Superpotential<R> {
        &self.sp
    }

    /// omega^2 - 4 alpha beta; a negative value flags the inverted regime
    /// where the Hermitized potential is unbounded below.
    pub fn spectral_discriminant(&self) -> R {
        self.omega * self.omega - R::lit(4.0) * self.alpha * self.beta
    }

    pub fn positive_regime(&self) -> bool {
        self.spectral_discriminant() > R::zero()
    }

    /// Drift coefficient K(x).
    pub fn drift(&self) -> RealFn<R> {
        let s = self.clone();
        RealFn::new(move |x| {
            let u = s.profile.u_of_x(x).unwrap_or(R::nan());
            let up = s.profile.u_prime(x).unwrap_or(R::nan());
            let mu = s.profile.mu_of_x(x).unwrap_or(R::nan());
            let w = s.sp.w.eval(mu);
            (s.alpha - s.beta) * u * u * w - R::two() * u * u * u * up
        })
    }

    /// Zeroth-order coefficient R(x).
    pub fn scalar_term(&self) -> RealFn<R> {
        let s = self.clone();
        RealFn::new(move |x| {
            let u = s.profile.u_of_x(x).unwrap_or(R::nan());
            let up = s.profile.u_prime(x).unwrap_or(R::nan());
            let upp = s.profile.u_dprime(x).unwrap_or(R::nan());
            let mu = s.profile.mu_of_x(x).unwrap_or(R::nan());
            let w = s.sp.w.eval(mu);
            let wp_mu = s.sp.w_prime.eval(mu);
            let u2 = u * u;
            // U^2 W' in x equals dW/dmu; (U^2 W)' = U^2 W' + 2 U U' W
            let u2wprime_x = wp_mu;
            let prod_rule = u2wprime_x + R::two() * u * up * w;
            R::half()
                * (s.omega * (R::one() - u2wprime_x)
                    + s.omega_plus * w * w
                    + (s.alpha - s.beta) * prod_rule
                    - u2 * (R::two() * up * up + u * upp))
        })
    }

    /// Applies the nonsymmetric operator with stencils.
    pub fn apply(&self, f: &SampledFunction<R>) -> Result<SampledFunction<R>> {
        let grid = *f.grid();
        let k = self.drift();
        let r = self.scalar_term();
        let d1 = derivative(f);
        let d2 = second_derivative(f);
        let values = (0..grid.n())
            .map(|i| {
                let x = grid.x(i);
                let u = self.profile.u_of_x(x)?;
                let u4 = u * u * u * u;
                Ok(d2.values()[i] * (-R::half() * u4)
                    + d1.values()[i] * k.eval(x)
                    + f.values()[i] * r.eval(x))
            })
            .collect::<Result<Vec<_>>>()?;
        SampledFunction::new(grid, values)
    }

    /// Similarity weight rho(x) = exp(-(alpha - beta) Int W dmu).
    pub fn similarity_map(&self) -> SimilarityMap<R> {
        let diff = self.alpha - self.beta;
        let sp = self.sp.clone();
        let profile = self.profile.clone();
        SimilarityMap {
            rho: RealFn::new(move |x| {
                let mu = profile.mu_of_x(x).unwrap_or(R::nan());
                (-diff * sp.w_antideriv.eval(mu)).exp()
            }),
            kind: SimilarityKind::AlphaBeta,
            f_kappa: None,
        }
    }

    /// Metric zeta = rho^2, positive wherever U is.
    pub fn metric(&self) -> Metric<R> {
        let rho = self.similarity_map().rho;
        Metric {
            zeta: RealFn::new(move |x| {
                let r = rho.eval(x);
                r * r
            }),
        }
    }

    /// Hermitized effective potential V_eff(x) (divergence-form convention,
    /// mass potential included).
    pub fn hermitized_potential(&self) -> RealFn<R> {
        let s = self.clone();
        let vu = self.profile.mass_potential();
        RealFn::new(move |x| {
            let mu = s.profile.mu_of_x(x).unwrap_or(R::nan());
            let w = s.sp.w.eval(mu);
            let wp_mu = s.sp.w_prime.eval(mu);
            (s.omega * s.omega - R::lit(4.0) * s.alpha * s.beta) * R::half() * w * w
                - s.omega * R::half() * wp_mu
                + s.omega * R::half()
                + vu.eval(x)
        })
    }

    /// Applies the Hermitized operator g -> rho H (rho^{-1} g).
    pub fn apply_hermitized(&self, g: &SampledFunction<R>) -> Result<SampledFunction<R>> {
        let grid = *g.grid();
        let rho = self.similarity_map().rho;
        let rho_vals: Vec<R> = grid.points().map(|x| rho.eval(x)).collect();
        let scaled = SampledFunction::new(
            grid,
            g.values()
                .iter()
                .zip(&rho_vals)
                .map(|(&v, &r)| v / r)
                .collect(),
        )?;
        let hf = self.apply(&scaled)?;
        SampledFunction::new(
            grid,
            hf.values()
                .iter()
                .zip(&rho_vals)
                .map(|(&v, &r)| v * r)
                .collect(),
        )
    }

    /// Recovers a nonsymmetric-side eigenfunction psi = rho^{-1} chi from a
    /// Hermitian-side one.
    pub fn state_from_hermitian(&self, chi: &SampledFunction<R>) -> SampledFunction<R> {
        let rho = self.similarity_map().rho;
        SampledFunction::from_real_fn(*chi.grid(), |x| R::one() / rho.eval(x))
            .zip_with(chi, |r, v| r * v)
    }

    /// Lowest eigenvalues of the Hermitized operator on the grid.
    pub fn hermitized_eigenvalues(&self, grid: &Grid<R>, k: usize) -> Result<Vec<R>> {
        if !self.positive_regime() {
            return Err(Error::parameter(
                "omega^2 - 4 alpha beta <= 0: inverted potential, spectrum unbounded below",
            ));
        }
        let u4: Vec<R> = grid
            .points()
            .map(|x| {
                let u = self.profile.u_of_x(x)?;
                Ok(u * u * u * u)
            })
            .collect::<Result<_>>()?;
        let veff = self.hermitized_potential();
        let v: Vec<R> = grid.points().map(|x| veff.eval(x)).collect();
        let m = build_divergence_hamiltonian(grid, &u4, &v)?;
        Ok(lowest_modes(grid, &m, k)?
            .into_iter()
            .map(|(e, _)| e)
            .collect())
    }

    /// Weak-form symmetry defect of the Hermitized operator over test pairs:
    /// max |<g2, h g1> - <h g2, g1>| / (||g1|| ||g2||).
    pub fn hermitize_check(&self, testset: &[SampledFunction<R>]) -> Result<R> {
        let mut worst = R::zero();
        for (i, g1) in testset.iter().enumerate() {
            for g2 in testset.iter().skip(i + 1) {
                let a = g2.inner(&self.apply_hermitized(g1)?);
                let b = self.apply_hermitized(g2)?.inner(g1);
                let defect = (a - b).norm() / (g1.norm() * g2.norm());
                worst = worst.max(defect);
            }
        }
        Ok(worst)
    }

    /// Raw symmetry defect of the nonsymmetric operator itself (negative
    /// control: O(1) when alpha != beta).
    pub fn raw_symmetry_defect(&self, testset: &[SampledFunction<R>]) -> Result<R> {
        let mut worst = R::zero();
        for (i, g1) in testset.iter().enumerate() {
            for g2 in testset.iter().skip(i + 1) {
                let a = g2.inner(&self.apply(g1)?);
                let b = self.apply(g2)?.inner(g1);
                let defect = (a - b).norm() / (g1.norm() * g2.norm());
                worst = worst.max(defect);
            }
        }
        Ok(worst)
    }

    /// Weak form of the pseudo-symmetry relation zeta H = H^T zeta:
    /// max |<g2, zeta H g1> - <H g2, zeta g1>| / (||g1|| ||g2||).
    pub fn pseudo_hermiticity_check(&self, testset: &[SampledFunction<R>]) -> Result<R> {
        let zeta = self.metric().zeta;
        let mut worst = R::zero();
        for (i, g1) in testset.iter().enumerate() {
            for g2 in testset.iter().skip(i + 1) {
                let grid = *g1.grid();
                let zvals = SampledFunction::from_real_fn(grid, |x| zeta.eval(x));
                let zh = zvals.zip_with(&self.apply(g1)?, |z, v| z * v);
                let a = g2.inner(&zh);
                let zg = zvals.zip_with(g1, |z, v| z * v);
                let b = self.apply(g2)?.inner(&zg);
                let defect = (a - b).norm() / (g1.norm() * g2.norm());
                worst = worst.max(defect);
            }
        }
        Ok(worst)
    }
}

/// Which similarity weight a map represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimilarityKind {
    /// exp(-(alpha - beta) Int W dmu).
    AlphaBeta,
    /// exp(-f(kappa) Int W dmu) with f(kappa) = kappa - 1/kappa.
    Kappa,
}

/// Positive multiplicative similarity weight.
#[derive(Debug, Clone)]
pub struct SimilarityMap<R> {
    pub rho: RealFn<R>,
    pub kind: SimilarityKind,
    pub f_kappa: Option<R>,
}

/// Positive multiplicative metric zeta = rho^2.
#[derive(Debug, Clone)]
pub struct Metric<R> {
    pub zeta: RealFn<R>,
}

/// kappa-indexed similarity weight rho_k = exp(-f(kappa) Int W dmu),
/// built on the same antiderivative as the system it accompanies so that
/// compositions cancel exactly. Satisfies rho_{-k} = 1 / rho_k.
pub fn rho_kappa<R: Real>(
    kappa: R,
    sp: &Superpotential<R>,
    profile: &MassProfile<R>,
) -> Result<SimilarityMap<R>> {
    let (_, f) = crate::coherent::gamma_f(kappa)?;
    let sp = sp.clone();
    let profile = profile.clone();
    Ok(SimilarityMap {
        rho: RealFn::new(move |x| {
            let mu = profile.mu_of_x(x).unwrap_or(R::nan());
            (-f * sp.w_antideriv.eval(mu)).exp()
        }),
        kind: SimilarityKind::Kappa,
        f_kappa: Some(f),
    })
}

/// Complex helper kept for CLI assembly of Swanson reports.
pub fn complex<R: Real>(re: R, im: R) -> Complex<R> {
    Complex::new(re, im)
}
