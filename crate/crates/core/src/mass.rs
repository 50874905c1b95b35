//! Mass profiles and the geometry they induce.
//!
//! A profile is a positive dimensionless mass m(x). Everything else factors
//! through two derived objects:
//!
//! ```text
//! U(x)  = m(x)^(-1/4)                (deformation function)
//! mu(x) = integral of sqrt(m(y)) dy  (deformed coordinate, dmu/dx = 1/U^2)
//! ```
//!
//! mu is strictly increasing, so every superpotential stored as a function
//! of mu composes with any admissible profile.

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::quad::{adaptive_simpson, default_quad_tol};
use crate::scalar::{Real, RealFn};

/// Image of the profile domain under the deformed coordinate.
/// `None` endpoints are infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuImage<R> {
    pub lo: Option<R>,
    pub hi: Option<R>,
}

impl<R: Real> MuImage<R> {
    /// True if the closed interval `[lo, hi]` fits inside the image.
    pub fn contains_interval(&self, lo: R, hi: R) -> bool {
        let lo_ok = match self.lo {
            None => true,
            Some(m) => m < lo,
        };
        let hi_ok = match self.hi {
            None => true,
            Some(m) => m > hi,
        };
        lo_ok && hi_ok
    }
}

/// Positive mass function with its derived geometry.
#[derive(Debug, Clone)]
pub struct MassProfile<R> {
    id: String,
    m: RealFn<R>,
    m_prime: Option<RealFn<R>>,
    m_dprime: Option<RealFn<R>>,
    mu_closed: Option<RealFn<R>>,
    mu_inverse_closed: Option<RealFn<R>>,
    domain: (R, R), // infinite endpoints encoded as +-infinity
    mu_anchor: R,
    mu_image: MuImage<R>,
}

impl<R: Real> MassProfile<R> {
    /// General constructor; derivative closures and the closed-form mu are
    /// optional (numeric fallbacks are used when absent).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: impl Into<String>,
        m: RealFn<R>,
        m_prime: Option<RealFn<R>>,
        m_dprime: Option<RealFn<R>>,
        mu_closed: Option<RealFn<R>>,
        mu_inverse_closed: Option<RealFn<R>>,
        domain: (R, R),
        mu_anchor: R,
        mu_image: Option<MuImage<R>>,
    ) -> Result<Self> {
        if !(domain.0 < domain.1) {
            return Err(Error::parameter("profile domain must be nonempty"));
        }
        let mut profile = MassProfile {
            id: id.into(),
            m,
            m_prime,
            m_dprime,
            mu_closed,
            mu_inverse_closed,
            domain,
            mu_anchor,
            mu_image: MuImage { lo: None, hi: None },
        };
        profile.mu_image = match mu_image {
            Some(img) => img,
            None => profile.estimate_mu_image(),
        };
        Ok(profile)
    }

    /// Constant mass m = 1 on the full line; mu(x) = x.
    pub fn constant() -> Self {
        MassProfile::new(
            "constant",
            RealFn::constant(R::one()),
            Some(RealFn::constant(R::zero())),
            Some(RealFn::constant(R::zero())),
            Some(RealFn::new(|x| x)),
            Some(RealFn::new(|x| x)),
            (R::neg_infinity(), R::infinity()),
            R::zero(),
            Some(MuImage { lo: None, hi: None }),
        )
        .expect("constant profile")
    }

    /// m(x) = 1/(1+x^2)^2 on the full line; mu(x) = arctan x, so the
    /// deformed coordinate fills only (-pi/2, pi/2).
    pub fn cauchy_squared_inverse() -> Self {
        let m = RealFn::new(|x: R| {
            let d = R::one() + x * x;
            R::one() / (d * d)
        });
        let m_prime = RealFn::new(|x: R| {
            let d = R::one() + x * x;
            -R::lit(4.0) * x / (d * d * d)
        });
        let m_dprime = RealFn::new(|x: R| {
            let d = R::one() + x * x;
            (R::lit(20.0) * x * x - R::lit(4.0)) / (d * d * d * d)
        });
        MassProfile::new(
            "cauchy-squared-inverse",
            m,
            Some(m_prime),
            Some(m_dprime),
            Some(RealFn::new(|x: R| x.atan())),
            Some(RealFn::new(|mu: R| mu.tan())),
            (R::neg_infinity(), R::infinity()),
            R::zero(),
            Some(MuImage {
                lo: Some(-R::lit(std::f64::consts::FRAC_PI_2)),
                hi: Some(R::lit(std::f64::consts::FRAC_PI_2)),
            }),
        )
        .expect("cauchy-squared-inverse profile")
    }

    /// m(x) = (1+x^2)^2 on the full line; mu(x) = x + x^3/3.
    pub fn quartic_growth() -> Self {
        let m = RealFn::new(|x: R| {
            let d = R::one() + x * x;
            d * d
        });
        let m_prime = RealFn::new(|x: R| R::lit(4.0) * x * (R::one() + x * x));
        let m_dprime = RealFn::new(|x: R| R::lit(4.0) + R::lit(12.0) * x * x);
        MassProfile::new(
            "quartic-growth",
            m,
            Some(m_prime),
            Some(m_dprime),
            Some(RealFn::new(|x: R| x + x * x * x / R::lit(3.0))),
            None,
            (R::neg_infinity(), R::infinity()),
            R::zero(),
            Some(MuImage { lo: None, hi: None }),
        )
        .expect("quartic-growth profile")
    }

    /// Constant mass restricted to x > 0; mu(x) = x with the anchor at the
    /// left endpoint, so the deformed coordinate fills (0, inf).
    pub fn half_line_constant() -> Self {
        MassProfile::new(
            "half-line-constant",
            RealFn::constant(R::one()),
            Some(RealFn::constant(R::zero())),
            Some(RealFn::constant(R::zero())),
            Some(RealFn::new(|x| x)),
            Some(RealFn::new(|x| x)),
            (R::zero(), R::infinity()),
            R::zero(),
            Some(MuImage {
                lo: Some(R::zero()),
                hi: None,
            }),
        )
        .expect("half-line-constant profile")
    }

    /// Profile defined by an expression string for m(x).
    pub fn from_expression(
        id: impl Into<String>,
        source: &str,
        domain: (R, R),
        mu_anchor: R,
    ) -> Result<Self> {
        let expr = Expr::parse(source)?;
        let m = RealFn::new(move |x: R| expr.eval(x));
        MassProfile::new(id, m, None, None, None, None, domain, mu_anchor, None)
    }

    /// Bundled profile lookup by id.
    pub fn by_id(id: &str) -> Result<Self> {
        match id {
            "constant" => Ok(Self::constant()),
            "cauchy-squared-inverse" => Ok(Self::cauchy_squared_inverse()),
            "quartic-growth" => Ok(Self::quartic_growth()),
            "half-line-constant" => Ok(Self::half_line_constant()),
            other => Err(Error::parameter(format!(
                "unknown mass profile '{other}' (bundled: constant, cauchy-squared-inverse, quartic-growth, half-line-constant)"
            ))),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn domain(&self) -> (R, R) {
        self.domain
    }

    pub fn mu_anchor(&self) -> R {
        self.mu_anchor
    }

    fn check_domain(&self, x: R) -> Result<()> {
        if x < self.domain.0 || x > self.domain.1 {
            return Err(Error::Domain {
                x: x.to_f64().unwrap_or(f64::NAN),
                lo: self.domain.0.to_f64().unwrap_or(f64::NEG_INFINITY),
                hi: self.domain.1.to_f64().unwrap_or(f64::INFINITY),
            });
        }
        Ok(())
    }

    /// Mass value m(x).
    pub fn m_of_x(&self, x: R) -> Result<R> {
        self.check_domain(x)?;
        let m = self.m.eval(x);
        if !(m > R::zero()) {
            return Err(Error::parameter(format!(
                "mass must be positive, m({x}) = {m}"
            )));
        }
        Ok(m)
    }

    /// Deformation function U(x) = m(x)^(-1/4), strictly positive.
    pub fn u_of_x(&self, x: R) -> Result<R> {
        Ok(self.m_of_x(x)?.powf(-R::lit(0.25)))
    }

    /// dU/dx, analytic when the profile carries m'(x), numeric otherwise.
    pub fn u_prime(&self, x: R) -> Result<R> {
        let m = self.m_of_x(x)?;
        let mp = self.m_prime_value(x);
        // U' = -(1/4) m^{-5/4} m'
        Ok(-R::lit(0.25) * m.powf(-R::lit(1.25)) * mp)
    }

    /// d2U/dx2.
    pub fn u_dprime(&self, x: R) -> Result<R> {
        let m = self.m_of_x(x)?;
        let mp = self.m_prime_value(x);
        let mpp = self.m_dprime_value(x);
        // U'' = (5/16) m^{-9/4} m'^2 - (1/4) m^{-5/4} m''
        Ok(R::lit(5.0 / 16.0) * m.powf(-R::lit(2.25)) * mp * mp
            - R::lit(0.25) * m.powf(-R::lit(1.25)) * mpp)
    }

    fn numeric_step(&self, x: R) -> R {
        R::epsilon().powf(R::lit(1.0 / 3.0)) * (R::one() + x.abs())
    }

    fn m_prime_value(&self, x: R) -> R {
        match &self.m_prime {
            Some(f) => f.eval(x),
            None => {
                let h = self.numeric_step(x);
                (self.m.eval(x + h) - self.m.eval(x - h)) / (R::two() * h)
            }
        }
    }

    fn m_dprime_value(&self, x: R) -> R {
        match &self.m_dprime {
            Some(f) => f.eval(x),
            None => {
                let h = self.numeric_step(x) * R::lit(10.0);
                (self.m.eval(x + h) - R::two() * self.m.eval(x) + self.m.eval(x - h)) / (h * h)
            }
        }
    }

    /// Mass-induced potential entering the divergence-form operator:
    /// `V_U(x) = -U^2 U'^2 - U^3 U'' / 2`. Identically zero for constant mass.
    pub fn mass_potential(&self) -> RealFn<R> {
        let p = self.clone();
        RealFn::new(move |x| {
            let u = p.u_of_x(x).unwrap_or(R::nan());
            let up = p.u_prime(x).unwrap_or(R::nan());
            let upp = p.u_dprime(x).unwrap_or(R::nan());
            -u * u * up * up - u * u * u * upp * R::half()
        })
    }

    /// Deformed coordinate mu(x) = integral of sqrt(m) from the anchor.
    ///
    /// Uses the closed form when present, otherwise adaptive Simpson with
    /// interval halving to the documented relative tolerance.
    pub fn mu_of_x(&self, x: R) -> Result<R> {
        self.check_domain(x)?;
        if let Some(mu) = &self.mu_closed {
            return Ok(mu.eval(x) - mu.eval(self.mu_anchor));
        }
        let m = self.m.clone();
        adaptive_simpson(
            &move |y: R| m.eval(y).sqrt(),
            self.mu_anchor,
            x,
            default_quad_tol::<R>(),
        )
    }

    /// mu sampled over a uniform grid: closed form per point, or cumulative
    /// per-cell quadrature for expression profiles.
    pub fn mu_on_points(&self, points: &[R]) -> Result<Vec<R>> {
        if self.mu_closed.is_some() {
            return points.iter().map(|&x| self.mu_of_x(x)).collect();
        }
        let mut out = Vec::with_capacity(points.len());
        if points.is_empty() {
            return Ok(out);
        }
        let m = self.m.clone();
        let integrand = move |y: R| m.eval(y).sqrt();
        let tol = default_quad_tol::<R>();
        let mut acc = adaptive_simpson(&integrand, self.mu_anchor, points[0], tol)?;
        out.push(acc);
        for w in points.windows(2) {
            acc += adaptive_simpson(&integrand, w[0], w[1], tol)?;
            out.push(acc);
        }
        Ok(out)
    }

    /// Image of the domain under mu.
    pub fn mu_image(&self) -> MuImage<R> {
        self.mu_image
    }

    /// Numeric extrapolation of the mu image: sample mu at geometrically
    /// growing |x|; if successive values agree to 1e-6 the limit is finite.
    fn estimate_mu_image(&self) -> MuImage<R> {
        let probe = |toward_hi: bool| -> Option<R> {
            let bound = if toward_hi { self.domain.1 } else { self.domain.0 };
            if bound.is_finite() {
                return self.mu_of_x(bound).ok();
            }
            let mut t = R::lit(64.0);
            let mut prev = self.mu_of_x(if toward_hi { t } else { -t }).ok()?;
            for _ in 0..24 {
                t *= R::two();
                let cur = self.mu_of_x(if toward_hi { t } else { -t }).ok()?;
                let inc = cur - prev;
                if inc.abs() < R::lit(1e-6) {
                    // geometric-tail correction: remaining mass ~ one more increment
                    return Some(cur + inc);
                }
                prev = cur;
            }
            None // still growing: treat as infinite
        };
        MuImage {
            lo: probe(false),
            hi: probe(true),
        }
    }

    /// Inverse of the deformed coordinate (mu is strictly increasing).
    pub fn x_of_mu(&self, mu_target: R) -> Result<R> {
        if let Some(inv) = &self.mu_inverse_closed {
            let mu0 = match &self.mu_closed {
                Some(mu) => mu.eval(self.mu_anchor),
                None => R::zero(),
            };
            return Ok(inv.eval(mu_target + mu0));
        }
        // bracket by doubling, then bisect + Newton polish (dmu/dx = sqrt m)
        let img = self.mu_image();
        if !img.contains_interval(mu_target, mu_target) {
            return Err(Error::admissibility(format!(
                "mu = {mu_target} outside the image of the deformed coordinate"
            )));
        }
        let mut lo = self.mu_anchor;
        let mut hi = self.mu_anchor;
        let mut step = R::one();
        while self.mu_of_x(hi)? < mu_target {
            hi = (hi + step).min(self.domain.1);
            step *= R::two();
            if hi >= self.domain.1 && self.mu_of_x(self.domain.1.min(hi))? < mu_target {
                return Err(Error::numeric("x_of_mu: failed to bracket target"));
            }
        }
        step = R::one();
        while self.mu_of_x(lo)? > mu_target {
            lo = (lo - step).max(self.domain.0);
            step *= R::two();
        }
        for _ in 0..200 {
            let mid = (lo + hi) * R::half();
            if self.mu_of_x(mid)? < mu_target {
                lo = mid;
            } else {
                hi = mid;
            }
            if (hi - lo).abs() <= R::epsilon() * (R::one() + mid.abs()) * R::lit(4.0) {
                break;
            }
        }
        let mut x = (lo + hi) * R::half();
        for _ in 0..3 {
            let f = self.mu_of_x(x)? - mu_target;
            let d = self.m_of_x(x)?.sqrt();
            x -= f / d;
        }
        Ok(x)
    }
}
