//! Property-based invariants for the numeric kernel and the mass geometry.

use proptest::prelude::*;

use pdmcs_core::factorization::{FactorizedSystem, Superpotential};
use pdmcs_core::grid::{Grid, SampledFunction};
use pdmcs_core::mass::MassProfile;
use pdmcs_core::scalar::RealFn;
use pdmcs_core::tridiag::TridiagonalSymmetric;

fn profiles() -> Vec<MassProfile<f64>> {
    vec![
        MassProfile::constant(),
        MassProfile::cauchy_squared_inverse(),
        MassProfile::quartic_growth(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// u(x)^4 m(x) = 1 for every bundled profile at any sample point.
    #[test]
    fn deformation_quartic_identity(x in -20.0f64..20.0) {
        for p in profiles() {
            let u = p.u_of_x(x).unwrap();
            let m = p.m_of_x(x).unwrap();
            prop_assert!((u.powi(4) * m - 1.0).abs() < 1e-12, "{}", p.id());
        }
    }

    /// The deformed coordinate is strictly increasing.
    #[test]
    fn mu_monotone(x1 in -15.0f64..15.0, gap in 1e-3f64..5.0) {
        let x2 = x1 + gap;
        for p in profiles() {
            let m1 = p.mu_of_x(x1).unwrap();
            let m2 = p.mu_of_x(x2).unwrap();
            prop_assert!(m2 > m1, "{} not increasing on [{x1}, {x2}]", p.id());
        }
    }

    /// Central differences of mu reproduce sqrt(m) at second order.
    #[test]
    fn mu_derivative_matches_sqrt_mass(x in -8.0f64..8.0) {
        let h = 1e-5;
        for p in profiles() {
            let d = (p.mu_of_x(x + h).unwrap() - p.mu_of_x(x - h).unwrap()) / (2.0 * h);
            prop_assert!((d - p.m_of_x(x).unwrap().sqrt()).abs() < 1e-7, "{}", p.id());
        }
    }

    /// Eigenvalues come out sorted, inside the Gershgorin disc union, with
    /// residuals within the documented bound.
    #[test]
    fn eigensolver_invariants(
        seed in 0u64..5000,
        n in 4usize..24,
        k in 1usize..5,
    ) {
        let k = k.min(n);
        // deterministic pseudo-random bands from the seed
        let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / ((1u64 << 53) as f64) * 4.0 - 2.0
        };
        let diag: Vec<f64> = (0..n).map(|_| next()).collect();
        let off: Vec<f64> = (0..n - 1).map(|_| next()).collect();
        let gersh_lo = (0..n)
            .map(|i| {
                let mut r = 0.0;
                if i > 0 { r += off[i - 1].abs(); }
                if i + 1 < n { r += off[i].abs(); }
                diag[i] - r
            })
            .fold(f64::INFINITY, f64::min);
        let m = TridiagonalSymmetric::new(diag, off).unwrap();
        let pairs = m.lowest_eigenpairs(k, 1.0).unwrap();
        for w in pairs.windows(2) {
            prop_assert!(w[0].value <= w[1].value + 1e-10);
        }
        for p in &pairs {
            prop_assert!(p.value >= gersh_lo - 1e-9);
            let av = m.matvec(&p.vector);
            let res: f64 = av
                .iter()
                .zip(&p.vector)
                .map(|(&a, &b)| (a - p.value * b).powi(2))
                .sum::<f64>()
                .sqrt();
            prop_assert!(res < 1e-8, "residual {res}");
            // Sturm count just above the eigenvalue includes it
            prop_assert!(m.count_below(p.value + 1e-6) >= 1);
        }
    }

    /// The annihilation operator is linear: eta(a f + b g) = a eta f + b eta g.
    #[test]
    fn ladder_linearity(a in -2.0f64..2.0, b in -2.0f64..2.0) {
        let sp = Superpotential {
            w: RealFn::new(|mu| mu),
            w_prime: RealFn::constant(1.0),
            w_antideriv: RealFn::new(|mu: f64| 0.5 * mu * mu),
        };
        let sys = FactorizedSystem::new(MassProfile::constant(), 1.0, sp).unwrap();
        let g = Grid::new(-5.0, 5.0, 129).unwrap();
        let f1 = SampledFunction::from_real_fn(g, |x: f64| (-x * x).exp());
        let f2 = SampledFunction::from_real_fn(g, |x: f64| x * (-0.5 * x * x).exp());
        let ca = num_complex::Complex::new(a, 0.0);
        let cb = num_complex::Complex::new(b, 0.0);
        let combined = f1.scale(ca).add(&f2.scale(cb));
        let lhs = sys.apply_annihilation(&combined).unwrap();
        let rhs = sys
            .apply_annihilation(&f1)
            .unwrap()
            .scale(ca)
            .add(&sys.apply_annihilation(&f2).unwrap().scale(cb));
        prop_assert!(lhs.linf_diff(&rhs) < 1e-10);
    }

    /// Simpson integration is exact on cubics over any grid.
    #[test]
    fn simpson_exact_on_cubics(
        c0 in -2.0f64..2.0,
        c1 in -2.0f64..2.0,
        c2 in -2.0f64..2.0,
        c3 in -2.0f64..2.0,
        lo in -4.0f64..0.0,
        span in 1.0f64..6.0,
    ) {
        let hi = lo + span;
        let g = Grid::new(lo, hi, 129).unwrap(); // odd count: pure Simpson
        let f = SampledFunction::from_real_fn(g, |x: f64| {
            c0 + c1 * x + c2 * x * x + c3 * x * x * x
        });
        let exact = |x: f64| c0 * x + c1 * x * x / 2.0 + c2 * x.powi(3) / 3.0 + c3 * x.powi(4) / 4.0;
        let got = pdmcs_core::quad::integrate(&f).re;
        let want = exact(hi) - exact(lo);
        prop_assert!((got - want).abs() < 1e-10 * (1.0 + want.abs()));
    }
}

/// The scalar-generic core instantiates and behaves at f32 as well.
#[test]
fn f32_instantiation_smoke() {
    let g = Grid::<f32>::new(-6.0, 6.0, 1025).unwrap();
    let sp = Superpotential::<f32> {
        w: RealFn::new(|mu| mu),
        w_prime: RealFn::constant(1.0),
        w_antideriv: RealFn::new(|mu: f32| 0.5 * mu * mu),
    };
    let sys = FactorizedSystem::new(MassProfile::<f32>::constant(), 1.0, sp).unwrap();
    let r = pdmcs_core::factorization::annihilation_residual(&sys, &g).unwrap();
    // f32 floor dominates the stencil error at this resolution
    assert!(r < 1e-3, "f32 residual {r}");

    let entries = pdmcs_core::catalog::entries::<f32>();
    assert_eq!(entries.len(), 11);
    let e = &entries[0];
    let forms = e.forms(&e.fixture.eigen).unwrap();
    assert!((forms.eps0 - 1.0f32).abs() < 1e-6);
}
