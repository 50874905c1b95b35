//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line with the measured values (run with `-- --nocapture` to see them
//! on success).
//!
//! Every tolerance is pinned here, in code. Expected values tagged as
//! derived are computed from the stated oracle (analytic spectra, closed
//! antiderivatives, hand differentiation), never invented.

use std::time::Instant;

use pdmcs_core::catalog::{self, CatalogEntry, CROSSCHECK_N};
use pdmcs_core::coherent::{
    annihilation_action_check, displacement_identity_check, gamma_f, hcs_evaluate, hcs_raw,
    phcs_raw, uncertainty_product, CoherentParams,
};
use pdmcs_core::factorization::{
    annihilation_residual, hamiltonian_route_residual, test_suite, FactorizedSystem,
};
use pdmcs_core::grid::{Grid, SampledFunction};
use pdmcs_core::mass::MassProfile;
use pdmcs_core::quad::integrate;
use pdmcs_core::swanson::{rho_kappa, SwansonSystem};
use pdmcs_core::tridiag::{build_divergence_hamiltonian, lowest_modes};

const REFINEMENTS: [usize; 3] = [1025, 2049, 4097];

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

/// Least-squares slope of ln(res) against ln(h) over the refinement ladder.
fn convergence_order(res: &[f64]) -> f64 {
    let xs: Vec<f64> = (0..res.len()).map(|i| -(i as f64) * 2f64.ln()).collect();
    let ys: Vec<f64> = res.iter().map(|r| r.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

fn constant_profile() -> MassProfile<f64> {
    MassProfile::constant()
}

fn entry_grid(e: &CatalogEntry<f64>, window: (f64, f64), n: usize) -> Grid<f64> {
    let _ = e;
    Grid::new(window.0, window.1, n).unwrap()
}

#[test]
fn criterion_01_catalog_potential_consistency() {
    let profile = constant_profile();
    let mut worst = (0.0f64, "");
    let mut slowest = 0.0f64;
    for e in catalog::entries::<f64>() {
        let t0 = Instant::now();
        let fx = e.fixture;
        let (sys, forms) = e
            .instantiate(&fx.eigen, &profile, fx.window_potential)
            .unwrap();
        let g = entry_grid(&e, fx.window_potential, CROSSCHECK_N);
        let vt = sys.effective_potential();
        let offsets: Vec<f64> = g
            .points()
            .map(|x| vt.eval(x) - forms.v_closed.eval(x))
            .collect();
        let mean = offsets.iter().sum::<f64>() / offsets.len() as f64;
        let dev = offsets
            .iter()
            .map(|o| (o - mean).abs())
            .fold(0.0f64, f64::max);
        let elapsed = t0.elapsed().as_secs_f64();
        slowest = slowest.max(elapsed);
        assert!(
            elapsed <= 1.0,
            "{}: potential consistency took {elapsed:.3}s",
            e.name
        );
        // the measured offset must also reconcile with delta - eps0
        assert!(
            (mean - (sys.delta() - forms.eps0)).abs() <= 1e-9,
            "{}: offset {mean} vs delta - eps0 {}",
            e.name,
            sys.delta() - forms.eps0
        );
        if dev > worst.0 {
            worst = (dev, e.name);
        }
        assert!(dev <= 1e-9, "{}: deviation {dev:e}", e.name);
    }
    report(
        "1 (potential consistency, 11 entries)",
        true,
        &format!(
            "max deviation {:.3e} at {}; slowest entry {:.3}s",
            worst.0, worst.1, slowest
        ),
    );
}

#[test]
fn criterion_02_ground_state_annihilation() {
    let profile = constant_profile();
    let mut worst_res = (0.0f64, "");
    let mut orders = Vec::new();
    for e in catalog::entries::<f64>() {
        let fx = e.fixture;
        let (sys, _) = e
            .instantiate(&fx.eigen, &profile, fx.window_annihilation)
            .unwrap();
        let res: Vec<f64> = REFINEMENTS
            .iter()
            .map(|&n| {
                let g = entry_grid(&e, fx.window_annihilation, n);
                annihilation_residual(&sys, &g).unwrap()
            })
            .collect();
        let final_res = res[2];
        assert!(final_res <= 5e-5, "{}: residual {final_res:e}", e.name);
        if final_res > worst_res.0 {
            worst_res = (final_res, e.name);
        }
        let order = convergence_order(&res);
        assert!(
            (order - 2.0).abs() <= 0.2,
            "{}: convergence order {order}",
            e.name
        );
        orders.push(order);
    }
    let (omin, omax) = orders
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &o| {
            (a.min(o), b.max(o))
        });
    report(
        "2 (annihilation residual + order, 11 entries)",
        true,
        &format!(
            "worst residual {:.3e} at {}; orders in [{:.3}, {:.3}]",
            worst_res.0, worst_res.1, omin, omax
        ),
    );
}

#[test]
fn criterion_03_ground_energies_vs_closed_forms() {
    // (entry, window, expected eps0, tolerance) with the fixture parameters
    let cases = [
        ("shifted-ho", (-8.0, 8.0), 1.0, 1e-4),
        ("morse", (-3.0, 12.0), -2.0, 5e-3),
        ("poschl-teller", (-12.0, 12.0), -2.0, 5e-3),
        ("coulomb", (0.01, 40.0), -4.5, 1e-2),
    ];
    let profile = constant_profile();
    let mut details = Vec::new();
    for (name, window, expect, tol) in cases {
        let t0 = Instant::now();
        let e = catalog::entry_by_name::<f64>(name).unwrap();
        let (_, forms) = e.instantiate(&e.fixture.eigen, &profile, window).unwrap();
        assert_eq!(forms.eps0, expect, "{name}: eps0 map");
        let g = Grid::new(window.0, window.1, CROSSCHECK_N).unwrap();
        let u4 = vec![1.0f64; g.n()];
        let v: Vec<f64> = g.points().map(|x| forms.v_closed.eval(x)).collect();
        let m = build_divergence_hamiltonian(&g, &u4, &v).unwrap();
        let modes = lowest_modes(&g, &m, 1).unwrap();
        let elapsed = t0.elapsed().as_secs_f64();
        assert!(elapsed <= 2.0, "{name}: took {elapsed:.3}s");
        let gap = (modes[0].0 - expect).abs();
        assert!(gap <= tol, "{name}: eigenvalue {} vs {expect}", modes[0].0);
        details.push(format!("{name} {:+.6} ({gap:.2e})", modes[0].0));
    }
    report(
        "3 (ground energies vs closed forms)",
        true,
        &details.join(", "),
    );
}

#[test]
fn criterion_04_variable_mass_identity_suite() {
    // m = (1 + x^2)^2, shifted-oscillator superpotential, kappa = 1
    let profile = MassProfile::<f64>::quartic_growth();
    let e = catalog::entry_by_name::<f64>("shifted-ho").unwrap();
    let forms = e.forms(&e.fixture.eigen).unwrap();
    let sys = FactorizedSystem::new(profile, e.fixture.eigen.kappa, forms.sp.clone()).unwrap();
    let window = (-2.2, 2.2);

    let ann: Vec<f64> = REFINEMENTS
        .iter()
        .map(|&n| {
            let g = Grid::new(window.0, window.1, n).unwrap();
            annihilation_residual(&sys, &g).unwrap()
        })
        .collect();
    assert!(ann[2] <= 5e-5, "annihilation residual {:e}", ann[2]);
    let ann_order = convergence_order(&ann);
    assert!((ann_order - 2.0).abs() <= 0.2, "order {ann_order}");

    let route: Vec<f64> = REFINEMENTS
        .iter()
        .map(|&n| {
            let g = Grid::new(window.0, window.1, n).unwrap();
            hamiltonian_route_residual(&sys, &g).unwrap()
        })
        .collect();
    let route_order = convergence_order(&route);
    assert!((route_order - 2.0).abs() <= 0.2, "route order {route_order}");

    report(
        "4 (variable-mass identities)",
        true,
        &format!(
            "annihilation {:.3e} (order {:.3}), factorized/divergence gap {:.3e} (order {:.3})",
            ann[2], ann_order, route[2], route_order
        ),
    );
}

#[test]
fn criterion_05_swanson_hermitization() {
    // alpha = 0.3, beta = 0.1, omega = 1.4 (derived), m = 1, W = x.
    // Oracle: Hermitization yields V_eff = ((omega^2 - 4 alpha beta)/2) x^2
    // = 0.92 x^2 exactly (the omega/2 constant cancels against the
    // -(omega/2) W' term), so the analytic oscillator ground energy is
    // sqrt(omega^2 - 4 alpha beta)/2 = sqrt(1.84)/2.
    let e = catalog::entry_by_name::<f64>("shifted-ho").unwrap();
    let forms = e.forms(&e.fixture.eigen).unwrap();
    let sys = SwansonSystem::new(0.3, 0.1, constant_profile(), forms.sp.clone());

    let defects: Vec<f64> = REFINEMENTS
        .iter()
        .map(|&n| {
            let g = Grid::new(-7.0, 7.0, n).unwrap();
            sys.hermitize_check(&test_suite(&g)).unwrap()
        })
        .collect();
    let order = convergence_order(&defects);
    assert!(
        (order - 2.0).abs() <= 0.3,
        "symmetry defect order {order} (defects {defects:?})"
    );

    let g = Grid::new(-10.0, 10.0, CROSSCHECK_N).unwrap();
    let eigs = sys.hermitized_eigenvalues(&g, 1).unwrap();
    let expect = (1.84f64).sqrt() / 2.0;
    let gap = (eigs[0] - expect).abs();
    assert!(gap <= 1e-3, "lowest eigenvalue {} vs {expect}", eigs[0]);

    let zeta = sys.metric().zeta;
    let zeta_min = g.points().map(|x| zeta.eval(x)).fold(f64::INFINITY, f64::min);
    assert!(zeta_min > 0.0, "zeta_min {zeta_min}");

    report(
        "5 (Swanson Hermitization)",
        true,
        &format!(
            "defect {:.3e} (order {:.3}), E0 {:.6} vs {:.6}, zeta_min {:.3e}",
            defects[2], order, eigs[0], expect, zeta_min
        ),
    );
}

#[test]
fn criterion_06_displacement_identity() {
    let profile = constant_profile();
    let mut details = Vec::new();
    for name in ["shifted-ho", "morse"] {
        let e = catalog::entry_by_name::<f64>(name).unwrap();
        let fx = e.fixture;
        let (sys, _) = e
            .instantiate(&fx.coherent, &profile, fx.window_coherent)
            .unwrap();
        let params = CoherentParams::new(fx.coherent.kappa, 0.3).unwrap();
        let res: Vec<f64> = REFINEMENTS
            .iter()
            .map(|&n| {
                let g = entry_grid(&e, fx.window_coherent, n);
                displacement_identity_check(&params, &sys, &test_suite(&g)).unwrap()
            })
            .collect();
        let order = convergence_order(&res);
        assert!((order - 2.0).abs() <= 0.2, "{name}: order {order}");
        details.push(format!("{name} {:.3e} (order {:.3})", res[2], order));
    }
    report("6 (displacement identity)", true, &details.join(", "));
}

#[test]
fn criterion_07_coherent_action_identity() {
    let profile = constant_profile();
    let mut worst_idn = (0.0f64, "");
    let mut worst_mod = 0.0f64;
    for e in catalog::entries::<f64>() {
        let fx = e.fixture;
        let (sys, _) = e
            .instantiate(&fx.coherent, &profile, fx.window_coherent)
            .unwrap();
        let params = CoherentParams::new(fx.coherent.kappa, 0.3).unwrap();
        assert_eq!(params.kappa(), 2.0, "{}: coherent fixtures pin kappa = 2", e.name);
        let g = entry_grid(&e, fx.window_coherent, CROSSCHECK_N);
        let rep = annihilation_action_check(&params, &sys, &g).unwrap();
        assert!(
            rep.identity_residual <= 5e-5,
            "{}: identity residual {:e}",
            e.name,
            rep.identity_residual
        );
        if rep.identity_residual > worst_idn.0 {
            worst_idn = (rep.identity_residual, e.name);
        }
        // modulus invariance of the normalized states
        let psi = hcs_evaluate(&params, &sys, &g).unwrap();
        let mut gs = sys.ground_state_raw(&g).unwrap();
        gs.normalize().unwrap();
        let gap = psi
            .values()
            .iter()
            .zip(gs.values())
            .map(|(a, b)| (a.norm() - b.norm()).abs())
            .fold(0.0f64, f64::max);
        assert!(gap <= 1e-12, "{}: modulus gap {gap:e}", e.name);
        worst_mod = worst_mod.max(gap);
    }
    report(
        "7 (coherent action identity, 11 entries)",
        true,
        &format!(
            "worst identity residual {:.3e} at {}; worst modulus gap {:.3e}",
            worst_idn.0, worst_idn.1, worst_mod
        ),
    );
}

#[test]
fn criterion_08_uncertainty_and_ground_moment() {
    // constant-F case at kappa = 1, xi = 0.2i; stencil bias in Var(Pi)
    // scales as h^2, so the equality gate runs on a finer grid
    let e = catalog::entry_by_name::<f64>("shifted-ho").unwrap();
    let forms = e.forms(&e.fixture.eigen).unwrap();
    let sys = FactorizedSystem::new(constant_profile(), 1.0, forms.sp.clone()).unwrap();
    let params = CoherentParams::new(1.0, 0.2).unwrap();
    let g = Grid::new(-8.0, 8.0, 65537).unwrap();
    let (lhs, rhs) = uncertainty_product(&params, &sys, &g).unwrap();
    let rel = (lhs - rhs).abs() / rhs;
    assert!(rel <= 1e-6, "uncertainty mismatch {rel:e} (lhs {lhs}, rhs {rhs})");

    // ground-moment identity <Wt> = 0 for every entry
    let profile = constant_profile();
    let mut worst = (0.0f64, "");
    for e in catalog::entries::<f64>() {
        let fx = e.fixture;
        let (sys, _) = e
            .instantiate(&fx.eigen, &profile, fx.window_annihilation)
            .unwrap();
        let g = entry_grid(&e, fx.window_annihilation, CROSSCHECK_N);
        let gs = sys.ground_state(&g).unwrap();
        let wt = sys.w_mod();
        let integrand = SampledFunction::new(
            g,
            g.points()
                .zip(gs.psi0.values())
                .map(|(x, &v)| v * v * wt.eval(x))
                .collect(),
        )
        .unwrap();
        let moment = integrate(&integrand).norm();
        assert!(moment <= 1e-6, "{}: <Wt> = {moment:e}", e.name);
        if moment > worst.0 {
            worst = (moment, e.name);
        }
    }
    report(
        "8 (uncertainty equality + ground moment)",
        true,
        &format!(
            "|VarVar - F^2/4|/(F^2/4) = {rel:.3e}; worst <Wt> {:.3e} at {}",
            worst.0, worst.1
        ),
    );
}

#[test]
fn criterion_09_metric_algebra() {
    let profile = constant_profile();
    let e = catalog::entry_by_name::<f64>("shifted-ho").unwrap();
    let forms = e.forms(&e.fixture.coherent).unwrap();
    let sp = forms.sp.clone();
    let g = Grid::new(-6.0, 6.0, CROSSCHECK_N).unwrap();

    // rho_{-k} rho_k = 1 pointwise
    let r2 = rho_kappa(2.0, &sp, &profile).unwrap().rho;
    let rm2 = rho_kappa(-2.0, &sp, &profile).unwrap().rho;
    let mut worst_rho = 0.0f64;
    for x in g.points() {
        worst_rho = worst_rho.max((r2.eval(x) * rm2.eval(x) - 1.0).abs());
    }
    assert!(worst_rho <= 1e-12, "rho product defect {worst_rho:e}");

    // rho_{a,b} rho_{b,a} = 1 pointwise
    let s_ab = SwansonSystem::new(0.3, 0.1, profile.clone(), sp.clone());
    let s_swap = SwansonSystem::new(0.1, 0.3, profile.clone(), sp.clone());
    let (ra, rb) = (s_ab.similarity_map().rho, s_swap.similarity_map().rho);
    let mut worst_ab = 0.0f64;
    for x in g.points() {
        worst_ab = worst_ab.max((ra.eval(x) * rb.eval(x) - 1.0).abs());
    }
    assert!(worst_ab <= 1e-12, "alpha-beta product defect {worst_ab:e}");

    // (kappa+1) gamma + f = kappa + 1 exactly at the fixture kappa
    let (gamma, f) = gamma_f(2.0f64).unwrap();
    assert_eq!(3.0 * gamma + f, 3.0);

    // composition |Xi> = rho_k^{-1} |xi> pointwise, pre-normalization
    let sys = FactorizedSystem::new(profile.clone(), 2.0, sp.clone()).unwrap();
    let params = CoherentParams::new(2.0, 0.3).unwrap();
    let hcs = hcs_raw(&params, &sys, &g).unwrap();
    let phcs = phcs_raw(&params, &sys, &g).unwrap();
    let composed = SampledFunction::from_real_fn(g, |x| 1.0 / r2.eval(x))
        .zip_with(&hcs, |r, v| r * v);
    let comp_gap = composed.linf_diff(&phcs);
    assert!(comp_gap <= 1e-12, "composition gap {comp_gap:e}");

    report(
        "9 (metric algebra)",
        true,
        &format!(
            "rho defects {:.3e}/{:.3e}, identity exact, composition gap {:.3e}",
            worst_rho, worst_ab, comp_gap
        ),
    );
}

#[test]
fn criterion_10_oracle_based_acceptance_only() {
    // The source material reports no numerical experiments or tables; all
    // expected values in this suite come from internal oracles (analytic
    // spectra, closed-form antiderivatives, operator identities), with the
    // closed-form ground-energy maps covered by criterion 3.
    report(
        "10 (oracle-based acceptance)",
        true,
        "no external reference values; all expectations computed in-suite",
    );
}
