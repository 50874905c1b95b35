//! Implementations of the CLI subcommands.

use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use pdmcs_core::catalog::{self, CatalogEntry, EntryParams};
use pdmcs_core::classes::{solve_phi, w_from_phi, ClassSpec};
use pdmcs_core::coherent::{gamma_f, hcs_evaluate, phcs_evaluate, uncertainty_product, CoherentParams};
use pdmcs_core::error::{Error, Result};
use pdmcs_core::factorization::{test_suite, Superpotential};
use pdmcs_core::grid::Grid;
use pdmcs_core::mass::MassProfile;
use pdmcs_core::report::VerificationReport;
use pdmcs_core::swanson::SwansonSystem;
use pdmcs_core::tridiag::{build_divergence_hamiltonian, lowest_modes};

use crate::{
    CoherentArgs, DeriveArgs, EntryParamArgs, GridArgs, MassArgs, SpectrumArgs, SwansonArgs,
    VerifyArgs, EXIT_OK, EXIT_VERIFICATION,
};

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// 17-significant-digit decimal rendering used by all CSV output.
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn resolve_profile(mass: &MassArgs) -> Result<MassProfile<f64>> {
    if let Some(expr) = &mass.mass_expr {
        return MassProfile::from_expression(
            "custom",
            expr,
            (f64::NEG_INFINITY, f64::INFINITY),
            0.0,
        );
    }
    MassProfile::by_id(&mass.mass)
}

/// Fixture-backed parameter resolution: flags override the canonical set.
fn resolve_params(
    entry: &CatalogEntry<f64>,
    args: &EntryParamArgs,
    coherent: bool,
) -> EntryParams<f64> {
    let base = if coherent {
        entry.fixture.coherent
    } else {
        entry.fixture.eigen
    };
    EntryParams {
        kappa: args.kappa.unwrap_or(base.kappa),
        k0: args.k0.unwrap_or(base.k0),
        k1: args.k1.unwrap_or(base.k1),
        a: args.a.unwrap_or(base.a),
        b: args.b.unwrap_or(base.b),
        c: args.c.unwrap_or(base.c),
        d: args.d.unwrap_or(base.d),
    }
}

fn resolve_grid(
    entry: &CatalogEntry<f64>,
    profile: &MassProfile<f64>,
    grid: &GridArgs,
    mu_window: (f64, f64),
) -> Result<(Grid<f64>, (f64, f64))> {
    if grid.n < 64 {
        return Err(Error::parameter(format!("need n >= 64, got {}", grid.n)));
    }
    let (def_lo, def_hi) = entry.x_window(profile, mu_window)?;
    let x_lo = grid.xmin.unwrap_or(def_lo);
    let x_hi = grid.xmax.unwrap_or(def_hi);
    let g = Grid::new(x_lo, x_hi, grid.n)?;
    let mu_lo = profile.mu_of_x(x_lo)?;
    let mu_hi = profile.mu_of_x(x_hi)?;
    Ok((g, (mu_lo, mu_hi)))
}

fn write_text(path: Option<&std::path::PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::parameter(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            std::io::stdout()
                .flush()
                .map_err(|e| Error::parameter(format!("stdout: {e}")))
        }
    }
}

// ---------------------------------------------------------------------------

pub fn catalog_list(format: &str) -> Result<i32> {
    #[derive(Serialize)]
    struct ParamSet {
        kappa: f64,
        k0: f64,
        k1: f64,
        a: f64,
        b: f64,
        c: f64,
        d: f64,
    }
    impl From<EntryParams<f64>> for ParamSet {
        fn from(p: EntryParams<f64>) -> Self {
            ParamSet {
                kappa: p.kappa,
                k0: p.k0,
                k1: p.k1,
                a: p.a,
                b: p.b,
                c: p.c,
                d: p.d,
            }
        }
    }
    #[derive(Serialize)]
    struct Row {
        name: &'static str,
        class: u8,
        constraint: &'static str,
        mu_domain: &'static str,
        canonical_eigen: ParamSet,
        canonical_coherent: ParamSet,
        eigen_window: (f64, f64),
        coherent_window: (f64, f64),
    }
    let rows: Vec<Row> = catalog::entries::<f64>()
        .into_iter()
        .map(|e| Row {
            name: e.name,
            class: e.class_id,
            constraint: e.constraint,
            mu_domain: match e.mu_domain {
                catalog::MuDomain::FullLine => "full-line",
                catalog::MuDomain::HalfLine => "half-line",
                catalog::MuDomain::Interval => "interval",
            },
            canonical_eigen: e.fixture.eigen.into(),
            canonical_coherent: e.fixture.coherent.into(),
            eigen_window: e.fixture.window_eigen,
            coherent_window: e.fixture.window_coherent,
        })
        .collect();
    if format == "json" {
        println!("{}", serde_json::to_string_pretty(&rows).unwrap());
    } else {
        println!(
            "{:<18} {:<6} {:<10} {:<44} {:>6} {:>6}",
            "name", "class", "domain", "constraint", "k_eig", "k_coh"
        );
        for r in rows {
            println!(
                "{:<18} {:<6} {:<10} {:<44} {:>6} {:>6}",
                r.name,
                r.class,
                r.mu_domain,
                r.constraint,
                r.canonical_eigen.kappa,
                r.canonical_coherent.kappa
            );
        }
    }
    Ok(EXIT_OK)
}

pub fn derive(args: &DeriveArgs) -> Result<i32> {
    let entry = catalog::entry_by_name::<f64>(&args.entry.entry)?;
    let profile = resolve_profile(&args.mass)?;
    let params = resolve_params(&entry, &args.entry, false);
    // default to the window that hosts the normalizable ground state (the
    // eigen window may hug a wall where only the matrix path is defined)
    let (grid, mu_window) =
        resolve_grid(&entry, &profile, &args.grid, entry.fixture.window_annihilation)?;
    let (sys, forms) = entry.instantiate(&params, &profile, mu_window)?;
    let ground = sys.ground_state(&grid)?;
    let vt = sys.effective_potential();
    let f_fn = sys.structure_function();
    let points: Vec<f64> = grid.points().collect();
    let mus = profile.mu_on_points(&points)?;

    let mut out = String::new();
    out.push_str(&format!(
        "# pdmcs {TOOL_VERSION} derive entry={} mass={} kappa={} n={}\n",
        entry.name,
        profile.id(),
        params.kappa,
        grid.n()
    ));
    out.push_str(&format!(
        "# potential convention: factorized form; catalog potential offset C with V = V_catalog + C, C = {}\n",
        fmt17(sys.delta() - forms.eps0)
    ));
    out.push_str(&format!("# ground energy (catalog): {}\n", fmt17(forms.eps0)));
    out.push_str("x,mu,m,V,psi0,re_psi_xi,im_psi_xi,F\n");
    for (i, (&x, &mu)) in points.iter().zip(&mus).enumerate() {
        let psi = ground.psi0.values()[i].re;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            fmt17(x),
            fmt17(mu),
            fmt17(profile.m_of_x(x)?),
            fmt17(vt.eval(x)),
            fmt17(psi),
            fmt17(psi), // xi = 0: the displaced state is the ground state
            fmt17(0.0),
            fmt17(f_fn.eval(x)),
        ));
    }
    write_text(args.output.as_ref(), &out)?;
    Ok(EXIT_OK)
}

pub fn coherent(args: &CoherentArgs) -> Result<i32> {
    let entry = catalog::entry_by_name::<f64>(&args.entry.entry)?;
    let profile = resolve_profile(&args.mass)?;
    let params = resolve_params(&entry, &args.entry, true);
    // the coherent pipeline requires the metric pair; reject kappa in
    // {0, +1, -1} up front with the documented constraint
    gamma_f(params.kappa)?;
    let cparams = CoherentParams::new(params.kappa, args.xi_im)?;
    let (grid, mu_window) =
        resolve_grid(&entry, &profile, &args.grid, entry.fixture.window_coherent)?;
    let (sys, _) = entry.instantiate(&params, &profile, mu_window)?;

    let psi = if args.state == "phcs" {
        phcs_evaluate(&cparams, &sys, &grid)?
    } else {
        hcs_evaluate(&cparams, &sys, &grid)?
    };
    let points: Vec<f64> = grid.points().collect();
    let mus = profile.mu_on_points(&points)?;

    let mut out = String::new();
    out.push_str(&format!(
        "# pdmcs {TOOL_VERSION} coherent entry={} state={} mass={} kappa={} xi_im={} n={}\n",
        entry.name,
        args.state,
        profile.id(),
        params.kappa,
        args.xi_im,
        grid.n()
    ));
    out.push_str("x,mu,re_psi,im_psi,abs_psi\n");
    for (i, (&x, &mu)) in points.iter().zip(&mus).enumerate() {
        let v = psi.values()[i];
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt17(x),
            fmt17(mu),
            fmt17(v.re),
            fmt17(v.im),
            fmt17(v.norm()),
        ));
    }
    write_text(args.output.as_ref(), &out)?;

    let (lhs, rhs) = uncertainty_product(&cparams, &sys, &grid)?;
    #[derive(Serialize)]
    struct Uncertainty {
        lhs: f64,
        rhs: f64,
        ratio: f64,
    }
    let rep = Uncertainty {
        lhs,
        rhs,
        ratio: lhs / rhs,
    };
    println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    Ok(EXIT_OK)
}

pub fn spectrum(args: &SpectrumArgs) -> Result<i32> {
    if args.k == 0 || args.k > 10 {
        return Err(Error::parameter("need 1 <= k <= 10"));
    }
    let entry = catalog::entry_by_name::<f64>(&args.entry.entry)?;
    let profile = resolve_profile(&args.mass)?;
    let params = resolve_params(&entry, &args.entry, false);
    let (grid, mu_window) = resolve_grid(&entry, &profile, &args.grid, entry.fixture.window_eigen)?;
    let (sys, forms) = entry.instantiate(&params, &profile, mu_window)?;
    let points: Vec<f64> = grid.points().collect();
    let mus = profile.mu_on_points(&points)?;
    let vu = sys.mass_potential();
    let u4: Vec<f64> = points
        .iter()
        .map(|&x| profile.u_of_x(x).map(|u| u.powi(4)))
        .collect::<Result<_>>()?;
    let v: Vec<f64> = points
        .iter()
        .zip(&mus)
        .map(|(&x, &mu)| forms.v_closed.eval(mu) + vu.eval(x))
        .collect();
    let m = build_divergence_hamiltonian(&grid, &u4, &v)?;
    let modes = lowest_modes(&grid, &m, args.k)?;

    #[derive(Serialize)]
    struct Spectrum {
        entry: String,
        eps0_closed_form: f64,
        eigenvalues: Vec<f64>,
        /// |psi| at the first and last interior nodes per mode, so domain
        /// truncation error is visible.
        boundary_abs: Vec<(f64, f64)>,
        n: usize,
        x_window: (f64, f64),
    }
    let rep = Spectrum {
        entry: entry.name.to_string(),
        eps0_closed_form: forms.eps0,
        eigenvalues: modes.iter().map(|(e, _)| *e).collect(),
        boundary_abs: modes
            .iter()
            .map(|(_, v)| {
                let vals = v.values();
                (vals[1].norm(), vals[vals.len() - 2].norm())
            })
            .collect(),
        n: grid.n(),
        x_window: (grid.x_lo(), grid.x_hi()),
    };
    if args.format == "json" {
        println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    } else {
        println!("entry {}  eps0 {}", rep.entry, rep.eps0_closed_form);
        for (i, e) in rep.eigenvalues.iter().enumerate() {
            println!(
                "E_{i} = {:+.12e}   |psi| at window edges: {:.3e} / {:.3e}",
                e, rep.boundary_abs[i].0, rep.boundary_abs[i].1
            );
        }
    }
    Ok(EXIT_OK)
}

/// Superpotential family description accepted by `--w-class`.
#[derive(Debug, Clone, Deserialize)]
struct WClassConfig {
    class: u8,
    #[serde(default)]
    a: f64,
    #[serde(default)]
    b: f64,
    #[serde(default)]
    c: f64,
    #[serde(default)]
    d: f64,
    #[serde(default = "one")]
    k0: f64,
    #[serde(default)]
    k1: f64,
    /// Initial condition phi(mu0) = phi0 for the family ODE; defaults to
    /// the window midpoint and a class-appropriate value.
    #[serde(default)]
    mu0: Option<f64>,
    #[serde(default)]
    phi0: Option<f64>,
}

fn one() -> f64 {
    1.0
}

pub fn swanson(args: &SwansonArgs) -> Result<i32> {
    if args.n < 64 {
        return Err(Error::parameter(format!("need n >= 64, got {}", args.n)));
    }
    let profile = resolve_profile(&args.mass)?;
    let grid = Grid::new(args.xmin, args.xmax, args.n)?;
    let mu_lo = profile.mu_of_x(args.xmin)?;
    let mu_hi = profile.mu_of_x(args.xmax)?;

    let sp: Superpotential<f64> = match &args.w_class {
        None => Superpotential {
            w: pdmcs_core::scalar::RealFn::new(|mu| mu),
            w_prime: pdmcs_core::scalar::RealFn::constant(1.0),
            w_antideriv: pdmcs_core::scalar::RealFn::new(|mu: f64| 0.5 * mu * mu),
        },
        Some(json) => {
            let cfg: WClassConfig = serde_json::from_str(json)
                .map_err(|e| Error::parameter(format!("bad --w-class JSON: {e}")))?;
            let spec = ClassSpec::new(cfg.class, cfg.a, cfg.b, cfg.c, cfg.d, cfg.k0, cfg.k1)?;
            let mu0 = cfg.mu0.unwrap_or(0.5 * (mu_lo + mu_hi));
            let phi0 = cfg
                .phi0
                .unwrap_or(if cfg.class == 2 { 1.0 } else { 0.0 });
            let phi = solve_phi(&spec, mu0, phi0, (mu_lo, mu_hi))?;
            let parts = w_from_phi(&spec, &phi, (mu_lo, mu_hi))?;
            Superpotential::with_numeric_antideriv(parts.w, parts.w_prime, mu0)
        }
    };

    let sys = SwansonSystem::new(args.alpha, args.beta, profile, sp);
    let suite = test_suite(&grid);
    let symmetry_defect = sys.hermitize_check(&suite)?;
    let pseudo_defect = sys.pseudo_hermiticity_check(&suite)?;
    let zeta = sys.metric().zeta;
    let zeta_min = grid
        .points()
        .map(|x| zeta.eval(x))
        .fold(f64::INFINITY, f64::min);
    let eigenvalues = if sys.positive_regime() {
        Some(sys.hermitized_eigenvalues(&grid, 4)?)
    } else {
        eprintln!(
            "pdmcs: warning: omega^2 - 4 alpha beta = {} <= 0; inverted potential, eigenvalue checks skipped",
            sys.spectral_discriminant()
        );
        None
    };

    #[derive(Serialize)]
    struct SwansonReport {
        alpha: f64,
        beta: f64,
        omega: f64,
        positive_regime: bool,
        symmetry_defect: f64,
        pseudo_defect: f64,
        zeta_min: f64,
        eigenvalues: Option<Vec<f64>>,
    }
    let rep = SwansonReport {
        alpha: args.alpha,
        beta: args.beta,
        omega: sys.omega(),
        positive_regime: sys.positive_regime(),
        symmetry_defect,
        pseudo_defect,
        zeta_min,
        eigenvalues,
    };
    println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    Ok(EXIT_OK)
}

fn worker_count(jobs: usize) -> usize {
    let hw = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let cap = std::env::var("PDMCS_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(hw);
    cap.min(jobs).max(1)
}

pub fn verify(args: &VerifyArgs) -> Result<i32> {
    let profile = resolve_profile(&args.mass)?;
    let all = catalog::entries::<f64>();
    let selected: Vec<CatalogEntry<f64>> = if args.entry == "all" {
        all
    } else {
        vec![catalog::entry_by_name::<f64>(&args.entry)?]
    };

    // run entry checks concurrently; results land in per-entry slots so the
    // merged report is deterministic regardless of scheduling
    let slots: Vec<Mutex<Option<Result<pdmcs_core::report::EntryReport>>>> =
        selected.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = worker_count(selected.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= selected.len() {
                    break;
                }
                let result = catalog::crosscheck(&selected[i], &profile);
                *slots[i].lock().unwrap() = Some(result);
            });
        }
    });

    let config = format!(
        "verify entry={} mass={} n={}",
        args.entry,
        profile.id(),
        catalog::CROSSCHECK_N
    );
    let mut report = VerificationReport::new(TOOL_VERSION, config);
    for slot in slots {
        {
            let entry_report = slot.into_inner().unwrap().expect("worker filled slot")?;
            report.push(entry_report)
        }
    }

    let text = if args.format == "json" {
        format!("{}\n", serde_json::to_string_pretty(&report).unwrap())
    } else {
        let mut t = String::new();
        t.push_str(&format!(
            "{:<18} {:<24} {:>12} {:>10} {:>6}\n",
            "entry", "check", "measured", "tolerance", "pass"
        ));
        for e in &report.entries {
            for c in &e.checks {
                t.push_str(&format!(
                    "{:<18} {:<24} {:>12.3e} {:>10.1e} {:>6}\n",
                    c.entry,
                    c.check,
                    c.measured,
                    c.tolerance,
                    if c.pass { "yes" } else { "NO" }
                ));
            }
        }
        t.push_str(&format!(
            "summary: {}/{} checks passed\n",
            report.summary.passed, report.summary.total
        ));
        t
    };
    write_text(args.output.as_ref(), &text)?;
    Ok(if report.all_pass() {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    })
}
