//! End-to-end checks of the binary: exit codes, output schemas, and
//! byte-for-byte determinism of reports.

use std::process::{Command, Output};

fn pdmcs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdmcs"))
        .args(args)
        .env("PDMCS_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn catalog_list_names_all_entries() {
    let out = pdmcs(&["catalog", "list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in [
        "shifted-ho",
        "morse",
        "coulomb",
        "poschl-teller",
        "eckart",
        "rosen-morse",
        "manning-rosen",
        "hulthen",
        "radial-ho",
        "gen-poschl-teller",
        "scarf",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
    let json = pdmcs(&["catalog", "list", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 11);
}

#[test]
fn derive_emits_fixed_csv_schema() {
    let out = pdmcs(&[
        "derive", "--entry", "morse", "--kappa", "1", "--k0", "1", "--c", "1", "--mass",
        "constant", "--xmin", "-3", "--xmax", "12", "--n", "257",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let header = text
        .lines()
        .find(|l| !l.starts_with('#'))
        .expect("column header");
    assert_eq!(header, "x,mu,m,V,psi0,re_psi_xi,im_psi_xi,F");
    // offset between the factorized-convention potential and the catalog
    // form is recorded in the header: delta - eps0 = 1 - (-2) = 3
    assert!(text.contains("offset C with V = V_catalog + C, C = 3.0000000000000000e0"));
    // 17-significant-digit rendering
    let first_row = text
        .lines()
        .find(|l| !l.starts_with('#') && !l.starts_with('x'))
        .unwrap();
    assert!(first_row.starts_with("-3.0000000000000000e0,"));
    // V column follows the factorized convention 2 e^{-2x} - 5 e^{-x} + 3
    // (so V -> 0 near x = 0); check the row closest to the origin
    let rows: Vec<(f64, f64)> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('x'))
        .map(|l| {
            let mut it = l.split(',');
            let x: f64 = it.next().unwrap().parse().unwrap();
            let v: f64 = it.nth(2).unwrap().parse().unwrap();
            (x, v)
        })
        .collect();
    let (x0, v0) = rows
        .iter()
        .copied()
        .min_by(|a, b| a.0.abs().partial_cmp(&b.0.abs()).unwrap())
        .unwrap();
    let expect = 2.0 * (-2.0 * x0).exp() - 5.0 * (-x0).exp() + 3.0;
    assert!((v0 - expect).abs() < 1e-12, "V({x0}) = {v0} vs {expect}");
}

#[test]
fn derive_rejects_unknown_entry_with_config_exit() {
    let out = pdmcs(&["derive", "--entry", "yukawa"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown catalog entry"));
}

#[test]
fn derive_rejects_small_grids() {
    let out = pdmcs(&["derive", "--entry", "morse", "--n", "32"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn coherent_guards_excluded_kappa() {
    let out = pdmcs(&["coherent", "--entry", "shifted-ho", "--kappa", "1", "--xi-im", "0.3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("κ≠0,±1"), "{}", stderr(&out));
}

#[test]
fn coherent_emits_samples_and_uncertainty() {
    let dir = std::env::temp_dir().join("pdmcs-cli-test-coherent");
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("hcs.csv");
    let out = pdmcs(&[
        "coherent", "--entry", "shifted-ho", "--kappa", "2", "--xi-im", "0.3", "--n", "257",
        "--output", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in ["lhs", "rhs", "ratio"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
    let text = std::fs::read_to_string(&csv).unwrap();
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "x,mu,re_psi,im_psi,abs_psi");
}

#[test]
fn spectrum_reports_boundary_values() {
    let out = pdmcs(&["spectrum", "--entry", "shifted-ho", "--k", "2", "--n", "1025"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rep: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let eigs = rep["eigenvalues"].as_array().unwrap();
    assert_eq!(eigs.len(), 2);
    assert!((eigs[0].as_f64().unwrap() - 1.0).abs() < 1e-3);
    assert!((eigs[1].as_f64().unwrap() - 3.0).abs() < 1e-2);
    assert_eq!(rep["boundary_abs"].as_array().unwrap().len(), 2);
}

#[test]
fn swanson_reports_defects_and_spectrum() {
    let out = pdmcs(&[
        "swanson", "--alpha", "0.3", "--beta", "0.1", "--mass", "constant", "--n", "1025",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rep: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((rep["omega"].as_f64().unwrap() - 1.4).abs() < 1e-12);
    assert!(rep["symmetry_defect"].as_f64().unwrap() < 1e-3);
    assert!(rep["zeta_min"].as_f64().unwrap() > 0.0);
    let e0 = rep["eigenvalues"][0].as_f64().unwrap();
    assert!((e0 - 1.84f64.sqrt() / 2.0).abs() < 1e-2, "E0 = {e0}");
}

#[test]
fn swanson_accepts_w_class_json() {
    let out = pdmcs(&[
        "swanson", "--alpha", "0.2", "--beta", "0.0", "--w-class",
        r#"{"class":1,"a":0,"b":0,"c":1,"k0":1,"k1":0}"#, "--n", "513",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rep: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(rep["symmetry_defect"].as_f64().unwrap() < 1e-3);
}

#[test]
fn swanson_warns_in_inverted_regime() {
    let out = pdmcs(&[
        "swanson", "--alpha", "-1", "--beta", "-1", "--mass", "constant", "--n", "257",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stderr(&out).contains("inverted potential"));
    let rep: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(rep["eigenvalues"].is_null());
}

#[test]
fn verify_single_entry_passes_and_is_deterministic() {
    let a = pdmcs(&["verify", "--entry", "shifted-ho", "--mass", "constant"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    let b = pdmcs(&["verify", "--entry", "shifted-ho", "--mass", "constant"]);
    assert_eq!(stdout(&a), stdout(&b), "report bytes differ between runs");
    let rep: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(rep["schema"], 1);
    assert_eq!(rep["summary"]["failed"], 0);
}

#[test]
fn verify_all_entries_exit_zero() {
    let out = pdmcs(&["verify", "--entry", "all", "--mass", "constant"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rep: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rep["summary"]["total"], 55);
    assert_eq!(rep["summary"]["passed"], 55);
    // deterministic entry order matches the registry
    let names: Vec<&str> = rep["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["entry"].as_str().unwrap())
        .collect();
    assert_eq!(names[0], "shifted-ho");
    assert_eq!(names[10], "scarf");
}

#[test]
fn verify_admissibility_failure_maps_to_exit_three() {
    // the arctan profile's deformed coordinate fills only (-pi/2, pi/2):
    // too narrow for the canonical windows
    let out = pdmcs(&[
        "verify", "--entry", "shifted-ho", "--mass", "cauchy-squared-inverse",
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn verify_on_variable_mass_profile() {
    // catalog checks re-run on a genuinely position-dependent mass
    let out = pdmcs(&["verify", "--entry", "morse", "--mass", "quartic-growth"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rep: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rep["summary"]["failed"], 0);
}

#[test]
fn custom_mass_expression_profile() {
    let out = pdmcs(&[
        "derive", "--entry", "shifted-ho", "--mass-expr", "1/(1+0.04*x^2)", "--xmin", "-6",
        "--xmax", "6", "--n", "257",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("mass=custom"));
}

#[test]
fn bad_mass_expression_reports_position() {
    let out = pdmcs(&["derive", "--entry", "morse", "--mass-expr", "1 + $"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("byte 4"), "{}", stderr(&out));
}
