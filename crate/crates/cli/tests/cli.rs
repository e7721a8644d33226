use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2torus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_g2torus"));
    c.args(args);
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--json", "-"]);
    let out = run(&a);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn phi_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("g2torus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn check<'a>(report: &'a Value, name_part: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"].as_str().unwrap().contains(name_part))
        .unwrap_or_else(|| panic!("no check matching {name_part:?}"))
}

#[test]
fn standard_point_report() {
    let (code, r) = json(&["report-point", "standard"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema_version"], "1.0");
    let d = &r["data"];
    assert!((d["f"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    assert!((d["fhat"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    assert_eq!(d["signature"], serde_json::json!([8, 27]));
    assert!((d["lattice_covolume"].as_f64().unwrap() - 4.0 / 3.0).abs() < 1e-12);
    assert_eq!(d["hessian_eigenvalues"].as_array().unwrap().len(), 35);
    assert_eq!(d["yukawa_slice"].as_array().unwrap().len(), 28);
}

#[test]
fn scaled_point_from_file() {
    let p = phi_file(
        "two.json",
        r#"{"coeffs": {"123": 2, "145": 2, "167": 2, "246": 2, "257": -2, "347": -2, "356": "-2"}}"#,
    );
    let (code, r) = json(&["report-point", "file", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    let f = r["data"]["f"].as_f64().unwrap();
    assert!((f - 3.0 * 2f64.powf(7.0 / 3.0)).abs() < 1e-10, "{f}");
    // Reordered labels carry their permutation sign.
    let q = phi_file(
        "permuted.json",
        r#"{"coeffs": {"213": -1, "145": 1, "167": 1, "246": 1, "257": -1, "347": -1, "356": -1}}"#,
    );
    let (code, r) = json(&["report-point", "file", q.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!((r["data"]["f"].as_f64().unwrap() - 3.0).abs() < 1e-12);
}

#[test]
fn exact_mode_reports_irrational_roots() {
    let p = phi_file(
        "two-exact.json",
        r#"{"coeffs": {"123": 2, "145": 2, "167": 2, "246": 2, "257": -2, "347": -2, "356": -2}}"#,
    );
    let (code, r) = json(&["report-point", "file", p.to_str().unwrap(), "--exact"]);
    assert_eq!(code, 0);
    assert!(check(&r, "exact arithmetic")["value"]
        .as_str()
        .unwrap()
        .contains("irrational"));
    let (_, r) = json(&["report-point", "standard", "--exact"]);
    assert_eq!(r["data"]["f_exact"], "3");
}

#[test]
fn degenerate_and_malformed_inputs_exit_2() {
    let p = phi_file("e123.json", r#"{"coeffs": {"123": 1}}"#);
    let out = run(&["report-point", "file", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("not positive") && err.contains("det B"),
        "{err}"
    );

    for body in [
        r#"{"coeffs": {"128": 1}}"#,
        r#"{"coeffs": {"123": "x"}}"#,
        r#"{"coefs": {}}"#,
        "not json",
    ] {
        let p = phi_file("bad.json", body);
        assert_eq!(
            run(&["report-point", "file", p.to_str().unwrap()])
                .status
                .code(),
            Some(2),
            "{body}"
        );
    }
    assert_eq!(run(&["report-point", "file"]).status.code(), Some(2));
    assert_eq!(
        run(&["report-point", "file", "/nonexistent/phi.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "algebra", "--samples", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "algebra", "--tol", "-1"]).status.code(),
        Some(2)
    );
}

#[test]
fn suites_exit_codes() {
    for target in ["algebra", "moduli", "jacobian"] {
        let (code, r) = json(&["verify", target]);
        assert_eq!(code, 0, "{target}: {r}");
        assert_eq!(r["status"], "pass");
    }
    // The χ primitive identity as stated fails on the integral deformed family.
    let (code, r) = json(&["verify", "cycles"]);
    assert_eq!(code, 1);
    let failed: Vec<&Value> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    assert_eq!(failed.len(), 1, "{failed:?}");
    assert_eq!(failed[0]["anchor"], "isotropy-chi");
    assert!(failed[0]["name"].as_str().unwrap().contains("stated form"));
    assert!((failed[0]["value"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert!(check(&r, "integral deformed DT curvature, two holonomy directions: pullback of the primitive, with")["status"] == "pass");
}

#[test]
fn exact_algebra_certifies() {
    let (code, r) = json(&["verify", "algebra", "--exact"]);
    assert_eq!(code, 0);
    assert_eq!(
        check(&r, "contraction identity at phi0 (exact")["status"],
        "pass"
    );
}

#[test]
fn step_below_float_floor_fails() {
    let out = run(&["verify", "algebra", "--fd-step", "1e-9"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("step below float floor"));
}

#[test]
fn cycle_demos() {
    for demo in ["assoc", "coassoc"] {
        assert_eq!(run(&["cycles", demo]).status.code(), Some(0), "{demo}");
    }
    let (code, r) = json(&["cycles", "ddt", "--seed", "3"]);
    assert_eq!(code, 0);
    let traces = r["data"]["newton_residuals"].as_array().unwrap();
    assert!(!traces.is_empty());
    for t in traces {
        assert!(t.as_array().unwrap().last().unwrap().as_f64().unwrap() < 1e-10);
    }
    let (code, r) = json(&["cycles", "aj"]);
    assert_eq!(code, 1);
    assert_eq!(
        r["data"]["derivative_ranks"]["associative e123, shifted"]["rank"],
        4
    );
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn reports_are_deterministic_for_a_seed() {
    let a = strip_timing(json(&["verify", "moduli", "--seed", "11"]).1);
    let b = strip_timing(json(&["verify", "moduli", "--seed", "11"]).1);
    assert_eq!(a, b);
    let c = strip_timing(json(&["verify", "moduli", "--seed", "12"]).1);
    assert_ne!(a, c);
    let a = strip_timing(json(&["report-point", "random", "--seed", "4"]).1);
    let b = strip_timing(json(&["report-point", "random", "--seed", "4"]).1);
    assert_eq!(a, b);
}

#[test]
fn environment_overrides_flags() {
    let out = run_env(
        &["verify", "algebra", "--json", "-"],
        &[("G2TORUS_SEED", "5"), ("G2TORUS_SAMPLES", "2")],
    );
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["config"]["seed"], 5);
    assert_eq!(r["config"]["samples"], 2);
    // An explicit flag wins over the environment.
    let out = run_env(
        &["verify", "algebra", "--seed", "6", "--json", "-"],
        &[("G2TORUS_SEED", "5")],
    );
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["config"]["seed"], 6);
}

#[test]
fn json_file_output() {
    let p = std::env::temp_dir().join(format!("g2torus-cli-{}-report.json", std::process::id()));
    let out = run(&["verify", "algebra", "--json", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("checks, 0 failed"));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(r["suite"], "verify algebra");
}

#[test]
fn anchors_do_not_drift() {
    let out = run(&["anchors"]);
    let listed: Vec<String> = serde_json::from_slice(&out.stdout).unwrap();
    let listed: BTreeSet<String> = listed.into_iter().collect();
    let (_, r) = json(&["verify", "all"]);
    let used: BTreeSet<String> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["anchor"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(listed, used);
    for c in r["checks"].as_array().unwrap() {
        assert!(["pass", "fail", "measured"].contains(&c["status"].as_str().unwrap()));
    }
}
