use std::process::{Command, Output};

use discrete_ensemble::kernel::density_exact;
use discrete_ensemble::Alphas;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_discrete-ensemble"))
        .args(args)
        .env_remove("DISCRETE_ENSEMBLE_THREADS")
        .output()
        .expect("binary runs")
}

#[test]
fn density_csv_matches_library() {
    let out = run(&["density", "--alpha", "0.25", "--n", "8", "--pmax", "64", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,rho,n_rho"));
    let alphas = Alphas::equal(0.25, 8).unwrap();
    let mut rows = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        let p: usize = f[0].parse().unwrap();
        let rho: f64 = f[1].parse().unwrap();
        let n_rho: f64 = f[2].parse().unwrap();
        let want = density_exact(p, &alphas);
        assert!((rho - want).abs() <= 1e-12 * want.abs().max(1e-300), "p={p}");
        assert!((n_rho - 8.0 * rho).abs() <= 1e-15);
        rows += 1;
    }
    assert_eq!(rows, 65);
    let sidecar: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(sidecar["command"], "density");
    assert_eq!(sidecar["parameters"]["alphas"]["n"], 8);
}

#[test]
fn output_file_gets_sidecar_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "sample", "--alpha", "0.3", "--n", "3", "--steps", "20000", "--seed", "5", "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let side: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.csv.config.json")).unwrap()).unwrap();
    assert_eq!(side["parameters"]["seed"], 5);
    assert_eq!(side["parameters"]["steps"], 20000);
}

#[test]
fn limit_shape_reports_sup_norm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shape.csv");
    let out = run(&["limit-shape", "--alpha", "0.25", "--n", "64", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("p,sigma,finite_n,asymptotic\n"));
    let side: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("shape.csv.config.json")).unwrap()).unwrap();
    let sup = side["summary"]["sup_norm_bulk"].as_f64().unwrap();
    assert!(sup > 0.0 && sup < 0.02);
}

#[test]
fn json_rows_are_objects() {
    let out = run(&["kernel", "--alphas", "0.5,0.25", "--window", "0:1,0:2", "--format", "json"]);
    assert!(out.status.success());
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0]["p"], 0);
    assert!(rows[0]["kernel"].is_f64());
}

#[test]
fn alpha_file_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"{"alpha": 0.4, "n": 3}"#).unwrap();
    let out = run(&["density", "--alpha-file", good.to_str().unwrap(), "--pmax", "4"]);
    assert!(out.status.success());
    let list = dir.path().join("list.json");
    std::fs::write(&list, r#"{"alphas": [0.4, 0.4, 0.4]}"#).unwrap();
    let other = run(&["density", "--alpha-file", list.to_str().unwrap(), "--pmax", "4"]);
    assert_eq!(out.stdout, other.stdout);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"alpha": 0.4, "alphas": [0.4]}"#).unwrap();
    assert_eq!(run(&["density", "--alpha-file", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(run(&["density", "--alpha", "0.25"]).status.code(), Some(2));
    assert_eq!(run(&["density", "--alpha", "0.25", "--n", "2", "--alphas", "0.1,0.2"]).status.code(), Some(2));
    assert_eq!(run(&["density", "--alpha", "1.2", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["pair", "--alpha", "0.3", "--n", "2", "--window", "3:1,0:1"]).status.code(), Some(2));
    assert_eq!(run(&["density", "--alpha", "0.3", "--n", "2", "--format", "xml"]).status.code(), Some(2));
}

#[test]
fn numeric_errors_exit_one_with_json_diagnostic() {
    let out = run(&["small-weights", "--rho", "500", "--n", "200"]);
    assert_eq!(out.status.code(), Some(1));
    let diag: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(diag["error"], "numeric");
}

#[test]
fn validate_reports_every_criterion() {
    let out = run(&["validate", "--level", "quick", "--format", "json"]);
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 11);
    let failed: Vec<&str> =
        rows.iter().filter(|r| r["passed"] == false).map(|r| r["id"].as_str().unwrap()).collect();
    // The small-weight expansion criterion is known not to hold; any failure means exit 1.
    assert_eq!(failed, ["9b"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn thread_count_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_discrete-ensemble"))
        .args(["pair", "--alpha", "0.5", "--n", "2", "--window", "0:1,0:1"])
        .env("DISCRETE_ENSEMBLE_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let side: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(side["threads"], 2);
}
