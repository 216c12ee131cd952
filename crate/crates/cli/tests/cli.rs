use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;

fn qch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qch"))
        .args(args)
        .env_remove("QCH_DEGREE_BOUND")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_re_ch_passes() {
    let out = qch(&["verify", "ch", "--hecke", "standard:2", "--algebra", "RE"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["status"], "pass");
    assert_eq!(report["identity"], "RE");
    assert_eq!(report["convention"], "k=0..p-1");
    assert_eq!(report["residual_nonzero_entries"], Value::Array(vec![]));
    let keys: Vec<&String> = report.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "identity",
            "n",
            "p",
            "status",
            "convention",
            "residual_nonzero_entries",
            "coefficients"
        ]
    );
}

#[test]
fn verify_projectors_passes() {
    let out = qch(&["verify", "projectors", "--hecke", "standard:2", "--mu", "m1,m2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["projectors"]["status"], "pass");
}

#[test]
fn low_degree_bound_is_a_config_error() {
    let out = qch(&[
        "verify", "ch", "--hecke", "standard:2", "--algebra", "RE", "--degree-bound", "1",
    ]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn degree_bound_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_qch"))
        .args(["verify", "ch"])
        .env("QCH_DEGREE_BOUND", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_qch"))
        .args(["verify", "ch", "--degree-bound", "4"])
        .env("QCH_DEGREE_BOUND", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn orbit_bundles_rational_roots() {
    let out = qch(&["orbit", "bundles", "--mu", "1,3", "--nu", "1,2,3"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    let kinds: Vec<Value> = report["bundles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["result"].clone())
        .collect();
    assert_eq!(
        kinds,
        vec![
            serde_json::json!({"kind": "nontrivial", "index": 1}),
            serde_json::json!({"kind": "trivial"}),
            serde_json::json!({"kind": "nontrivial", "index": 2}),
        ]
    );
}

#[test]
fn orbit_bundles_symbolic_root() {
    let out = qch(&["orbit", "bundles", "--mu", "m1,m2", "--nu", "m1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        json(&out)["bundles"][0]["result"],
        serde_json::json!({"kind": "nontrivial", "index": 1})
    );
}

#[test]
fn orbit_without_mu_is_a_config_error() {
    assert_eq!(code(&qch(&["orbit", "bundles", "--nu", "1"])), 2);
}

#[test]
fn repeated_roots_are_a_config_error() {
    assert_eq!(code(&qch(&["orbit", "bundles", "--mu", "2,2", "--nu", "1"])), 2);
}

#[test]
fn orbit_description_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.json");
    std::fs::write(
        &path,
        r#"{"algebra": "RE", "hecke": "standard:2", "mu": ["1", "3"], "degree_bound": 4}"#,
    )
    .unwrap();
    let out = qch(&["orbit", "bundles", "--orbit", path.to_str().unwrap(), "--nu", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["bundles"][0]["result"]["index"], 2);
    std::fs::write(&path, r#"{"algebra": "RE", "hecke": "standard:2", "mu": ["1"], "extra": 1}"#)
        .unwrap();
    let out = qch(&["orbit", "bundles", "--orbit", path.to_str().unwrap(), "--nu", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn coeffs_table_rows_and_verdict() {
    let out = qch(&["coeffs", "table", "--max-p", "4"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["phi_upper_limit"], "p-1");
    for row in report["rows"].as_array().unwrap() {
        let (p, s, k) = (&row["p"], &row["s"], &row["k"]);
        if s == p && k == 0 && p.as_u64().unwrap() >= 2 {
            assert_eq!(row["xi"], "0");
            assert_eq!(row["rho"], "0");
        }
        if s == k {
            assert_eq!(row["omega"], "1");
        }
    }
}

#[test]
fn lplus_reports_one_variant() {
    let out = qch(&["verify", "lplus", "--mu", "m1,m2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["lplus"]["passing"], "derivation");
}

#[test]
fn text_format_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = qch(&[
        "verify", "ch", "--algebra", "Ugl", "--format", "text", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("Ugl identity, n = 2, p = 2: pass"));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "ch", "--hecke", "standard:2", "--algebra", "REqh"];
    let a = qch(&args);
    let b = qch(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let args = ["coeffs", "table", "--max-p", "3"];
    assert_eq!(qch(&args).stdout, qch(&args).stdout);
}

#[test]
fn hecke_file_that_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    // identity matrix: Yang-Baxter holds, the Hecke condition with lambda = 1 does not
    let entries: Vec<String> = (1..=2)
        .flat_map(|a| (1..=2).map(move |b| (a, b)))
        .map(|(a, b)| format!(r#"{{"row": [{a}, {b}], "col": [{a}, {b}], "value": "1"}}"#))
        .collect();
    std::fs::write(
        &path,
        format!(
            r#"{{"n": 2, "indeterminates": [], "lambda": "1", "entries": [{}]}}"#,
            entries.join(",")
        ),
    )
    .unwrap();
    let out = qch(&["verify", "hecke", "--hecke", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["hecke"], false);
    let out = qch(&["verify", "ch", "--hecke", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn missing_hecke_file() {
    assert_eq!(code(&qch(&["verify", "ch", "--hecke", "/nonexistent/r.json"])), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn malformed_roots_exit_with_config_error(junk in "[*/()+,]{1,6}|[A-Z]{3,6}") {
        let out = qch(&["orbit", "bundles", "--mu", &junk, "--nu", "1"]);
        prop_assert_eq!(code(&out), 2, "{}", String::from_utf8_lossy(&out.stderr));
    }

    #[test]
    fn malformed_hecke_source_exits_with_config_error(n in 0usize..2, word in "[a-z]{1,5}") {
        let out = qch(&["verify", "ch", "--hecke", &format!("standard:{n}")]);
        prop_assert_eq!(code(&out), 2);
        let out = qch(&["verify", "ch", "--hecke", &format!("standard:{word}")]);
        prop_assert_eq!(code(&out), 2);
    }
}
