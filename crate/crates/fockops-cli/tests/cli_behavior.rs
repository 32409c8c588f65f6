//! End-to-end tests of the `fockops` binary: exit codes, schemas,
//! determinism and file formats.

mod common;

use std::process::{Command, Output};

use common::SchemaStore;
use serde_json::Value;

fn fockops(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockops"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}); stdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn classify_focktype_closed_range() {
    let out = fockops(&["classify", "--space", "focktype", "--m", "1", "--p", "2", "--q", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"]["closed_range"], "yes");
    assert_eq!(v["result"]["surjective"], "yes");
    SchemaStore::new().validate("classify_output.schema.json", &v).unwrap();
}

#[test]
fn classify_quasinilpotent_example() {
    let out = fockops(&[
        "classify", "--space", "classical", "--a", "0.5", "--b", "0", "--n", "1", "--p", "2",
        "--q", "2",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"]["compact"], "yes");
    assert_eq!(v["result"]["closed_range"], "no");
}

#[test]
fn classify_kernel_weight_surjective() {
    let out = fockops(&[
        "classify", "--space", "classical", "--a", "1", "--b", "1", "--n", "0", "--u-expo",
        "0,-1,0", "--p", "2", "--q", "2",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"]["surjective"], "yes");
    let l_inf = v["result"]["l_inf_essential"].as_f64().unwrap();
    assert!((l_inf - 0.5f64.exp()).abs() < 1e-9);
}

#[test]
fn classify_needs_probe_exit_code() {
    // Boundary weight: bounded, not compact, closed range undecided.
    let out = fockops(&[
        "classify", "--space", "classical", "--a", "0.5", "--b", "0", "--n", "0", "--u-expo",
        "0;0;0.375", "--p", "2", "--q", "2",
    ]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["closed_range"], "needs_probe");
}

#[test]
fn malformed_flags_exit_one() {
    let out = fockops(&[
        "classify", "--space", "classical", "--a", "zebra", "--p", "2", "--q", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--a") || err.contains("real part"), "stderr: {err}");
}

#[test]
fn classify_output_is_deterministic() {
    let args = [
        "classify", "--space", "classical", "--a", "0.4,0.3", "--b", "0.2", "--n", "1", "--p",
        "2", "--q", "2",
    ];
    let first = fockops(&args);
    let second = fockops(&args);
    assert_eq!(first.stdout, second.stdout, "byte-identical reruns");
}

#[test]
fn norm_kernel_and_divergent() {
    let out = fockops(&[
        "norm", "--kind", "fock", "--family", "classical", "--p", "2", "--f-expo", "-2;2;0",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["result"]["status"], "ok");
    // k_2 = e^{2z - 2}: unit norm.
    let value = v["result"]["value"].as_f64().unwrap();
    assert!((value - 1.0).abs() < 1e-7, "value={value}");
    SchemaStore::new().validate("norm_output.schema.json", &v).unwrap();

    let out = fockops(&[
        "norm", "--kind", "fock", "--family", "classical", "--p", "2", "--f-expo", "0;0;1",
    ]);
    assert!(out.status.success(), "divergence is a verdict, not an error");
    let v = stdout_json(&out);
    assert_eq!(v["result"]["status"], "divergent");
    SchemaStore::new().validate("norm_output.schema.json", &v).unwrap();
}

#[test]
fn norm_infinite_exponent() {
    let out = fockops(&[
        "norm", "--kind", "fock", "--family", "classical", "--p", "inf", "--f-expo", "-0.5;1;0",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let value = v["result"]["value"].as_f64().unwrap();
    assert!((value - 1.0).abs() < 1e-7, "sup norm of k_1 is 1, got {value}");
}

#[test]
fn matrix_csv_identity_and_quoting() {
    let out = fockops(&["matrix", "--a", "1", "--b", "0", "--n", "0", "--n-dim", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    // Cells hold "re,im" so RFC 4180 forces quotes.
    assert!(text.contains("\"1,0\""), "quoted complex cells: {text}");
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 4);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), 4);
        for j in 0..4 {
            let expected = if i == j { "1,0" } else { "0,0" };
            assert_eq!(&row[j], expected, "entry ({i},{j})");
        }
    }
}

#[test]
fn matrix_json_schema() {
    let out = fockops(&["matrix", "--a", "0.5", "--b", "0", "--n", "1", "--n-dim", "6", "--offset", "1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    SchemaStore::new().validate("matrix_output.schema.json", &v).unwrap();
    // The halving shift with the jet-offset domain is diagonal in storage.
    let e00 = &v["result"]["entries"][0][0];
    assert!((e00[0].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn probe_sigma_min_schema() {
    let out = fockops(&[
        "probe", "sigma-min", "--a", "0.5", "--b", "0", "--n", "1", "--sizes", "10,20",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    SchemaStore::new().validate("probe_output.schema.json", &v).unwrap();
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let s10 = rows[0]["sigma_min"].as_f64().unwrap();
    let s20 = rows[1]["sigma_min"].as_f64().unwrap();
    assert!(s20 < s10, "compact spec decays: {s10} -> {s20}");
}

#[test]
fn probe_spectral_radius_schema() {
    let out = fockops(&[
        "probe", "spectral-radius", "--a", "0.5", "--b", "0", "--n", "1", "--n-dim", "24",
        "--m-max", "8",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    SchemaStore::new().validate("probe_output.schema.json", &v).unwrap();
    let seq: Vec<f64> = v["result"]["sequence"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(seq.len(), 8);
    assert!(seq[7] < seq[0]);
}

#[test]
fn probe_sampling_identity_region() {
    let out = fockops(&[
        "probe", "sampling", "--a", "1", "--b", "0", "--n", "0", "--epsilon", "0.5", "--r-max",
        "8", "--grid", "96", "--p", "2", "--max-degree", "8",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    SchemaStore::new().validate("probe_output.schema.json", &v).unwrap();
    let delta = v["result"]["delta_hat"].as_f64().unwrap();
    assert!(delta >= 0.9, "whole-plane sampling constant {delta}");
    assert_eq!(v["result"]["label"], "probe");
}

#[test]
fn probe_solve_reports_small_residual() {
    let out = fockops(&[
        "probe", "solve", "--a", "1", "--b", "1", "--n", "0", "--u-expo", "0,-1,0", "--h-expo",
        "-0.5;1;0", "--degree", "60", "--radius", "3",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    let residual = v["result"]["residual_sup"].as_f64().unwrap();
    assert!(residual < 1e-6, "residual {residual}");
}

#[test]
fn sweep_ratio_csv_shape() {
    let out = fockops(&[
        "sweep", "ratio", "--m", "1", "--p", "2", "--q", "2", "--k-max", "24", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "k,ratio,log_ratio");
    let body: Vec<&str> = lines.collect();
    assert_eq!(body.len(), 25, "24 rows plus the fit line");
    assert!(body[24].starts_with("fit_exponent,"));
}

#[test]
fn sweep_ratio_json_schema() {
    let out = fockops(&[
        "sweep", "ratio", "--m", "1", "--p", "2", "--q", "2", "--k-max", "12", "--format", "json",
    ]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    SchemaStore::new().validate("sweep_ratio_output.schema.json", &v).unwrap();
}

#[test]
fn sweep_boundary_flips_at_frontier() {
    // (p, q) = (2, 3): the frontier sits at 2 - 6/7 = 8/7.
    let out = fockops(&[
        "sweep", "boundary", "--p", "2", "--q", "3", "--m-from", "1.0", "--m-to", "1.3",
        "--m-steps", "31",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let frontier = 2.0 - 6.0 / 7.0;
    let mut last_bounded_m = 0.0f64;
    let mut first_unbounded_m = f64::INFINITY;
    for line in text.lines().skip(1) {
        let mut parts = line.split(',');
        let m: f64 = parts.next().unwrap().parse().unwrap();
        let bounded = parts.next().unwrap() == "yes";
        if bounded {
            last_bounded_m = last_bounded_m.max(m);
        } else {
            first_unbounded_m = first_unbounded_m.min(m);
        }
    }
    assert!(last_bounded_m <= frontier + 1e-9, "bounded past the frontier");
    assert!(first_unbounded_m >= frontier - 1e-9, "unbounded before the frontier");
    assert!(
        first_unbounded_m - last_bounded_m < 0.02,
        "flip happens across one grid step: {last_bounded_m} -> {first_unbounded_m}"
    );
}

#[test]
fn sweep_boundary_empty_range() {
    let out = fockops(&[
        "sweep", "boundary", "--p", "2", "--q", "2", "--m-from", "1.0", "--m-to", "2.0",
        "--m-steps", "0",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "m,bounded,compact,closed_range,surjective");
}

#[test]
fn verify_subset_and_fault_injection() {
    let out = fockops(&["verify", "--only", "monomial-gamma::k3-p2"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    SchemaStore::new().validate("verify_manifest.schema.json", &v).unwrap();
    assert_eq!(v["result"]["total"], 1);
    assert_eq!(v["result"]["passed"], true);

    let out = fockops(&[
        "verify", "--only", "monomial-gamma::k3-p2", "--inject-fault", "monomial-gamma::k3-p2",
    ]);
    assert_eq!(out.status.code(), Some(1), "fault injection must fail the run");
    let v = stdout_json(&out);
    assert_eq!(v["result"]["passed"], false);
    let failed = v["result"]["checks"][0]["id"].as_str().unwrap();
    assert_eq!(failed, "monomial-gamma::k3-p2");
}

#[test]
fn spec_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("op.json");
    let spec_json = serde_json::json!({
        "u": { "poly": [[1.0, 0.0]], "expo": [[0.0, 0.0], [-1.0, 0.0], [0.0, 0.0]] },
        "psi": { "a": [1.0, 0.0], "b": [1.0, 0.0], "is_constant": false },
        "n": 0,
    });
    std::fs::write(&path, serde_json::to_string_pretty(&spec_json).unwrap()).unwrap();
    let out = fockops(&[
        "classify", "--space", "classical", "--spec-file", path.to_str().unwrap(), "--p", "2",
        "--q", "2",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["surjective"], "yes");
    // The resolved operator is echoed back for reproducibility.
    assert_eq!(v["request"]["spec"]["psi"]["a"][0], 1.0);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = fockops(&[
        "classify", "--space", "focktype", "--m", "1", "--p", "2", "--q", "2", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"]["closed_range"], "yes");
}

#[test]
fn operator_spec_schema_accepts_echo() {
    let out = fockops(&[
        "classify", "--space", "classical", "--a", "0.5", "--b", "0.25,0.1", "--n", "2", "--p",
        "2", "--q", "2",
    ]);
    let v = stdout_json(&out);
    SchemaStore::new()
        .validate("operator_spec.schema.json", &v["request"]["spec"])
        .unwrap();
}
