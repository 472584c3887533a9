//! End-to-end tests of the `monofact` binary: determinism, exit codes,
//! self-verification and fault injection.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_monofact"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> Vec<u8> {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("monofact-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn sample_is_deterministic_and_json() {
    let a = stdout(&["sample", "--n", "50", "--kind", "decreasing", "--seed", "11"]);
    let b = stdout(&["sample", "--n", "50", "--kind", "decreasing", "--seed", "11"]);
    assert_eq!(a, b);
    let c = stdout(&["sample", "--n", "50", "--kind", "decreasing", "--seed", "12"]);
    assert_ne!(a, c);
    let doc: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(doc["schema"], "monofact/1");
    assert_eq!(doc["type"], "factorisation");
    assert_eq!(doc["taus"].as_array().unwrap().len(), 49);
}

#[test]
fn sample_n1_is_empty() {
    let out = stdout(&["sample", "--n", "1", "--seed", "0"]);
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc["n"], 1);
    assert_eq!(doc["taus"].as_array().unwrap().len(), 0);
}

#[test]
fn svg_is_byte_identical_across_runs() {
    let args = ["lamination", "--n", "40", "--seed", "3", "--t", "0.5", "--format", "svg"];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b);
    assert!(String::from_utf8(a).unwrap().starts_with("<svg"));
}

#[test]
fn lamination_t_bounds_are_usage_errors() {
    let out = run(&["lamination", "--n", "8", "--t", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lamination_snapshot_sizes() {
    let at_zero = stdout(&["lamination", "--n", "16", "--seed", "5", "--t", "0", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&at_zero).unwrap();
    assert_eq!(doc["chords"].as_array().unwrap().len(), 1); // the point [[0, 0]]
    let full = stdout(&["lamination", "--n", "500", "--seed", "5", "--t", "1", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&full).unwrap();
    assert_eq!(doc["chords"].as_array().unwrap().len(), 499);
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = run(&["sample", "--n", "4", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_out_of_range_is_usage_error() {
    let out = run(&["enumerate", "--n", "13"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_counts_match_catalan() {
    let out = stdout(&["enumerate", "--n", "5", "--kind", "increasing"]);
    let lines: Vec<&str> = std::str::from_utf8(&out).unwrap().trim().lines().collect();
    assert_eq!(lines.len(), 14);
    for line in lines {
        let doc: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(doc["type"], "factorisation");
    }
}

#[test]
fn enumerate_n3_exact_sets() {
    let dec = String::from_utf8(stdout(&["enumerate", "--n", "3", "--format", "text"])).unwrap();
    let dec: Vec<&str> = dec.trim().lines().collect();
    assert_eq!(dec, vec!["n=3 taus=(2 3)(1 2)", "n=3 taus=(1 2)(1 3)"]);
    let inc = String::from_utf8(stdout(&[
        "enumerate", "--n", "3", "--kind", "increasing", "--format", "text",
    ]))
    .unwrap();
    let inc: Vec<&str> = inc.trim().lines().collect();
    assert_eq!(inc, vec!["n=3 taus=(1 3)(2 3)", "n=3 taus=(1 2)(1 3)"]);
}

#[test]
fn verify_accepts_own_samples() {
    for kind in ["decreasing", "increasing"] {
        let path = tmp_path(&format!("sample-{kind}.json"));
        let out = run(&[
            "sample", "--n", "30", "--kind", kind, "--seed", "4", "--with-tree",
            "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let verify = run(&["verify", path.to_str().unwrap()]);
        assert_eq!(verify.status.code(), Some(0), "{}", String::from_utf8_lossy(&verify.stdout));
        std::fs::remove_file(path).ok();
    }
}

#[test]
fn verify_accepts_pasted_decreasing_example() {
    let path = tmp_path("size10.json");
    std::fs::write(
        &path,
        r#"{"schema":"monofact/1","type":"factorisation","n":10,
            "taus":[[8,9],[8,10],[7,8],[2,3],[2,4],[2,5],[1,2],[1,6],[1,7]],
            "kind":"decreasing"}"#,
    )
    .unwrap();
    let verify = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(0));
    std::fs::remove_file(path).ok();
}

#[test]
fn verify_flags_corrupted_b_value_with_named_invariant() {
    let path = tmp_path("corrupt.json");
    // (1, 3) tampered into (1, 2): the product is no longer the cycle and
    // the larger endpoints no longer cover 2..n.
    std::fs::write(
        &path,
        r#"{"schema":"monofact/1","type":"factorisation","n":3,"taus":[[1,2],[1,2]]}"#,
    )
    .unwrap();
    let verify = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(verify.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&verify.stdout).unwrap();
    let failed: Vec<&str> = report["failures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["invariant"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"cycle_product"), "{failed:?}");
}

#[test]
fn verify_malformed_file_is_io_error() {
    let path = tmp_path("malformed.json");
    std::fs::write(&path, "{not json").unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::remove_file(path).ok();
    let missing = run(&["verify", "/nonexistent/monofact.json"]);
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn verify_reads_stdin() {
    use std::io::Write as _;
    let mut child = bin()
        .args(["verify", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::null())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"schema":"monofact/1","type":"plane_tree","children_counts":[2,0,0]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn distance_json_is_deterministic_and_trending() {
    let args = [
        "distance", "--n-grid", "50,200", "--seeds", "6", "--seed", "1", "--tol", "1e-3",
        "--format", "json",
    ];
    let a = stdout(&args);
    let b = stdout(&args);
    assert_eq!(a, b);
    let report: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 12);
    assert_eq!(report["config"]["tol"], 1e-3);
}

#[test]
fn sample_n3_hits_both_elements_across_seeds() {
    let mut seen = std::collections::BTreeSet::new();
    for seed in 0..20u64 {
        let out = stdout(&[
            "sample", "--n", "3", "--kind", "decreasing", "--seed", &seed.to_string(),
            "--format", "text",
        ]);
        seen.insert(String::from_utf8(out).unwrap());
    }
    assert_eq!(seen.len(), 2, "both decreasing factorisations of size 3 should appear");
}

#[test]
fn sample_large_n_works() {
    let out = stdout(&["sample", "--n", "10000", "--seed", "1"]);
    let doc: serde_json::Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(doc["taus"].as_array().unwrap().len(), 9999);
}

#[test]
fn stats_reports_run_and_pass() {
    let out = run(&["stats", "distinct-a-exact", "--n", "6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], true);
    let out = run(&["stats", "parking", "--n", "120", "--trials", "30", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let bad = run(&["stats", "distinct-a-exact", "--n", "40"]);
    assert_eq!(bad.status.code(), Some(2));
}
