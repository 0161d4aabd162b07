//! End-to-end tests of the rrp binary: JSON shape, exit codes and report
//! determinism.

use std::process::{Command, Output};

fn rrp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rrp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn analyze_2_1_reports_canonical_context() {
    let out = rrp(&["analyze", "--r", "7", "--x", "2", "--y", "1", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "analyze");
    let ctx = &v["contexts"][0];
    assert_eq!(ctx["d"], "129");
    assert_eq!(ctx["z"], "1");
    assert_eq!(ctx["is_trivial"], false);
    assert!(ctx["type1"].is_object());
    assert!(ctx["type2"].is_null());
    assert_eq!(ctx["checklist"]["eichler_shimura_side_condition"], true);
    assert_eq!(ctx["checklist"]["type2_applicable"], false);
    assert_eq!(ctx["balance_identity"], true);
}

#[test]
fn analyze_trivial_short_circuits() {
    let out = rrp(&["analyze", "--r", "7", "--x", "1", "--y", "0", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let ctx = &v["contexts"][0];
    assert_eq!(ctx["is_trivial"], true);
    assert!(ctx["type1"].is_null());
    assert!(ctx["decomposition"].is_null());
}

#[test]
fn analyze_type2_fixture_reports_j_valuation() {
    let out = rrp(&["analyze", "--r", "7", "--x", "2402", "--y", "-1", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let ctx = &v["contexts"][0];
    assert_eq!(ctx["z"], "7");
    assert_eq!(ctx["type2"]["j_beta_valuation"], -46);
    assert_eq!(ctx["type2"]["inertia_criterion"], true);
    assert_eq!(ctx["checklist"]["type2_applicable"], true);
    assert_eq!(ctx["decomposition"]["e"], 1);
    assert_eq!(ctx["decomposition"]["e0"], 4);
}

#[test]
fn exit_codes_match_contract() {
    // 1: usage error (missing required flags).
    let out = rrp(&["analyze", "--r", "7"]);
    assert_eq!(out.status.code(), Some(1));
    // 2: invalid mathematical input.
    let out = rrp(&["analyze", "--r", "7", "--x", "2", "--y", "4", "--p", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rrp(&["analyze", "--r", "6", "--x", "2", "--y", "1", "--p", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rrp(&["analyze", "--r", "7", "--x", "1", "--y", "-1", "--p", "5"]);
    assert_eq!(out.status.code(), Some(2));
    // 4: no valid context.
    let out = rrp(&["analyze", "--r", "7", "--x", "3", "--y", "4", "--p", "5"]);
    assert_eq!(out.status.code(), Some(4));
    // Search bound over the desk cap is invalid input.
    let out = rrp(&["search", "--r", "7", "--D", "3", "--p", "7", "--bound", "100000"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_runs_are_byte_identical() {
    let args = ["analyze", "--r", "7", "--x", "2", "--y", "1", "--p", "5"];
    let a = rrp(&args);
    let b = rrp(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_out_writes_the_same_bytes() {
    let dir = std::env::temp_dir().join("rrp-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let args = [
        "analyze", "--r", "7", "--x", "2", "--y", "1", "--p", "5", "--json-out",
    ];
    let stdout_run = rrp(&args[..args.len() - 1]);
    let file_run = Command::new(env!("CARGO_BIN_EXE_rrp"))
        .args(args)
        .arg(&path)
        .output()
        .expect("binary runs");
    assert_eq!(file_run.status.code(), Some(0));
    assert!(file_run.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, stdout_run.stdout);
}

#[test]
fn contexts_lists_candidates_with_flags() {
    let out = rrp(&["contexts", "--r", "7", "--x", "2402", "--y", "-1", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let contexts = v["contexts"].as_array().unwrap();
    assert_eq!(contexts.len(), 2);
    assert_eq!(contexts[0]["z"], "1");
    assert_eq!(contexts[0]["valid"], false);
    assert_eq!(contexts[1]["z"], "7");
    assert_eq!(contexts[1]["valid"], true);
    assert_eq!(contexts[1]["d"], "27448639374405504361");
}

#[test]
fn fixture_type2_is_canonical_and_deterministic() {
    let out = rrp(&["fixture-type2", "--r", "7", "--p", "5", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["x"], "2402");
    assert_eq!(v["y"], "-1");
    assert_eq!(v["x_plus_y_valuation"], 4);
    let again = rrp(&["fixture-type2", "--r", "7", "--p", "5", "--k", "1"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn search_finds_the_129_solution() {
    let out = rrp(&["search", "--r", "7", "--D", "129", "--p", "5", "--bound", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let hits = v["nontrivial"].as_array().unwrap();
    assert!(hits
        .iter()
        .any(|h| h["x"] == "2" && h["y"] == "1" && h["z"] == "1"));
}

#[test]
fn search_signature_rrr_is_accepted() {
    let out = rrp(&["search", "--r", "7", "--D", "3", "--p", "7", "--bound", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v["nontrivial"].as_array().unwrap().is_empty());
}

#[test]
fn sweep_passes_and_empty_sweep_is_ok() {
    let out = rrp(&["sweep", "--r", "7", "--bound", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["pass"], true);
    assert!(!v["properties"].as_array().unwrap().is_empty());

    let out = rrp(&["sweep", "--bound", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["pass"], true);
    assert!(v["properties"].as_array().unwrap().is_empty());
}

#[test]
fn search_agrees_with_analyze() {
    // Every non-trivial search hit must yield an analyzable context.
    let out = rrp(&["search", "--r", "7", "--D", "129", "--p", "5", "--bound", "4"]);
    let v = json_of(&out);
    for hit in v["nontrivial"].as_array().unwrap() {
        let (x, y, z) = (
            hit["x"].as_str().unwrap(),
            hit["y"].as_str().unwrap(),
            hit["z"].as_str().unwrap(),
        );
        let out = rrp(&[
            "analyze", "--r", "7", "--x", x, "--y", y, "--p", "5", "--D", "129", "--z", z,
        ]);
        assert_eq!(out.status.code(), Some(0), "hit ({x}, {y}, {z})");
    }
}
