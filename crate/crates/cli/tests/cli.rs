use std::fs;
use std::process::{Command, Output};

use tempfile::TempDir;

fn metdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metdim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = metdim(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn p4(dir: &TempDir) -> String {
    let path = dir.path().join("p4.edges");
    fs::write(&path, "# P4\n4 3\n1 2\n2 3\n3 4\n").unwrap();
    path.display().to_string()
}

#[test]
fn dim_local_s5() {
    let v = json(&["dim", "--variant", "local", "--family", "S:5", "--format", "json"]);
    assert_eq!(v["value"], 2);
    assert_eq!(v["status"], "optimal");
}

#[test]
fn dim_strong_u4_reports_true_value() {
    let v = json(&["dim", "--variant", "strong", "--family", "U:4", "--format", "json"]);
    assert_eq!(v["value"], 8);
}

#[test]
fn dim_metric_from_file() {
    let dir = TempDir::new().unwrap();
    let v = json(&["dim", "--variant", "metric", "--input", &p4(&dir), "--format", "json"]);
    assert_eq!(v["value"], 1);
    assert_eq!(v["graph"], "p4");
}

#[test]
fn dim_both_methods_agree() {
    let v = json(&["dim", "--variant", "ft", "--family", "S:3", "--method", "both", "--format", "json"]);
    assert_eq!(v["exact_value"], v["ilp_value"]);
}

#[test]
fn dim_ilp_needs_a_model() {
    let out = metdim(&["dim", "--variant", "strong", "--family", "S:3", "--method", "ilp"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_exhaustion_exits_2() {
    let out = metdim(&["dim", "--variant", "ft", "--family", "U:6", "--max-nodes", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "budget-exhausted");
}

#[test]
fn model_ftmd_solve_matches_exact() {
    let dir = TempDir::new().unwrap();
    let out = metdim(&["model", "--variant", "ftmd", "--input", &p4(&dir), "--solve", "--compare"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("value         2\n"), "{text}");
    assert!(text.contains("exact value   2\n"));
}

#[test]
fn model_lmd_s4_solves_to_three() {
    let v = json(&["model", "--variant", "lmd", "--family", "S:4", "--solve", "--format", "json"]);
    assert_eq!(v["value"], 3);
}

#[test]
fn model_lmd_written_to_file() {
    let dir = TempDir::new().unwrap();
    let lp = dir.path().join("m.lp");
    let out = metdim(&["model", "--variant", "lmd", "--input", &p4(&dir), "-o", lp.to_str().unwrap()]);
    assert!(out.status.success());
    let text = fs::read_to_string(&lp).unwrap();
    let bp = metdim::parse_lp(&text).unwrap();
    assert_eq!((bp.num_vars(), bp.num_constraints()), (4, 3));
    assert!(text.contains("Binary\n x_1 x_2 x_3 x_4\n"));
}

#[test]
fn lp_format_only_for_model() {
    let out = metdim(&["dim", "--variant", "local", "--family", "S:5", "--format", "lp"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_strong_s() {
    let v = json(&["verify", "--family", "S", "--variant", "strong", "--range", "3..10", "--format", "json"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    for row in rows {
        let n = row["n"].as_u64().unwrap();
        let want = if n % 2 == 1 { n } else { 3 * n / 2 };
        assert_eq!(row["optimum"].as_u64(), Some(want));
        assert_eq!(row["status"], "certified");
    }
}

#[test]
fn verify_local_u_all_two() {
    let v = json(&["verify", "--family", "U", "--variant", "local", "--range", "3..20", "--format", "json"]);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["optimum"] == 2));
}

#[test]
fn verify_local_s_alternates() {
    let v = json(&["verify", "--family", "S", "--variant", "local", "--range", "3..12", "--format", "json"]);
    for row in v["rows"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap();
        assert_eq!(row["optimum"].as_u64(), Some(if n % 2 == 1 { 2 } else { 3 }));
    }
}

#[test]
fn verify_failure_exits_3() {
    let out = metdim(&["verify", "--family", "U", "--variant", "strong", "--range", "3..5"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("FAILED"));
}

#[test]
fn verify_rejects_bad_ranges() {
    for range in ["2..5", "7..4", "3-5"] {
        let out = metdim(&["verify", "--family", "S", "--variant", "local", "--range", range]);
        assert_eq!(out.status.code(), Some(1), "{range}");
    }
    let out = metdim(&["verify", "--family", "S", "--variant", "metric", "--range", "3..5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn family_report_and_tables() {
    let v = json(&["family", "--family", "U:10", "--tables", "--format", "json"]);
    assert_eq!(v["vertices"], 50);
    assert_eq!(v["tables"]["corrected_deviations"].as_array().unwrap().len(), 0);
    let literal = v["tables"]["literal_deviations"].as_array().unwrap();
    assert_eq!(literal.len(), 3);
    assert!(literal[0]["rule"].as_str().unwrap().contains("k+1, 5"));
}

#[test]
fn family_edges_round_trip() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("s4.edges");
    let out = metdim(&["family", "--family", "S:4", "--format", "edges", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&["dim", "--variant", "local", "--input", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(v["value"], 3);
    assert_eq!(v["witness_labels"][0], "a_1");
}

#[test]
fn input_errors_carry_line_numbers() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("bad.edges");
    fs::write(&path, "3 2\n1 2\n2 x\n").unwrap();
    let out = metdim(&["dim", "--variant", "metric", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = metdim(&["dim", "--variant", "metric", "--family", "S:2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn budget_env_var_is_read() {
    let out = Command::new(env!("CARGO_BIN_EXE_metdim"))
        .args(["dim", "--variant", "ft", "--family", "U:8", "--format", "json"])
        .env("METDIM_BUDGET_SECS", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(metdim(&["dim", "--family", "S:3"]).status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_metdim"))
        .args(["dim", "--variant", "ft", "--family", "S:3"])
        .env("METDIM_BUDGET_SECS", "soon")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(metdim(&["--help"]).status.success());
}
