use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nilprob(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilprob"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn nilprob_with_assets(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilprob"))
        .env("NILPROB_ASSETS", dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn shipped_assets() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/assets")
}

#[test]
fn nu_alt5_json() {
    let o = nilprob(&["nu", "alt:5", "--method", "classes", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["value"]["num"], 1);
    assert_eq!(v["value"]["den"], 12);
    assert_eq!(v["order"], 60);
    assert_eq!(v["method"], "exact-classes");
    assert_eq!(v["decimal"], "0.08333");
}

#[test]
fn nu_cyclic_is_one() {
    let o = nilprob(&["nu", "cyc:6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1/1"), "{}", stdout(&o));
}

#[test]
fn alt_bound_value() {
    let o = nilprob(&["alt-bound", "--pi-n", "15403/18144", "--pi-n-1", "15403/18144", "--n", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("12007/181440"));
    let o = nilprob(&["alt-bound", "--pi-n", "1/2", "--pi-n-1", "1/2", "--n", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_round_trips_exact_values() {
    for (args, num, den) in [
        (vec!["nu", "sym:4"], 1, 3),
        (vec!["nu-tilde", "psl2:7"], 3, 56),
        (vec!["nu-coset", "sym:4", "--normal", "alt:4", "--g1", "(1 2)", "--g2", "()"], 1, 3),
        (vec!["tau", "alt:5", "--g1", "(1 2)", "--g2", "()"], 1, 12),
        (vec!["pi", "alt:5", "--g1", "()", "--g2", "()"], 19, 30),
    ] {
        let mut a = args.clone();
        a.extend(["--format", "json"]);
        let o = nilprob(&a);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let v = json(&o);
        assert_eq!((v["value"]["num"].as_i64(), v["value"]["den"].as_i64()), (Some(num), Some(den)), "{args:?}");
        // Reading the document back and writing it again changes nothing.
        let again: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
        assert_eq!(again, v);
    }
}

#[test]
fn deterministic_output_is_byte_identical() {
    let args = ["mc", "alt:5", "--samples", "20000", "--seed", "9", "--format", "json", "--deterministic"];
    let a = nilprob(&args);
    let b = nilprob(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert!(v.get("elapsed_ms").is_none());
    assert_eq!(v["samples"], 20000);
    let (lo, hi) = (v["ci"]["lo"].as_f64().unwrap(), v["ci"]["hi"].as_f64().unwrap());
    assert!(lo < 1.0 / 12.0 && 1.0 / 12.0 < hi);

    let timed = json(&nilprob(&["nu", "alt:5", "--format", "json"]));
    assert!(timed.get("elapsed_ms").is_some());
}

#[test]
fn csv_columns() {
    let o = nilprob(&["nu", "sym:3", "--format", "csv"]);
    assert_eq!(stdout(&o), "group,method,num,den,decimal,status\nsym:3,exact-classes,1,2,0.5000,ok\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(nilprob(&["nu", "bogus:3"]).status.code(), Some(2));
    assert_eq!(nilprob(&["nu"]).status.code(), Some(2));
    assert_eq!(nilprob(&["frobnicate"]).status.code(), Some(2));
    // A point outside the degree.
    assert_eq!(nilprob(&["tau", "alt:5", "--g1", "(1 7)", "--g2", "()"]).status.code(), Some(2));
    // An element outside the group.
    assert_eq!(
        nilprob(&["nu-coset", "alt:4", "--normal", "alt:4", "--g1", "(1 2)", "--g2", "()"]).status.code(),
        Some(2)
    );
    let o = nilprob(&["mc", "alt:5", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}

#[test]
fn budget_refusal_exits_3() {
    let o = nilprob(&["nu", "alt:9", "--max-pairs", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn verify_tables_fast_rows_match() {
    let o = nilprob(&[
        "verify-tables", "--table", "1", "--only", "PSL(2,7)", "--only", "PSL(2,13)", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for (row, (num, den)) in rows.iter().zip([(3, 56), (3, 364)]) {
        assert_eq!(row["status"], "exact-match");
        assert_eq!(row["value"], row["expected"]);
        assert_eq!((row["value"]["num"].as_i64(), row["value"]["den"].as_i64()), (Some(num), Some(den)));
    }
}

#[test]
fn verify_tables_reports_inconsistent_row_with_exit_1() {
    let o = nilprob(&["verify-tables", "--table", "1", "--only", "PSU(4,2)", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("PSU(4,2)\",exact-classes,67,25920,"), "{}", stdout(&o));
    assert!(stdout(&o).ends_with(",mismatch\n"));
}

#[test]
fn assets_directory_override() {
    let empty = tempfile::tempdir().unwrap();
    let o = nilprob_with_assets(empty.path(), &["verify-tables", "--table", "1", "--only", "M11", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("M11,none,,,,missing-asset"), "{}", stdout(&o));
    assert_eq!(nilprob_with_assets(empty.path(), &["nu-tilde", "file:m11.gens"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(shipped_assets().join("m11.gens"), dir.path().join("m11.gens")).unwrap();
    let o = nilprob_with_assets(dir.path(), &["nu-tilde", "file:m11.gens", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!((v["value"]["num"].as_i64(), v["value"]["den"].as_i64()), (Some(1), Some(440)));
}

#[test]
fn solvable_check_consistent() {
    let o = nilprob(&["solvable-check", "sym:4", "alt:5", "cyc:7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["status"] == "consistent"));
    assert_eq!(rows[1]["solvable"], false);
}
