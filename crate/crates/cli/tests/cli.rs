//! End-to-end checks of the ulat binary: exit codes, output contracts and
//! determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn ulat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ulat"))
        .args(args)
        .output()
        .expect("spawn ulat")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn lattice_info_prints_invariants() {
    let path = fixture_root().join("lattices/gaussian_2u_2a1.json");
    let out = ulat(&["lattice", "info", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("name: 2U+2A1"));
    assert!(text.contains("d: -1"));
    assert!(text.contains("signature (2,1)"));
    assert!(text.contains("signature (4,2)"));
    assert!(text.contains("integral: true"));
    // JSON mode parses and carries the same discriminant data
    let out = ulat(&["lattice", "info", path.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["hermitian_rank"], 3);
    assert_eq!(doc["trace_parity"], "even");
}

#[test]
fn lattice_info_missing_file_is_exit_2() {
    let out = ulat(&["lattice", "info", "no/such/file.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn qseries_eval_is_exact_and_deterministic() {
    let out = ulat(&["qseries", "eval", "--form", "s6", "--order", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 1\n2 -6\n3 9\n");
    let again = ulat(&["qseries", "eval", "--form", "s6", "--order", "4"]);
    assert_eq!(out.stdout, again.stdout);
    let bad = ulat(&["qseries", "eval", "--form", "nope"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn jacobian_reports_delta_proportionality() {
    let out = ulat(&["jacobian", "--forms", "E4,E6", "--order", "20"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("weight 12"));
    assert!(text.contains("proportional to Delta: yes, scalar -3456"));
    let out = ulat(&["jacobian", "--forms", "E4,E6", "--order", "20", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["weight"], "12");
}

#[test]
fn tables_verify_passes_on_shipped_fixtures() {
    let dir = fixture_root().join("tables");
    let out = ulat(&["tables", "verify", "--fixture-dir", dir.to_str().unwrap()]);
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let text = stdout(&out);
    assert!(!text.contains("[FAIL]"));
    assert!(text.contains("[AMBIGUOUS] 2U+A2(2)/w:U / mirror_factorization"));
    assert!(text.contains("summary:"));
    let out = ulat(&[
        "tables", "verify", "--fixture-dir", dir.to_str().unwrap(), "--json",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc.as_array().unwrap().len() > 200);
}

#[test]
fn reflect_scan_agrees_on_small_lattice() {
    let path = fixture_root().join("lattices/gaussian_unary.json");
    let out = ulat(&[
        "reflect", "scan", "--lattice", path.to_str().unwrap(),
        "--norm-max", "4", "--radius", "2", "--json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let records = doc.as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        assert_eq!(r["agree"], true);
    }
}
