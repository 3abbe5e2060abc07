//! End-to-end runs of the `mckay` binary against golden outputs.

use std::process::{Command, Output};

use mckay_core::emit::{table_from_json, table_json};
use mckay_core::{Basis, OdotRing};
use serde_json::Value;

fn mckay(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mckay"))
        .args(args)
        .env_remove("MCKAY_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = mckay(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn schur_table_n3_latex() {
    assert_eq!(
        stdout(&["table", "--n", "3", "--basis", "s", "--format", "latex"]),
        golden("table_n3_s.tex")
    );
}

#[test]
fn power_sum_tables() {
    assert_eq!(
        stdout(&["table", "--n", "2", "--basis", "p", "--format", "latex"]),
        golden("table_n2_p.tex")
    );
    assert_eq!(
        stdout(&["table", "--n", "3", "--basis", "p", "--format", "csv"]),
        golden("table_n3_p.csv")
    );
}

#[test]
fn explicit_a_gives_the_same_table() {
    let base = stdout(&["table", "--n", "3", "--basis", "s", "--format", "latex"]);
    assert_eq!(
        stdout(&["table", "--n", "3", "--basis", "s", "--format", "latex", "--A", "7"]),
        base
    );
}

#[test]
fn gamma_operator_json() {
    let v: Value = serde_json::from_str(&stdout(&[
        "op", "--name", "Gamma", "--n", "2", "--basis", "p", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(v["matrix"], serde_json::json!([["1", "0"], ["1/2", "-1/2"]]));
    assert_eq!(v["order"], serde_json::json!([[1, 1], [2]]));
}

#[test]
fn operators_in_both_bases() {
    for name in ["D", "E", "Gamma", "Pi"] {
        for basis in ["p", "s"] {
            let v: Value =
                serde_json::from_str(&stdout(&["op", "--name", name, "--n", "3", "--basis", basis])).unwrap();
            assert_eq!(v["matrix"].as_array().unwrap().len(), 3);
        }
    }
    assert!(stdout(&["op", "--name", "E", "--n", "2", "--format", "latex"]).contains("\\begin"));
}

#[test]
fn kostka_matrix_n3() {
    assert_eq!(stdout(&["macdonald", "--n", "3"]), golden("macdonald_n3.json"));
}

#[test]
fn table_json_round_trips() {
    for n in 2..=4 {
        let ring = OdotRing::new(n, None).unwrap();
        for basis in [Basis::P, Basis::S] {
            let text = stdout(&[
                "table",
                "--n",
                &n.to_string(),
                "--basis",
                basis.letter(),
                "--format",
                "json",
            ]);
            let v: Value = serde_json::from_str(&text).unwrap();
            let parsed = table_from_json(&v).unwrap();
            assert_eq!(parsed.cells, ring.table(basis).cells);
            assert_eq!(table_json(&parsed), v);
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--n", "4", "--basis", "p", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn adams_report() {
    let v: Value = serde_json::from_str(&stdout(&["adams", "--n", "3", "--j", "3"])).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    assert!(entries.iter().all(|e| e["equal"] == Value::Bool(true)));
}

#[test]
fn verify_up_to_four_passes() {
    let out = mckay(&["verify", "--max-n", "4"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    let checks = v["checks"].as_array().unwrap();
    for c in 1..=9 {
        assert!(checks.iter().any(|x| x["criterion"] == c), "criterion {c} missing");
    }
}

#[test]
fn usage_errors() {
    for args in [
        &["table", "--n", "0"][..],
        &["table", "--n", "8"],
        &["table", "--n", "3", "--basis", "q"],
        &["op", "--name", "Z", "--n", "2"],
        &["macdonald", "--n", "3", "--A", "2"],
        &["frobnicate"],
    ] {
        let out = mckay(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn cap_follows_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_mckay"))
        .args(["table", "--n", "3"])
        .env("MCKAY_MAX_N", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("MCKAY_MAX_N"));
}
