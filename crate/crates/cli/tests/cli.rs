use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn ordsup(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordsup"))
        .args(args)
        .env_remove("ORDSUP_ELEMENT_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn group_reports_profile_and_sylow_facts() {
    let out = ordsup(&["group", "dihedral:5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["order"], 10);
    assert_eq!(doc["profile"], serde_json::json!({"1": 1, "2": 5, "5": 4}));
    assert_eq!(doc["eppo"], true);
    assert_eq!(doc["nilpotent"], false);
    let sylow = doc["sylow"].as_array().unwrap();
    assert_eq!(sylow.len(), 2);
    assert_eq!(sylow[1]["prime"], 5);
    assert_eq!(sylow[1]["normal"], true);

    let out = ordsup(&["group", "perm:(1 2 3),(1 2)"]);
    let text = stdout(&out);
    assert!(text.contains("order:     6"), "{text}");
    assert!(text.contains("profile:   1:1 2:3 3:2"), "{text}");
}

#[test]
fn exit_codes_for_bad_input_and_caps() {
    assert_eq!(ordsup(&["group", "dihedral:2"]).status.code(), Some(2));
    let out = ordsup(&["group", "dihedral:x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("byte 9"));
    assert_eq!(ordsup(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ordsup(&["group", "sym:5", "--element-cap", "100"]).status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_ordsup"))
        .args(["group", "sym:5"])
        .env("ORDSUP_ELEMENT_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(ordsup(&["graph", "sym:8"]).status.code(), Some(3));
    assert_eq!(ordsup(&["audit", "dihedral", "--from", "10", "--to", "5"]).status.code(), Some(2));
}

#[test]
fn graph_exports_dot_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let out = ordsup(&["graph", "cyclic:6", "--dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph "));
    assert_eq!(text.matches(" -- ").count(), 13);

    let out = ordsup(&["graph", "dihedral:4", "--json", "-"]);
    let doc = json(&out);
    assert_eq!(doc["n"], 8);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 28);

    let q = dir.path().join("q.json");
    ordsup(&["graph", "sym:7", "--quotient", "--json", q.to_str().unwrap()]);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&q).unwrap()).unwrap();
    assert_eq!(doc["orders"], serde_json::json!([1, 2, 3, 4, 5, 6, 7, 10, 12]));
    let total: u64 = doc["weights"].as_array().unwrap().iter().map(|w| w.as_u64().unwrap()).sum();
    assert_eq!(total, 5040);
}

#[test]
fn analyze_verdicts_and_exit_codes() {
    let out = ordsup(&["analyze", "separable", "dihedral:5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("separable, cutset {e}"));

    let out = ordsup(&["analyze", "separable", "sym:3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not separable"));

    let out = ordsup(&["analyze", "ckappa", "dicyclic:3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["value"], 2);
    assert_eq!(doc["cutset"], serde_json::json!(["e", "a^3"]));
    assert_eq!(doc["path"], "both");

    let out = ordsup(&["analyze", "ckappa", "dihedral:6", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["value"], "infinite");

    let out = ordsup(&["analyze", "separable", "sym:7", "--json"]);
    let doc = json(&out);
    assert_eq!(doc["separable"], true);
    assert_eq!(doc["path"], "quotient");
}

#[test]
fn audit_outputs_and_ledger() {
    let out = ordsup(&["audit", "dihedral", "--from", "3", "--to", "64", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 63);
    assert!(text.starts_with("family,params,group,order,status,predicate,computed,agree,path,clauses\n"));

    let out = ordsup(&["audit", "symmetric", "--from", "3", "--to", "7"]);
    let doc = json(&out);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4]["path"], "quotient");
    assert!(doc["metadata"].get("timestamp").is_none());

    let out = ordsup(&["audit", "eppo", "--spec", "sym:3", "--spec", "alt:4"]);
    let doc = json(&out);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
    assert_eq!(doc["rows"][1]["computed"], true);
    assert_eq!(ordsup(&["audit", "dicyclic", "--spec", "dicyclic:3"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.ndjson");
    fs::write(&empty, "").unwrap();
    let emitted = dir.path().join("emitted.ndjson");
    let out = ordsup(&[
        "audit",
        "nilpotent",
        "--ledger",
        empty.to_str().unwrap(),
        "--emit-ledger",
        emitted.to_str().unwrap(),
        "--out",
        dir.path().join("report.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).is_empty());
    let committed = include_str!("../known_discrepancies.ndjson");
    assert_eq!(fs::read_to_string(&emitted).unwrap(), committed);

    let out = ordsup(&["audit", "nilpotent", "--ledger", emitted.to_str().unwrap(), "--out", "/dev/null"]);
    assert_eq!(out.status.code(), Some(0));
}
