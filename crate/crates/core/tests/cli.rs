mod common;

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plumbing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(name: &str) -> String {
    common::data(name).display().to_string()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut args = args.to_vec();
    args.push("--json");
    let out = run(&args);
    assert!(
        out.status.success(),
        "{:?}: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn validate_exit_codes() {
    assert_eq!(run(&["validate", &path("e8")]).status.code(), Some(0));
    assert_eq!(
        run(&["validate", &path("positive_vertex")]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["validate", &path("triangle")]).status.code(), Some(1));
    assert_eq!(
        run(&["validate", &path("missing_euler")]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["validate", "/nonexistent.graph"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["zmin"]).status.code(), Some(2));
}

#[test]
fn validate_reports_failing_minor() {
    let out = run(&["validate", &path("chain_minus_one")]);
    let text = stdout(&out);
    assert!(
        text.starts_with("tree: yes, negative definite: no"),
        "{text}"
    );
    assert!(text.contains("order 2"), "{text}");
    let v = json(&["validate", &path("e8")]);
    assert_eq!(v["tree"], true);
    assert_eq!(v["negative_definite"], true);
    assert!(v.get("failing_minor").is_none());
    let out = run(&["validate", &path("positive_vertex"), "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["failing_minor"]["order"], 1);
    assert_eq!(v["failing_minor"]["value"], "-1");
}

#[test]
fn zmin_and_canonical() {
    assert_eq!(stdout(&run(&["zmin", &path("a1")])).trim(), "a=1");
    assert_eq!(stdout(&run(&["canonical", &path("v3")])).trim(), "a=-1/3");
    assert_eq!(
        stdout(&run(&["canonical", &path("a3")])).trim(),
        "v1=0,v2=0,v3=0"
    );
    let z = json(&["zmin", &path("e8")]);
    assert_eq!(z["c"], 6);
    assert_eq!(z["d4"], 2);
}

#[test]
fn zmin_feeds_invariants() {
    for name in ["e8", "brieskorn_2_3_7", "star_2_3333"] {
        let literal = stdout(&run(&["zmin", &path(name)])).trim().to_string();
        let report = json(&["invariants", &path(name), "--cycle", &literal]);
        let contact = json(&["contact", &path(name)]);
        assert_eq!(report["genus"], contact["sg"], "{name}");
        assert_eq!(report["beta"], contact["bn"], "{name}");
        assert_eq!(
            report["milnor"].as_i64().unwrap() - 1,
            contact["norm"].as_i64().unwrap()
        );
        assert_eq!(report["antinef"], true);
    }
}

#[test]
fn star_contact_values() {
    let c = json(&["contact", &path("star_2_3333")]);
    assert_eq!(
        (c["sg"].as_i64(), c["bn"].as_i64(), c["norm"].as_i64()),
        (Some(1), Some(4), Some(4))
    );
    assert_eq!(c["rational"], false);
    let c = json(&["contact", &path("brieskorn_2_3_7")]);
    assert_eq!(
        (c["sg"].as_i64(), c["bn"].as_i64(), c["norm"].as_i64()),
        (Some(1), Some(1), Some(1))
    );
    let text = stdout(&run(&["contact", &path("a1")]));
    assert!(
        text.contains("sg_an: 0") && text.contains("bn_an: 2"),
        "{text}"
    );
}

#[test]
fn invariants_rejects_bad_cycles() {
    let e8 = path("e8");
    assert_eq!(
        run(&["invariants", &e8, "--cycle", "c=1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["invariants", &e8, "--cycle", ""]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["invariants", &e8, "--cycle", "nope=1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["invariants", &e8, "--cycle", "c=-1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&["invariants", &e8, "--cycle", "c=x"]).status.code(),
        Some(2)
    );
}

#[test]
fn chi_values() {
    assert_eq!(
        stdout(&run(&["chi", &path("a1"), "--cycle", "a=1"])).trim(),
        "1"
    );
    assert_eq!(
        stdout(&run(&["chi", &path("a1"), "--cycle", "a=2"])).trim(),
        "4"
    );
    assert_eq!(
        stdout(&run(&["chi", &path("v3"), "--cycle", "a=-1"])).trim(),
        "2"
    );
    let v = json(&["chi", &path("a2"), "--cycle", "v1=1,v2=1"]);
    assert_eq!(v["chi"], 1);
}

#[test]
fn cone_and_stratum() {
    let cone = json(&["cone", &path("a1"), "--bound", "3"]);
    assert_eq!(cone.as_array().unwrap().len(), 3);
    assert_eq!(
        run(&["cone", &path("a1"), "--bound", "0"]).status.code(),
        Some(2)
    );
    let s = json(&["stratum", &path("a2"), "--bound", "2", "--genus", "0"]);
    assert_eq!(s["min_milnor"], 1);
    assert_eq!(s["argmins_agree"], true);
    let empty = json(&["stratum", &path("a1"), "--bound", "2", "--genus", "-1"]);
    assert!(empty["cycles"].as_array().unwrap().is_empty());
    assert!(empty["min_milnor"].is_null());
}

#[test]
fn verify_suite_and_size_gate() {
    let out = run(&["verify", &path("d4"), "--bound", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.lines().filter(|l| l.starts_with("PASS")).count() >= 20,
        "{text}"
    );
    assert!(!text.contains("FAIL"), "{text}");
    let v = json(&["verify", &path("a2"), "--bound", "2"]);
    assert!(v["properties"]
        .as_array()
        .unwrap()
        .iter()
        .all(|p| p["ok"] == true));
    let gated = run(&["verify", &path("e8"), "--bound", "9"]);
    assert_eq!(gated.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&gated.stderr).contains("--force"));
}
