use std::process::{Command, Output};

use serde_json::{json, Value};

fn parahol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parahol")).args(args).env_remove("PARAHOL_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn list_shows_the_catalog() {
    let o = parahol(&["list"]);
    assert!(o.status.success());
    let out = stdout(&o);
    for name in ["std-R3", "para-kahler-R4", "b2-double", "iwasawa-sl3", "broken-jacobi"] {
        assert!(out.contains(name), "{name} missing from\n{out}");
    }
}

#[test]
fn describe_prints_construction_and_expectations() {
    let o = parahol(&["describe", "std-R3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("kind: patch-model"));
    assert!(out.contains("suites: courant-axioms"));
    assert!(out.contains("twisted-bracket dx^dy^dz | ∂x | ∂y = \"-dz\""), "{out}");
}

#[test]
fn check_suite_passes() {
    let o = parahol(&["check", "std-R3", "--suite", "courant-axioms"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS courant-axioms/axioms-hold"));
    assert!(!stdout(&o).contains("dirac/"));
}

#[test]
fn broken_jacobi_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = parahol(&["check", "broken-jacobi", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL lie/jacobi"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["passed"], json!(false));
    let jacobi = report["checks"].as_array().unwrap().iter().find(|c| c["id"] == "jacobi").unwrap();
    assert_eq!(jacobi["verdict"], json!("fail"));
    assert_eq!(jacobi["witness"]["triple"], json!(["e1", "e2", "e3"]));
}

#[test]
fn usage_errors_exit_2() {
    let o = parahol(&["check", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));

    let o = parahol(&["check", "std-R2", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));

    let o = parahol(&["check", "all", "--suite", "lie"]);
    assert_eq!(o.status.code(), Some(2));

    let o = parahol(&["decompose", "so", "3", "--matrix", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_sl2() {
    let o = parahol(&["decompose", "sl", "2", "--matrix", "0,1;1,0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("k = 0,-1;1,0"), "{out}");
    assert!(out.contains("n = 0,2;0,0"), "{out}");
}

#[test]
fn decompose_rejects_trace() {
    let o = parahol(&["decompose", "sl", "2", "--matrix", "1,0;0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn custom_file_with_open_twist_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("open-twist.json");
    let doc = json!({
        "schema_version": 1,
        "name": "open-twist",
        "kind": "patch-model",
        "description": "Twist that is not closed.",
        "construction": {
            "coordinates": ["x", "y", "z", "w"],
            "bracket": "twisted",
            "twist": "x*dy^dz"
        },
        "expected": [{"check": "axioms-hold", "value": true}]
    });
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = parahol(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("twist form not closed"), "{}", stderr(&o));
}

#[test]
fn custom_file_runs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mine.json");
    let doc = json!({
        "schema_version": 1,
        "name": "mine",
        "kind": "patch-model",
        "description": "Plane.",
        "construction": {"coordinates": ["x", "y"]},
        "expected": [{"check": "bracket", "args": ["∂x", "x*dy"], "value": "dy"}]
    });
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = parahol(&["check", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn reports_are_deterministic_and_echo_the_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let run = |p: &std::path::Path| {
        Command::new(env!("CARGO_BIN_EXE_parahol"))
            .args(["check", "std-R2", "--json", p.to_str().unwrap()])
            .env("PARAHOL_SEED", "4242")
            .output()
            .unwrap()
    };
    assert!(run(&a).status.success());
    assert!(run(&b).status.success());
    let strip = |p: &std::path::Path| {
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v["elapsed_ms"] = json!(0);
        for c in v["checks"].as_array_mut().unwrap() {
            c["elapsed_ms"] = json!(0);
        }
        v
    };
    let (ra, rb) = (strip(&a), strip(&b));
    assert_eq!(ra, rb);
    assert_eq!(ra["config"]["seed"], json!(4242));
}
