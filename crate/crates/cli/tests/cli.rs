use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvesing"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn corpus_table_passes() {
    let o = run(&["corpus"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("failed checks: 0"));
    assert!(out.contains("obstruction at (4,-1)"));
    assert!(out.contains("tau < mu"));
}

#[test]
fn analyze_nodal_curve() {
    let file = corpus("nodal-rational.json");
    let o = run(&["analyze", file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict: Degenerates"));
    assert!(out.contains("pass     milnor formula"));
    assert!(out.contains("pass     ledger"));
}

#[test]
fn json_output_is_deterministic() {
    let file = corpus("non-qh-rational.json");
    let args = ["analyze", file.to_str().unwrap(), "--format", "json", "--hc-window", "-1,3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"]["verdict"], "fails_via_tau");
    assert_eq!(v["verdict"]["tau"], 15);
    assert_eq!(v["options"]["hc_window"], serde_json::json!([-1, 3]));
    assert_eq!(v["global"]["delta"]["provenance"], "asserted-input");
}

#[test]
fn quick_mode() {
    let o = run(&["sing", "x^3 + y^4", "--vars", "x,y", "--truncation", "12"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("mu=6 tau=6"));
}

#[test]
fn input_errors_exit_2() {
    let p = scratch(
        "bad-parse.json",
        r#"{"label": "x", "genus": 0, "singularities": [{"kind": "plane", "label": "a", "f": "u^2 +", "variables": ["u", "v"]}]}"#,
    );
    let o = run(&["analyze", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("singularities[0].f"), "{}", stderr(&o));
    assert!(stderr(&o).contains("position 5"), "{}", stderr(&o));

    let o = run(&["analyze", "/nonexistent/curve.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["corpus", "--format", "yaml"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["sing", "u^2 + v^3", "--vars", "u,v,w"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn non_isolated_hits_the_cap() {
    let o = run(&["sing", "u^2"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("not isolated"));
}

#[test]
fn failed_check_exits_1() {
    let p = scratch(
        "bad-assertion.json",
        r#"{"label": "x", "genus": 0, "singularities": [{"kind": "plane", "label": "cusp", "f": "u^2 - v^3",
            "variables": ["u", "v"], "asserted": {"delta": 3, "r": 1, "note": "deliberately wrong"}}]}"#,
    );
    let o = run(&["analyze", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL     milnor formula"));
}
