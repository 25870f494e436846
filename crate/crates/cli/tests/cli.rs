use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_simplex-census"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_then_count_every_method() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    stdout(&["generate", "--n", "20", "--r", "3", "--out", path(&cfg)]);
    for method in ["closed", "ticks", "coords"] {
        let v = json(&["count", "--in", path(&cfg), "--method", method]);
        assert_eq!(v["total"], 524, "{method}");
        assert_eq!(v["delta1"], 288, "{method}");
    }
    let csv = stdout(&["count", "--in", path(&cfg), "--method", "ticks", "--csv"]);
    assert_eq!(csv, "delta1,delta2,delta3,total\n288,236,0,524\n");
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&["generate", "--n", "36", "--r", "3"]);
    let b = stdout(&["generate", "--n", "36", "--r", "3"]);
    assert_eq!(a, b);
    assert!(a.ends_with("}\n") && !a.contains('\r'));
}

#[test]
fn formulas() {
    assert_eq!(json(&["formula", "--which", "t2r", "--n", "36", "--r", "3"])["value"], 2604);
    assert_eq!(json(&["formula", "--which", "cor13", "--n", "36", "--r", "3"])["value"], 2604);
    assert_eq!(json(&["formula", "--which", "fk", "--partition", "7,8,8"])["value"], 784);
    assert_eq!(json(&["formula", "--which", "unit", "--partition", "12,12,12"])["value"], 2592);
    let bad = run(&["formula", "--which", "cor13", "--n", "35", "--r", "3"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn maximize_range() {
    let v = json(&["maximize", "--n", "20..21", "--r", "3"]);
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["result"]["value"], 524);
    let csv = stdout(&["maximize", "--n", "20", "--r", "3", "--csv"]);
    assert!(csv.lines().nth(1).unwrap().starts_with("20,3,3,524,"));
}

#[test]
fn verify_sweep() {
    let v = json(&["verify", "--n", "20..24", "--r", "3", "--workers", "2"]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    let table = stdout(&["verify", "--n", "20..21", "--r", "3", "--table"]);
    assert!(table.contains("all methods agree"));
}

#[test]
fn verify_odd() {
    let v = json(&["verify", "--n", "10..12", "--r", "3", "--odd"]);
    assert_eq!(v["ok"], true);
}

#[test]
fn hypergraph_tools() {
    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.json");
    let cfg = dir.path().join("cfg.json");
    let g = dir.path().join("g.json");
    stdout(&["hypergraph", "--make-pattern", "--r", "3", "--k", "3", "--out", path(&h)]);
    let hv: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&h).unwrap()).unwrap();
    assert_eq!(hv["n"], 10);
    assert_eq!(hv["edges"].as_array().unwrap().len(), 6);

    let b = json(&["hypergraph", "--blowup", "--in", path(&h), "--t", "2"]);
    assert_eq!(b["n"], 20);
    assert_eq!(b["edges"].as_array().unwrap().len(), 48);

    stdout(&["generate", "--n", "12", "--r", "3", "--out", path(&cfg)]);
    stdout(&["hypergraph", "--from-config", "--in", path(&cfg), "--out", path(&g)]);
    let c = json(&["hypergraph", "--contains", "--g", path(&g), "--h", path(&h)]);
    assert_eq!(c["contains"], true);
}

#[test]
fn errors_exit_nonzero() {
    let out = run(&["count", "--in", "/nonexistent/cfg.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = run(&["generate", "--n", "2", "--r", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["hypergraph", "--make-pattern", "--blowup", "--r", "3"]);
    assert!(!out.status.success());
}

#[test]
fn count_point_set() {
    let dir = tempfile::tempdir().unwrap();
    let pts = dir.path().join("pts.json");
    std::fs::write(&pts, r#"{"dim":2,"points":[["0","0"],["1","0"],["1/2","0+1/2*rt3"],["1/2","0-1/2*rt3"]]}"#)
        .unwrap();
    assert_eq!(json(&["count", "--in", path(&pts)])["total"], 2);
    assert_eq!(json(&["count", "--in", path(&pts), "--side-sq", "1"])["total"], 2);
    assert_eq!(json(&["count", "--in", path(&pts), "--side-sq", "3"])["total"], 0);
}
