use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_closedrees"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn edge_list(n: usize, edges: &[(usize, usize)]) -> String {
    let mut s = format!("{n} {}\n", edges.len());
    for (a, b) in edges {
        s.push_str(&format!("{a} {b}\n"));
    }
    s
}

fn complete(n: usize) -> String {
    let edges: Vec<_> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    edge_list(n, &edges)
}

fn run(args: &[&str], file: Option<&PathBuf>) -> Output {
    let mut c = bin();
    c.args(args);
    if let Some(f) = file {
        c.arg(f);
    }
    c.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_path_reports_rees_regularity() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "p4.txt", &edge_list(4, &[(1, 2), (2, 3), (3, 4)]));
    let out = run(&["analyze"], Some(&f));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "closed");
    assert_eq!(v["report"]["reg_rees"]["value"], 3);
    assert_eq!(v["report"]["reg_rees"]["source"], "theorem:rees-regularity");
}

#[test]
fn analyze_accepts_json_input() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "g.json", r#"{"n": 3, "edges": [[1, 3], [2, 3]]}"#);
    let out = run(&["analyze"], Some(&f));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["labeling"], serde_json::json!([1, 3, 2]));
}

#[test]
fn analyze_cycle_is_bounds_only() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "c4.txt", &edge_list(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]));
    let out = run(&["analyze"], Some(&f));
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["status"], "not_closed");
    assert_eq!(v["bounds"]["rees_reg_lb"]["value"], 2);
}

#[test]
fn malformed_input_exits_1() {
    let d = TempDir::new().unwrap();
    for (name, text) in [("bad.txt", "3 2\n1 2\nx y\n"), ("loop.txt", "3 1\n2 2\n"), ("bad.json", "{\"n\": 2}")] {
        let f = write(&d, name, text);
        assert_eq!(run(&["analyze"], Some(&f)).status.code(), Some(1), "{name}");
        assert_eq!(run(&["verify"], Some(&f)).status.code(), Some(1), "{name}");
    }
    let missing = d.path().join("nope.txt");
    assert_eq!(run(&["analyze"], Some(&missing)).status.code(), Some(1));
}

#[test]
fn bad_flags_exit_1() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "p3.txt", &edge_list(3, &[(1, 2), (2, 3)]));
    assert_eq!(run(&["verify", "--degree-bound", "1"], Some(&f)).status.code(), Some(1));
    assert_eq!(run(&["verify", "--smax", "0"], Some(&f)).status.code(), Some(1));
    assert_eq!(run(&["verify", "--field", "prime:101"], Some(&f)).status.code(), Some(1));
    assert_eq!(run(&["catalog", "--n", "3", "--check", "bogus"], None).status.code(), Some(1));
}

#[test]
fn verify_path_agrees() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "p5.txt", &edge_list(5, &[(1, 2), (2, 3), (3, 4), (4, 5)]));
    let out = run(&["verify", "--smax", "3", "--degree-bound", "4"], Some(&f));
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["discrepancies"], serde_json::json!([]));
    assert_eq!(v["oracle"]["rees"]["value"], 4);
}

#[test]
fn verify_screening_field() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "p4.txt", &edge_list(4, &[(1, 2), (2, 3), (3, 4)]));
    let out = run(&["verify", "--field", "prime:2147483647"], Some(&f));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["oracle"]["screening_agrees"], true);
}

// reg F(J_{K_4}) is 1 (one Plücker quadric), below the lower bound omega - 2 = 2.
#[test]
fn verify_k4_names_fiber_lower_bound() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "k4.txt", &complete(4));
    let out = run(&["verify"], Some(&f));
    assert_eq!(out.status.code(), Some(4));
    let v = json(&out);
    let names: Vec<&str> = v["discrepancies"].as_array().unwrap().iter().map(|d| d["invariant"].as_str().unwrap()).collect();
    assert_eq!(names, vec!["fiber_reg_lower"]);
    assert_eq!(v["oracle"]["fiber"]["value"], 1);
    assert_eq!(v["oracle"]["relation_profile"]["reltype"], 2);
}

#[test]
fn verify_not_closed_exits_2() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "claw.txt", &edge_list(4, &[(1, 2), (1, 3), (1, 4)]));
    assert_eq!(run(&["verify"], Some(&f)).status.code(), Some(2));
}

#[test]
fn verify_large_complete_graph_exits_3() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "k20.txt", &complete(20));
    let out = run(&["verify"], Some(&f));
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("scale"));
}

#[test]
fn output_flag_writes_file() {
    let d = TempDir::new().unwrap();
    let f = write(&d, "p3.txt", &edge_list(3, &[(1, 2), (2, 3)]));
    let o = d.path().join("out.json");
    let out = bin().args(["analyze", "-o"]).arg(&o).arg(&f).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(o).unwrap()).unwrap();
    assert_eq!(v["report"]["reg_rees"]["value"], 2);
}

fn catalog_lines(out: &Output) -> (Vec<Value>, Value) {
    let mut lines: Vec<Value> =
        String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary = lines.pop().unwrap()["summary"].clone();
    (lines, summary)
}

// K_2 has a polynomial-ring Rees algebra, so reg R = 0 rather than n - c = 1.
#[test]
fn catalog_two_vertices() {
    let out = run(&["catalog", "--n", "2"], None);
    assert_eq!(out.status.code(), Some(4));
    let (entries, summary) = catalog_lines(&out);
    assert_eq!(entries.len(), 1);
    assert_eq!(summary["graphs"], 1);
    assert_eq!(entries[0]["rees_h_degree"], 0);
    assert_eq!(entries[0]["reltype"], 0);
}

#[test]
fn catalog_reltype_four_vertices() {
    let out = run(&["catalog", "--n", "4", "--check", "reltype"], None);
    assert_eq!(out.status.code(), Some(0));
    let (entries, summary) = catalog_lines(&out);
    assert_eq!(entries.len(), 22);
    assert_eq!(summary["max_reltype"], 2);
    assert_eq!(summary["max_reltype_only_with_k4"], true);
    assert_eq!(summary["discrepancies"], 0);
}

#[test]
fn catalog_order_independent_of_workers() {
    let a = bin().args(["catalog", "--n", "4", "--check", "spread"]).env("CLOSEDREES_WORKERS", "3").output().unwrap();
    let b = bin().args(["catalog", "--n", "4", "--check", "spread", "--workers", "1"]).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let (entries, _) = catalog_lines(&a);
    let codes: Vec<u64> = entries.iter().map(|e| e["encoding"].as_u64().unwrap()).collect();
    assert!(codes.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn catalog_full_check_refuses_seven() {
    assert_eq!(run(&["catalog", "--n", "7"], None).status.code(), Some(3));
}
