use std::fs;
use std::process::{Command, Output};

use qwl_core::{build_host, CutFamily, HostKind, LabeledGraph};

fn qwl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwl"))
        .args(args)
        .env_remove("QWL_BUDGET")
        .output()
        .expect("run qwl")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_host_json_matches_library() {
    let out = qwl(&["gen", "--host", "firecracker", "-n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let h = build_host(HostKind::Firecracker, 3).unwrap();
    assert_eq!(stdout(&out), h.graph.to_json());
}

#[test]
fn gen_writes_graph_and_cuts_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let cuts = dir.path().join("c.json");
    let out = qwl(&[
        "gen", "--host", "banana", "-n", "2", "--cuts",
        "--out", graph.to_str().unwrap(),
        "--cuts-out", cuts.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let g = LabeledGraph::from_json(&fs::read_to_string(graph).unwrap()).unwrap();
    let family = CutFamily::from_json(&fs::read_to_string(cuts).unwrap()).unwrap();
    assert!(family.partitions(&g));
}

#[test]
fn gen_guest_dot() {
    let out = qwl(&["gen", "--guest", "-n", "1", "--format", "dot"]);
    assert_eq!(stdout(&out), "graph G {\n  0 -- 1;\n  0 -- 2;\n  1 -- 2;\n}\n");
}

#[test]
fn gen_needs_guest_or_host() {
    assert_eq!(qwl(&["gen", "-n", "2"]).status.code(), Some(2));
    assert_eq!(qwl(&["gen", "--guest", "-n", "2", "--cuts"]).status.code(), Some(2));
}

#[test]
fn wl_csv_leaves_runtime_empty_without_timing() {
    let out = qwl(&["wl", "-n", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("host,n,method,wirelength,agree,runtime_ms"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 12);
    assert!(rows.contains(&"caterpillar,3,cuts,252,true,"));
    assert!(rows.iter().all(|r| r.ends_with(",true,")));

    let timed = stdout(&qwl(&["wl", "--host", "cylinder", "-n", "2", "--method", "distance", "--format", "csv", "--timing"]));
    let row = timed.lines().nth(1).unwrap();
    assert!(row.starts_with("cylinder,2,distance,21,true,"));
    assert!(row.rsplit(',').next().unwrap().parse::<u64>().is_ok());
}

#[test]
fn wl_json_is_parseable() {
    let out = qwl(&["wl", "--host", "banana", "-n", "4", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["wirelength"] == 924 && r["runtime_ms"].is_null()));
}

#[test]
fn wl_rejects_out_of_range_dimension() {
    let out = qwl(&["wl", "-n", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn verify_prints_pass_lines() {
    let out = qwl(&["verify", "--n-max", "3", "--brute-force"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().filter(|l| !l.contains("checks,")).all(|l| l.starts_with("PASS ")));
    assert!(text.contains("n=2 brute force = closed form"));
    assert!(text.contains("skipped: 27 vertices over budget 12"));
}

#[test]
fn budget_env_is_used_and_flag_wins() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_qwl"));
        cmd.args(["search", "--host", "caterpillar", "-n", "2", "--exhaustive"]).args(extra);
        match env {
            Some(v) => cmd.env("QWL_BUDGET", v),
            None => cmd.env_remove("QWL_BUDGET"),
        };
        cmd.output().unwrap().status.code()
    };
    assert_eq!(run(None, &[]), Some(0));
    assert_eq!(run(Some("8"), &[]), Some(2));
    assert_eq!(run(Some("8"), &["--budget", "9"]), Some(0));
}

#[test]
fn search_writes_result_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = qwl(&[
        "search", "--host", "cylinder", "-n", "3", "--restarts", "4", "--steps", "500",
        "--anneal", "--seed", "7", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r: qwl_core::SearchResult = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r.seed, 7);
    assert!(r.best_wirelength >= 171);
}

#[test]
fn exhaustive_conflicts_with_local_options() {
    let out = qwl(&["search", "--host", "banana", "-n", "2", "--exhaustive", "--restarts", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_csv_for_selected_hosts() {
    let out = qwl(&["report", "--n-min", "2", "--n-max", "3", "--hosts", "cylinder,banana"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "host,n,formula,cuts,distance,agree\n\
         cylinder,2,21,21,21,true\n\
         banana,2,44,44,44,true\n\
         cylinder,3,171,171,171,true\n\
         banana,3,232,232,232,true\n"
    );
}

#[test]
fn report_with_unbuildable_dimension_fails() {
    let out = qwl(&["report", "--n-min", "1", "--n-max", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("requires n >= 2"));
}

#[test]
fn threads_flag_is_global() {
    let out = qwl(&["search", "--threads", "1", "--host", "firecracker", "-n", "2", "--exhaustive", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("firecracker,2,exhaustive,42,42,362880,0"));
}
