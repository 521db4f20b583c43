use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn chroma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chroma"))
        .args(args)
        .env_remove("CHROMA_MAX_N")
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const C6_EDGES: &str = "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n";

#[test]
fn check_c6_avoids() {
    let d = TempDir::new().unwrap();
    let g = write(&d, "c6.txt", C6_EDGES);
    let c = write(&d, "c6.col", "0 1 2 0 1 2\n");
    let o = chroma(&["check", "--graph", s(&g), "--coloring", s(&c), "-l", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("avoids"));
}

#[test]
fn check_k6_finds_witness() {
    let d = TempDir::new().unwrap();
    let g = write(&d, "k6.g6", "E~~w\n");
    let c = write(&d, "k6.col", "0 1 2 3 4 5\n");
    let o = chroma(&["--json", "check", "--graph", s(&g), "--coloring", s(&c), "-l", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["avoids"], false);
    assert_eq!(v["witness"].as_array().unwrap().len(), 6);
}

#[test]
fn improper_coloring_is_an_input_error() {
    let d = TempDir::new().unwrap();
    let g = write(&d, "k3.g6", "Bw\n");
    let c = write(&d, "k3.col", "0 0 1\n");
    let o = chroma(&["check", "--graph", s(&g), "--coloring", s(&c), "-l", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("{0, 1}"));
}

#[test]
fn malformed_inputs_exit_two() {
    let d = TempDir::new().unwrap();
    let bad = write(&d, "bad.txt", "3 2\n0 1\n");
    let c = write(&d, "c.col", "0 1 2\n");
    let o = chroma(&["check", "--graph", s(&bad), "--coloring", s(&c), "-l", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"));
    let missing = d.path().join("nope.g6");
    let o = chroma(&["feasible", "--graph", s(&missing), "--tree", "path:3"]);
    assert_eq!(o.status.code(), Some(2));
    let g = write(&d, "k3.g6", "Bw\n");
    let o = chroma(&["feasible", "--graph", s(&g), "--tree", "tripod"]);
    assert_eq!(o.status.code(), Some(2));
    let short = write(&d, "short.col", "0 1\n");
    let o = chroma(&["check", "--graph", s(&g), "--coloring", s(&short), "-l", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sparse_witness_request_is_rejected() {
    let d = TempDir::new().unwrap();
    let g = write(&d, "c6.txt", C6_EDGES);
    let c = write(&d, "c6.col", "0 1 2 0 1 2\n");
    let o = chroma(&["witness", "--graph", s(&g), "--coloring", s(&c), "-k", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn witness_double_star_and_embedding() {
    let d = TempDir::new().unwrap();
    let g = write(&d, "k6.g6", "E~~w\n");
    let c = write(&d, "k6.col", "0 1 2 3 4 5\n");
    let (gs, cs) = (s(&g), s(&c));
    let o = chroma(&["--json", "witness", "--graph", gs, "--coloring", cs, "-k", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["witness"].as_array().unwrap().len(), 6);
    assert!(v["trace"]["steps"].is_array());

    let o = chroma(&["double-star", "--graph", gs, "--coloring", cs, "-a", "2", "-b", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("centers"));

    let o = chroma(&["embed-tree", "--graph", gs, "--coloring", cs, "--tree", "path:3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn tree_files_are_accepted() {
    let d = TempDir::new().unwrap();
    let g = write(&d, "k4.g6", "C~\n");
    let t = write(&d, "p3.tree", "3\n0 1\n1 2\n2 3\n");
    let o = chroma(&["--json", "feasible", "--graph", s(&g), "--tree", s(&t)]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"]["feasible"], false);
}

#[test]
fn feasible_c6() {
    let d = TempDir::new().unwrap();
    let g = write(&d, "c6.txt", C6_EDGES);
    let o = chroma(&["feasible", "--graph", s(&g), "--tree", "path:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 1 2 0 1 2"));
}

#[test]
fn enumerate_json_report() {
    let o = chroma(&["--json", "enumerate", "-n", "6", "--tree", "path:3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], 6);
    assert_eq!(v["scanned"], 156);
    for key in ["n", "pattern", "extremal", "bounds", "feasible_count"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn enumerate_is_deterministic_across_workers() {
    let one = chroma(&["--json", "--workers", "1", "enumerate", "-n", "7", "-k", "2"]);
    let four = chroma(&["--json", "--workers", "4", "enumerate", "-n", "7", "-k", "2"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn enumerate_classic_and_conjecture() {
    let o = chroma(&["--json", "enumerate", "-n", "7", "--no-long-cycle", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], 9);
    let o = chroma(&["enumerate", "-n", "5", "--conjecture", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("VIOLATION"));
}

#[test]
fn enumerate_rejects_oversized_n() {
    let o = chroma(&["enumerate", "-n", "9", "-k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = chroma(&["enumerate", "-n", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construct_writes_both_files() {
    let d = TempDir::new().unwrap();
    let prefix = d.path().join("two_triangles");
    let o = chroma(&[
        "construct",
        "--family",
        "disjoint-cliques",
        "-n",
        "6",
        "--size",
        "3",
        "--out",
        s(&prefix),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let g6 = fs::read_to_string(d.path().join("two_triangles.g6")).unwrap();
    let col = fs::read_to_string(d.path().join("two_triangles.col")).unwrap();
    assert_eq!(g6.lines().count(), 1);
    assert_eq!(col.split_whitespace().count(), 6);

    let g = d.path().join("two_triangles.g6");
    let c = d.path().join("two_triangles.col");
    let o = chroma(&["check", "--graph", s(&g), "--coloring", s(&c), "-l", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn construct_error_leaves_no_files() {
    let d = TempDir::new().unwrap();
    let prefix = d.path().join("bad");
    let o = chroma(&[
        "construct",
        "--family",
        "disjoint-cliques",
        "-n",
        "7",
        "--size",
        "3",
        "--out",
        s(&prefix),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(fs::read_dir(d.path()).unwrap().count(), 0);
    let o = chroma(&["construct", "--family", "mod-colored-cycle", "-n", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_subset_prints_table() {
    let o = chroma(&["verify", "--criteria", "1,8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 2);
    let a = chroma(&["--json", "--seed", "7", "verify", "--criteria", "1"]);
    let b = chroma(&["--json", "--seed", "7", "verify", "--criteria", "1"]);
    assert_eq!(a.stdout, b.stdout);
    let o = chroma(&["verify", "--criteria", "11"]);
    assert_eq!(o.status.code(), Some(2));
}
