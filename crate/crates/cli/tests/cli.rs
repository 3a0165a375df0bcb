use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(format!("{name}.txt"));
    p.to_string_lossy().into_owned()
}

fn kflow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kflow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = kflow(args);
    assert!(
        out.status.success(),
        "{args:?} exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn code(args: &[&str]) -> i32 {
    kflow(args).status.code().expect("exit code")
}

#[test]
fn counts_from_files() {
    let g = fixture("3k2");
    let v = json(&["count", "--graph", &g, "--kvec", "2,2,3"]);
    assert_eq!(v["count"], "2");
    assert_eq!(v["mode"], "kvec");
    assert_eq!(v["nowhere_zero"], true);

    let k3 = fixture("k3");
    assert_eq!(json(&["count", "--graph", &k3, "--k", "5"])["count"], "8");
    assert_eq!(
        json(&["count", "--graph", &k3, "--k", "5", "--zk"])["count"],
        "4"
    );
    assert_eq!(
        json(&["count", "--graph", &fixture("bridge"), "--k", "7"])["count"],
        "0"
    );
}

#[test]
fn options_before_or_after_the_subcommand() {
    let g = fixture("k4");
    let after = json(&["count", "--graph", &g, "--k", "3"]);
    let before = json(&["--graph", &g, "count", "--k", "3"]);
    assert_eq!(after, before);
}

#[test]
fn totally_cyclic_orientations() {
    let v = json(&["tco", "--graph", &fixture("k3"), "--list"]);
    assert_eq!(v["count"], 2);
    let mut listed: Vec<&str> = v["orientations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap())
        .collect();
    listed.sort();
    assert_eq!(listed, ["+++", "---"]);
    assert_eq!(json(&["tco", "--graph", &fixture("3k2")])["count"], 6);
    assert_eq!(json(&["tco", "--graph", &fixture("bridge")])["count"], 0);
}

#[test]
fn reciprocity_at_worked_point() {
    let v = json(&["recip", "--graph", &fixture("3k2"), "--kvec", "2,2,3"]);
    assert_eq!(v["lhs"], "40");
    assert_eq!(v["rhs"], "40");
    assert_eq!(v["pass"], true);
}

#[test]
fn piece_through_base_point() {
    let v = json(&["interp", "--graph", &fixture("3k2"), "--base", "5,6,8"]);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["max_residual"], "0");
    assert_eq!(
        v["display"],
        "-k1^2 + 2*k1*k2 + 2*k1*k3 - 5*k1 - k2^2 + 2*k2*k3 - 3*k2 - k3^2 - k3 + 6"
    );
}

#[test]
fn univariate_polynomials() {
    let g = fixture("3k2");
    assert_eq!(
        json(&["interp", "--graph", &g, "--univariate"])["display"],
        "3*k^2 - 9*k + 6"
    );
    let k3 = fixture("k3");
    assert_eq!(
        json(&["interp", "--graph", &k3, "--univariate"])["display"],
        "2*k - 2"
    );
    assert_eq!(
        json(&["interp", "--graph", &k3, "--univariate", "--zk"])["display"],
        "k - 1"
    );
}

#[test]
fn orientation_count_at_zero() {
    for (name, want) in [("k3", 2), ("2k2", 2), ("3k2", 6), ("k4", 24)] {
        let v = json(&["zero", "--graph", &fixture(name)]);
        assert_eq!(v["tco_count"], want, "{name}");
        assert_eq!(v["pass"], true, "{name}");
        for p in v["pieces"].as_array().unwrap() {
            assert_eq!(p["value"], want.to_string(), "{name}");
        }
    }
}

#[test]
fn walls_on_a_segment() {
    let v = json(&[
        "walls",
        "--graph",
        &fixture("3k2"),
        "--segment",
        "2,3,2:2,3,9",
        "--steps",
        "7",
    ]);
    let walls = v["walls"].as_array().unwrap();
    assert_eq!(walls.len(), 1);
    assert_eq!(walls[0]["equation"], "k3 = k1 + k2");
    assert_eq!(walls[0]["crossing"], "3/7");
}

#[test]
fn oracle_agrees() {
    let v = json(&[
        "oracle-check",
        "--graph",
        &fixture("k4"),
        "--kvec",
        "2,2,2,2,2,2",
    ]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["modes"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(
        code(&["recip", "--graph", &fixture("bridge"), "--kvec", "1,1,1,1"]),
        2
    );
    assert_eq!(
        code(&["count", "--graph", &fixture("k3"), "--kvec", "1,2"]),
        2
    );
    assert_eq!(
        code(&["count", "--graph", &fixture("k3"), "--kvec", "1,0,2"]),
        2
    );
    assert_eq!(
        code(&["count", "--graph", "/nonexistent/graph.txt", "--k", "3"]),
        2
    );
    assert_eq!(code(&["count", "--example", "nosuch", "--k", "3"]), 2);
    assert_eq!(code(&["count", "--k", "3"]), 2);
    assert_eq!(
        code(&[
            "count",
            "--graph",
            &fixture("k3"),
            "--example",
            "k3",
            "--k",
            "3"
        ]),
        2
    );
    assert_eq!(
        code(&["tco", "--graph", &fixture("prism"), "--max-edges", "5"]),
        3
    );
    assert_eq!(
        code(&["zero", "--graph", &fixture("k4"), "--max-edges", "5"]),
        3
    );
}

#[test]
fn thread_count_does_not_change_output() {
    let g = fixture("prism");
    for args in [
        vec!["count", "--graph", &g, "--kvec", "2,3,2,3,2,3,4,4,4"],
        vec![
            "recip",
            "--graph",
            &g,
            "--kvec",
            "3,7,15,31,63,127,255,511,1023",
        ],
        vec!["tco", "--graph", &g, "--list"],
    ] {
        let mut one = args.clone();
        one.extend(["--jobs", "1"]);
        let mut four = args.clone();
        four.extend(["--jobs", "4"]);
        assert_eq!(kflow(&one).stdout, kflow(&args).stdout, "{args:?}");
        assert_eq!(kflow(&four).stdout, kflow(&args).stdout, "{args:?}");
    }
}

#[test]
fn dumped_graphs_reload() {
    for name in ["k3", "2k2", "3k2", "k4", "prism", "bridge", "loop", "union"] {
        let text = kflow(&["--example", name, "--dump-graph", "--format", "table"]);
        assert!(text.status.success());
        let dir = std::env::temp_dir().join(format!("kflow-cli-{}-{name}", std::process::id()));
        std::fs::write(&dir, &text.stdout).unwrap();
        let path = dir.to_string_lossy().into_owned();
        let from_file = json(&["count", "--graph", &path, "--k", "3"]);
        let builtin = json(&["count", "--example", name, "--k", "3"]);
        assert_eq!(from_file["count"], builtin["count"], "{name}");

        let as_json = kflow(&["--example", name, "--dump-graph"]);
        std::fs::write(&dir, &as_json.stdout).unwrap();
        assert_eq!(
            json(&["count", "--graph", &path, "--k", "3"])["count"],
            builtin["count"],
            "{name}"
        );
        std::fs::remove_file(&dir).unwrap();
    }
}

#[test]
fn table_format() {
    let out = kflow(&[
        "count",
        "--graph",
        &fixture("3k2"),
        "--kvec",
        "2,2,3",
        "--format",
        "table",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let count = text
        .lines()
        .find(|l| l.starts_with("count"))
        .expect("count row");
    assert_eq!(count.split_whitespace().collect::<Vec<_>>(), ["count", "2"]);
    assert!(text
        .lines()
        .any(|l| l.split_whitespace().collect::<Vec<_>>() == ["capacities", "2,", "2,", "3"]));
}
