use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbtrace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn trace_on_petersen() {
    let v = json(&["trace", "--generate", "petersen", "--fn", "exp:z=0.5"]);
    assert!(v["residuals"]["circuit"].as_f64().unwrap() < 1e-8);
    assert!(v["residuals"]["pretrace"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["graph"]["n"], 10);
    assert_eq!(v["graph"]["q"], 2);
}

#[test]
fn graph_of_a_cycle() {
    let v = json(&["graph", "--generate", "cycle:5"]);
    assert_eq!(v["results"]["girth"], 5);
    assert_eq!(v["results"]["q"], 1);
}

#[test]
fn zeta_prints_exact_rationals() {
    let v = json(&["zeta", "--generate", "cycle:3", "--rmax", "9"]);
    let log: Vec<&str> = v["results"]["log_series"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(log, ["0", "0", "0", "2", "0", "0", "1", "0", "0", "2/3"]);
    let det: Vec<&str> = v["results"]["reciprocal_series"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(det, ["1", "0", "0", "-2", "0", "0", "1", "0", "0", "0"]);
}

#[test]
fn schema_keys() {
    let v = json(&["nbw", "--generate", "complete:4", "--rmax", "6"]);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        ["command", "graph", "residuals", "results", "runtime_ms"]
    );
    assert_eq!(v["command"], "nbw");
    assert!(v["runtime_ms"].is_null());
    assert_eq!(v["results"]["f_r"][3], 24);
    let timed = json(&["nbw", "--generate", "complete:4", "--timing"]);
    assert!(timed["runtime_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn output_is_byte_identical() {
    for format in ["json", "csv"] {
        let args = [
            "spectrum",
            "--generate",
            "random_regular:12,3",
            "--seed",
            "11",
            "--format",
            format,
        ];
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
}

#[test]
fn seed_flag_fills_in_the_family_seed() {
    let a = json(&[
        "graph",
        "--generate",
        "random_regular:10,3",
        "--seed",
        "7",
        "--edges",
    ]);
    let b = json(&["graph", "--generate", "random_regular:10,3,7", "--edges"]);
    let c = json(&[
        "graph",
        "--generate",
        "random_regular:10,3",
        "--seed",
        "8",
        "--edges",
    ]);
    assert_eq!(a["results"]["edge_list"], b["results"]["edge_list"]);
    assert_ne!(a["results"]["edge_list"], c["results"]["edge_list"]);
}

#[test]
fn csv_layout() {
    let out = run(&[
        "walks",
        "--generate",
        "cycle:4",
        "--rmax",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("section,key,value\ncommand,,walks\ngraph,n,4\ngraph,q,1\n"));
    assert!(text.contains("results,counts[4],8\n"));
    assert!(text.contains("residuals,adjacency_powers,0.0\n"));
}

#[test]
fn reads_edge_lists() {
    let path = std::env::temp_dir().join(format!("nbtrace-cli-{}.txt", std::process::id()));
    std::fs::write(&path, "4 2\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let v = json(&["graph", "--input", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["results"]["girth"], 3);
    assert_eq!(v["results"]["ramanujan"]["is_ramanujan"], true);
}

#[test]
fn residual_above_tolerance_exits_2() {
    let out = run(&[
        "trace",
        "--generate",
        "petersen",
        "--fn",
        "exp:z=0.5",
        "--tol",
        "1e-17",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_ok());
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds tolerance"));
}

#[test]
fn input_errors_exit_1() {
    let cases: &[&[&str]] = &[
        &["trace", "--generate", "petersen", "--fn", "sin:x=1"],
        &["graph"],
        &["graph", "--generate", "moebius:5"],
        &["graph", "--input", "/nonexistent/graph.txt"],
        &["walks", "--generate", "cycle:4", "--from", "9"],
        &["heat", "--generate", "petersen", "--t", "-1"],
        &["heat", "--lattice", "1,0", "--kind", "schrodinger"],
        &["graph", "--generate", "cycle:4", "--tol", "-1"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = run(&["trace", "--generate", "petersen", "--fn", "sin:x=1"]);
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(
        msg.contains("unknown function") && msg.contains("cheb:Y<r>"),
        "{msg}"
    );
}

#[test]
fn tree_and_lattice_modes() {
    let v = json(&["heat", "--tree", "3", "--t", "0.7"]);
    assert!(v["graph"].is_null());
    assert!(v["residuals"]["mass"].as_f64().unwrap() < 1e-10);
    let v = json(&["heat", "--tree", "2", "--t", "0.7", "--kind", "schrodinger"]);
    assert!(v["residuals"]["mass"].as_f64().unwrap() < 1e-10);
    let v = json(&["walks", "--tree", "2", "--distance", "0", "--rmax", "4"]);
    assert_eq!(v["results"]["counts"][2], "3");
    assert_eq!(v["residuals"]["distance_chain"], 0.0);
    let v = json(&["walks", "--lattice", "0,0", "--rmax", "4"]);
    assert_eq!(v["results"]["counts"][4], "36");
}

#[test]
fn heat_and_fourier_on_graphs() {
    let v = json(&["heat", "--generate", "petersen", "--t", "1"]);
    assert!(v["residuals"]["oracle"].as_f64().unwrap() < 1e-8);
    let v = json(&[
        "heat",
        "--generate",
        "complete:4",
        "--t",
        "1",
        "--kind",
        "schrodinger",
    ]);
    assert!(v["residuals"]["unitarity"].as_f64().unwrap() < 1e-8);
    let v = json(&["fourier", "--generate", "petersen", "--p", "1.5"]);
    assert_eq!(v["results"]["leading_order"], 5);
    assert_eq!(v["results"]["girth"], 5);
}
