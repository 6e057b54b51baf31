use std::process::Command;

use skeindef_cli::{run, Status};

fn call(args: &[&str]) -> (Status, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("skeindef").chain(args.iter().copied());
    let status = run(argv, &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn phi_values() {
    assert_eq!(call(&["phi", "--j", "0", "--i", "3"]).1, "-8\n");
    assert_eq!(call(&["phi", "--j", "1", "--i", "2"]).1, "16\n");
    assert_eq!(call(&["phi", "--j", "0", "--i", "0"]).1, "1\n");
}

#[test]
fn poly_extends_and_reuses_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let p = path.to_str().unwrap();
    let (status, out, _) = call(&["poly", "--k", "2", "--table", p]);
    assert_eq!(status, Status::Ok);
    assert!(out.contains("P_2 = 1*w^2 + -1*z*w + 1*z^2 + 1/2*w + 1/2*z"), "{out}");
    assert!(path.exists());
    let (status, out, _) = call(&["poly", "--k", "1", "--table", p]);
    assert_eq!(status, Status::Ok);
    assert_eq!(out, "P_0 = 1\nP_1 = 1*w + -1*z\n");
}

#[test]
fn bad_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let p = path.to_str().unwrap();
    // well formed, but P_1 does not satisfy the defining identity
    std::fs::write(&path, r#"{"0": [[0, 0, 1, 1]], "1": [[0, 1, 5, 1]]}"#).unwrap();
    let (status, _, err) = call(&["poly", "--k", "2", "--table", p]);
    assert_eq!(status, Status::Differ, "{err}");
    std::fs::write(&path, r#"{"1": "w - z"}"#).unwrap();
    let (status, _, err) = call(&["poly", "--k", "2", "--table", p]);
    assert_eq!(status, Status::Malformed, "{err}");
}

#[test]
fn gen_then_expand() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("kinks.json");
    let f = file.to_str().unwrap();
    assert_eq!(call(&["gen", "kink", "--count", "2", "-o", f]).0, Status::Ok);
    let (status, out, _) = call(&["expand", f, "--order", "2"]);
    assert_eq!(status, Status::Ok);
    assert!(out.starts_with("order 2\nstate sum\n"));
    assert!(out.ends_with("EQUAL\n"), "{out}");
    let (status, out, _) = call(&["--sequential", "bracket", f]);
    assert_eq!(status, Status::Ok);
    assert!(out.contains("*t^"));
}

#[test]
fn gen_output_round_trips() {
    let (_, text, _) = call(&["gen", "braid", "--strands", "3", "--word", "1,-2,1"]);
    let d = skeindef::diagram::io::parse_diagram(&text).unwrap();
    assert_eq!(d.crossing_count(), 3);
    assert_eq!(skeindef::diagram::io::render_diagram(&d) + "\n", text);
    let (_, text, _) = call(&["gen", "torus", "--class", "1,-1", "--copies", "2", "--over", "0,1"]);
    assert_eq!(skeindef::diagram::io::parse_diagram(&text).unwrap().crossing_count(), 2);
}

#[test]
fn star_prints_each_order() {
    let (status, out, _) = call(&["star", "--surface", "torus", "--alpha", "1,0", "--beta", "0,1", "--order", "1"]);
    assert_eq!(status, Status::Ok);
    assert_eq!(out, "lambda_0\n(1,-1)\t-1\n(1,1)\t-1\nlambda_1\n(1,-1)\t-1\n(1,1)\t1\n");
    let (status, out, _) = call(&["star", "--surface", "annulus", "--alpha", "1", "--beta", "2", "--order", "0"]);
    assert_eq!(status, Status::Ok);
    assert_eq!(out, "lambda_0\ncore^3\t1\n");
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(call(&["bracket", "/definitely/missing.json"]).0, Status::Malformed);
    assert_eq!(call(&["star", "--alpha", "2,4", "--beta", "0,1"]).0, Status::Ok);
    assert_eq!(call(&["star", "--alpha", "x", "--beta", "0,1"]).0, Status::Malformed);
    assert_eq!(call(&["gen", "braid", "--strands", "2", "--word", "3"]).0, Status::Malformed);
    assert_eq!(call(&["verify", "nope"]).0, Status::Malformed);
    assert_eq!(call(&["frobnicate"]).0, Status::Malformed);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"surface\": {\"kind\": \"sphere\"}}").unwrap();
    assert_eq!(call(&["bracket", bad.to_str().unwrap()]).0, Status::Malformed);
}

#[test]
fn verify_suites_report() {
    let (status, out, _) = call(&["verify", "phi"]);
    assert_eq!(status, Status::Ok);
    assert!(out.starts_with("PASS phi coefficients"));
    let (status, out, _) = call(&["verify", "main-theorem", "--quick", "--max-order", "3"]);
    assert_eq!(status, Status::Ok, "{out}");
    assert!(out.ends_with("2 passed, 0 failed\n"));
    let (status, out, _) = call(&["verify", "differentiability", "--quick"]);
    assert_eq!(status, Status::Differ);
    assert!(out.contains("FAIL differentiability"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_skeindef");
    let ok = Command::new(bin).args(["phi", "--j", "0", "--i", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "-8\n");
    let bad = Command::new(bin).args(["expand", "nowhere.json", "--order", "1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let usage = Command::new(bin).arg("expand").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("env_table.json");
    let poly = Command::new(bin).args(["poly", "--k", "2"]).env("SKEINDEF_POLY_TABLE", &table).output().unwrap();
    assert_eq!(poly.status.code(), Some(0));
    assert!(table.exists());
}
