//! The binary, end to end.

mod common;

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twisted-deligne"))
        .args(args)
        .output()
        .unwrap()
}

fn fixture(name: &str) -> String {
    common::fixture_path(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn deligne_on_the_annulus() {
    let o = run(&[
        "deligne",
        "--input",
        &fixture("annulus3.json"),
        "--twist",
        "mobius",
        "--n",
        "1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "Z/2 (+) Forms(0)\n");
}

#[test]
fn compute_on_rp3() {
    let o = run(&[
        "compute",
        "--input",
        &fixture("rp3.json"),
        "--twist",
        "w1",
        "--ring",
        "z",
    ]);
    assert_eq!(stdout(&o), "H0=0 H1=Z/2 H2=0 H3=Z/2\n");
    let o = run(&[
        "compute",
        "--input",
        &fixture("rp3.json"),
        "--twist",
        "w1",
        "--ring",
        "z",
        "--degree",
        "3",
    ]);
    assert_eq!(stdout(&o), "H3=Z/2\n");
}

#[test]
fn verify_all_on_rp2_exits_zero() {
    let o = run(&[
        "verify",
        "all",
        "--input",
        &fixture("rp2.json"),
        "--twist",
        "w1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("result: pass\n"));
}

#[test]
fn json_output_is_deterministic() {
    let args = [
        "verify",
        "all",
        "--input",
        &fixture("rp2.json"),
        "--twist",
        "w1",
        "--json",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn generate_writes_a_loadable_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c5.json");
    let o = run(&["generate", "circle:5", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let o = run(&[
        "compute",
        "--input",
        out.to_str().unwrap(),
        "--twist",
        "mobius",
    ]);
    assert_eq!(stdout(&o), "H0=0 H1=Z/2\n");
}

#[test]
fn errors_are_single_json_lines_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"format_version": 1, "cells": [[{"id": "a"}], [{"id": "e", "faces": ["a", "b"]}]]}"#,
    )
    .unwrap();
    for args in [
        vec!["compute", "--input", bad.to_str().unwrap()],
        vec!["compute", "--input", "/nonexistent.json"],
        vec!["compute", "--input", &fixture("rp2.json"), "--twist", "w2"],
        vec!["generate", "torus", "--out", "/tmp/x.json"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1);
        let v: serde_json::Value = serde_json::from_str(&err).unwrap();
        assert!(v["error"].is_string() && v["message"].is_string());
    }
}

#[test]
fn twists_lists_classes() {
    let o = run(&["twists", "--input", &fixture("rp3.json")]);
    let text = stdout(&o);
    assert!(text.starts_with("2 twist classes"));
    assert!(text.contains("[trivial]") && text.contains("[w1]"));
}
