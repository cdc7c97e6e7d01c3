//! End-to-end tests of the command-line surface and its exit-code contract:
//! 0 success/Holds, 1 usage error, 2 violation or invalid certificate,
//! 3 inconclusive under --strict.

use std::path::PathBuf;
use std::process::{Command, Output};

fn mu_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mu-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("mu_lab_cli_{name}"))
}

#[test]
fn mu_of_k4_prints_the_resolved_value() {
    let out = mu_lab(&["mu", "C~"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "mu = 3 [3,3]");
}

#[test]
fn mu_accepts_names_and_explains() {
    let out = mu_lab(&["mu", "petersen", "--explain"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("mu = 5"), "{text}");
    assert!(text.contains("R6"), "{text}");
}

#[test]
fn mu_reads_graph_files() {
    let path = tmp("input.g6");
    std::fs::write(&path, "C~\nBg\n").unwrap();
    let out = mu_lab(&["mu", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("mu = 3"), "{text}");
    assert!(text.contains("mu = 1"), "{text}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_enumerate_reports_all_holds() {
    let out = mu_lab(&["verify", "--enumerate", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("156 graphs, 156 Holds"), "{text}");
}

#[test]
fn verify_writes_jsonl() {
    let path = tmp("report.jsonl");
    let out = mu_lab(&[
        "verify",
        "--enumerate",
        "4",
        "--jsonl",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().count(), 11);
    let first: serde_json::Value = serde_json::from_str(body.lines().next().unwrap()).unwrap();
    assert!(first.get("canon").is_some());
    assert!(first.get("rulesFired").is_some());
    assert!(first.get("elapsedMicros").is_some());
    std::fs::remove_file(&path).ok();
}

#[test]
fn strict_mode_flags_inconclusive_runs() {
    // With only R2 enabled almost nothing resolves, so Inconclusive
    // verdicts appear and --strict maps them to exit code 3.
    let out = mu_lab(&["verify", "--enumerate", "4", "--rules", "R2", "--strict"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(mu_lab(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(mu_lab(&["verify"]).status.code(), Some(1));
    assert_eq!(mu_lab(&["mu", "zzz-not-a-graph###"]).status.code(), Some(1));
    assert_eq!(
        mu_lab(&["verify", "--enumerate", "4", "--rules", "R99"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn construct_join_tight_and_named() {
    let out = mu_lab(&["construct", "join-tight", "--t", "5", "--base-size", "4"]);
    assert!(out.status.success());
    // K_6 in graph6.
    assert_eq!(stdout(&out).trim(), "E~~w");

    let out = mu_lab(&["construct", "named", "petersen"]);
    assert!(out.status.success());
    let g = mu_lab::graph6::decode(stdout(&out).trim()).unwrap();
    assert_eq!(g.n(), 10);
    assert_eq!(g.edge_count(), 15);
}

#[test]
fn construct_clique_sum_families() {
    let out = mu_lab(&[
        "construct",
        "clique-sum",
        "--family",
        "k22222",
        "--copies",
        "3",
    ]);
    assert!(out.status.success());
    let g = mu_lab::graph6::decode(stdout(&out).trim()).unwrap();
    assert_eq!(g.n(), 20);
    assert_eq!(g.edge_count(), 6 * 20 - 20);

    let out = mu_lab(&["construct", "clique-sum", "--family", "k122222"]);
    let g = mu_lab::graph6::decode(stdout(&out).trim()).unwrap();
    assert_eq!(g.n(), 16);
    assert_eq!(g.edge_count(), 85);
}

#[test]
fn enumerate_writes_census_files() {
    let path = tmp("census5.g6");
    let out = mu_lab(&["enumerate", "--n", "5", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(body.lines().count(), 34);
    std::fs::remove_file(&path).ok();
}

#[test]
fn cert_verify_round_trip_through_files() {
    let cert_path = tmp("k3.cert");
    let cert = mu_lab::certificates::canonical_complete_certificate(3).unwrap();
    mu_lab::certificates::write_certificate(&cert, &cert_path).unwrap();
    let out = mu_lab(&["cert", "verify", cert_path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("valid, corank 2"), "{text}");
    assert!(text.contains("mu >= 2"), "{text}");
    std::fs::remove_file(&cert_path).ok();
}

#[test]
fn cert_verify_rejects_mutations_with_exit_two() {
    let cert_path = tmp("bad.cert");
    // P_3 matrix with a positive edge entry.
    std::fs::write(&cert_path, "cdv 1\nBg\n1\n0 1 0\n1 0 -1\n0 -1 0\n").unwrap();
    let out = mu_lab(&["cert", "verify", cert_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("PatternEdgeSign"));
    std::fs::remove_file(&cert_path).ok();
}

#[test]
fn cert_search_finds_and_writes() {
    let out_path = tmp("found.cert");
    let out = mu_lab(&[
        "cert",
        "search",
        "C~",
        "--corank",
        "3",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("found certificate of corank 3"));
    let cert = mu_lab::certificates::read_certificate(&out_path).unwrap();
    let verdict = mu_lab::certificates::verify_certificate(&cert);
    assert!(verdict.valid);
    assert_eq!(verdict.corank, 3);
    std::fs::remove_file(&out_path).ok();
}

#[test]
fn cert_search_miss_is_not_an_error() {
    let out = mu_lab(&["cert", "search", "Bg", "--corank", "2", "--budget", "50"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("no certificate"));
}

#[test]
fn edgeless_convention_flag_changes_the_value() {
    let paper = mu_lab(&["mu", "e4"]);
    assert_eq!(stdout(&paper).trim(), "mu = 0 [0,0]");
    let matrix = mu_lab(&["mu", "e4", "--edgeless-convention", "matrix"]);
    assert_eq!(stdout(&matrix).trim(), "mu = 1 [1,1]");
    let bad = mu_lab(&["mu", "e4", "--edgeless-convention", "nope"]);
    assert_eq!(bad.status.code(), Some(1));
}
