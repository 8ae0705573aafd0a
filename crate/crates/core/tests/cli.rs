// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn exe() -> Command {
    Command::new(env!("CARGO_BIN_EXE_xmodcat"))
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn run(args: &[&str]) -> Output {
    exe().args(args).output().unwrap()
}

fn scenario(name: &str) -> String {
    corpus_dir().join(format!("{name}.json")).to_string_lossy().into_owned()
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["validate", &scenario("validate_s3_a3")]).status.code(), Some(0));
    assert_eq!(run(&["run", &scenario("validate_broken_eta")]).status.code(), Some(1));
    let bad = run(&["run", &scenario("malformed")]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 3, column"));
    assert_eq!(run(&["run", &scenario("guard_schreier")]).status.code(), Some(3));
    // the subcommand must match the scenario kind
    assert_eq!(run(&["classify", &scenario("validate_s3_a3")]).status.code(), Some(2));
}

#[test]
fn witnesses_are_named() {
    let out = run(&["validate", &scenario("validate_broken_eta")]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("FAIL") && text.contains("first ["), "{text}");
}

#[test]
fn classify_reports_two_classes() {
    let out = run(&["classify", &scenario("classify_z2_z2"), "--json", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["class_count"], 2);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn guard_flag_overrides() {
    assert_eq!(run(&["run", &scenario("schreier_z4_neg"), "--guard", "1"]).status.code(), Some(3));
}

#[test]
fn golden_corpus_matches() {
    let out = run(&["corpus", corpus_dir().to_str().unwrap()]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.lines().all(|l| l.starts_with("match")));
}

#[test]
fn mutated_golden_is_named_and_update_rewrites() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    std::fs::create_dir(dir.join("expected")).unwrap();
    for name in ["validate_s3_a3", "classify_d_iso"] {
        std::fs::copy(corpus_dir().join(format!("{name}.json")), dir.join(format!("{name}.json"))).unwrap();
        std::fs::copy(corpus_dir().join(format!("expected/{name}.json")), dir.join(format!("expected/{name}.json"))).unwrap();
    }
    let golden = dir.join("expected/classify_d_iso.json");
    let text = std::fs::read_to_string(&golden).unwrap().replace("\"class_count\": 1", "\"class_count\": 7");
    std::fs::write(&golden, text).unwrap();
    let out = run(&["corpus", dir.to_str().unwrap()]);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout.contains("DIFF     classify_d_iso"), "{stdout}");
    assert!(stdout.contains("match    validate_s3_a3"), "{stdout}");
    assert_eq!(run(&["corpus", dir.to_str().unwrap(), "--update"]).status.code(), Some(0));
    assert_eq!(run(&["corpus", dir.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn fuzz_seed_from_environment() {
    let a = exe().args(["run", &scenario("check_axioms_random"), "--json", "-"]).env("XMODCAT_SEED", "99").output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["seed"], 99);
    assert_eq!(a.status.code(), Some(0));
}
