use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freegroup"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&full)).expect("valid JSON")
}

#[test]
fn reduce_and_cyclic() {
    assert_eq!(stdout(&["reduce", "a1 a2 a2^-1 a1"]).trim(), "a1^2");
    assert_eq!(stdout(&["reduce", "--rank", "2", "a1 a1^-1"]).trim(), "1");
    let out = stdout(&["cyclic", "a1 a2 a2 a1^-1"]);
    assert!(out.contains("core: a2^2"), "{out}");
    assert!(out.contains("conjugator: a1"), "{out}");
}

#[test]
fn shorthand_syntax() {
    assert_eq!(stdout(&["--shorthand", "reduce", "abBa"]).trim(), "aa");
    assert_eq!(code(&["--shorthand", "primitive", "aab"]), 0);
}

#[test]
fn primitive_exit_codes() {
    assert_eq!(code(&["primitive", "a1"]), 0);
    assert_eq!(code(&["primitive", "a1^2 a2"]), 0);
    assert_eq!(code(&["primitive", "a1^2 a2^3"]), 1);
    assert_eq!(code(&["primitive", "a1 a2 a1^-1 a2^-1"]), 1);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(code(&["primitive", "a1 b2"]), 2);
    assert_eq!(code(&["primitive", "--rank", "1", "a2"]), 2);
    assert_eq!(code(&["primitive", "1"]), 2);
    assert_eq!(code(&["enumerate-primitives", "--max-len", "3"]), 2);
    assert_eq!(
        code(&["verify", "fact1.1", "--rank", "2", "--exponents", "2,1"]),
        2
    );
    assert_eq!(code(&["no-such-command"]), 2);
}

#[test]
fn budget_exhaustion_exits_three() {
    let args = [
        "--max-states",
        "3",
        "enumerate-primitives",
        "--rank",
        "2",
        "--max-len",
        "4",
    ];
    assert_eq!(code(&args), 3);
}

#[test]
fn json_output_shape() {
    let doc = json(&["primitive", "a1 a2"]);
    assert_eq!(doc["input"], "a1 a2");
    assert_eq!(doc["result"]["primitive"], true);
    assert_eq!(doc["certificate"]["kind"], "minimization");
    assert!(doc["timing_ms"].is_number());
}

#[test]
fn orbit_equivalence() {
    assert_eq!(code(&["orbit-eq", "a1 a2", "a2 a1"]), 0);
    assert_eq!(code(&["orbit-eq", "a1", "a1^2 a2^2"]), 1);
    assert_eq!(code(&["orbit-eq", "a1^2 a2^2", "a2^2 a1^-2"]), 0);
}

#[test]
fn basis_command() {
    assert_eq!(code(&["basis", "a1; a1^2 a2"]), 0);
    assert_eq!(code(&["basis", "a1^2; a2"]), 1);
    assert_eq!(code(&["basis", "--rank", "2", "a1"]), 1);
    let out = stdout(&["basis", "--rank", "2", "a1", "--edges"]);
    assert!(out.contains("0 -1-> 0"), "{out}");
}

#[test]
fn complete_command() {
    let doc = json(&["complete", "a1^2 a2"]);
    assert_eq!(doc["result"]["basis"][0], "a1^2 a2");
    assert_eq!(doc["certificate"]["kind"], "basis");
    assert_eq!(code(&["complete", "a1^2 a2^2"]), 1);
}

#[test]
fn enumerate_command() {
    let doc = json(&["enumerate-primitives", "--rank", "2", "--max-len", "1"]);
    assert_eq!(doc["result"]["count"], 4);
    let doc = json(&["enumerate-primitives", "--rank", "2", "--max-len", "3"]);
    assert_eq!(doc["result"]["count"], 16);
}

#[test]
fn verify_commands() {
    assert_eq!(code(&["verify", "thm2.3", "--rank", "2"]), 0);
    assert_eq!(
        code(&["verify", "fact1.1", "--rank", "3", "--exponents", "3,3"]),
        0
    );
    assert_eq!(code(&["verify", "thm2.1", "--rank", "2", "a1^2 a2"]), 0);
    let doc = json(&["verify", "thm2.1", "--rank", "2", "a1^2 a2^2"]);
    assert_eq!(doc["result"]["passed"], true);
    assert!(doc["result"]["title"]
        .as_str()
        .unwrap()
        .contains("not primitive"));
    let doc = json(&["verify", "thm2.3", "--rank", "3"]);
    assert!(doc["result"]["interpretation"]
        .as_str()
        .unwrap()
        .contains("not computed"));
}

#[test]
fn check_certificate_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(
        &good,
        stdout(&["minimize", "a1 a2^3 a1 a2", "--format", "json"]),
    )
    .unwrap();
    assert_eq!(code(&["check-certificate", good.to_str().unwrap()]), 0);

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    doc["certificate"]["minimal"] = Value::from("a1 a2");
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    assert_eq!(code(&["check-certificate", bad.to_str().unwrap()]), 1);

    let junk = dir.path().join("junk.json");
    std::fs::write(&junk, "not json").unwrap();
    assert_eq!(code(&["check-certificate", junk.to_str().unwrap()]), 2);
    assert_eq!(
        code(&[
            "check-certificate",
            dir.path().join("missing").to_str().unwrap()
        ]),
        2
    );
}

#[test]
fn random_chain_is_reproducible() {
    let a = stdout(&["random-chain", "--rank", "3", "--depth", "5", "--seed", "9"]);
    let b = stdout(&["random-chain", "--rank", "3", "--depth", "5", "--seed", "9"]);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 5);
}
