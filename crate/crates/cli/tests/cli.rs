use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("covergraph").chain(args.iter().copied());
    let code = covergraph_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, out, err) = run(&full);
    assert_eq!(code, 0, "stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn magma_session_index() {
    let (code, out, _) = run(&["enumerate", "<a,b|>", "--subgroup", "a^2,b^2,a b a^-1,b a b^-1"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("index: 3\n"));
    let v = run_json(&["enumerate", "<a,b|>", "--subgroup", "a^2,b^2,a b a^-1,b a b^-1"]);
    assert_eq!(v["index"], 3);
    assert_eq!(v["table"]["action"]["a"], serde_json::json!([1, 0, 2]));
    assert_eq!(v["table"]["action"]["b"], serde_json::json!([2, 1, 0]));
}

#[test]
fn infinite_dihedral_deck() {
    let (code, out, _) = run(&["deck", "<a,b|a^2,b^2>", "--subgroup", "(a b)^3"]);
    assert_eq!(code, 0);
    assert!(out.contains("order: 6\n"));
    assert!(out.contains("normal: true\n"));
    let v = run_json(&["deck", "<a,b|a^2,b^2>", "--subgroup", "(a b)^3"]);
    assert_eq!(v["order"], 6);
    assert_eq!(v["normal"], true);
    assert_eq!(v["elements"].as_array().unwrap().len(), 6);
}

#[test]
fn trefoil_abelianization() {
    let (code, out, _) = run(&["abel", "@knot:2,3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "Z^1\n");
    assert_eq!(run(&["abel", "@knot:4,6"]).1, "Z^1 x Z/2\n");
    let v = run_json(&["abel", "@surface:2"]);
    assert_eq!(v, serde_json::json!({ "free_rank": 4, "torsion": [] }));
}

#[test]
fn hom_counts() {
    let v = run_json(&["hom", "<a|>", "--from", "a^6", "--to", "a^3"]);
    assert_eq!(v["count"], 3);
    let v = run_json(&["hom", "<a|>", "--from", "a^2", "--to", "a^3"]);
    assert_eq!(v["count"], 0);
}

#[test]
fn covers_of_symmetric_group() {
    let v = run_json(&["covers", "<a,b|a^2,b^3,(a b)^2>", "--max-degree", "6", "--orbit-category"]);
    assert_eq!(v["orbit_category"]["degrees"], serde_json::json!([1, 2, 3, 6]));
    assert_eq!(v["orbit_category"]["homs"][3], serde_json::json!([1, 2, 3, 6]));
}

#[test]
fn cayley_exports() {
    let (code, out, _) = run(&["cayley", "<a|a^2>", "--dot"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph cayley {\n"));
    assert!(out.contains("xlabel=\"basepoint\""));
    let v = run_json(&["cayley", "<a|a^2>", "--complex"]);
    assert_eq!(v["euler_characteristic"], 2);
    assert_eq!(v["faces"].as_array().unwrap().len(), 2);
    assert_eq!(run(&["cayley", "<a|a^2>"]).0, 1);
}

#[test]
fn sections_and_orders() {
    let v = run_json(&["sections", "<a,b|>", "--action", r#"{"a": [0, 2, 1], "b": [0, 1, 2]}"#]);
    assert_eq!(v["sections"], serde_json::json!([0]));
    assert_eq!(v["components"], serde_json::json!([1, 2]));
    assert_eq!(run(&["order", "@modular"]).0, 2);
    assert_eq!(run(&["order", "<a,b|a^2,b^3,(a b)^2>"]).1, "6\n");
}

#[test]
fn sections_accepts_table_json_file() {
    let table = run_json(&["enumerate", "<a|a^3>", "--subgroup", ""]);
    let dir = std::env::temp_dir().join(format!("covergraph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.json");
    std::fs::write(&path, table["table"].to_string()).unwrap();
    let v = run_json(&["sections", "<a|a^3>", "--action", path.to_str().unwrap()]);
    assert_eq!(v["sections"], serde_json::json!([]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    // parse errors
    let (code, out, err) = run(&["enumerate", "<a|", "--subgroup", ""]);
    assert_eq!((code, out.as_str()), (1, ""));
    assert!(err.starts_with("error:"));
    assert_eq!(run(&["enumerate", "<a|a^2>", "--subgroup", "b"]).0, 1);
    assert_eq!(run(&["abel", "@nosuch"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["sections", "<a|>", "--action", "not json"]).0, 1);
    // budgets
    assert_eq!(run(&["enumerate", "<a,b|a^2,b^2>", "--subgroup", "", "--max-cosets", "50"]).0, 2);
    assert_eq!(run(&["covers", "<a,b|>", "--max-degree", "5", "--max-nodes", "10"]).0, 2);
    // relator violation
    let (code, _, err) = run(&["sections", "<a|a^2>", "--action", "[[1, 2, 0]]"]);
    assert_eq!(code, 3);
    assert!(err.contains("relator 0"));
    // help goes to stdout
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("enumerate"));
}

#[test]
fn binary_is_deterministic_and_reads_env() {
    let bin = env!("CARGO_BIN_EXE_covergraph");
    let args = ["covers", "<a,b|>", "--max-degree", "3", "--orbit-category", "--json"];
    let first = Command::new(bin).args(args).output().unwrap();
    let second = Command::new(bin).args(args).output().unwrap();
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let limited = Command::new(bin)
        .args(["order", "<a,b|a^2,b^2>"])
        .env("COVERGRAPH_MAX_COSETS", "20")
        .output()
        .unwrap();
    assert_eq!(limited.status.code(), Some(2));
    assert!(!limited.stderr.is_empty());
}
