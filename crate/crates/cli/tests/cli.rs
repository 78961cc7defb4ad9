use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    p.to_str().unwrap().to_string()
}

fn qmforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmforge"))
        .args(args)
        .env_remove("QMFORGE_THREADS")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = qmforge(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    qmforge(args).status.code().unwrap()
}

fn schema() -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/report-schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

/// Runs with `--format json`, checks the report against the schema and returns it.
fn report(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let v: Value = serde_json::from_str(&stdout(&full)).unwrap();
    let errors: Vec<String> = schema().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:#?}\n{v:#}");
    v["result"].clone()
}

#[test]
fn eval_prints_the_value() {
    assert_eq!(stdout(&["eval", "--rank", "2", "--spec", "brooks-big:abab", "ababab"]), "2\n");
    assert_eq!(stdout(&["eval", "--spec", "brooks-small:abab", "ababab", "ab"]), "1\n0\n");
}

#[test]
fn fundset_rank_two_length_two() {
    let out = stdout(&["fundset", "--rank", "2", "--max-len", "2"]);
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn rolli_decomposition_defect_is_one() {
    let r = report(&["decomp-defect", "--kind", "rolli", "--radius", "5"]);
    assert_eq!(r["certified_lower"], 1.0);
    assert_eq!(r["theoretical_upper"], 1.0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&["bogus"]), 2);
    assert_eq!(code(&["eval", "--spec", "brooks-big:ab", "abz"]), 2);
    assert_eq!(code(&["eval", "--spec", "brooks-huge:ab", "ab"]), 2);
    assert_eq!(code(&["defect", "--spec", "rolli:@/nonexistent/tables.json"]), 2);
    assert_eq!(code(&["eval", "--spec", "brooks-big:ab", "--frobnicate", "ab"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn thread_setting_from_flag_and_environment() {
    assert_eq!(stdout(&["--threads", "1", "eval", "--spec", "brooks-big:ab", "abab"]), "2\n");
    let out = Command::new(env!("CARGO_BIN_EXE_qmforge"))
        .args(["eval", "--spec", "brooks-big:ab", "abab"])
        .env("QMFORGE_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_ulam_witness_is_a_violation() {
    assert_eq!(code(&["iota", "--ulam-ball", "1", "--max-len", "1"]), 1);
}

#[test]
fn every_subcommand_reports_valid_json() {
    let tables = format!("rolli:@{}", fixture("tables.json"));
    let r = report(&["defect", "--spec", &tables, "--radius", "6", "--mode", "reduced"]);
    assert!(r["certified_lower"].as_f64().unwrap() <= r["theoretical_upper"].as_f64().unwrap());

    let sum = format!("sum:@{}:small", fixture("coefficients.txt"));
    let r = report(&["eval", "--spec", &sum, "ab", "aab"]);
    assert_eq!(r["values"][0]["value"], 1.0);
    assert_eq!(r["values"][1]["value"], -1.0);

    let r = report(&["expand", "--spec", &sum, "--radius", "3"]);
    assert_eq!(r["coefficients"]["aab"], -2.0);
    assert_eq!(r["coefficients"]["abb"], 0.5);

    let r = report(&["kappa", &fixture("coefficients.txt")]);
    assert_eq!(r["support_ceiling"], 3);

    let r = report(&["triangle", "--decomp", "brooks=ab", "aab", "abb"]);
    assert_eq!(r["g"], "aab");

    let r = report(&["profile", "--spec", "brooks-small:ab", "--decomp", "triv", "--radius", "4"]);
    assert_eq!(r["within_theoretical"], true);

    let family = format!("independent=@{}", fixture("family.txt"));
    report(&["decomp-defect", "--kind", &family, "--radius", "3"]);
    report(&["decomp-defect", "--kind", "star=a,b|c", "--radius", "3"]);

    let decomp = format!("decomp:brooks=ab:@{}", fixture("weights.json"));
    report(&["defect", "--spec", &decomp, "--radius", "3"]);
    let decomp = format!("decomp:triv:@{}", fixture("explicit_weights.json"));
    let r = report(&["eval", "--spec", &decomp, "abab"]);
    assert_eq!(r["values"][0]["value"], 0.0);

    let r = report(&["graph", "--words", &fixture("words.txt")]);
    assert!(r["chain"].as_object().unwrap().values().all(|v| v != false));
    let r = report(&["graph", "--tournament", "5"]);
    assert_eq!(r["metrics"]["omega"]["exact"], 2);

    report(&["fundset", "--rank", "3", "--max-len", "3", "--order", "interleaved"]);

    let r = report(&["iota", "--spec", "brooks-small:ac", "ab", "ba"]);
    assert_eq!(r["values"][0]["image"], "abcd");
    let r = report(&["iota", "--ulam-ball", "1"]);
    assert!(r["ulam"]["g"].as_str().unwrap().len() >= 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "profile", "--spec", "brooks-small:abab", "--decomp", "triv", "--radius", "4"];
    assert_eq!(stdout(&args), stdout(&args));
    let args = ["--threads", "1", "--format", "json", "defect", "--spec", "brooks-big:aab", "--radius", "4"];
    assert_eq!(stdout(&args), stdout(&args[2..]));
}

#[test]
fn edge_list_text_output() {
    // aab|b overlaps a|abb, and BB|A overlaps B|AA.
    let out = stdout(&["graph", "--words", &fixture("words.txt"), "--edge-list", "og"]);
    assert_eq!(out, "aab abb\nBBA BAA\n");
}
