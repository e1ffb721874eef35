use std::fs;
use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quantal")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json_line(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, stdout, _) = run(&all);
    assert_eq!(stdout.lines().count(), 1, "{stdout}");
    (code, serde_json::from_str(&stdout).unwrap())
}

const MODEL: &str = r#"{
  "universe": ["a", "b", "c"],
  "sets": {"cats": ["a", "b"], "sneeze": ["b", "c"], "john": ["c"]},
  "verbs": {"stroked": [["c", "a"], ["c", "b"]]},
  "dets": {"two": "exactly:2"}
}"#;

#[test]
fn parse_prints_links() {
    let (code, out, _) = run(&["parse", "john stroked some cats"]);
    assert_eq!(code, 0);
    assert!(out.contains("links (0,1) (3,4) (5,6)"), "{out}");
    assert!(out.contains("shape NP-V-Det-N"));
    let (_, report) = json_line(&["parse", "some cats"]);
    assert_eq!(report["outputs"]["target"], "p");
    assert_eq!(report["outputs"]["links"], serde_json::json!([[1, 2]]));
    assert_eq!(report["inputsDigest"].as_str().unwrap().len(), 64);
}

#[test]
fn custom_grammar_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let mut g: Value = serde_json::to_value(quantal::Grammar::fragment_file()).unwrap();
    g["lexicon"]["felix"] = serde_json::json!(["NP"]);
    fs::write(&path, g.to_string()).unwrap();
    let (code, out, _) = run(&["parse", "--grammar", path.to_str().unwrap(), "felix sneezes"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("shape NP-VP"));
    assert_eq!(run(&["parse", "felix sneezes"]).0, 2);
}

#[test]
fn term_rendering() {
    let (code, out, _) = run(&["term", "john sneezes"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("((eps[W] (x) id[S]) o "), "{out}");
    assert!(out.contains("gq[some]"));
}

#[test]
fn truth_modes_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    fs::write(&path, MODEL).unwrap();
    let m = path.to_str().unwrap();
    let (code, out, _) = run(&["truth", "--model", m, "two cats sneeze"]);
    assert_eq!(code, 0);
    assert!(out.contains("oracle false") && out.contains("rel false") && out.contains("vector 0"), "{out}");
    let (code, report) = json_line(&["truth", "--model", m, "--categorical", "john stroked two cats"]);
    assert_eq!(code, 0);
    assert_eq!(report["outputs"]["rel"], true);
    assert_eq!(report["outputs"]["oracle"], Value::Null);
    // No set-theoretic condition for two quantified arguments.
    let (code, _, err) = run(&["truth", "--model", m, "--oracle", "two cats stroked two cats"]);
    assert_eq!(code, 2);
    assert!(err.contains("no truth condition"), "{err}");
    assert_eq!(run(&["truth", "--model", m, "--oracle", "--both", "cats sneeze"]).0, 2);
}

#[test]
fn cooccurrence_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c.txt");
    let config = dir.path().join("cfg.json");
    let model = dir.path().join("model.json");
    let matrix = dir.path().join("matrix.json");
    fs::write(&corpus, "x apple y . x bean . z apple y y").unwrap();
    fs::write(&config, r#"{"windowSize": 1, "targets": ["apple", "bean"], "features": ["x", "y"]}"#).unwrap();
    let (code, out, err) = run(&[
        "cooccur", "--corpus", corpus.to_str().unwrap(), "--config", config.to_str().unwrap(),
        "--scheme", "raw", "--out", model.to_str().unwrap(), "--matrix-out", matrix.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    // apple: x once, y twice; bean: x once.
    assert!(out.contains("apple\t1.0000\t2.0000") && out.contains("bean\t1.0000\t0.0000"), "{out}");
    let (code, out, _) = run(&["cosine", "--matrix", matrix.to_str().unwrap(), "apple", "bean"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), format!("{:.4}", 1.0 / 5f64.sqrt()));
    let (code, out, _) = run(&["vector", "--model", model.to_str().unwrap(), "some apple"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("shape Det-N"));
    // Likelihood ratios need P(f).
    assert_eq!(run(&["cooccur", "--corpus", corpus.to_str().unwrap(), "--config", config.to_str().unwrap(), "--scheme", "lr"]).0, 2);
}

#[test]
fn vectors_and_entailment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("animals.json");
    fs::write(&path, include_str!("../../core/assets/animals-model.json")).unwrap();
    let m = path.to_str().unwrap();
    let (code, report) = json_line(&["vector", "--model", m, "all animals run"]);
    assert_eq!(code, 0);
    let s1 = report["outputs"]["vector"]["s1"].as_f64().unwrap();
    assert!((s1 - 0.5 * 0.6 * 0.01).abs() < 1e-15);
    let (code, report) = json_line(&["entail", "--model", m, "all animals run", "some animals run"]);
    assert_eq!(code, 0);
    assert!(report["outputs"]["entails"].is_boolean());
}

#[test]
fn sweep_reports_seed_and_rejects_large_universes() {
    let (code, out, _) = run(&["equiv-sweep", "--maxU", "1", "--verbSamples", "2"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("seed 7\n"), "{out}");
    assert!(out.contains(" 0 mismatches"));
    assert_eq!(run(&["equiv-sweep", "--maxU", "4"]).0, 2);
    let (code, report) = json_line(&["equiv-sweep", "--maxU", "2", "--exhaustive-verbs"]);
    assert_eq!(code, 0);
    assert_eq!(report["outputs"]["mismatch_count"], 0);
}

#[test]
fn paper_example_is_deterministic() {
    let a = run(&["paper-example", "--values-only"]);
    let b = run(&["paper-example", "--values-only"]);
    assert_eq!(a, b);
    assert_eq!(a.1, "0.21 0.176 0.111\n0.11 0.24 0.15\n");
}
