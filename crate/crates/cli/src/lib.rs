//! Subcommand implementations behind the `quantal` binary.
//!
//! Each command returns an [`Outcome`]: human-readable text, the same result as
//! JSON, and whether every assertion the command makes held. `main` wraps the
//! JSON in a [`RunReport`].

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use quantal::cooccur::{
    CooccurrenceConfig, NormalizedMatrix, Scheme, build_matrix, cosine, export_singleton_model, normalize,
};
use quantal::grammar::{Grammar, ParsedSentence, TypeDictionary, parse_sentence};
use quantal::oracle::{ModelError, RelModel};
use quantal::sweep::{SweepConfig, run_sweep};
use quantal::term::{WireType, compile, evaluate};
use quantal::vect::{
    DistModel, boolean_sentence_value, dist_sentence_value, pointwise_entails, reproduce_worked_example,
};
use quantal::{RelBackend, rel_truth, render, truth_bc};
use serde::Serialize;
use serde_json::{Value, json};
use sha2::{Digest, Sha256};

pub const DEFAULT_SEED: u64 = 7;

/// The printed expressions of the "all/some animals run" table, cell by cell.
pub const EXPECTED_EXPRESSIONS: [[&str; 3]; 2] = [
    ["0.5×(0.4×0.9+0.3×0.2)", "0.4×(0.5×0.7+0.3×0.3)", "0.3×(0.5×0.5+0.4×0.3)"],
    ["0.5×(0.4×0.3+0.5×0.2)", "0.4×(0.5×0.9+0.3×0.5)", "0.3×(0.5×0.6+0.4×0.5)"],
];
pub const EXPECTED_VALUES: [[f64; 3]; 2] = [[0.21, 0.176, 0.111], [0.11, 0.24, 0.15]];

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub command: Vec<String>,
    /// SHA-256 over the arguments and the bytes of every input file.
    pub inputs_digest: String,
    pub outputs: Value,
    pub passed: bool,
    pub wall_time_ms: f64,
}

#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub outputs: Value,
    pub passed: bool,
}

impl Outcome {
    fn ok(text: String, outputs: Value) -> Self {
        Outcome { text, outputs, passed: true }
    }
}

/// Reads input files and folds them into the run's digest.
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn new(args: &[String]) -> Self {
        let mut hasher = Sha256::new();
        for a in args {
            hasher.update(a.as_bytes());
            hasher.update([0]);
        }
        Inputs { hasher }
    }

    pub fn read(&mut self, path: &Path) -> Result<String, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        self.hasher.update(path.to_string_lossy().as_bytes());
        self.hasher.update([0]);
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    pub fn digest(self) -> String {
        hex::encode(self.hasher.finalize())
    }
}

pub fn load_grammar(inputs: &mut Inputs, path: Option<&Path>) -> Result<Grammar, String> {
    match path {
        Some(p) => Grammar::from_json(&inputs.read(p)?).map_err(|e| e.to_string()),
        None => Ok(Grammar::fragment()),
    }
}

/// Makes the words a model interprets parseable, in the categories their
/// interpretation allows. Words the grammar already knows are left alone.
fn augment(dict: &mut TypeDictionary, words: impl IntoIterator<Item = (String, &'static [&'static str])>) {
    for (word, categories) in words {
        if dict.entries(&word).is_some() {
            continue;
        }
        for c in categories {
            if dict.category_type(c).is_some() {
                dict.add_word(&word, c).expect("category checked above");
            }
        }
    }
}

pub fn augment_from_rel(dict: &mut TypeDictionary, m: &RelModel) {
    let sets = m.sets.keys().map(|w| (w.clone(), &["N", "NP", "VP"][..]));
    let verbs = m.verbs.keys().map(|w| (w.clone(), &["V"][..]));
    let dets = m.dets.keys().map(|w| (w.clone(), &["Det"][..]));
    augment(dict, sets.chain(verbs).chain(dets));
}

pub fn augment_from_dist(dict: &mut TypeDictionary, m: &DistModel<f64>) {
    let vectors = m.vectors.keys().map(|w| (w.clone(), &["N", "NP"][..]));
    let verbs = m.verbs.iter().map(|(w, t)| {
        (w.clone(), if t.axes.len() == 3 { &["V"][..] } else { &["VP"][..] })
    });
    let dets = m.dets.keys().map(|w| (w.clone(), &["Det"][..]));
    augment(dict, vectors.chain(verbs).chain(dets));
}

fn parse(dict: &TypeDictionary, sentence: &str) -> Result<ParsedSentence, String> {
    parse_sentence(sentence, dict).map_err(|e| e.to_string())
}

fn shape_name(p: &ParsedSentence) -> String {
    p.shape.map_or_else(|| "unsupported".to_string(), |s| s.to_string())
}

pub fn cmd_parse(grammar: &Grammar, sentence: &str) -> Result<Outcome, String> {
    let p = parse(&grammar.dictionary, sentence)?;
    let links: Vec<[usize; 2]> = p.diagram.links.iter().map(|(i, j)| [*i, *j]).collect();
    let mut text = String::new();
    for ((w, c), t) in p.words.iter().zip(&p.categories).zip(&p.types) {
        text.push_str(&format!("{w}\t{c}\t{t}\n"));
    }
    text.push_str(&format!("reduces to {}\n", p.target));
    text.push_str(&format!("links {}\n", p.diagram));
    text.push_str(&format!("shape {}\n", shape_name(&p)));
    let outputs = json!({
        "words": p.words,
        "categories": p.categories,
        "types": p.types.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "target": p.target.to_string(),
        "links": links,
        "shape": p.shape.map(|s| s.to_string()),
    });
    Ok(Outcome::ok(text, outputs))
}

pub fn cmd_term(grammar: &Grammar, sentence: &str) -> Result<Outcome, String> {
    let p = parse(&grammar.dictionary, sentence)?;
    let term = compile(&p).map_err(|e| e.to_string())?;
    let (dom, cod) = term.signature().map_err(|e| e.to_string())?;
    let rendered = render(&term);
    let wires = |w: &[WireType]| w.iter().map(ToString::to_string).collect::<Vec<_>>();
    let outputs = json!({
        "shape": shape_name(&p),
        "term": rendered,
        "domain": wires(&dom),
        "codomain": wires(&cod),
    });
    Ok(Outcome::ok(format!("{rendered}\n"), outputs))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TruthMode {
    Oracle,
    Categorical,
    Both,
}

pub fn cmd_truth(grammar: &Grammar, model: &RelModel, sentence: &str, mode: TruthMode) -> Result<Outcome, String> {
    let mut dict = grammar.dictionary.clone();
    augment_from_rel(&mut dict, model);
    let p = parse(&dict, sentence)?;
    let oracle = match mode {
        TruthMode::Categorical => None,
        _ => match truth_bc(&p, model) {
            Ok(t) => Some(t),
            Err(ModelError::Unsupported(_)) if mode == TruthMode::Both => None,
            Err(e) => return Err(e.to_string()),
        },
    };
    let categorical = match mode {
        TruthMode::Oracle => None,
        _ => {
            let term = compile(&p).map_err(|e| e.to_string())?;
            let value = evaluate(&term, &RelBackend::for_model(model), model).map_err(|e| e.to_string())?;
            let rel = rel_truth(&value).map_err(|e| e.to_string())?;
            let scalar: f64 = boolean_sentence_value(&p, model).map_err(|e| e.to_string())?;
            Some((rel, scalar))
        }
    };
    let mut text = format!("{sentence}\nshape {}\n", shape_name(&p));
    if let Some(o) = oracle {
        text.push_str(&format!("oracle {o}\n"));
    } else if mode == TruthMode::Both {
        text.push_str("oracle n/a\n");
    }
    if let Some((rel, scalar)) = categorical {
        text.push_str(&format!("rel {rel}\nvector {scalar}\n"));
    }
    let mut passed = true;
    if let Some((rel, scalar)) = categorical {
        passed &= rel == (scalar != 0.0);
        if let Some(o) = oracle {
            passed &= o == rel;
        }
    }
    if !passed {
        text.push_str("DISAGREEMENT\n");
    }
    let outputs = json!({
        "sentence": sentence,
        "shape": p.shape.map(|s| s.to_string()),
        "oracle": oracle,
        "rel": categorical.map(|c| c.0),
        "vector": categorical.map(|c| c.1),
        "agree": passed,
    });
    Ok(Outcome { text, outputs, passed })
}

/// Shortest decimal that round-trips after rounding to twelve places.
pub fn format_value(x: f64) -> String {
    let s = format!("{:.12}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

fn dist_vector(dict: &TypeDictionary, m: &DistModel<f64>, sentence: &str) -> Result<(ParsedSentence, Vec<(String, f64)>), String> {
    let p = parse(dict, sentence)?;
    let v = dist_sentence_value(&p, m).map_err(|e| e.to_string())?;
    let named = if p.shape.is_some_and(|s| s.is_sentence()) {
        v.iter().map(|(i, w)| (m.sentence.name(i), w)).collect()
    } else {
        v.iter().map(|(i, w)| (m.feature_name(quantal::SubsetId(i)), w)).collect()
    };
    Ok((p, named))
}

pub fn cmd_vector(grammar: &Grammar, model: &DistModel<f64>, sentence: &str) -> Result<Outcome, String> {
    let mut dict = grammar.dictionary.clone();
    augment_from_dist(&mut dict, model);
    let (p, named) = dist_vector(&dict, model, sentence)?;
    let mut text = format!("{sentence}\nshape {}\n", shape_name(&p));
    for (name, w) in &named {
        text.push_str(&format!("{name}\t{}\n", format_value(*w)));
    }
    let vector: BTreeMap<&str, f64> = named.iter().map(|(n, w)| (n.as_str(), *w)).collect();
    Ok(Outcome::ok(text, json!({ "sentence": sentence, "shape": shape_name(&p), "vector": vector })))
}

pub fn cmd_entail(grammar: &Grammar, model: &DistModel<f64>, s1: &str, s2: &str) -> Result<Outcome, String> {
    let mut dict = grammar.dictionary.clone();
    augment_from_dist(&mut dict, model);
    let value = |s: &str| -> Result<_, String> {
        let p = parse(&dict, s)?;
        dist_sentence_value(&p, model).map_err(|e| e.to_string())
    };
    let (v, w) = (value(s1)?, value(s2)?);
    let entails = pointwise_entails(&v, &w).map_err(|e| e.to_string())?;
    let text = format!("{s1} ⊢ {s2}: {entails}\n");
    Ok(Outcome::ok(text, json!({ "premise": s1, "conclusion": s2, "entails": entails })))
}

fn tokenize_corpus(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric() && c != '\'' && c != '-')
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

fn normalized_table(n: &NormalizedMatrix) -> String {
    let mut text = format!("target\t{}\n", n.features.join("\t"));
    for (t, row) in &n.rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:.4}")).collect();
        text.push_str(&format!("{t}\t{}\n", cells.join("\t")));
    }
    text
}

/// Counts, normalises, and optionally writes the rows as a singleton-feature
/// model and as a matrix file for `cosine`.
pub fn cmd_cooccur(
    corpus: &str,
    config: &CooccurrenceConfig,
    scheme: Scheme,
    model_out: Option<&Path>,
    matrix_out: Option<&Path>,
) -> Result<Outcome, String> {
    config.validate().map_err(|e| e.to_string())?;
    let matrix = build_matrix(&tokenize_corpus(corpus), config).map_err(|e| e.to_string())?;
    let normalized = normalize(&matrix, scheme, config).map_err(|e| e.to_string())?;
    if let Some(path) = model_out {
        let model = export_singleton_model(&matrix, scheme, config).map_err(|e| e.to_string())?;
        write_json(path, &model)?;
    }
    if let Some(path) = matrix_out {
        write_json(path, &normalized)?;
    }
    let outputs = json!({ "counts": matrix, "normalized": normalized });
    Ok(Outcome::ok(normalized_table(&normalized), outputs))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))
}

pub fn cmd_cosine(matrix: &NormalizedMatrix, t1: &str, t2: &str) -> Result<Outcome, String> {
    let row = |t: &str| matrix.rows.get(t).ok_or_else(|| format!("no row for `{t}`"));
    let c = cosine(row(t1)?, row(t2)?).map_err(|e| e.to_string())?;
    Ok(Outcome::ok(format!("{c:.4}\n"), json!({ "left": t1, "right": t2, "cosine": c })))
}

pub fn cmd_equiv_sweep(cfg: &SweepConfig) -> Result<Outcome, String> {
    let report = run_sweep(cfg).map_err(|e| e.to_string())?;
    let mut text = format!(
        "seed {}\nuniverses 0..={}\nverb relations {}\nquantifiers {}\n",
        cfg.seed,
        cfg.max_universe,
        if cfg.exhaustive_verbs { "all".to_string() } else { format!("{} sampled per universe", cfg.verb_samples) },
        report.quantifiers.join(" "),
    );
    for (shape, n) in &report.checks {
        text.push_str(&format!("{shape}\t{n} checks\n"));
    }
    text.push_str(&format!("{} checks, {} mismatches\n", report.total_checks, report.mismatch_count));
    for m in &report.mismatches {
        text.push_str(&serde_json::to_string(m).map_err(|e| e.to_string())?);
        text.push('\n');
    }
    let passed = report.passed();
    let outputs = serde_json::to_value(&report).map_err(|e| e.to_string())?;
    Ok(Outcome { text, outputs, passed })
}

pub fn cmd_paper_example(values_only: bool) -> Outcome {
    let rows = reproduce_worked_example();
    let mut passed = rows.len() == EXPECTED_EXPRESSIONS.len();
    let mut text = String::new();
    let mut json_rows = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let values: Vec<String> = row.cells.iter().map(|c| format_value(c.value)).collect();
        if values_only {
            text.push_str(&format!("{}\n", values.join(" ")));
        } else {
            text.push_str(&format!("{}\n", row.sentence));
            for (cell, v) in row.cells.iter().zip(&values) {
                text.push_str(&format!("  {}  {} = {}\n", cell.basis, cell.expression, v));
            }
        }
        for (k, cell) in row.cells.iter().enumerate() {
            let expr = EXPECTED_EXPRESSIONS.get(r).and_then(|e| e.get(k));
            let want = EXPECTED_VALUES.get(r).and_then(|e| e.get(k));
            passed &= expr == Some(&cell.expression.as_str());
            passed &= want.is_some_and(|w| (cell.value - w).abs() <= 1e-12);
        }
        passed &= row.cells.len() == 3;
        json_rows.push(json!({
            "sentence": row.sentence,
            "cells": row.cells.iter().map(|c| json!({
                "basis": c.basis, "expression": c.expression, "value": c.value,
            })).collect::<Vec<_>>(),
        }));
    }
    if !passed {
        text.push_str("MISMATCH against the expected table\n");
    }
    Outcome { text, outputs: json!({ "rows": json_rows }), passed }
}
