//! Exhaustive agreement checks between the oracle and the two backends.
//!
//! For every universe up to a size bound, every assignment of subsets to the
//! nouns, noun phrases and verb phrases, every built-in quantifier and a set of
//! verb relations, each supported sentence shape is evaluated three ways:
//! directly on sets, in relations, and in the boolean vector-space embedding.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::grammar::Shape;
use crate::oracle::{RelModel, RelModelFile, Relation, truth_bc_shape};
use crate::quantifiers::Quantifier;
use crate::rel::RelBackend;
use crate::scalar::Boolean;
use crate::term::{Backend, MorphismTerm, compile_shape, evaluate};
use crate::universe::Universe;
use crate::vect::BooleanVectBackend;

/// Largest universe a sweep accepts.
pub const MAX_SWEEP_UNIVERSE: usize = 3;
/// Largest universe for which all relations are enumerated.
pub const MAX_EXHAUSTIVE_VERBS: usize = 2;
/// Mismatches kept in a report; the count covers all of them.
pub const MAX_REPORTED: usize = 20;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SweepConfig {
    pub max_universe: usize,
    pub seed: u64,
    /// Random relations per universe size, unless `exhaustive_verbs` is set.
    pub verb_samples: usize,
    pub exhaustive_verbs: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { max_universe: 3, seed: 7, verb_samples: 10, exhaustive_verbs: false }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SweepError {
    #[error("universe bound {0} exceeds {MAX_SWEEP_UNIVERSE}")]
    TooLarge(usize),
    #[error("exhaustive verb enumeration needs a universe bound of at most {MAX_EXHAUSTIVE_VERBS}")]
    ExhaustiveTooLarge,
    #[error("evaluation failed on {shape} {words:?}: {message}")]
    Evaluation { shape: Shape, words: Vec<String>, message: String },
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Mismatch {
    pub shape: String,
    pub words: Vec<String>,
    pub model: RelModelFile,
    /// `None` where no set-theoretic truth condition exists.
    pub oracle: Option<bool>,
    pub rel: bool,
    pub vect_nonzero: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub quantifiers: Vec<String>,
    /// Checks per sentence shape.
    pub checks: BTreeMap<String, u64>,
    pub total_checks: u64,
    pub mismatch_count: u64,
    pub mismatches: Vec<Mismatch>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatch_count == 0
    }
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepReport, SweepError> {
    run_sweep_with(cfg, |u| RelBackend::new(u.clone()))
}

/// As [`run_sweep`], with the relational backend built by `make_rel`.
pub fn run_sweep_with<B, F>(cfg: &SweepConfig, make_rel: F) -> Result<SweepReport, SweepError>
where
    B: Backend<Weight = Boolean, Lexicon = RelModel>,
    F: Fn(&Universe) -> B + Sync,
{
    if cfg.max_universe > MAX_SWEEP_UNIVERSE {
        return Err(SweepError::TooLarge(cfg.max_universe));
    }
    if cfg.exhaustive_verbs && cfg.max_universe > MAX_EXHAUSTIVE_VERBS {
        return Err(SweepError::ExhaustiveTooLarge);
    }
    let quantifiers = Quantifier::builtins(cfg.max_universe as u32);
    let terms: BTreeMap<Shape, MorphismTerm> = SHAPES
        .iter()
        .map(|s| (*s, compile_shape(*s, words(*s)).expect("fixed word lists fit their shapes")))
        .collect();

    let mut tasks = Vec::new();
    for size in 0..=cfg.max_universe {
        let universe = Universe::anonymous(size).expect("size within bounds");
        let relations: Vec<Relation> = if cfg.exhaustive_verbs {
            Relation::all(size).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(size as u64));
            (0..cfg.verb_samples)
                .map(|_| {
                    let pairs: Vec<(usize, usize)> = (0..size)
                        .flat_map(|x| (0..size).map(move |y| (x, y)))
                        .filter(|_| rng.gen_bool(0.5))
                        .collect();
                    Relation::from_pairs(size, pairs)
                })
                .collect()
        };
        tasks.push(Task { universe: universe.clone(), kind: TaskKind::NpVp });
        for q in &quantifiers {
            tasks.push(Task { universe: universe.clone(), kind: TaskKind::DetNVp(*q) });
        }
        for r in &relations {
            tasks.push(Task { universe: universe.clone(), kind: TaskKind::NpVNp(r.clone()) });
            for q in &quantifiers {
                tasks.push(Task { universe: universe.clone(), kind: TaskKind::NpVDetN(r.clone(), *q) });
                for q2 in &quantifiers {
                    tasks.push(Task {
                        universe: universe.clone(),
                        kind: TaskKind::DetNVDetN(r.clone(), *q, *q2),
                    });
                }
            }
        }
    }

    let outcomes: Vec<Outcome> = tasks
        .par_iter()
        .map(|task| task.run(&terms, &make_rel(&task.universe)))
        .collect::<Result<_, _>>()?;

    let mut checks: BTreeMap<String, u64> = SHAPES.iter().map(|s| (s.to_string(), 0)).collect();
    let mut mismatches = Vec::new();
    let mut mismatch_count = 0;
    for o in outcomes {
        *checks.get_mut(&o.shape.to_string()).expect("all shapes listed") += o.checks;
        mismatch_count += o.mismatches.len() as u64;
        mismatches.extend(o.mismatches);
    }
    mismatches.sort_by_cached_key(|m| {
        (m.model.universe.len(), m.shape.clone(), serde_json::to_string(&m.model).unwrap_or_default())
    });
    mismatches.truncate(MAX_REPORTED);
    Ok(SweepReport {
        config: cfg.clone(),
        quantifiers: quantifiers.iter().map(ToString::to_string).collect(),
        total_checks: checks.values().sum(),
        checks,
        mismatch_count,
        mismatches,
    })
}

const SHAPES: [Shape; 5] = [Shape::NpVp, Shape::DetNVp, Shape::NpVNp, Shape::NpVDetN, Shape::DetNVDetN];

fn words(shape: Shape) -> &'static [&'static str] {
    match shape {
        Shape::NpVp => &["np", "vp"],
        Shape::DetNVp => &["d", "n", "vp"],
        Shape::NpVNp => &["np", "v", "np2"],
        Shape::NpVDetN => &["np", "v", "d", "n"],
        Shape::DetNVDetN => &["d", "n", "v", "d2", "n2"],
        Shape::DetN => &["d", "n"],
    }
}

struct Task {
    universe: Universe,
    kind: TaskKind,
}

enum TaskKind {
    NpVp,
    DetNVp(Quantifier),
    NpVNp(Relation),
    NpVDetN(Relation, Quantifier),
    DetNVDetN(Relation, Quantifier, Quantifier),
}

struct Outcome {
    shape: Shape,
    checks: u64,
    mismatches: Vec<Mismatch>,
}

impl Task {
    fn run<B>(&self, terms: &BTreeMap<Shape, MorphismTerm>, rel: &B) -> Result<Outcome, SweepError>
    where
        B: Backend<Weight = Boolean, Lexicon = RelModel>,
    {
        let u = &self.universe;
        let vect = BooleanVectBackend::<f64>::new(u.clone());
        let mut m = RelModel::new(u.clone());
        let (shape, set_words): (Shape, &[&str]) = match &self.kind {
            TaskKind::NpVp => (Shape::NpVp, &["np", "vp"]),
            TaskKind::DetNVp(q) => {
                m.dets.insert("d".into(), *q);
                (Shape::DetNVp, &["n", "vp"])
            }
            TaskKind::NpVNp(r) => {
                m.verbs.insert("v".into(), r.clone());
                (Shape::NpVNp, &["np", "np2"])
            }
            TaskKind::NpVDetN(r, q) => {
                m.verbs.insert("v".into(), r.clone());
                m.dets.insert("d".into(), *q);
                (Shape::NpVDetN, &["np", "n"])
            }
            TaskKind::DetNVDetN(r, q1, q2) => {
                m.verbs.insert("v".into(), r.clone());
                m.dets.insert("d".into(), *q1);
                m.dets.insert("d2".into(), *q2);
                (Shape::DetNVDetN, &["n", "n2"])
            }
        };
        let term = &terms[&shape];
        let ws = words(shape);
        let fail = |message: String| SweepError::Evaluation {
            shape,
            words: ws.iter().map(|w| w.to_string()).collect(),
            message,
        };
        let mut outcome = Outcome { shape, checks: 0, mismatches: Vec::new() };
        for a in u.subsets() {
            for b in u.subsets() {
                m.sets.insert(set_words[0].into(), a);
                m.sets.insert(set_words[1].into(), b);
                let oracle = match shape {
                    Shape::DetNVDetN => None,
                    _ => Some(truth_bc_shape(shape, ws, &m).map_err(|e| fail(e.to_string()))?),
                };
                let rel_value = evaluate(term, rel, &m).map_err(|e| fail(e.to_string()))?;
                let truth = rel_value.get(&[], &[0]).0;
                let scalar = evaluate(term, &vect, &m).map_err(|e| fail(e.to_string()))?;
                let nonzero = scalar.get(&[], &[0]) != 0.0;
                outcome.checks += 1;
                if oracle.is_some_and(|o| o != truth) || truth != nonzero {
                    outcome.mismatches.push(Mismatch {
                        shape: shape.to_string(),
                        words: ws.iter().map(|w| w.to_string()).collect(),
                        model: m.to_file(),
                        oracle,
                        rel: truth,
                        vect_nonzero: nonzero,
                    });
                }
            }
        }
        Ok(outcome)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_agrees() {
        let cfg = SweepConfig { max_universe: 1, seed: 3, verb_samples: 2, exhaustive_verbs: false };
        let r = run_sweep(&cfg).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        // |U| = 0: one subset; |U| = 1: two.
        assert_eq!(r.checks["NP-VP"], 1 + 4);
        assert_eq!(r.checks["Det-N-VP"], 10 * (1 + 4));
        assert_eq!(r.checks["NP-V-NP"], 2 * (1 + 4));
        assert_eq!(r.checks["Det-N-V-Det-N"], 2 * 100 * (1 + 4));
    }

    #[test]
    fn exhaustive_verbs() {
        let cfg = SweepConfig { max_universe: 1, seed: 0, verb_samples: 0, exhaustive_verbs: true };
        let r = run_sweep(&cfg).unwrap();
        assert!(r.passed());
        // One relation on the empty universe, two on a singleton.
        assert_eq!(r.checks["NP-V-NP"], 1 + 2 * 4);
    }

    #[test]
    fn bounds() {
        let cfg = SweepConfig { max_universe: 4, ..SweepConfig::default() };
        assert_eq!(run_sweep(&cfg).unwrap_err(), SweepError::TooLarge(4));
        let cfg = SweepConfig { max_universe: 3, exhaustive_verbs: true, ..SweepConfig::default() };
        assert_eq!(run_sweep(&cfg).unwrap_err(), SweepError::ExhaustiveTooLarge);
    }

    #[test]
    fn deterministic() {
        let cfg = SweepConfig { max_universe: 2, seed: 11, verb_samples: 2, exhaustive_verbs: false };
        assert_eq!(run_sweep(&cfg).unwrap(), run_sweep(&cfg).unwrap());
    }
}
