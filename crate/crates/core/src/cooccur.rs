//! Windowed co-occurrence counts, their normalisations, and cosine similarity.
//!
//! `raw` is the plain count `N(f, t)` of feature tokens within `k` positions of
//! an occurrence of `t`; `L` is the number of occurrences of `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vect::{DistModelFile, FeatureDef, SentenceSpace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CooccurError {
    #[error("invalid co-occurrence config: {0}")]
    Config(String),
    #[error("target `{0}` never occurs, so its normalised row is undefined")]
    UndefinedTarget(String),
    #[error("no probability P(f) configured for feature `{0}`")]
    MissingProbability(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("cosine is undefined for a zero vector")]
    ZeroVector,
    #[error("vectors have different lengths ({0} vs {1})")]
    DimensionMismatch(usize, usize),
}

/// A context: a single token, or a named set of tokens (a lemma or feature).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FeatureSpec {
    Token(String),
    Set { name: String, tokens: Vec<String> },
}

impl FeatureSpec {
    pub fn name(&self) -> &str {
        match self {
            FeatureSpec::Token(t) => t,
            FeatureSpec::Set { name, .. } => name,
        }
    }

    pub fn matches(&self, token: &str) -> bool {
        match self {
            FeatureSpec::Token(t) => t == token,
            FeatureSpec::Set { tokens, .. } => tokens.iter().any(|t| t == token),
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CooccurrenceConfig {
    /// Tokens counted on each side of a target occurrence.
    pub window_size: usize,
    pub targets: Vec<String>,
    pub features: Vec<FeatureSpec>,
    /// `P(f)`, needed by the likelihood-ratio schemes.
    #[serde(default)]
    pub feature_probabilities: BTreeMap<String, f64>,
}

impl CooccurrenceConfig {
    pub fn validate(&self) -> Result<(), CooccurError> {
        let err = |m: String| Err(CooccurError::Config(m));
        if self.window_size == 0 {
            return err("windowSize must be at least 1".into());
        }
        let mut seen = Vec::new();
        for f in &self.features {
            if let FeatureSpec::Set { name, tokens } = f {
                if tokens.is_empty() {
                    return err(format!("feature `{name}` has no tokens"));
                }
            }
            if seen.contains(&f.name()) {
                return err(format!("feature `{}` declared twice", f.name()));
            }
            seen.push(f.name());
        }
        for (f, p) in &self.feature_probabilities {
            if !seen.contains(&f.as_str()) {
                return Err(CooccurError::Unknown { kind: "feature", name: f.clone() });
            }
            if !(*p > 0.0 && *p <= 1.0) {
                return err(format!("P({f}) = {p} is outside (0, 1]"));
            }
        }
        let mut targets = self.targets.clone();
        targets.sort();
        targets.dedup();
        if targets.len() != self.targets.len() {
            return err("duplicate target".into());
        }
        Ok(())
    }
}

/// Counts `N(f, t)` and occurrence totals `L(t)`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CooccurrenceMatrix {
    pub features: Vec<String>,
    pub rows: Vec<MatrixRow>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixRow {
    pub target: String,
    pub total: u64,
    pub counts: Vec<u64>,
}

impl CooccurrenceMatrix {
    pub fn row(&self, target: &str) -> Result<&MatrixRow, CooccurError> {
        self.rows
            .iter()
            .find(|r| r.target == target)
            .ok_or_else(|| CooccurError::Unknown { kind: "target", name: target.to_string() })
    }

    pub fn count(&self, target: &str, feature: &str) -> Result<u64, CooccurError> {
        let j = self
            .features
            .iter()
            .position(|f| f == feature)
            .ok_or_else(|| CooccurError::Unknown { kind: "feature", name: feature.to_string() })?;
        Ok(self.row(target)?.counts[j])
    }
}

pub fn build_matrix<S: AsRef<str>>(
    corpus: &[S],
    cfg: &CooccurrenceConfig,
) -> Result<CooccurrenceMatrix, CooccurError> {
    cfg.validate()?;
    let k = cfg.window_size;
    let mut rows: Vec<MatrixRow> = cfg
        .targets
        .iter()
        .map(|t| MatrixRow { target: t.clone(), total: 0, counts: vec![0; cfg.features.len()] })
        .collect();
    for (p, token) in corpus.iter().enumerate() {
        let Some(row) = rows.iter_mut().find(|r| r.target == token.as_ref()) else {
            continue;
        };
        row.total += 1;
        let window = p.saturating_sub(k)..(p + k + 1).min(corpus.len());
        for q in window.filter(|q| *q != p) {
            for (j, f) in cfg.features.iter().enumerate() {
                if f.matches(corpus[q].as_ref()) {
                    row.counts[j] += 1;
                }
            }
        }
    }
    Ok(CooccurrenceMatrix {
        features: cfg.features.iter().map(|f| f.name().to_string()).collect(),
        rows,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Raw,
    Prob,
    CondProb,
    Lr,
    LogLr,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [Scheme::Raw, Scheme::Prob, Scheme::CondProb, Scheme::Lr, Scheme::LogLr];
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Raw => "raw",
            Scheme::Prob => "prob",
            Scheme::CondProb => "condprob",
            Scheme::Lr => "lr",
            Scheme::LogLr => "loglr",
        })
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|x| x.to_string() == s)
            .ok_or_else(|| format!("unknown scheme `{s}` (raw, prob, condprob, lr, loglr)"))
    }
}

/// Normalised rows, in matrix order.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct NormalizedMatrix {
    pub scheme: Scheme,
    pub features: Vec<String>,
    pub rows: BTreeMap<String, Vec<f64>>,
}

/// `prob = N/L`; `condprob` equals `prob` since `P(f,t)/P(t) = N/L`;
/// `lr = prob/P(f)`; `loglr = log₁₀ lr`, with `0` for a zero count.
pub fn normalize(
    m: &CooccurrenceMatrix,
    scheme: Scheme,
    cfg: &CooccurrenceConfig,
) -> Result<NormalizedMatrix, CooccurError> {
    let probability = |f: &str| {
        cfg.feature_probabilities
            .get(f)
            .copied()
            .ok_or_else(|| CooccurError::MissingProbability(f.to_string()))
    };
    let mut rows = BTreeMap::new();
    for row in &m.rows {
        if scheme != Scheme::Raw && row.total == 0 {
            return Err(CooccurError::UndefinedTarget(row.target.clone()));
        }
        let l = row.total as f64;
        let values = row
            .counts
            .iter()
            .zip(&m.features)
            .map(|(n, f)| {
                let raw = *n as f64;
                Ok(match scheme {
                    Scheme::Raw => raw,
                    Scheme::Prob | Scheme::CondProb => raw / l,
                    Scheme::Lr => raw / l / probability(f)?,
                    Scheme::LogLr => {
                        let p = probability(f)?;
                        if *n == 0 { 0.0 } else { (raw / l / p).log10() }
                    }
                })
            })
            .collect::<Result<Vec<f64>, CooccurError>>()?;
        rows.insert(row.target.clone(), values);
    }
    Ok(NormalizedMatrix { scheme, features: m.features.clone(), rows })
}

pub fn cosine(v: &[f64], w: &[f64]) -> Result<f64, CooccurError> {
    if v.len() != w.len() {
        return Err(CooccurError::DimensionMismatch(v.len(), w.len()));
    }
    let dot: f64 = v.iter().zip(w).map(|(a, b)| a * b).sum();
    let norm = |x: &[f64]| x.iter().map(|a| a * a).sum::<f64>().sqrt();
    let (nv, nw) = (norm(v), norm(w));
    if nv == 0.0 || nw == 0.0 {
        return Err(CooccurError::ZeroVector);
    }
    Ok(dot / (nv * nw))
}

/// Embeds each normalised row as `Σ_i c_i |{f_i}⟩` in a distributional model
/// with a scalar sentence space. Rows with no nonzero weight are left out.
pub fn export_singleton_model(
    m: &CooccurrenceMatrix,
    scheme: Scheme,
    cfg: &CooccurrenceConfig,
) -> Result<DistModelFile, CooccurError> {
    let normalized = normalize(m, scheme, cfg)?;
    let name = |f: &str| format!("{{{f}}}");
    let features = m
        .features
        .iter()
        .map(|f| FeatureDef { name: name(f), tokens: vec![f.clone()] })
        .collect();
    let vectors = normalized
        .rows
        .iter()
        .filter_map(|(t, values)| {
            let weights: BTreeMap<String, f64> = m
                .features
                .iter()
                .zip(values)
                .filter(|(_, v)| **v != 0.0)
                .map(|(f, v)| (name(f), *v))
                .collect();
            (!weights.is_empty()).then(|| (t.clone(), weights))
        })
        .collect();
    Ok(DistModelFile {
        features,
        sentence_space: SentenceSpace::Scalar,
        vectors,
        verbs: BTreeMap::new(),
        dets: BTreeMap::new(),
        small: None,
    })
}

/// The printed four-column counts for dolphin, shark, plankton and pony, with
/// `P(f)` chosen to reproduce the printed log-likelihood-ratio row.
pub fn dolphin_example() -> (CooccurrenceMatrix, CooccurrenceConfig) {
    let features = ["fish", "horse", "pet", "blood"];
    let rows = [
        ("dolphin", 2000, [500, 10, 700, 0]),
        ("shark", 1000, [250, 10, 20, 400]),
        ("plankton", 1700, [250, 10, 1000, 10]),
        ("pony", 1500, [10, 1000, 10, 10]),
    ];
    let matrix = CooccurrenceMatrix {
        features: features.iter().map(|f| f.to_string()).collect(),
        rows: rows
            .iter()
            .map(|(t, total, counts)| MatrixRow {
                target: t.to_string(),
                total: *total,
                counts: counts.to_vec(),
            })
            .collect(),
    };
    let cfg = CooccurrenceConfig {
        window_size: 5,
        targets: rows.iter().map(|r| r.0.to_string()).collect(),
        features: features.iter().map(|f| FeatureSpec::Token(f.to_string())).collect(),
        feature_probabilities: [("fish", 0.01), ("horse", 0.01), ("pet", 0.02), ("blood", 0.01)]
            .into_iter()
            .map(|(f, p)| (f.to_string(), p))
            .collect(),
    };
    (matrix, cfg)
}
