//! Truth conditions of generalised quantifier theory, computed directly on sets.
//!
//! This is the reference the categorical backends are checked against; it uses
//! nothing but subset operations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grammar::{ParsedSentence, Shape};
use crate::quantifiers::Quantifier;
use crate::universe::{SubsetId, Universe, UniverseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error("`{word}` has no interpretation as {role}")]
    Missing { word: String, role: &'static str },
    #[error("invalid model file: {0}")]
    File(String),
    #[error("no truth condition for {0} sentences")]
    Unsupported(String),
}

/// A binary relation on a universe, stored as successor masks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    succ: Vec<u32>,
}

impl Relation {
    pub fn empty(size: usize) -> Self {
        Relation { succ: vec![0; size] }
    }

    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::empty(size);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.succ[x] |= 1 << y;
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.succ[x] >> y & 1 == 1
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(x, s)| {
            SubsetId(*s).members().map(move |y| (x, y))
        })
    }

    pub fn universe_size(&self) -> usize {
        self.succ.len()
    }

    /// Every relation on a universe of `size` elements, as bit patterns over
    /// the `size²` ordered pairs.
    pub fn all(size: usize) -> impl Iterator<Item = Relation> {
        let cells = size * size;
        (0u64..1 << cells).map(move |bits| {
            Relation::from_pairs(
                size,
                (0..cells).filter(|c| bits >> c & 1 == 1).map(|c| (c / size, c % size)),
            )
        })
    }
}

/// `{y | (x, y) ∈ r, x ∈ A}`.
pub fn forward_image(r: &Relation, a: SubsetId) -> SubsetId {
    SubsetId(a.members().fold(0, |acc, x| acc | r.succ[x]))
}

/// A set-theoretic model: one interpretation map shared by nouns, noun phrases
/// and intransitive verbs, relations for transitive verbs, and determiners.
#[derive(Clone, PartialEq, Debug)]
pub struct RelModel {
    pub universe: Universe,
    pub sets: BTreeMap<String, SubsetId>,
    pub verbs: BTreeMap<String, Relation>,
    pub dets: BTreeMap<String, Quantifier>,
}

impl RelModel {
    pub fn new(universe: Universe) -> Self {
        RelModel { universe, sets: BTreeMap::new(), verbs: BTreeMap::new(), dets: BTreeMap::new() }
    }

    pub fn set(&self, word: &str) -> Result<SubsetId, ModelError> {
        self.sets
            .get(word)
            .copied()
            .ok_or_else(|| ModelError::Missing { word: word.to_string(), role: "a set" })
    }

    pub fn verb(&self, word: &str) -> Result<&Relation, ModelError> {
        self.verbs
            .get(word)
            .ok_or_else(|| ModelError::Missing { word: word.to_string(), role: "a relation" })
    }

    /// The model's quantifier for `word`, falling back to the built-in of the
    /// same name (`some`, `every`, `no`, `most`).
    pub fn det(&self, word: &str) -> Result<Quantifier, ModelError> {
        self.dets
            .get(word)
            .copied()
            .or_else(|| word.parse().ok())
            .ok_or_else(|| ModelError::Missing { word: word.to_string(), role: "a determiner" })
    }

    pub fn from_file(file: &RelModelFile) -> Result<Self, ModelError> {
        let universe = Universe::new(file.universe.iter().cloned())?;
        let mut m = RelModel::new(universe);
        for (word, members) in &file.sets {
            let s = m.universe.subset(members.iter().map(String::as_str))?;
            m.sets.insert(word.clone(), s);
        }
        for (word, pairs) in &file.verbs {
            let mut r = Relation::empty(m.universe.len());
            for (x, y) in pairs {
                let pos = |n: &str| {
                    m.universe.position(n).ok_or_else(|| UniverseError::UnknownElement(n.to_string()))
                };
                r.insert(pos(x)?, pos(y)?);
            }
            m.verbs.insert(word.clone(), r);
        }
        m.dets = file.dets.clone();
        Ok(m)
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let file: RelModelFile =
            serde_json::from_str(text).map_err(|e| ModelError::File(e.to_string()))?;
        RelModel::from_file(&file)
    }

    pub fn to_file(&self) -> RelModelFile {
        let names = |s: SubsetId| -> Vec<String> {
            self.universe.member_names(s).into_iter().map(String::from).collect()
        };
        let name = |i: usize| self.universe.names()[i].clone();
        RelModelFile {
            universe: self.universe.names().to_vec(),
            sets: self.sets.iter().map(|(w, s)| (w.clone(), names(*s))).collect(),
            verbs: self
                .verbs
                .iter()
                .map(|(w, r)| (w.clone(), r.pairs().map(|(x, y)| (name(x), name(y))).collect()))
                .collect(),
            dets: self.dets.clone(),
        }
    }
}

/// JSON form of a [`RelModel`].
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelModelFile {
    pub universe: Vec<String>,
    #[serde(default)]
    pub sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub verbs: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default)]
    pub dets: BTreeMap<String, Quantifier>,
}

pub fn truth_bc(parsed: &ParsedSentence, m: &RelModel) -> Result<bool, ModelError> {
    match parsed.shape {
        Some(shape) => truth_bc_shape(shape, &parsed.words, m),
        None => Err(ModelError::Unsupported(parsed.categories.join("-"))),
    }
}

pub fn truth_bc_shape<S: AsRef<str>>(
    shape: Shape,
    words: &[S],
    m: &RelModel,
) -> Result<bool, ModelError> {
    let w = |i: usize| words[i].as_ref();
    if words.len() != shape.categories().len() {
        return Err(ModelError::Unsupported(format!("{shape} with {} words", words.len())));
    }
    Ok(match shape {
        Shape::NpVp => !m.set(w(1))?.intersection(m.set(w(0))?).is_empty(),
        Shape::DetNVp => {
            let n = m.set(w(1))?;
            m.det(w(0))?.holds(n, m.set(w(2))?.intersection(n))
        }
        Shape::NpVNp => {
            let image = forward_image(m.verb(w(1))?, m.set(w(0))?);
            !image.intersection(m.set(w(2))?).is_empty()
        }
        Shape::NpVDetN => {
            let n = m.set(w(3))?;
            let image = forward_image(m.verb(w(1))?, m.set(w(0))?);
            m.det(w(2))?.holds(n, image.intersection(n))
        }
        Shape::DetNVDetN | Shape::DetN => return Err(ModelError::Unsupported(shape.to_string())),
    })
}
