//! Distributional instantiation over `V_{P(Σ)}`.
//!
//! Basis vectors of `W` are sets of context tokens (features). Nouns are
//! weighted sums of features, verbs weighted sums of feature/sentence tuples,
//! and a determiner sends a feature set `A` to a weighted sum of sets `B`.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{SentenceSpace, VectError, WeightedTensor, WeightedVector};
use crate::grammar::ParsedSentence;
use crate::morphism::Morphism;
use crate::quantifiers::Quantifier;
use crate::rel::powerset_basis;
use crate::scalar::Scalar;
use crate::term::{Backend, DetRef, WireType, compile, evaluate};
use crate::universe::{SubsetId, Universe};

/// Default weight of a `"small"` table cell.
pub const DEFAULT_SMALL: f64 = 0.01;

/// How a determiner weights the sets in its image.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetPolicy {
    /// Weight `1` on every member of the quantifier's family.
    Membership,
    /// Weights read from a table, e.g. co-occurrence degrees.
    Cooccurrence,
}

/// Weighted determiner map `|A⟩ ↦ Σ_B c_{A,B} |B⟩`.
#[derive(Clone, PartialEq, Debug)]
pub struct QuantifierMatrix<S> {
    pub quantifier: Option<Quantifier>,
    pub policy: DetPolicy,
    table: BTreeMap<u32, BTreeMap<u32, S>>,
}

impl<S: Scalar> QuantifierMatrix<S> {
    pub fn membership(q: Quantifier) -> Self {
        QuantifierMatrix { quantifier: Some(q), policy: DetPolicy::Membership, table: BTreeMap::new() }
    }

    /// A table-driven determiner. When a quantifier is given, every nonzero
    /// cell `(A, B)` must satisfy `B ∈ q(A)`; without one the table alone
    /// defines the support.
    pub fn cooccurrence(
        quantifier: Option<Quantifier>,
        cells: impl IntoIterator<Item = ((SubsetId, SubsetId), S)>,
    ) -> Result<Self, VectError> {
        let mut table: BTreeMap<u32, BTreeMap<u32, S>> = BTreeMap::new();
        for ((a, b), w) in cells {
            if w.is_zero() {
                continue;
            }
            if let Some(q) = quantifier {
                if !q.holds(a, b) {
                    return Err(VectError::Model(format!(
                        "cell ({:#b}, {:#b}) lies outside the family of `{q}`",
                        a.0, b.0
                    )));
                }
            }
            let cell = table.entry(a.0).or_default().entry(b.0).or_insert_with(S::zero);
            *cell = *cell + w;
        }
        Ok(QuantifierMatrix { quantifier, policy: DetPolicy::Cooccurrence, table })
    }

    /// The all-zero determiner.
    pub fn zero() -> Self {
        QuantifierMatrix { quantifier: None, policy: DetPolicy::Cooccurrence, table: BTreeMap::new() }
    }

    pub fn image(&self, alphabet: &Universe, a: SubsetId) -> Vec<(u32, S)> {
        match (self.policy, self.quantifier) {
            (DetPolicy::Membership, Some(q)) => {
                q.family(alphabet, a).into_iter().map(|b| (b.0, S::one())).collect()
            }
            (DetPolicy::Membership, None) => Vec::new(),
            (DetPolicy::Cooccurrence, _) => self
                .table
                .get(&a.0)
                .into_iter()
                .flat_map(|row| row.iter().map(|(b, w)| (*b, *w)))
                .collect(),
        }
    }

    /// `c_{A,B}`.
    pub fn weight(&self, alphabet: &Universe, a: SubsetId, b: SubsetId) -> S {
        self.image(alphabet, a)
            .into_iter()
            .find(|(x, _)| *x == b.0)
            .map_or_else(S::zero, |(_, w)| w)
    }
}

/// A distributional lexicon on a shared feature alphabet and sentence space.
#[derive(Clone, PartialEq, Debug)]
pub struct DistModel<S> {
    pub alphabet: Universe,
    /// Named feature sets, in declaration order.
    pub features: Vec<(String, SubsetId)>,
    pub sentence: SentenceSpace,
    /// Nouns and noun phrases.
    pub vectors: BTreeMap<String, WeightedVector<S>>,
    /// Intransitive (`[W, S]`) and transitive (`[W, S, W]`) verbs.
    pub verbs: BTreeMap<String, WeightedTensor<S>>,
    pub dets: BTreeMap<String, QuantifierMatrix<S>>,
}

impl<S: Scalar> DistModel<S> {
    /// An empty lexicon over the given feature sets.
    pub fn new(features: Vec<FeatureDef>, sentence: SentenceSpace) -> Result<Self, VectError> {
        let mut tokens: Vec<String> = Vec::new();
        for f in &features {
            if f.tokens.is_empty() {
                return Err(VectError::Model(format!("feature `{}` has no tokens", f.name)));
            }
            for t in &f.tokens {
                if !tokens.contains(t) {
                    tokens.push(t.clone());
                }
            }
        }
        let alphabet = Universe::new(tokens).map_err(|e| VectError::Model(e.to_string()))?;
        let mut named: Vec<(String, SubsetId)> = Vec::new();
        for f in &features {
            let set = alphabet.subset(&f.tokens).expect("tokens collected above");
            if let Some((other, _)) = named.iter().find(|(n, s)| *n == f.name || *s == set) {
                return Err(VectError::Model(format!(
                    "features `{other}` and `{}` clash (same name or same token set)",
                    f.name
                )));
            }
            named.push((f.name.clone(), set));
        }
        if sentence.dimension() == 0 {
            return Err(VectError::Model("sentence space needs at least one dimension".into()));
        }
        Ok(DistModel {
            alphabet,
            features: named,
            sentence,
            vectors: BTreeMap::new(),
            verbs: BTreeMap::new(),
            dets: BTreeMap::new(),
        })
    }

    pub fn feature(&self, name: &str) -> Result<SubsetId, VectError> {
        self.features
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| *s)
            .ok_or_else(|| VectError::Model(format!("unknown feature `{name}`")))
    }

    pub fn feature_name(&self, set: SubsetId) -> String {
        self.features
            .iter()
            .find(|(_, s)| *s == set)
            .map_or_else(|| self.alphabet.display(set), |(n, _)| n.clone())
    }

    pub fn space_dimension(&self) -> usize {
        self.alphabet.powerset_size()
    }

    fn sentence_index(&self, s: Option<&str>) -> Result<u32, VectError> {
        match (&self.sentence, s) {
            (SentenceSpace::Scalar, None) => Ok(0),
            (SentenceSpace::Scalar, Some(name)) => Err(VectError::Model(format!(
                "sentence basis `{name}` given for a scalar sentence space"
            ))),
            (SentenceSpace::Indexed(_), None) => {
                Err(VectError::Model("verb entry lacks a sentence basis `s`".into()))
            }
            (space, Some(name)) => space
                .index(name)
                .ok_or_else(|| VectError::Model(format!("unknown sentence basis `{name}`"))),
        }
    }

    pub fn from_file(file: &DistModelFile) -> Result<Self, VectError> {
        let mut m = DistModel::new(file.features.clone(), file.sentence_space.clone())?;
        let scalar = |x: f64| {
            S::from_f64(x).ok_or_else(|| VectError::Model(format!("weight {x} is not representable")))
        };
        let small = file.small.unwrap_or(DEFAULT_SMALL);
        for (word, weights) in &file.vectors {
            let mut v = WeightedVector::zero(m.space_dimension());
            for (feature, w) in weights {
                v.add(m.feature(feature)?.0, scalar(*w)?);
            }
            m.vectors.insert(word.clone(), v);
        }
        for (word, entries) in &file.verbs {
            let transitive = entries.iter().any(|e| e.col.is_some());
            if transitive && entries.iter().any(|e| e.col.is_none()) {
                return Err(VectError::Model(format!("verb `{word}` mixes entries with and without `col`")));
            }
            let axes = if transitive {
                vec![WireType::W, WireType::S, WireType::W]
            } else {
                vec![WireType::W, WireType::S]
            };
            let mut t = WeightedTensor::new(axes);
            for e in entries {
                let mut index = vec![m.feature(&e.row)?.0, m.sentence_index(e.s.as_deref())?];
                if let Some(col) = &e.col {
                    index.push(m.feature(col)?.0);
                }
                t.add(index, scalar(e.weight)?);
            }
            m.verbs.insert(word.clone(), t);
        }
        for (word, spec) in &file.dets {
            let matrix = match spec.policy {
                DetPolicy::Membership => {
                    if !spec.table.is_empty() {
                        return Err(VectError::Model(format!(
                            "determiner `{word}` uses the membership policy but has a table"
                        )));
                    }
                    let q = spec.quantifier.ok_or_else(|| {
                        VectError::Model(format!("determiner `{word}` needs a quantifier"))
                    })?;
                    QuantifierMatrix::membership(q)
                }
                DetPolicy::Cooccurrence => {
                    let mut cells = Vec::new();
                    for (row, cols) in &spec.table {
                        for (col, value) in cols {
                            let w = match value {
                                TableValue::Number(x) => *x,
                                TableValue::Small => small,
                            };
                            cells.push(((m.feature(row)?, m.feature(col)?), scalar(w)?));
                        }
                    }
                    QuantifierMatrix::cooccurrence(spec.quantifier, cells)
                        .map_err(|e| VectError::Model(format!("determiner `{word}`: {e}")))?
                }
            };
            m.dets.insert(word.clone(), matrix);
        }
        Ok(m)
    }

    pub fn from_json(text: &str) -> Result<Self, VectError> {
        let file: DistModelFile =
            serde_json::from_str(text).map_err(|e| VectError::Model(e.to_string()))?;
        DistModel::from_file(&file)
    }
}

/// JSON form of a [`DistModel`].
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct DistModelFile {
    pub features: Vec<FeatureDef>,
    #[serde(default = "scalar_space")]
    pub sentence_space: SentenceSpace,
    #[serde(default)]
    pub vectors: BTreeMap<String, BTreeMap<String, f64>>,
    #[serde(default)]
    pub verbs: BTreeMap<String, Vec<VerbEntry>>,
    #[serde(default)]
    pub dets: BTreeMap<String, DetSpec>,
    /// Weight of `"small"` table cells.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub small: Option<f64>,
}

fn scalar_space() -> SentenceSpace {
    SentenceSpace::Scalar
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeatureDef {
    pub name: String,
    pub tokens: Vec<String>,
}

/// One weighted cell of a verb: `row ⊗ s` or `row ⊗ s ⊗ col`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerbEntry {
    pub row: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col: Option<String>,
    pub weight: f64,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetSpec {
    pub policy: DetPolicy,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantifier: Option<Quantifier>,
    /// Row feature `A` ↦ column feature `B` ↦ weight.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub table: BTreeMap<String, BTreeMap<String, TableValue>>,
}

/// A table cell: a number or the word `"small"`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum TableValue {
    Number(f64),
    Small,
}

impl Serialize for TableValue {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        match self {
            TableValue::Number(x) => serializer.serialize_f64(*x),
            TableValue::Small => serializer.serialize_str("small"),
        }
    }
}

impl<'de> Deserialize<'de> for TableValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Word(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Number(x) => Ok(TableValue::Number(x)),
            Raw::Word(w) if w == "small" => Ok(TableValue::Small),
            Raw::Word(w) => Err(serde::de::Error::custom(format!(
                "table cell `{w}` is neither a number nor \"small\""
            ))),
        }
    }
}

impl Serialize for SentenceSpace {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        match self {
            SentenceSpace::Scalar => serializer.serialize_str("scalar"),
            SentenceSpace::Indexed(names) => names.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for SentenceSpace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Word(String),
            Basis(Vec<String>),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Word(w) if w == "scalar" => Ok(SentenceSpace::Scalar),
            Raw::Word(w) => Err(serde::de::Error::custom(format!(
                "sentence space `{w}` must be \"scalar\" or a list of basis names"
            ))),
            Raw::Basis(names) if names.is_empty() => {
                Err(serde::de::Error::custom("empty sentence basis"))
            }
            Raw::Basis(names) => Ok(SentenceSpace::Indexed(names)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DistBackend<S> {
    alphabet: Universe,
    sentence: SentenceSpace,
    _scalar: std::marker::PhantomData<S>,
}

impl<S> DistBackend<S> {
    pub fn for_model(m: &DistModel<S>) -> Self {
        DistBackend {
            alphabet: m.alphabet.clone(),
            sentence: m.sentence.clone(),
            _scalar: std::marker::PhantomData,
        }
    }
}

impl<S: Scalar> Backend for DistBackend<S> {
    type Weight = S;
    type Lexicon = DistModel<S>;

    fn basis(&self, wire: WireType) -> Vec<u32> {
        match wire {
            WireType::W => powerset_basis(&self.alphabet, wire),
            WireType::S => (0..self.sentence.dimension() as u32).collect(),
        }
    }

    fn zeta(&self) -> Vec<(u32, S)> {
        vec![(self.alphabet.full().0, S::one())]
    }

    fn word_state(&self, m: &DistModel<S>, word: &str, wires: &[WireType]) -> Result<Morphism<S>, String> {
        if wires == [WireType::W] {
            let v = m.vectors.get(word).ok_or_else(|| format!("no vector for `{word}`"))?;
            return Ok(Morphism::state(
                wires.to_vec(),
                v.iter().map(|(i, w)| (std::iter::once(i).collect(), w)),
            ));
        }
        let t = m.verbs.get(word).ok_or_else(|| format!("no verb tensor for `{word}`"))?;
        if t.axes != wires {
            return Err(format!(
                "`{word}` is a tensor on [{}], needed on [{}]",
                crate::term::wires_to_string(&t.axes),
                crate::term::wires_to_string(wires)
            ));
        }
        Ok(t.to_state())
    }

    fn det_image(&self, m: &DistModel<S>, det: &DetRef, a: u32) -> Result<Vec<(u32, S)>, String> {
        match det {
            DetRef::Lexical(w) => match (m.dets.get(w), w.parse::<Quantifier>()) {
                (Some(matrix), _) => Ok(matrix.image(&self.alphabet, SubsetId(a))),
                // As in relational models, a quantifier's own name needs no entry.
                (None, Ok(q)) => Ok(QuantifierMatrix::<S>::membership(q).image(&self.alphabet, SubsetId(a))),
                (None, Err(_)) => Err(format!("no determiner `{w}`")),
            },
            DetRef::Builtin(q) => Ok(QuantifierMatrix::<S>::membership(*q).image(&self.alphabet, SubsetId(a))),
        }
    }
}

/// The meaning of a sentence (a vector in the sentence space) or of a
/// quantified noun phrase (a vector over feature sets).
pub fn dist_sentence_value<S: Scalar>(
    parsed: &ParsedSentence,
    m: &DistModel<S>,
) -> Result<WeightedVector<S>, VectError> {
    let term = compile(parsed)?;
    let backend = DistBackend::for_model(m);
    let value = evaluate(&term, &backend, m)?;
    let wire = match value.cod() {
        [w] => *w,
        other => {
            return Err(VectError::Model(format!(
                "expected a single output wire, got [{}]",
                crate::term::wires_to_string(other)
            )));
        }
    };
    let dimension = backend.basis(wire).len();
    Ok(WeightedVector::from_entries(
        dimension,
        value.column(&[]).map(|(t, w)| (t[0], *w)),
    ))
}
