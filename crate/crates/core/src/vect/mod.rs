//! Finite-dimensional vector spaces over a basis of subsets.
//!
//! The boolean instantiation embeds the relational model with unit weights on
//! `V_{P(U)}`; the distributional one works on `V_{P(Σ)}` for an alphabet `Σ`
//! of context tokens, with corpus-derived weights and a sentence space that may
//! have several dimensions.

mod dist;
mod worked;

use std::collections::BTreeMap;
use std::marker::PhantomData;

use thiserror::Error;

use crate::grammar::ParsedSentence;
use crate::morphism::Morphism;
use crate::oracle::RelModel;
use crate::rel::{powerset_basis, relational_det_image, relational_word_state};
use crate::scalar::Scalar;
use crate::term::{Backend, CompileError, DetRef, EvalError, WireType, compile, evaluate};
use crate::universe::Universe;

pub use dist::{
    DetPolicy, DetSpec, DistBackend, DistModel, DistModelFile, FeatureDef, QuantifierMatrix,
    TableValue, VerbEntry, dist_sentence_value,
};
pub use worked::{
    WorkedCell, WorkedRow, eval_expression, reproduce_worked_example, worked_example_model,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VectError {
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("invalid distributional model: {0}")]
    Model(String),
    #[error("vectors live in different spaces ({left} vs {right} dimensions)")]
    BasisMismatch { left: usize, right: usize },
}

/// The space sentence meanings live in.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SentenceSpace {
    /// The field itself.
    Scalar,
    /// A named basis `s_1 .. s_k`.
    Indexed(Vec<String>),
}

impl SentenceSpace {
    pub fn dimension(&self) -> usize {
        match self {
            SentenceSpace::Scalar => 1,
            SentenceSpace::Indexed(names) => names.len(),
        }
    }

    pub fn index(&self, name: &str) -> Option<u32> {
        match self {
            SentenceSpace::Scalar => None,
            SentenceSpace::Indexed(names) => names.iter().position(|n| n == name).map(|i| i as u32),
        }
    }

    pub fn name(&self, index: u32) -> String {
        match self {
            SentenceSpace::Scalar => "1".to_string(),
            SentenceSpace::Indexed(names) => names[index as usize].clone(),
        }
    }
}

/// A sparse vector over a finite basis indexed `0..dimension`.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightedVector<S> {
    dimension: usize,
    weights: BTreeMap<u32, S>,
}

impl<S: Scalar> WeightedVector<S> {
    pub fn zero(dimension: usize) -> Self {
        WeightedVector { dimension, weights: BTreeMap::new() }
    }

    pub fn from_entries(dimension: usize, entries: impl IntoIterator<Item = (u32, S)>) -> Self {
        let mut v = WeightedVector::zero(dimension);
        for (i, w) in entries {
            v.add(i, w);
        }
        v
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn add(&mut self, index: u32, w: S) {
        assert!((index as usize) < self.dimension, "basis index {index} out of range");
        let sum = self.get(index) + w;
        if sum.is_zero() {
            self.weights.remove(&index);
        } else {
            self.weights.insert(index, sum);
        }
    }

    pub fn get(&self, index: u32) -> S {
        self.weights.get(&index).copied().unwrap_or_else(S::zero)
    }

    /// Nonzero entries in index order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, S)> + '_ {
        self.weights.iter().map(|(i, w)| (*i, *w))
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    /// Dense form, for printing.
    pub fn to_dense(&self) -> Vec<S> {
        (0..self.dimension as u32).map(|i| self.get(i)).collect()
    }
}

/// Pointwise order: `v ≤ w` in every coordinate.
pub fn pointwise_entails<S: Scalar>(
    v: &WeightedVector<S>,
    w: &WeightedVector<S>,
) -> Result<bool, VectError> {
    if v.dimension != w.dimension {
        return Err(VectError::BasisMismatch { left: v.dimension, right: w.dimension });
    }
    let indices = v.weights.keys().chain(w.weights.keys());
    Ok(indices.into_iter().all(|i| v.get(*i) <= w.get(*i)))
}

/// A sparse tensor over a list of wires (powerset or sentence axes).
#[derive(Clone, PartialEq, Debug)]
pub struct WeightedTensor<S> {
    pub axes: Vec<WireType>,
    pub weights: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> WeightedTensor<S> {
    pub fn new(axes: Vec<WireType>) -> Self {
        WeightedTensor { axes, weights: BTreeMap::new() }
    }

    pub fn add(&mut self, index: Vec<u32>, w: S) {
        assert_eq!(index.len(), self.axes.len());
        let sum = self.weights.get(&index).copied().unwrap_or_else(S::zero) + w;
        if sum.is_zero() {
            self.weights.remove(&index);
        } else {
            self.weights.insert(index, sum);
        }
    }

    /// The tensor as a state `I → axes`.
    pub fn to_state(&self) -> Morphism<S> {
        Morphism::state(
            self.axes.clone(),
            self.weights.iter().map(|(t, w)| (t.iter().copied().collect(), *w)),
        )
    }
}

/// The relational model embedded in `V_{P(U)}` with every weight `1`, sentence space `ℝ`.
#[derive(Clone, Debug)]
pub struct BooleanVectBackend<S> {
    universe: Universe,
    _scalar: PhantomData<S>,
}

impl<S> BooleanVectBackend<S> {
    pub fn new(universe: Universe) -> Self {
        BooleanVectBackend { universe, _scalar: PhantomData }
    }

    pub fn for_model(m: &RelModel) -> Self {
        BooleanVectBackend::new(m.universe.clone())
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }
}

impl<S: Scalar> Backend for BooleanVectBackend<S> {
    type Weight = S;
    type Lexicon = RelModel;

    fn basis(&self, wire: WireType) -> Vec<u32> {
        powerset_basis(&self.universe, wire)
    }

    fn zeta(&self) -> Vec<(u32, S)> {
        vec![(self.universe.full().0, S::one())]
    }

    fn word_state(&self, m: &RelModel, word: &str, wires: &[WireType]) -> Result<Morphism<S>, String> {
        relational_word_state(&self.universe, m, word, wires)
    }

    fn det_image(&self, m: &RelModel, det: &DetRef, a: u32) -> Result<Vec<(u32, S)>, String> {
        relational_det_image(&self.universe, m, det, a)
    }
}

/// `⟦s⟧(1)` in the boolean instantiation: nonzero exactly when the sentence is true.
pub fn boolean_sentence_value<S: Scalar>(
    parsed: &ParsedSentence,
    m: &RelModel,
) -> Result<S, VectError> {
    let term = compile(parsed)?;
    let value = evaluate(&term, &BooleanVectBackend::<S>::for_model(m), m)?;
    Ok(sentence_scalar(&value))
}

/// The single coordinate of a map `I → S` (or `I → I`) whose wires are all one-dimensional.
pub(crate) fn sentence_scalar<S: Scalar>(value: &Morphism<S>) -> S {
    value.get(&vec![0; value.dom().len()], &vec![0; value.cod().len()])
}
