//! From parsed sentences to diagrams.
//!
//! Every determiner is expanded into the living-on gadget: the noun wire is
//! copied with δ, the determiner box acts on one copy, the other copy is
//! intersected (μ) with the predicate wire, and ε closes the two.
//!
//! Unquantified noun phrases in subject and object position use the same gadget
//! with an implicit `some` box, so that `john sneezes` is true iff
//! `⟦john⟧ ∩ ⟦sneeze⟧ ≠ ∅`. A bare ε would test `⟦john⟧ = ⟦sneeze⟧` instead.

use thiserror::Error;

use super::WireType::{S, W};
use super::{DetRef, MorphismTerm};
use crate::grammar::{ParsedSentence, Shape};
use crate::quantifiers::Quantifier;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompileError {
    #[error("no diagram for categories [{0}]")]
    UnsupportedShape(String),
    #[error("shape {shape} needs {expected} words, got {got}")]
    WordCount { shape: Shape, expected: usize, got: usize },
}

pub fn compile(parsed: &ParsedSentence) -> Result<MorphismTerm, CompileError> {
    let shape = parsed
        .shape
        .ok_or_else(|| CompileError::UnsupportedShape(parsed.categories.join(" ")))?;
    compile_shape(shape, &parsed.words)
}

pub fn compile_shape<S: AsRef<str>>(shape: Shape, words: &[S]) -> Result<MorphismTerm, CompileError> {
    Ok(MorphismTerm::sequence(compile_stages(shape, words)?))
}

/// The diagram as a list of layers; the first is the tensor of word states and
/// each later layer acts on the output of the previous one.
pub fn compile_stages<S: AsRef<str>>(
    shape: Shape,
    words: &[S],
) -> Result<Vec<MorphismTerm>, CompileError> {
    let expected = shape.categories().len();
    if words.len() != expected {
        return Err(CompileError::WordCount { shape, expected, got: words.len() });
    }
    let w = |i: usize| words[i].as_ref();
    let det = |i: usize| MorphismTerm::DetBox(DetRef::Lexical(w(i).to_string()));
    let implicit = || MorphismTerm::DetBox(DetRef::Builtin(Quantifier::Some));
    Ok(match shape {
        Shape::NpVp => subject(w(0), w(1), implicit()),
        Shape::DetNVp => subject(w(1), w(2), det(0)),
        Shape::NpVNp => object(w(0), w(1), w(2), implicit()),
        Shape::NpVDetN => object(w(0), w(1), w(3), det(2)),
        Shape::DetNVDetN => double(w(1), w(2), w(4), det(0), det(3)),
        Shape::DetN => vec![MorphismTerm::word(w(1), &[W]), det(0)],
    })
}

use MorphismTerm as T;

fn id(wires: &[super::WireType]) -> MorphismTerm {
    T::id(wires)
}

/// `ε ∘ (d ⊗ μ) ∘ (δ ⊗ id) ∘ (n ⊗ vp)`, with the S wire carried on the right.
fn subject(noun: &str, vp: &str, det: MorphismTerm) -> Vec<MorphismTerm> {
    vec![
        T::word(noun, &[W]).tensor(T::word(vp, &[W, S])),
        T::Delta(W).tensor(id(&[W])).tensor(id(&[S])),
        det.tensor(T::Mu(W)).tensor(id(&[S])),
        T::Epsilon(W).tensor(id(&[S])),
    ]
}

/// `ε ∘ (μ ⊗ d) ∘ (ε ⊗ id ⊗ δ) ∘ (np ⊗ v ⊗ n)`, with the S wire on the left.
fn object(np: &str, verb: &str, noun: &str, det: MorphismTerm) -> Vec<MorphismTerm> {
    vec![
        T::tensor_all([T::word(np, &[W]), T::word(verb, &[W, S, W]), T::word(noun, &[W])]),
        T::tensor_all([T::Epsilon(W), id(&[S, W]), T::Delta(W)]),
        T::tensor_all([id(&[S]), T::Mu(W), det]),
        id(&[S]).tensor(T::Epsilon(W)),
    ]
}

/// Subject and object gadgets side by side around the verb.
fn double(
    subj: &str,
    verb: &str,
    obj: &str,
    det1: MorphismTerm,
    det2: MorphismTerm,
) -> Vec<MorphismTerm> {
    vec![
        T::tensor_all([T::word(subj, &[W]), T::word(verb, &[W, S, W]), T::word(obj, &[W])]),
        T::tensor_all([T::Delta(W), id(&[W, S, W]), T::Delta(W)]),
        T::tensor_all([det1, T::Mu(W), id(&[S]), T::Mu(W), det2]),
        T::tensor_all([T::Epsilon(W), id(&[S]), T::Epsilon(W)]),
    ]
}
