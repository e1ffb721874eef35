//! Backend-independent morphism terms: the string diagrams of the semantics,
//! their typing, a textual notation, the compiler from parses, and evaluation.

mod compile;
mod eval;
mod render;

use std::fmt;

use thiserror::Error;

use crate::quantifiers::Quantifier;

pub use compile::{CompileError, compile, compile_shape, compile_stages};
pub use eval::{Backend, EvalError, evaluate, evaluate_naive};
pub use render::{RenderParseError, parse_term, render};

/// The two distinguished objects: the noun/predicate space and the sentence space.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum WireType {
    W,
    S,
}

impl fmt::Display for WireType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WireType::W => "W",
            WireType::S => "S",
        })
    }
}

/// Which determiner a `DetBox` stands for.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum DetRef {
    /// Looked up in the lexicon by word.
    Lexical(String),
    /// A built-in quantifier, independent of the lexicon.
    Builtin(Quantifier),
}

impl fmt::Display for DetRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DetRef::Lexical(w) => write!(f, "det[{w}]"),
            DetRef::Builtin(q) => write!(f, "gq[{q}]"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MorphismTerm {
    /// The meaning of a word, as a state `I → wires`.
    WordState { word: String, wires: Vec<WireType> },
    Epsilon(WireType),
    Eta(WireType),
    Delta(WireType),
    Mu(WireType),
    Iota(WireType),
    Zeta(WireType),
    Id(Vec<WireType>),
    Swap(WireType, WireType),
    Tensor(Box<MorphismTerm>, Box<MorphismTerm>),
    /// `Compose(after, before)` is `after ∘ before`.
    Compose(Box<MorphismTerm>, Box<MorphismTerm>),
    DetBox(DetRef),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error("at {path}: {generator} is only defined on W, not {wire}")]
    NotOnW { path: String, generator: &'static str, wire: WireType },
    #[error("at {path}: cannot compose, codomain [{before}] of the inner term differs from domain [{after}] of the outer")]
    Mismatch { path: String, before: String, after: String },
}

/// `(domain, codomain)` of a term.
pub type Signature = (Vec<WireType>, Vec<WireType>);

impl MorphismTerm {
    pub fn word(word: impl Into<String>, wires: &[WireType]) -> Self {
        MorphismTerm::WordState { word: word.into(), wires: wires.to_vec() }
    }

    pub fn id(wires: &[WireType]) -> Self {
        MorphismTerm::Id(wires.to_vec())
    }

    pub fn tensor(self, right: MorphismTerm) -> Self {
        MorphismTerm::Tensor(Box::new(self), Box::new(right))
    }

    /// `self ∘ before`.
    pub fn after(self, before: MorphismTerm) -> Self {
        MorphismTerm::Compose(Box::new(self), Box::new(before))
    }

    /// Left-nested tensor of a nonempty list.
    pub fn tensor_all(terms: impl IntoIterator<Item = MorphismTerm>) -> Self {
        let mut it = terms.into_iter();
        let first = it.next().expect("tensor_all of an empty list");
        it.fold(first, MorphismTerm::tensor)
    }

    /// Sequential composition: `stages[0]` runs first.
    pub fn sequence(stages: impl IntoIterator<Item = MorphismTerm>) -> Self {
        let mut it = stages.into_iter();
        let first = it.next().expect("sequence of an empty list");
        it.fold(first, |acc, next| next.after(acc))
    }

    /// Type-checks the term. Paths in errors name the route from the root,
    /// e.g. `$.after.left`.
    pub fn signature(&self) -> Result<Signature, TermError> {
        self.signature_at("$")
    }

    fn signature_at(&self, path: &str) -> Result<Signature, TermError> {
        use MorphismTerm::*;
        use WireType::W;
        let on_w = |generator: &'static str, wire: WireType| {
            if wire == W {
                Ok(())
            } else {
                Err(TermError::NotOnW { path: path.to_string(), generator, wire })
            }
        };
        Ok(match self {
            WordState { wires, .. } => (vec![], wires.clone()),
            Epsilon(x) => (vec![*x, *x], vec![]),
            Eta(x) => (vec![], vec![*x, *x]),
            Delta(x) => {
                on_w("delta", *x)?;
                (vec![W], vec![W, W])
            }
            Mu(x) => {
                on_w("mu", *x)?;
                (vec![W, W], vec![W])
            }
            Iota(x) => {
                on_w("iota", *x)?;
                (vec![W], vec![])
            }
            Zeta(x) => {
                on_w("zeta", *x)?;
                (vec![], vec![W])
            }
            Id(wires) => (wires.clone(), wires.clone()),
            Swap(a, b) => (vec![*a, *b], vec![*b, *a]),
            DetBox(_) => (vec![W], vec![W]),
            Tensor(l, r) => {
                let (ld, lc) = l.signature_at(&format!("{path}.left"))?;
                let (rd, rc) = r.signature_at(&format!("{path}.right"))?;
                ([ld, rd].concat(), [lc, rc].concat())
            }
            Compose(after, before) => {
                let (ad, ac) = after.signature_at(&format!("{path}.after"))?;
                let (bd, bc) = before.signature_at(&format!("{path}.before"))?;
                if bc != ad {
                    return Err(TermError::Mismatch {
                        path: path.to_string(),
                        before: wires_to_string(&bc),
                        after: wires_to_string(&ad),
                    });
                }
                (bd, ac)
            }
        })
    }

    /// Number of generator and word occurrences.
    pub fn size(&self) -> usize {
        match self {
            MorphismTerm::Tensor(l, r) | MorphismTerm::Compose(l, r) => l.size() + r.size(),
            _ => 1,
        }
    }
}

impl fmt::Display for MorphismTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

pub(crate) fn wires_to_string(wires: &[WireType]) -> String {
    wires.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
