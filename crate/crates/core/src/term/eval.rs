//! Evaluating terms in a backend.
//!
//! [`evaluate`] threads one morphism through the diagram, applying each
//! generator to the wires it touches, so a sentence never materializes the full
//! matrix of a wide layer. [`evaluate_naive`] builds every generator's matrix
//! and combines them with the backend's tensor and composition. The two agree
//! on every term, and the tests hold them to that.

use thiserror::Error;

use super::{DetRef, MorphismTerm, TermError, WireType};
use crate::morphism::{Morphism, Tuple, product};
use crate::scalar::Weight;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error(transparent)]
    Type(#[from] TermError),
    #[error("at {path}: {message}")]
    Lexicon { path: String, message: String },
}

impl EvalError {
    pub fn lexicon(path: &str, message: impl Into<String>) -> Self {
        EvalError::Lexicon { path: path.to_string(), message: message.into() }
    }
}

/// A concrete category in which terms are evaluated.
///
/// Both shipped backends have a basis of subsets (bitmasks) on `W` and a
/// finite basis on `S`; the default generator actions below are the
/// subset-copying and intersecting structure on such bases with unit weights.
/// A backend only has to provide bases, the unit `ζ`, word meanings and
/// determiner images, but may override any generator.
pub trait Backend {
    type Weight: Weight;
    /// Store of word meanings.
    type Lexicon: ?Sized;

    fn basis(&self, wire: WireType) -> Vec<u32>;

    /// `ε(a ⊗ b)`.
    fn epsilon(&self, _wire: WireType, a: u32, b: u32) -> Self::Weight {
        if a == b { Self::Weight::one() } else { Self::Weight::zero() }
    }

    /// `η(1)`, as weighted pairs.
    fn eta(&self, wire: WireType) -> Vec<((u32, u32), Self::Weight)> {
        self.basis(wire).into_iter().map(|a| ((a, a), Self::Weight::one())).collect()
    }

    fn delta(&self, a: u32) -> Vec<((u32, u32), Self::Weight)> {
        vec![((a, a), Self::Weight::one())]
    }

    fn mu(&self, a: u32, b: u32) -> Vec<(u32, Self::Weight)> {
        vec![(a & b, Self::Weight::one())]
    }

    fn iota(&self, _a: u32) -> Self::Weight {
        Self::Weight::one()
    }

    fn zeta(&self) -> Vec<(u32, Self::Weight)>;

    /// The state `I → wires` of a word in the role those wires imply.
    fn word_state(
        &self,
        lexicon: &Self::Lexicon,
        word: &str,
        wires: &[WireType],
    ) -> Result<Morphism<Self::Weight>, String>;

    /// Image of the basis element `a` under a determiner box.
    fn det_image(
        &self,
        lexicon: &Self::Lexicon,
        det: &DetRef,
        a: u32,
    ) -> Result<Vec<(u32, Self::Weight)>, String>;

    fn identity(&self, wires: &[WireType]) -> Morphism<Self::Weight> {
        let bases: Vec<Vec<u32>> = wires.iter().map(|w| self.basis(*w)).collect();
        Morphism::identity(wires.to_vec(), &bases)
    }

    fn tensor(
        &self,
        f: &Morphism<Self::Weight>,
        g: &Morphism<Self::Weight>,
    ) -> Morphism<Self::Weight> {
        f.tensor(g)
    }

    /// `after ∘ before`, or `None` when the types do not meet.
    fn compose(
        &self,
        after: &Morphism<Self::Weight>,
        before: &Morphism<Self::Weight>,
    ) -> Option<Morphism<Self::Weight>> {
        before.then(after)
    }

    /// Action of a generator on one basis tuple of its domain.
    fn act(
        &self,
        lexicon: &Self::Lexicon,
        generator: &MorphismTerm,
        input: &[u32],
    ) -> Result<Vec<(Tuple, Self::Weight)>, String> {
        use MorphismTerm::*;
        let one = |t: &[u32]| Tuple::from_slice(t);
        Ok(match generator {
            WordState { word, wires } => {
                let state = self.word_state(lexicon, word, wires)?;
                state.column(&[]).map(|(t, w)| (t.clone(), w.clone())).collect()
            }
            Epsilon(x) => {
                let w = self.epsilon(*x, input[0], input[1]);
                if w.is_zero() { vec![] } else { vec![(Tuple::new(), w)] }
            }
            Eta(x) => self.eta(*x).into_iter().map(|((a, b), w)| (one(&[a, b]), w)).collect(),
            Delta(_) => self.delta(input[0]).into_iter().map(|((a, b), w)| (one(&[a, b]), w)).collect(),
            Mu(_) => self.mu(input[0], input[1]).into_iter().map(|(c, w)| (one(&[c]), w)).collect(),
            Iota(_) => vec![(Tuple::new(), self.iota(input[0]))],
            Zeta(_) => self.zeta().into_iter().map(|(c, w)| (one(&[c]), w)).collect(),
            Id(_) => vec![(one(input), Self::Weight::one())],
            Swap(..) => vec![(one(&[input[1], input[0]]), Self::Weight::one())],
            DetBox(d) => {
                self.det_image(lexicon, d, input[0])?.into_iter().map(|(c, w)| (one(&[c]), w)).collect()
            }
            Tensor(..) | Compose(..) => {
                return Err("act called on a composite term".to_string());
            }
        })
    }

    /// Full matrix of a generator.
    fn generator(
        &self,
        lexicon: &Self::Lexicon,
        generator: &MorphismTerm,
    ) -> Result<Morphism<Self::Weight>, EvalError> {
        let (dom, cod) = generator.signature()?;
        let bases: Vec<Vec<u32>> = dom.iter().map(|w| self.basis(*w)).collect();
        let mut m = Morphism::zero(dom, cod);
        for input in product(&bases) {
            let image = self.act(lexicon, generator, &input).map_err(|e| EvalError::lexicon("$", e))?;
            for (out, w) in image {
                m.add(input.clone(), out, w);
            }
        }
        Ok(m)
    }
}

/// Evaluates `term` by threading the identity on its domain through the diagram.
pub fn evaluate<B: Backend>(
    term: &MorphismTerm,
    backend: &B,
    lexicon: &B::Lexicon,
) -> Result<Morphism<B::Weight>, EvalError> {
    let (dom, _) = term.signature()?;
    let start = backend.identity(&dom);
    thread(term, backend, lexicon, start, 0, &Path::Root)
}

/// Position of a subterm, rendered only when an error needs it.
enum Path<'a> {
    Root,
    Step(&'a Path<'a>, &'static str),
}

impl std::fmt::Display for Path<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Path::Root => f.write_str("$"),
            Path::Step(parent, step) => write!(f, "{parent}.{step}"),
        }
    }
}

fn thread<B: Backend>(
    term: &MorphismTerm,
    backend: &B,
    lexicon: &B::Lexicon,
    x: Morphism<B::Weight>,
    offset: usize,
    path: &Path<'_>,
) -> Result<Morphism<B::Weight>, EvalError> {
    match term {
        MorphismTerm::Id(_) => Ok(x),
        MorphismTerm::Compose(after, before) => {
            let y = thread(before, backend, lexicon, x, offset, &Path::Step(path, "before"))?;
            thread(after, backend, lexicon, y, offset, &Path::Step(path, "after"))
        }
        MorphismTerm::Tensor(left, right) => {
            let (left_dom, _) = left.signature()?;
            let y = thread(right, backend, lexicon, x, offset + left_dom.len(), &Path::Step(path, "right"))?;
            thread(left, backend, lexicon, y, offset, &Path::Step(path, "left"))
        }
        generator => {
            let (dom, cod) = generator.signature()?;
            x.apply_at(offset, &dom, &cod, |input| backend.act(lexicon, generator, input))
                .map_err(|e| EvalError::lexicon(&path.to_string(), e))
        }
    }
}

/// Evaluates `term` structurally: generators become matrices, `⊗` and `∘`
/// become the backend's tensor and composition.
pub fn evaluate_naive<B: Backend>(
    term: &MorphismTerm,
    backend: &B,
    lexicon: &B::Lexicon,
) -> Result<Morphism<B::Weight>, EvalError> {
    term.signature()?;
    naive(term, backend, lexicon, "$")
}

fn naive<B: Backend>(
    term: &MorphismTerm,
    backend: &B,
    lexicon: &B::Lexicon,
    path: &str,
) -> Result<Morphism<B::Weight>, EvalError> {
    match term {
        MorphismTerm::Id(wires) => Ok(backend.identity(wires)),
        MorphismTerm::Compose(after, before) => {
            let b = naive(before, backend, lexicon, &format!("{path}.before"))?;
            let a = naive(after, backend, lexicon, &format!("{path}.after"))?;
            Ok(backend.compose(&a, &b).expect("signature checked"))
        }
        MorphismTerm::Tensor(left, right) => {
            let l = naive(left, backend, lexicon, &format!("{path}.left"))?;
            let r = naive(right, backend, lexicon, &format!("{path}.right"))?;
            Ok(backend.tensor(&l, &r))
        }
        generator => backend.generator(lexicon, generator).map_err(|e| match e {
            EvalError::Lexicon { message, .. } => EvalError::lexicon(path, message),
            other => other,
        }),
    }
}
