//! Sets and relations: `W = P(U)`, `S = {⋆}`.
//!
//! Subsets of `U` are basis elements (bitmasks), `⋆` is the single element `0`
//! of `S`. A relation is a [`Morphism`] over [`Boolean`].

use thiserror::Error;

use crate::morphism::{Morphism, Tuple};
use crate::oracle::RelModel;
use crate::quantifiers::Quantifier;
use crate::scalar::{Boolean, Weight};
use crate::term::{Backend, DetRef, MorphismTerm, WireType};
use crate::universe::{SubsetId, Universe};

pub type RelMorphism = Morphism<Boolean>;

#[derive(Clone, Debug)]
pub struct RelBackend {
    universe: Universe,
}

impl RelBackend {
    pub fn new(universe: Universe) -> Self {
        RelBackend { universe }
    }

    pub fn for_model(m: &RelModel) -> Self {
        RelBackend::new(m.universe.clone())
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    /// Matrix of a word-free generator.
    pub fn structural(&self, generator: &MorphismTerm) -> RelMorphism {
        self.generator(&RelModel::new(self.universe.clone()), generator)
            .expect("structural generators need no lexicon")
    }
}

impl Backend for RelBackend {
    type Weight = Boolean;
    type Lexicon = RelModel;

    fn basis(&self, wire: WireType) -> Vec<u32> {
        powerset_basis(&self.universe, wire)
    }

    fn zeta(&self) -> Vec<(u32, Boolean)> {
        vec![(self.universe.full().0, Boolean(true))]
    }

    fn word_state(&self, m: &RelModel, word: &str, wires: &[WireType]) -> Result<RelMorphism, String> {
        relational_word_state(&self.universe, m, word, wires)
    }

    fn det_image(&self, m: &RelModel, det: &DetRef, a: u32) -> Result<Vec<(u32, Boolean)>, String> {
        relational_det_image(&self.universe, m, det, a)
    }
}

pub(crate) fn powerset_basis(u: &Universe, wire: WireType) -> Vec<u32> {
    match wire {
        WireType::W => (0..u.powerset_size() as u32).collect(),
        WireType::S => vec![0],
    }
}

/// Word states of the relational model with unit weights, shared by the Rel
/// backend and the boolean vector-space embedding.
///
/// - `[W]` and `[W, S]`: the point `⟦x⟧` (nouns, noun phrases, intransitive verbs).
/// - `[W, S, W]`: `(A, ⋆, ⟦x⟧(A))` for every `A ⊆ U` (transitive verbs).
pub(crate) fn relational_word_state<K: Weight>(
    u: &Universe,
    m: &RelModel,
    word: &str,
    wires: &[WireType],
) -> Result<Morphism<K>, String> {
    use WireType::{S, W};
    if m.universe.len() != u.len() {
        return Err(format!(
            "model universe has {} elements, backend has {}",
            m.universe.len(),
            u.len()
        ));
    }
    let point = |t: &[u32]| (Tuple::from_slice(t), K::one());
    match wires {
        [W] => Ok(Morphism::state(wires.to_vec(), [point(&[m.set(word).map_err(|e| e.to_string())?.0])])),
        [W, S] => Ok(Morphism::state(
            wires.to_vec(),
            [point(&[m.set(word).map_err(|e| e.to_string())?.0, 0])],
        )),
        [W, S, W] => {
            let r = m.verb(word).map_err(|e| e.to_string())?;
            Ok(Morphism::state(
                wires.to_vec(),
                u.subsets().map(|a| point(&[a.0, 0, crate::oracle::forward_image(r, a).0])),
            ))
        }
        _ => Err(format!(
            "no interpretation of `{word}` on wires [{}]",
            crate::term::wires_to_string(wires)
        )),
    }
}

pub(crate) fn relational_det_image<K: Weight>(
    u: &Universe,
    m: &RelModel,
    det: &DetRef,
    a: u32,
) -> Result<Vec<(u32, K)>, String> {
    let q: Quantifier = match det {
        DetRef::Lexical(w) => m.det(w).map_err(|e| e.to_string())?,
        DetRef::Builtin(q) => *q,
    };
    Ok(q.family(u, SubsetId(a)).into_iter().map(|b| (b.0, K::one())).collect())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("truth is defined for relations between sentence wires only, got [{0}]")]
pub struct NotASentence(pub String);

/// `⋆ ⟦s⟧ ⋆`: whether the all-`⋆` tuples are related.
pub fn rel_truth(value: &RelMorphism) -> Result<bool, NotASentence> {
    if value.dom().iter().chain(value.cod()).any(|w| *w != WireType::S) {
        return Err(NotASentence(format!("{:?} -> {:?}", value.dom(), value.cod())));
    }
    let stars = |n: usize| vec![0u32; n];
    Ok(value.get(&stars(value.dom().len()), &stars(value.cod().len())).0)
}

/// `ε` on `W`.
pub fn rel_epsilon(u: &Universe) -> RelMorphism {
    RelBackend::new(u.clone()).structural(&MorphismTerm::Epsilon(WireType::W))
}

/// `η` on `W`.
pub fn rel_eta(u: &Universe) -> RelMorphism {
    RelBackend::new(u.clone()).structural(&MorphismTerm::Eta(WireType::W))
}

/// `(δ, ι, μ, ζ)` on `W`.
pub fn rel_bialgebra(u: &Universe) -> (RelMorphism, RelMorphism, RelMorphism, RelMorphism) {
    use MorphismTerm::*;
    use WireType::W;
    let b = RelBackend::new(u.clone());
    (b.structural(&Delta(W)), b.structural(&Iota(W)), b.structural(&Mu(W)), b.structural(&Zeta(W)))
}
