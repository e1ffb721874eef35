//! Quantified sentences of a small English fragment, parsed with a pregroup
//! grammar and interpreted as string diagrams in sets-and-relations and in
//! vector spaces over subsets, next to a direct set-theoretic reference.
//!
//! ```
//! use quantal::{Grammar, RelBackend, RelModel, Universe, SubsetId};
//! use quantal::{compile, evaluate, parse_sentence, rel_truth, truth_bc};
//!
//! let grammar = Grammar::fragment();
//! let parsed = parse_sentence("some cats sneeze", &grammar.dictionary).unwrap();
//!
//! let mut model = RelModel::new(Universe::new(["a", "b", "c"]).unwrap());
//! model.sets.insert("cats".into(), SubsetId(0b011));
//! model.sets.insert("sneeze".into(), SubsetId(0b001));
//!
//! let term = compile(&parsed).unwrap();
//! let value = evaluate(&term, &RelBackend::for_model(&model), &model).unwrap();
//! assert!(rel_truth(&value).unwrap());
//! assert!(truth_bc(&parsed, &model).unwrap());
//! ```

pub mod cooccur;
pub mod grammar;
pub mod morphism;
pub mod oracle;
pub mod quantifiers;
pub mod rel;
pub mod scalar;
pub mod sweep;
pub mod term;
pub mod universe;
pub mod vect;

pub use grammar::{Grammar, ParsedSentence, PregroupType, Shape, parse_sentence, reduce};
pub use morphism::Morphism;
pub use oracle::{RelModel, Relation, forward_image, truth_bc};
pub use quantifiers::{Quantifier, is_conservative};
pub use rel::{RelBackend, RelMorphism, rel_truth};
pub use scalar::{Boolean, Scalar, Weight};
pub use term::{Backend, MorphismTerm, WireType, compile, evaluate, render};
pub use universe::{SubsetId, Universe};
pub use vect::{BooleanVectBackend, DistBackend, DistModel, WeightedVector};

/// Exact rational weights.
pub type Rational = num_rational::Ratio<i64>;

/// Linear maps over `f64`, the default for distributional models.
pub type LinearMap = Morphism<f64>;
/// Linear maps over exact rationals.
pub type RationalMap = Morphism<Rational>;

pub type DistModelF64 = DistModel<f64>;
pub type BooleanVectF64 = BooleanVectBackend<f64>;
