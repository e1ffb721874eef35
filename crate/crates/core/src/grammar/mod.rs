//! The quantified English fragment: its context-free grammar, the translation
//! into a pregroup grammar, and parsing by pregroup reduction.

mod cfg;
mod parse;
mod reduce;
mod types;

use thiserror::Error;

pub use cfg::{
    BinaryRule, CfgSpec, Direction, Grammar, GrammarFile, LexicalEntry, TypeDictionary,
    sigma_translate,
};
pub use parse::{ParsedSentence, Shape, parse_sentence, parse_words, tokenize};
pub use reduce::{ReductionDiagram, flatten, reduce};
pub use types::{Atom, PregroupType, SimpleType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrammarError {
    #[error("malformed pregroup type `{0}`")]
    TypeSyntax(String),
    #[error("unknown atom `{atom}` assigned to `{nonterminal}`")]
    UnknownAtom { nonterminal: String, atom: String },
    #[error("conflicting pregroup types for `{nonterminal}`: {first} vs {second}")]
    Conflict { nonterminal: String, first: String, second: String },
    #[error("no pregroup type can be derived for `{0}` (unreachable or cyclic)")]
    Unresolved(String),
    #[error("unknown direction `{0}` (expected left-to-right or right-to-left)")]
    Direction(String),
    #[error("binary rule for `{0}` must have exactly two right-hand symbols")]
    Arity(String),
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("empty sentence")]
    Empty,
    #[error("ungrammatical: none of {} type assignment(s) reduces; tried {}", .attempted.len(), summarize(.attempted))]
    Ungrammatical { attempted: Vec<Vec<String>> },
    #[error("invalid grammar file: {0}")]
    File(String),
}

fn summarize(attempted: &[Vec<String>]) -> String {
    const SHOWN: usize = 8;
    let mut parts: Vec<String> = attempted.iter().take(SHOWN).map(|a| a.join(" ")).collect();
    if attempted.len() > SHOWN {
        parts.push(format!("... {} more", attempted.len() - SHOWN));
    }
    format!("[{}]", parts.join("; "))
}
