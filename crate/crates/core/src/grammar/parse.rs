//! Sentence parsing: dictionary lookup followed by reduction.

use std::fmt;
use std::str::FromStr;

use super::GrammarError;
use super::cfg::TypeDictionary;
use super::reduce::{ReductionDiagram, reduce};
use super::types::PregroupType;

/// The sentence forms the semantics knows how to interpret.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Shape {
    NpVp,
    DetNVp,
    NpVNp,
    NpVDetN,
    DetNVDetN,
    /// A quantified noun phrase on its own.
    DetN,
}

impl Shape {
    pub const ALL: [Shape; 6] =
        [Shape::NpVp, Shape::DetNVp, Shape::NpVNp, Shape::NpVDetN, Shape::DetNVDetN, Shape::DetN];

    pub fn categories(self) -> &'static [&'static str] {
        match self {
            Shape::NpVp => &["NP", "VP"],
            Shape::DetNVp => &["Det", "N", "VP"],
            Shape::NpVNp => &["NP", "V", "NP"],
            Shape::NpVDetN => &["NP", "V", "Det", "N"],
            Shape::DetNVDetN => &["Det", "N", "V", "Det", "N"],
            Shape::DetN => &["Det", "N"],
        }
    }

    pub fn from_categories<S: AsRef<str>>(cats: &[S]) -> Option<Shape> {
        Shape::ALL.into_iter().find(|s| {
            let want = s.categories();
            want.len() == cats.len() && want.iter().zip(cats).all(|(w, c)| *w == c.as_ref())
        })
    }

    pub fn is_sentence(self) -> bool {
        self != Shape::DetN
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.categories().join("-"))
    }
}

impl FromStr for Shape {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Shape::ALL
            .into_iter()
            .find(|shape| shape.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown sentence shape `{s}`"))
    }
}

/// A reduced word string with its chosen type assignment.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParsedSentence {
    pub words: Vec<String>,
    pub categories: Vec<String>,
    pub types: Vec<PregroupType>,
    pub target: PregroupType,
    pub diagram: ReductionDiagram,
    /// `None` when the string reduces but is not one of the interpreted forms.
    pub shape: Option<Shape>,
}

/// Whitespace tokenization with lowercasing.
pub fn tokenize(sentence: &str) -> Vec<String> {
    sentence.split_whitespace().map(str::to_lowercase).collect()
}

pub fn parse_sentence(sentence: &str, dict: &TypeDictionary) -> Result<ParsedSentence, GrammarError> {
    parse_words(&tokenize(sentence), dict)
}

/// Tries every type assignment in dictionary order, first against the sentence
/// type and then against each phrase target, and keeps the first that reduces.
pub fn parse_words(words: &[String], dict: &TypeDictionary) -> Result<ParsedSentence, GrammarError> {
    if words.is_empty() {
        return Err(GrammarError::Empty);
    }
    let options = words
        .iter()
        .map(|w| {
            dict.entries(w)
                .filter(|e| !e.is_empty())
                .ok_or_else(|| GrammarError::UnknownToken(w.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let targets = std::iter::once(&dict.sentence).chain(dict.phrase_targets.iter());
    let mut attempted = Vec::new();
    for target in targets {
        let mut choice = vec![0usize; words.len()];
        loop {
            let types: Vec<PregroupType> =
                choice.iter().zip(&options).map(|(c, o)| o[*c].ty.clone()).collect();
            let categories: Vec<String> =
                choice.iter().zip(&options).map(|(c, o)| o[*c].category.clone()).collect();
            if let Some(diagram) = reduce(&types, target) {
                let shape = Shape::from_categories(&categories);
                return Ok(ParsedSentence {
                    words: words.to_vec(),
                    categories,
                    types,
                    target: target.clone(),
                    diagram,
                    shape,
                });
            }
            if *target == dict.sentence {
                attempted.push(categories);
            }
            if !advance(&mut choice, &options) {
                break;
            }
        }
    }
    Err(GrammarError::Ungrammatical { attempted })
}

/// Odometer over the per-word options, last word fastest.
fn advance<T>(choice: &mut [usize], options: &[&[T]]) -> bool {
    for i in (0..choice.len()).rev() {
        choice[i] += 1;
        if choice[i] < options[i].len() {
            return true;
        }
        choice[i] = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::Grammar;

    #[test]
    fn quantified_subject_sentence() {
        let g = Grammar::fragment();
        let p = parse_sentence("some cats sneeze", &g.dictionary).unwrap();
        assert_eq!(p.shape, Some(Shape::DetNVp));
        assert_eq!(p.target.to_string(), "s");
        assert_eq!(p.diagram.links, vec![(0, 3), (1, 2)]);
    }

    #[test]
    fn quantified_object_sentence() {
        let g = Grammar::fragment();
        let p = parse_sentence("John stroked some cats", &g.dictionary).unwrap();
        assert_eq!(p.shape, Some(Shape::NpVDetN));
        assert_eq!(p.words[0], "john");
        assert_eq!(p.diagram.links, vec![(0, 1), (3, 4), (5, 6)]);
    }

    #[test]
    fn noun_phrase_query() {
        let g = Grammar::fragment();
        let p = parse_sentence("some cats", &g.dictionary).unwrap();
        assert_eq!(p.shape, Some(Shape::DetN));
        assert_eq!(p.target.to_string(), "p");
    }

    #[test]
    fn errors() {
        let g = Grammar::fragment();
        match parse_sentence("cats some", &g.dictionary) {
            Err(GrammarError::Ungrammatical { attempted }) => {
                assert_eq!(attempted, vec![vec!["N".to_string(), "Det".to_string()]]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            parse_sentence("some unicorns sneeze", &g.dictionary).unwrap_err(),
            GrammarError::UnknownToken("unicorns".into())
        );
        assert_eq!(parse_sentence("  ", &g.dictionary).unwrap_err(), GrammarError::Empty);
    }

    #[test]
    fn ambiguity_resolved_in_dictionary_order() {
        let mut d = Grammar::fragment().dictionary;
        for w in ["blob", "glob"] {
            for c in ["NP", "N", "VP"] {
                d.add_word(w, c).unwrap();
            }
        }
        let p = parse_sentence("blob glob", &d).unwrap();
        assert_eq!(p.categories, vec!["NP", "VP"]);
        assert_eq!(p.shape, Some(Shape::NpVp));
        let p = parse_sentence("every blob glob", &d).unwrap();
        assert_eq!(p.categories, vec!["Det", "N", "VP"]);
    }

    #[test]
    fn shape_names() {
        for s in Shape::ALL {
            assert_eq!(s.to_string().parse::<Shape>().unwrap(), s);
        }
        assert_eq!(Shape::NpVDetN.to_string(), "NP-V-Det-N");
    }
}
