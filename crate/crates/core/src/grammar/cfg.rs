//! Context-free grammars with directed binary rules, and their pregroup translation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::GrammarError;
use super::types::{Atom, PregroupType};

/// Which daughter of a binary rule `A → B C` is the functor.
///
/// A rule is right-to-left when `⟦A⟧ = ⟦C⟧(⟦B⟧)`: `C` consumes `B` on its left and
/// gets `σ(B)^r · σ(A)`. Left-to-right is the mirror image: `σ(B) = σ(A) · σ(C)^l`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Direction {
    LeftToRight,
    RightToLeft,
}

impl FromStr for Direction {
    type Err = GrammarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left-to-right" => Ok(Direction::LeftToRight),
            "right-to-left" => Ok(Direction::RightToLeft),
            other => Err(GrammarError::Direction(other.to_string())),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::LeftToRight => "left-to-right",
            Direction::RightToLeft => "right-to-left",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryRule {
    pub lhs: String,
    pub left: String,
    pub right: String,
    pub direction: Direction,
}

/// A grammar whose binary rules carry a direction tag and whose atomic rules
/// come from a lexicon mapping terminals to nonterminals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CfgSpec {
    pub atoms: Vec<Atom>,
    pub start: String,
    pub binary_rules: Vec<BinaryRule>,
    /// Atomic rules `A → x`, as `x ↦ [A, ..]` in preference order.
    pub lexicon: BTreeMap<String, Vec<String>>,
}

impl CfgSpec {
    pub fn nonterminals(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        out.insert(self.start.clone());
        for r in &self.binary_rules {
            out.insert(r.lhs.clone());
            out.insert(r.left.clone());
            out.insert(r.right.clone());
        }
        out.extend(self.lexicon.values().flatten().cloned());
        out
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LexicalEntry {
    pub category: String,
    pub ty: PregroupType,
}

/// The relation between vocabulary and pregroup types, with a designated sentence type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypeDictionary {
    pub sentence: PregroupType,
    /// Types tried, in order, when a string does not reduce to the sentence type.
    pub phrase_targets: Vec<PregroupType>,
    entries: BTreeMap<String, Vec<LexicalEntry>>,
    categories: BTreeMap<String, PregroupType>,
}

impl TypeDictionary {
    pub fn entries(&self, token: &str) -> Option<&[LexicalEntry]> {
        self.entries.get(token).map(Vec::as_slice)
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    /// `σ` of a nonterminal.
    pub fn category_type(&self, category: &str) -> Option<&PregroupType> {
        self.categories.get(category)
    }

    /// Appends `category` to the token's entries unless already present.
    pub fn add_word(&mut self, token: &str, category: &str) -> Result<(), GrammarError> {
        let ty = self
            .categories
            .get(category)
            .cloned()
            .ok_or_else(|| GrammarError::Unresolved(category.to_string()))?;
        let list = self.entries.entry(token.to_string()).or_default();
        if !list.iter().any(|e| e.category == category) {
            list.push(LexicalEntry { category: category.to_string(), ty });
        }
        Ok(())
    }
}

/// Computes `σ` on every nonterminal and returns the induced type dictionary.
pub fn sigma_translate(
    cfg: &CfgSpec,
    atom_assignment: &BTreeMap<String, Atom>,
) -> Result<TypeDictionary, GrammarError> {
    let mut sigma: BTreeMap<String, PregroupType> = BTreeMap::new();
    for (nt, atom) in atom_assignment {
        if !cfg.atoms.contains(atom) {
            return Err(GrammarError::UnknownAtom {
                nonterminal: nt.clone(),
                atom: atom.0.clone(),
            });
        }
        sigma.insert(nt.clone(), PregroupType::atom(atom.name()));
    }

    loop {
        let mut changed = false;
        for rule in &cfg.binary_rules {
            let derived = match rule.direction {
                Direction::RightToLeft => match (sigma.get(&rule.lhs), sigma.get(&rule.left)) {
                    (Some(a), Some(b)) => Some((&rule.right, b.right().concat(a))),
                    _ => None,
                },
                Direction::LeftToRight => match (sigma.get(&rule.lhs), sigma.get(&rule.right)) {
                    (Some(a), Some(c)) => Some((&rule.left, a.concat(&c.left()))),
                    _ => None,
                },
            };
            let Some((target, ty)) = derived else { continue };
            match sigma.get(target) {
                None => {
                    sigma.insert(target.clone(), ty);
                    changed = true;
                }
                Some(existing) if *existing != ty => {
                    return Err(GrammarError::Conflict {
                        nonterminal: target.clone(),
                        first: existing.to_string(),
                        second: ty.to_string(),
                    });
                }
                Some(_) => {}
            }
        }
        if !changed {
            break;
        }
    }

    if let Some(missing) = cfg.nonterminals().into_iter().find(|nt| !sigma.contains_key(nt)) {
        return Err(GrammarError::Unresolved(missing));
    }

    let mut entries: BTreeMap<String, Vec<LexicalEntry>> = BTreeMap::new();
    for (token, cats) in &cfg.lexicon {
        let list = entries.entry(token.clone()).or_default();
        for cat in cats {
            list.push(LexicalEntry { category: cat.clone(), ty: sigma[cat].clone() });
        }
    }
    let sentence = sigma[&cfg.start].clone();
    let phrase_targets = sigma.get("NP").into_iter().cloned().collect();
    Ok(TypeDictionary { sentence, phrase_targets, entries, categories: sigma })
}

/// JSON grammar file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GrammarFile {
    pub atoms: Vec<String>,
    #[serde(default = "default_start")]
    pub start: String,
    pub atomic_assignments: BTreeMap<String, String>,
    #[serde(default)]
    pub binary_rules: Vec<BinaryRuleFile>,
    pub lexicon: BTreeMap<String, Vec<String>>,
}

fn default_start() -> String {
    "S".to_string()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BinaryRuleFile {
    pub lhs: String,
    pub rhs: Vec<String>,
    pub direction: String,
}

impl GrammarFile {
    pub fn to_cfg(&self) -> Result<(CfgSpec, BTreeMap<String, Atom>), GrammarError> {
        let binary_rules = self
            .binary_rules
            .iter()
            .map(|r| match r.rhs.as_slice() {
                [b, c] => Ok(BinaryRule {
                    lhs: r.lhs.clone(),
                    left: b.clone(),
                    right: c.clone(),
                    direction: r.direction.parse()?,
                }),
                _ => Err(GrammarError::Arity(r.lhs.clone())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cfg = CfgSpec {
            atoms: self.atoms.iter().map(Atom::new).collect(),
            start: self.start.clone(),
            binary_rules,
            lexicon: self.lexicon.clone(),
        };
        let assignment = self
            .atomic_assignments
            .iter()
            .map(|(nt, a)| (nt.clone(), Atom::new(a.clone())))
            .collect();
        Ok((cfg, assignment))
    }
}

/// A grammar together with its pregroup dictionary.
#[derive(Clone, Debug)]
pub struct Grammar {
    pub cfg: CfgSpec,
    pub dictionary: TypeDictionary,
}

const FRAGMENT: &str = include_str!("../../assets/fragment-grammar.json");

impl Grammar {
    pub fn from_file(file: &GrammarFile) -> Result<Self, GrammarError> {
        let (cfg, assignment) = file.to_cfg()?;
        let dictionary = sigma_translate(&cfg, &assignment)?;
        Ok(Grammar { cfg, dictionary })
    }

    pub fn from_json(text: &str) -> Result<Self, GrammarError> {
        let file: GrammarFile =
            serde_json::from_str(text).map_err(|e| GrammarError::File(e.to_string()))?;
        Self::from_file(&file)
    }

    /// The quantified fragment: `S → NP VP`, `VP → V NP`, `NP → Det N` plus a small lexicon.
    pub fn fragment() -> Self {
        Self::from_json(FRAGMENT).expect("built-in grammar is valid")
    }

    pub fn fragment_file() -> GrammarFile {
        serde_json::from_str(FRAGMENT).expect("built-in grammar is valid")
    }
}
