//! Pregroup types: adjoint-decorated atoms and their monoid of sequences.

use std::fmt;
use std::str::FromStr;

use super::GrammarError;

/// A basic type name such as `p`, `n` or `s`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Atom(pub String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Self {
        Atom(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An atom with an iterated adjoint: `z < 0` left adjoints, `z > 0` right adjoints.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SimpleType {
    pub atom: Atom,
    pub adjoint: i32,
}

impl SimpleType {
    pub fn plain(atom: &str) -> Self {
        SimpleType { atom: Atom::new(atom), adjoint: 0 }
    }

    pub fn with_adjoint(atom: &str, adjoint: i32) -> Self {
        SimpleType { atom: Atom::new(atom), adjoint }
    }

    pub fn left(&self) -> Self {
        SimpleType { atom: self.atom.clone(), adjoint: self.adjoint - 1 }
    }

    pub fn right(&self) -> Self {
        SimpleType { atom: self.atom.clone(), adjoint: self.adjoint + 1 }
    }

    /// `self · other ≤ 1`, i.e. `x^(z) · x^(z+1)`.
    pub fn contracts_with(&self, other: &SimpleType) -> bool {
        self.atom == other.atom && other.adjoint == self.adjoint + 1
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.atom)?;
        match self.adjoint {
            0 => Ok(()),
            z if z > 0 => write!(f, "^{}", "r".repeat(z as usize)),
            z => write!(f, "^{}", "l".repeat(z.unsigned_abs() as usize)),
        }
    }
}

impl FromStr for SimpleType {
    type Err = GrammarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GrammarError::TypeSyntax(s.to_string());
        let (atom, adj) = match s.split_once('^') {
            Some((a, adj)) => (a, adj),
            None => (s, ""),
        };
        if atom.is_empty() || !atom.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(bad());
        }
        let adjoint = if adj.chars().all(|c| c == 'r') {
            adj.len() as i32
        } else if adj.chars().all(|c| c == 'l') {
            -(adj.len() as i32)
        } else {
            return Err(bad());
        };
        if s.contains('^') && adj.is_empty() {
            return Err(bad());
        }
        Ok(SimpleType::with_adjoint(atom, adjoint))
    }
}

/// A product of simple types; the empty product is the unit `1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PregroupType(pub Vec<SimpleType>);

impl PregroupType {
    pub fn unit() -> Self {
        PregroupType(Vec::new())
    }

    pub fn atom(name: &str) -> Self {
        PregroupType(vec![SimpleType::plain(name)])
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_unit()
    }

    pub fn concat(&self, other: &PregroupType) -> PregroupType {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        PregroupType(v)
    }

    /// `(a·b)^l = b^l · a^l`.
    pub fn left(&self) -> PregroupType {
        PregroupType(self.0.iter().rev().map(SimpleType::left).collect())
    }

    /// `(a·b)^r = b^r · a^r`.
    pub fn right(&self) -> PregroupType {
        PregroupType(self.0.iter().rev().map(SimpleType::right).collect())
    }
}

impl fmt::Display for PregroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for PregroupType {
    type Err = GrammarError;

    /// Accepts `p^r·s·p^l`, `p^r.s.p^l` or `p^r s p^l`; `1` is the unit.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(PregroupType::unit());
        }
        s.split(|c: char| c == '·' || c == '.' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(PregroupType)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering() {
        let t: PregroupType = "p^r·s·p^l".parse().unwrap();
        assert_eq!(t.to_string(), "p^r·s·p^l");
        assert_eq!(PregroupType::unit().to_string(), "1");
        assert_eq!(SimpleType::with_adjoint("n", -2).to_string(), "n^ll");
        assert_eq!(SimpleType::with_adjoint("n", 3).to_string(), "n^rrr");
        assert_eq!("p.n^l".parse::<PregroupType>().unwrap().to_string(), "p·n^l");
    }

    #[test]
    fn bad_syntax() {
        assert!("p^".parse::<SimpleType>().is_err());
        assert!("p^rl".parse::<SimpleType>().is_err());
        assert!("^r".parse::<SimpleType>().is_err());
    }

    #[test]
    fn adjoints_reverse_products() {
        let t: PregroupType = "p·n^l".parse().unwrap();
        assert_eq!(t.left().to_string(), "n^ll·p^l");
        assert_eq!(t.right().to_string(), "n·p^r");
        assert_eq!(t.left().right(), t);
    }

    #[test]
    fn contraction_rule() {
        let p = SimpleType::plain("p");
        assert!(p.contracts_with(&p.right()));
        assert!(p.left().contracts_with(&p));
        assert!(!p.right().contracts_with(&p));
        assert!(!p.contracts_with(&SimpleType::with_adjoint("n", 1)));
    }
}
