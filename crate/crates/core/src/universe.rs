//! Finite reference sets and bitmask-coded subsets.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Largest supported universe. Families over it stay enumerable (2^16 subsets).
pub const MAX_UNIVERSE: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniverseError {
    #[error("universe has {0} elements, at most {MAX_UNIVERSE} are supported")]
    TooLarge(usize),
    #[error("duplicate universe element `{0}`")]
    Duplicate(String),
    #[error("unknown universe element `{0}`")]
    UnknownElement(String),
    #[error("subset mask {mask:#x} is out of range for a universe of size {size}")]
    MaskOutOfRange { mask: u32, size: usize },
}

/// A subset of a [`Universe`], coded as a bitmask over element order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct SubsetId(pub u32);

impl SubsetId {
    pub const EMPTY: SubsetId = SubsetId(0);

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 >> index & 1 == 1
    }

    pub fn intersection(self, other: SubsetId) -> SubsetId {
        SubsetId(self.0 & other.0)
    }

    pub fn union(self, other: SubsetId) -> SubsetId {
        SubsetId(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: SubsetId) -> bool {
        self.0 & !other.0 == 0
    }

    /// Indices of the members, ascending.
    pub fn members(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| self.contains(*i))
    }
}

/// An ordered finite set of named atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universe {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Self, UniverseError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_UNIVERSE {
            return Err(UniverseError::TooLarge(names.len()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(UniverseError::Duplicate(name.clone()));
            }
        }
        Ok(Universe { names, index })
    }

    /// Universe `{e0, .., e(n-1)}`.
    pub fn anonymous(size: usize) -> Result<Self, UniverseError> {
        Self::new((0..size).map(|i| format!("e{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Number of subsets, `2^|U|`.
    pub fn powerset_size(&self) -> usize {
        1 << self.names.len()
    }

    pub fn full(&self) -> SubsetId {
        SubsetId(((1u64 << self.names.len()) - 1) as u32)
    }

    pub fn subsets(&self) -> impl Iterator<Item = SubsetId> {
        (0..self.powerset_size() as u32).map(SubsetId)
    }

    pub fn contains_subset(&self, s: SubsetId) -> bool {
        s.is_subset_of(self.full())
    }

    pub fn check(&self, s: SubsetId) -> Result<SubsetId, UniverseError> {
        if self.contains_subset(s) {
            Ok(s)
        } else {
            Err(UniverseError::MaskOutOfRange { mask: s.0, size: self.len() })
        }
    }

    pub fn subset<I, S>(&self, members: I) -> Result<SubsetId, UniverseError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut mask = 0u32;
        for m in members {
            let i = self
                .position(m.as_ref())
                .ok_or_else(|| UniverseError::UnknownElement(m.as_ref().to_string()))?;
            mask |= 1 << i;
        }
        Ok(SubsetId(mask))
    }

    pub fn member_names(&self, s: SubsetId) -> Vec<&str> {
        s.members()
            .filter(|i| *i < self.len())
            .map(|i| self.names[i].as_str())
            .collect()
    }

    /// `{a,b}` style rendering of a subset.
    pub fn display(&self, s: SubsetId) -> String {
        format!("{{{}}}", self.member_names(s).join(","))
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_by_name() {
        let u = Universe::new(["a", "b", "c"]).unwrap();
        let s = u.subset(["a", "c"]).unwrap();
        assert_eq!(s, SubsetId(0b101));
        assert_eq!(u.display(s), "{a,c}");
        assert_eq!(u.subsets().count(), 8);
        assert_eq!(u.full(), SubsetId(0b111));
        assert!(u.check(SubsetId(0b1000)).is_err());
    }

    #[test]
    fn rejects_bad_universes() {
        assert_eq!(
            Universe::new(["a", "a"]).unwrap_err(),
            UniverseError::Duplicate("a".into())
        );
        assert!(matches!(Universe::anonymous(17), Err(UniverseError::TooLarge(17))));
        assert_eq!(Universe::anonymous(16).unwrap().full(), SubsetId(0xffff));
        let u = Universe::new(["x"]).unwrap();
        assert!(matches!(u.subset(["y"]), Err(UniverseError::UnknownElement(_))));
    }

    #[test]
    fn empty_universe_has_one_subset() {
        let u = Universe::anonymous(0).unwrap();
        assert_eq!(u.subsets().collect::<Vec<_>>(), vec![SubsetId::EMPTY]);
        assert_eq!(u.full(), SubsetId::EMPTY);
    }
}
