//! Generalised quantifiers as maps from a subset `A` to a family of subsets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::universe::{SubsetId, Universe};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid quantifier `{0}` (expected some, every, no, most, exactly:N, atleast:N or few:K)")]
pub struct QuantifierSyntaxError(pub String);

/// A built-in determiner meaning.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Quantifier {
    Some,
    Every,
    No,
    ExactlyN(u32),
    AtLeastN(u32),
    /// Strict majority: `2|X ∩ A| > |A|`.
    Most,
    /// At most `k` elements of `A`.
    Few(u32),
}

impl Quantifier {
    /// Membership test `X ∈ q(A)`.
    pub fn holds(self, a: SubsetId, x: SubsetId) -> bool {
        let overlap = x.intersection(a).len();
        match self {
            Quantifier::Some => overlap != 0,
            Quantifier::Every => a.is_subset_of(x),
            Quantifier::No => overlap == 0,
            Quantifier::ExactlyN(n) => overlap == n,
            Quantifier::AtLeastN(n) => overlap >= n,
            Quantifier::Most => 2 * overlap > a.len(),
            Quantifier::Few(k) => overlap <= k,
        }
    }

    /// The family `q(A) ⊆ P(U)`, in ascending mask order.
    pub fn family(self, u: &Universe, a: SubsetId) -> Vec<SubsetId> {
        u.subsets().filter(|x| self.holds(a, *x)).collect()
    }

    /// Every built-in quantifier, with numeric parameters ranging over `0..=max_param`.
    pub fn builtins(max_param: u32) -> Vec<Quantifier> {
        let mut out = vec![Quantifier::Some, Quantifier::Every, Quantifier::No, Quantifier::Most];
        out.extend((0..=max_param).map(Quantifier::ExactlyN));
        out.extend((0..=max_param).map(Quantifier::AtLeastN));
        out.extend((0..=max_param).map(Quantifier::Few));
        out
    }
}

/// Conservativity (living on `A`) of an arbitrary family-valued map, checked exhaustively.
pub fn is_conservative_by<F>(u: &Universe, holds: F) -> bool
where
    F: Fn(SubsetId, SubsetId) -> bool,
{
    u.subsets().all(|a| u.subsets().all(|x| holds(a, x) == holds(a, x.intersection(a))))
}

/// `true` iff `X ∈ q(A) ⇔ X ∩ A ∈ q(A)` for all `A, X ⊆ U`.
pub fn is_conservative(q: Quantifier, u: &Universe) -> bool {
    is_conservative_by(u, |a, x| q.holds(a, x))
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantifier::Some => f.write_str("some"),
            Quantifier::Every => f.write_str("every"),
            Quantifier::No => f.write_str("no"),
            Quantifier::ExactlyN(n) => write!(f, "exactly:{n}"),
            Quantifier::AtLeastN(n) => write!(f, "atleast:{n}"),
            Quantifier::Most => f.write_str("most"),
            Quantifier::Few(k) => write!(f, "few:{k}"),
        }
    }
}

impl FromStr for Quantifier {
    type Err = QuantifierSyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || QuantifierSyntaxError(s.to_string());
        let (head, param) = match s.split_once(':') {
            Some((h, p)) => (h, Some(p.parse::<u32>().map_err(|_| err())?)),
            None => (s, None),
        };
        match (head, param) {
            ("some", None) => Ok(Quantifier::Some),
            ("every", None) => Ok(Quantifier::Every),
            ("no", None) => Ok(Quantifier::No),
            ("most", None) => Ok(Quantifier::Most),
            ("exactly", Some(n)) => Ok(Quantifier::ExactlyN(n)),
            ("atleast", Some(n)) => Ok(Quantifier::AtLeastN(n)),
            ("few", Some(k)) => Ok(Quantifier::Few(k)),
            _ => Err(err()),
        }
    }
}

impl Serialize for Quantifier {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Quantifier {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Universe {
        Universe::new(["a", "b"]).unwrap()
    }

    // Independent enumeration of the textbook definitions over member lists.
    fn by_definition(q: Quantifier, a: &[usize], x: &[usize]) -> bool {
        let overlap = x.iter().filter(|e| a.contains(e)).count();
        match q {
            Quantifier::Some => overlap > 0,
            Quantifier::Every => a.iter().all(|e| x.contains(e)),
            Quantifier::No => overlap == 0,
            Quantifier::ExactlyN(n) => overlap == n as usize,
            Quantifier::AtLeastN(n) => overlap >= n as usize,
            Quantifier::Most => 2 * overlap > a.len(),
            Quantifier::Few(k) => overlap <= k as usize,
        }
    }

    #[test]
    fn every_of_empty_is_whole_powerset() {
        for n in 0..4 {
            let u = Universe::anonymous(n).unwrap();
            assert_eq!(Quantifier::Every.family(&u, SubsetId::EMPTY).len(), 1 << n);
        }
    }

    #[test]
    fn some_of_empty_is_empty_family() {
        let u = Universe::anonymous(3).unwrap();
        assert!(Quantifier::Some.family(&u, SubsetId::EMPTY).is_empty());
    }

    #[test]
    fn small_families_by_enumeration() {
        let u = ab();
        let a = u.subset(["a"]).unwrap();
        let some_a = Quantifier::Some.family(&u, a);
        assert_eq!(some_a, vec![u.subset(["a"]).unwrap(), u.subset(["a", "b"]).unwrap()]);
        let exactly_one = Quantifier::ExactlyN(1).family(&u, u.full());
        assert_eq!(exactly_one, vec![u.subset(["a"]).unwrap(), u.subset(["b"]).unwrap()]);
    }

    #[test]
    fn families_match_member_list_definitions() {
        let u = Universe::anonymous(4).unwrap();
        for q in Quantifier::builtins(4) {
            for a in u.subsets() {
                let am: Vec<usize> = a.members().collect();
                for x in u.subsets() {
                    let xm: Vec<usize> = x.members().collect();
                    assert_eq!(q.holds(a, x), by_definition(q, &am, &xm), "{q} {a:?} {x:?}");
                }
            }
        }
    }

    #[test]
    fn exactly_zero_is_no() {
        let u = Universe::anonymous(3).unwrap();
        for a in u.subsets() {
            assert_eq!(Quantifier::ExactlyN(0).family(&u, a), Quantifier::No.family(&u, a));
        }
    }

    #[test]
    fn builtins_are_conservative() {
        for n in 0..=4 {
            let u = Universe::anonymous(n).unwrap();
            for q in Quantifier::builtins(n as u32 + 1) {
                assert!(is_conservative(q, &u), "{q} on |U|={n}");
            }
        }
    }

    #[test]
    fn cardinality_one_is_not_conservative() {
        // {X | |X| = 1}: with U={a,b}, A={a}, X={b} is in the family but X∩A = ∅ is not.
        let singletons = |_a: SubsetId, x: SubsetId| x.len() == 1;
        assert!(!is_conservative_by(&ab(), singletons));
        // Already on U={a}: A=∅, X={a}. Only the empty universe has no witness.
        assert!(!is_conservative_by(&Universe::anonymous(1).unwrap(), singletons));
        assert!(is_conservative_by(&Universe::anonymous(0).unwrap(), singletons));
    }

    #[test]
    fn syntax_round_trip() {
        for q in Quantifier::builtins(3) {
            assert_eq!(q.to_string().parse::<Quantifier>().unwrap(), q);
        }
        assert_eq!("exactly:2".parse::<Quantifier>().unwrap(), Quantifier::ExactlyN(2));
        assert!("exactly".parse::<Quantifier>().is_err());
        assert!("some:1".parse::<Quantifier>().is_err());
        assert!("several".parse::<Quantifier>().is_err());
        let json: Quantifier = serde_json::from_str("\"few:1\"").unwrap();
        assert_eq!(json, Quantifier::Few(1));
    }
}
