//! Contraction-only pregroup reductions found by interval dynamic programming.
//!
//! A reduction of `t_0 · .. · t_{m-1}` to a target `g_0 · .. · g_{k-1}` is a
//! planar matching of contracted positions plus an ordered set of survivors
//! that spell the target. Survivors cannot sit under a link, so the factor
//! sequence splits as `B_0 g_0 B_1 .. g_{k-1} B_k` with every block `B_i`
//! contracting to `1`.

use std::fmt;

use super::types::{PregroupType, SimpleType};

/// Links `(i, j)` with `i < j` over the flattened factor sequence, plus survivors.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ReductionDiagram {
    pub links: Vec<(usize, usize)>,
    pub survivors: Vec<usize>,
}

impl ReductionDiagram {
    /// No two links cross.
    pub fn is_planar(&self) -> bool {
        self.links.iter().all(|&(i, j)| {
            self.links.iter().all(|&(k, l)| !(i < k && k < j && j < l))
        })
    }

    /// Replays the links as contractions and returns the surviving type, or `None`
    /// if some link does not contract or positions are reused.
    pub fn replay(&self, factors: &[SimpleType]) -> Option<PregroupType> {
        let mut used = vec![false; factors.len()];
        for &(i, j) in &self.links {
            if i >= j || j >= factors.len() || used[i] || used[j] {
                return None;
            }
            if !factors[i].contracts_with(&factors[j]) {
                return None;
            }
            used[i] = true;
            used[j] = true;
        }
        // A survivor under a link would block the contraction.
        if self.links.iter().any(|&(i, j)| (i + 1..j).any(|p| !used[p])) {
            return None;
        }
        let survivors: Vec<usize> = (0..factors.len()).filter(|p| !used[*p]).collect();
        if survivors != self.survivors {
            return None;
        }
        Some(PregroupType(survivors.iter().map(|p| factors[*p].clone()).collect()))
    }
}

impl fmt::Display for ReductionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let links: Vec<String> = self.links.iter().map(|(i, j)| format!("({i},{j})")).collect();
        f.write_str(&links.join(" "))
    }
}

/// Flattens a word-by-word type assignment into one factor sequence.
pub fn flatten(types: &[PregroupType]) -> Vec<SimpleType> {
    types.iter().flat_map(|t| t.factors().iter().cloned()).collect()
}

/// Finds the reduction of `types` to `target` whose sorted link list is
/// lexicographically least, or `None` if the concatenation does not reduce.
pub fn reduce(types: &[PregroupType], target: &PregroupType) -> Option<ReductionDiagram> {
    let factors = flatten(types);
    Reducer::new(&factors, target.factors()).solve()
}

struct Reducer<'a> {
    factors: &'a [SimpleType],
    target: &'a [SimpleType],
    /// `empty[i][j]`: factors `i..j` contract to `1`.
    empty: Vec<Vec<bool>>,
    /// `rest[p][t]`: factors `p..` reduce to target `t..`.
    rest: Vec<Vec<bool>>,
}

impl<'a> Reducer<'a> {
    fn new(factors: &'a [SimpleType], target: &'a [SimpleType]) -> Self {
        let m = factors.len();
        let mut empty = vec![vec![false; m + 1]; m + 1];
        for (i, row) in empty.iter_mut().enumerate() {
            row[i] = true;
        }
        for len in (2..=m).step_by(2) {
            for i in 0..=m - len {
                let j = i + len;
                empty[i][j] = (i + 1..j).step_by(2).any(|q| {
                    factors[i].contracts_with(&factors[q]) && empty[i + 1][q] && empty[q + 1][j]
                });
            }
        }
        let k = target.len();
        let mut rest = vec![vec![false; k + 1]; m + 1];
        rest[m][k] = true;
        for p in (0..m).rev() {
            for t in (0..=k).rev() {
                let survive = t < k && factors[p] == target[t] && rest[p + 1][t + 1];
                rest[p][t] = survive
                    || (p + 1..m).any(|q| {
                        factors[p].contracts_with(&factors[q]) && empty[p + 1][q] && rest[q + 1][t]
                    });
            }
        }
        Reducer { factors, target, empty, rest }
    }

    fn solve(&self) -> Option<ReductionDiagram> {
        if !self.rest[0][0] {
            return None;
        }
        let mut diagram = ReductionDiagram::default();
        let (mut p, mut t) = (0, 0);
        let m = self.factors.len();
        while p < m {
            // An opener at p sorts before any link starting later, so try links first.
            let link = (p + 1..m).find(|&q| {
                self.factors[p].contracts_with(&self.factors[q])
                    && self.empty[p + 1][q]
                    && self.rest[q + 1][t]
            });
            match link {
                Some(q) => {
                    diagram.links.push((p, q));
                    self.fill(p + 1, q, &mut diagram.links);
                    p = q + 1;
                }
                None => {
                    debug_assert!(self.factors[p] == self.target[t] && self.rest[p + 1][t + 1]);
                    diagram.survivors.push(p);
                    p += 1;
                    t += 1;
                }
            }
        }
        Some(diagram)
    }

    /// Lexicographically least full contraction of `i..j` (known to exist).
    fn fill(&self, mut i: usize, j: usize, links: &mut Vec<(usize, usize)>) {
        while i < j {
            let q = (i + 1..j)
                .step_by(2)
                .find(|&q| {
                    self.factors[i].contracts_with(&self.factors[q])
                        && self.empty[i + 1][q]
                        && self.empty[q + 1][j]
                })
                .expect("interval known to contract");
            links.push((i, q));
            self.fill(i + 1, q, links);
            i = q + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> PregroupType {
        s.parse().unwrap()
    }

    #[test]
    fn quantified_subject() {
        let d = reduce(&[ty("p·n^l"), ty("n"), ty("p^r·s")], &ty("s")).unwrap();
        assert_eq!(d.links, vec![(0, 3), (1, 2)]);
        assert_eq!(d.survivors, vec![4]);
    }

    #[test]
    fn quantified_object() {
        let d = reduce(&[ty("p"), ty("p^r·s·p^l"), ty("p·n^l"), ty("n")], &ty("s")).unwrap();
        assert_eq!(d.links, vec![(0, 1), (3, 4), (5, 6)]);
        assert_eq!(d.survivors, vec![2]);
    }

    #[test]
    fn reflexive_and_failing() {
        let d = reduce(&[ty("n")], &ty("n")).unwrap();
        assert!(d.links.is_empty());
        assert_eq!(d.survivors, vec![0]);
        assert_eq!(reduce(&[ty("n"), ty("n")], &ty("s")), None);
    }

    #[test]
    fn noun_phrase() {
        let d = reduce(&[ty("p·n^l"), ty("n")], &ty("p")).unwrap();
        assert_eq!(d.links, vec![(1, 2)]);
        assert_eq!(d.survivors, vec![0]);
    }

    #[test]
    fn picks_lexicographically_least() {
        // Side-by-side links come out in opener order.
        let d = reduce(&[ty("n·n^r·n·n^r")], &ty("1")).unwrap();
        assert_eq!(d.links, vec![(0, 1), (2, 3)]);
        // Survivors (0,1) + link (2,3) also works; the opener at 0 wins.
        let d = reduce(&[ty("n^l·n·n^l·n")], &ty("n^l·n")).unwrap();
        assert_eq!(d.links, vec![(0, 1)]);
        assert_eq!(d.survivors, vec![2, 3]);
    }

    #[test]
    fn iterated_adjoints() {
        let d = reduce(&[ty("n^ll·n^l")], &ty("1")).unwrap();
        assert_eq!(d.links, vec![(0, 1)]);
        assert_eq!(reduce(&[ty("n^l·n^ll")], &ty("1")), None);
    }

    #[test]
    fn replay_detects_bad_diagrams() {
        let factors = flatten(&[ty("p·n^l"), ty("n")]);
        let good = ReductionDiagram { links: vec![(1, 2)], survivors: vec![0] };
        assert_eq!(good.replay(&factors), Some(ty("p")));
        let bad = ReductionDiagram { links: vec![(0, 1)], survivors: vec![2] };
        assert_eq!(bad.replay(&factors), None);
        let crossing = ReductionDiagram { links: vec![(0, 2), (1, 3)], survivors: vec![] };
        assert!(!crossing.is_planar());
    }
}
