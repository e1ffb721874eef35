//! Sparse matrices between tensor products of wires, over a weight semiring.
//!
//! A morphism stores, for every domain basis tuple with a nonzero image, the
//! weighted combination of codomain tuples it maps to. Zero weights are never
//! stored, so structural equality is extensional equality.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::scalar::Weight;
use crate::term::WireType;

/// A basis element of a product of wires: one coordinate per wire.
pub type Tuple = SmallVec<[u32; 8]>;

#[derive(Clone, PartialEq)]
pub struct Morphism<K> {
    dom: Vec<WireType>,
    cod: Vec<WireType>,
    columns: BTreeMap<Tuple, BTreeMap<Tuple, K>>,
}

impl<K: Weight> Morphism<K> {
    pub fn zero(dom: Vec<WireType>, cod: Vec<WireType>) -> Self {
        Morphism { dom, cod, columns: BTreeMap::new() }
    }

    /// A state `I → cod`.
    pub fn state<I>(cod: Vec<WireType>, entries: I) -> Self
    where
        I: IntoIterator<Item = (Tuple, K)>,
    {
        let mut m = Morphism::zero(Vec::new(), cod);
        for (t, w) in entries {
            m.add(Tuple::new(), t, w);
        }
        m
    }

    /// `id` on a product whose per-wire bases are given.
    pub fn identity(wires: Vec<WireType>, bases: &[Vec<u32>]) -> Self {
        let mut m = Morphism::zero(wires.clone(), wires);
        for t in product(bases) {
            m.add(t.clone(), t, K::one());
        }
        m
    }

    pub fn dom(&self) -> &[WireType] {
        &self.dom
    }

    pub fn cod(&self) -> &[WireType] {
        &self.cod
    }

    /// Adds `w` to the entry `from ↦ to`.
    pub fn add(&mut self, from: Tuple, to: Tuple, w: K) {
        debug_assert_eq!(from.len(), self.dom.len());
        debug_assert_eq!(to.len(), self.cod.len());
        if w.is_zero() {
            return;
        }
        let col = self.columns.entry(from).or_default();
        match col.get_mut(&to) {
            Some(existing) => {
                let sum = existing.add(&w);
                if sum.is_zero() {
                    col.remove(&to);
                } else {
                    *existing = sum;
                }
            }
            None => {
                col.insert(to, w);
            }
        }
        self.columns.retain(|_, c| !c.is_empty());
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    /// The image of one domain basis tuple.
    pub fn column(&self, from: &[u32]) -> impl Iterator<Item = (&Tuple, &K)> {
        self.columns.get(from).into_iter().flat_map(|c| c.iter())
    }

    /// Weight of the entry `from ↦ to`.
    pub fn get(&self, from: &[u32], to: &[u32]) -> K {
        self.columns
            .get(from)
            .and_then(|c| c.get(to))
            .cloned()
            .unwrap_or_else(K::zero)
    }

    /// All nonzero entries as `(from, to, weight)`, in tuple order.
    pub fn entries(&self) -> impl Iterator<Item = (&Tuple, &Tuple, &K)> {
        self.columns
            .iter()
            .flat_map(|(from, col)| col.iter().map(move |(to, w)| (from, to, w)))
    }

    pub fn nnz(&self) -> usize {
        self.columns.values().map(BTreeMap::len).sum()
    }

    /// `after ∘ self`. Fails on a codomain/domain mismatch.
    pub fn then(&self, after: &Morphism<K>) -> Option<Morphism<K>> {
        if self.cod != after.dom {
            return None;
        }
        let mut out = Morphism::zero(self.dom.clone(), after.cod.clone());
        for (a, mid, w1) in self.entries() {
            for (c, w2) in after.column(mid) {
                out.add(a.clone(), c.clone(), w1.mul(w2));
            }
        }
        Some(out)
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Morphism<K>) -> Morphism<K> {
        let dom = [self.dom.as_slice(), other.dom.as_slice()].concat();
        let cod = [self.cod.as_slice(), other.cod.as_slice()].concat();
        let mut out = Morphism::zero(dom, cod);
        for (a1, b1, w1) in self.entries() {
            for (a2, b2, w2) in other.entries() {
                out.add(join(a1, a2), join(b1, b2), w1.mul(w2));
            }
        }
        out
    }

    /// `(id ⊗ g ⊗ id) ∘ self`, where `g` acts on codomain wires
    /// `offset .. offset + g_dom` and is given by its action on basis tuples.
    pub fn apply_at<E, F>(
        &self,
        offset: usize,
        g_dom: &[WireType],
        g_cod: &[WireType],
        mut action: F,
    ) -> Result<Morphism<K>, E>
    where
        F: FnMut(&[u32]) -> Result<Vec<(Tuple, K)>, E>,
    {
        let end = offset + g_dom.len();
        debug_assert!(end <= self.cod.len() && self.cod[offset..end] == *g_dom);
        let cod = [&self.cod[..offset], g_cod, &self.cod[end..]].concat();
        let mut out = Morphism::zero(self.dom.clone(), cod);
        // Few distinct inputs reach a generator, so a linear memo beats a map.
        let mut cache: Vec<(Tuple, Vec<(Tuple, K)>)> = Vec::new();
        for (a, b, w1) in self.entries() {
            let mid = &b[offset..end];
            let slot = match cache.iter().position(|(m, _)| m.as_slice() == mid) {
                Some(i) => i,
                None => {
                    cache.push((Tuple::from_slice(mid), action(mid)?));
                    cache.len() - 1
                }
            };
            for (c, w2) in &cache[slot].1 {
                let mut t: Tuple = b[..offset].iter().copied().collect();
                t.extend_from_slice(c);
                t.extend_from_slice(&b[end..]);
                out.add(a.clone(), t, w1.mul(w2));
            }
        }
        Ok(out)
    }

    /// Maps every weight through `f`, dropping zeros.
    pub fn map_weights<L: Weight>(&self, mut f: impl FnMut(&K) -> L) -> Morphism<L> {
        let mut out = Morphism::zero(self.dom.clone(), self.cod.clone());
        for (a, b, w) in self.entries() {
            out.add(a.clone(), b.clone(), f(w));
        }
        out
    }
}

impl<K: Weight> fmt::Debug for Morphism<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Morphism({:?} -> {:?}) {{", self.dom, self.cod)?;
        for (i, (a, b, w)) in self.entries().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " {:?}->{:?}: {:?}", a.as_slice(), b.as_slice(), w)?;
        }
        f.write_str(" }")
    }
}

fn join(a: &[u32], b: &[u32]) -> Tuple {
    let mut t: Tuple = a.iter().copied().collect();
    t.extend_from_slice(b);
    t
}

/// Cartesian product of per-wire bases, last coordinate fastest.
pub fn product(bases: &[Vec<u32>]) -> Vec<Tuple> {
    let mut out = vec![Tuple::new()];
    for basis in bases {
        let mut next = Vec::with_capacity(out.len() * basis.len());
        for prefix in &out {
            for x in basis {
                let mut t = prefix.clone();
                t.push(*x);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Boolean;
    use crate::term::WireType::{S, W};
    use smallvec::smallvec;

    fn bases(n: usize) -> Vec<Vec<u32>> {
        vec![(0..n as u32).collect()]
    }

    #[test]
    fn identity_is_neutral() {
        let id = Morphism::<f64>::identity(vec![W], &bases(3));
        let mut f = Morphism::zero(vec![W], vec![W]);
        f.add(smallvec![0], smallvec![2], 2.0);
        f.add(smallvec![1], smallvec![0], -1.0);
        assert_eq!(f.then(&id).unwrap(), f);
        assert_eq!(id.then(&f).unwrap(), f);
    }

    #[test]
    fn cancellation_removes_entries() {
        let mut f = Morphism::<f64>::zero(vec![], vec![W]);
        f.add(smallvec![], smallvec![1], 1.5);
        f.add(smallvec![], smallvec![1], -1.5);
        assert!(f.is_zero());
        assert_eq!(f, Morphism::zero(vec![], vec![W]));
    }

    #[test]
    fn mismatched_composition() {
        let f = Morphism::<Boolean>::identity(vec![W], &bases(2));
        let g = Morphism::<Boolean>::identity(vec![S], &bases(1));
        assert!(f.then(&g).is_none());
    }

    #[test]
    fn apply_at_matches_tensor_then_compose() {
        // x: I -> W W, g acts on the second wire.
        let x = Morphism::<f64>::state(
            vec![W, W],
            [(smallvec![0, 1], 2.0), (smallvec![1, 1], 3.0), (smallvec![1, 0], 5.0)],
        );
        let mut g = Morphism::zero(vec![W], vec![W, S]);
        g.add(smallvec![1], smallvec![0, 0], 7.0);
        g.add(smallvec![0], smallvec![1, 0], 11.0);
        let id = Morphism::identity(vec![W], &bases(2));
        let expected = x.then(&id.tensor(&g)).unwrap();
        let got = x
            .apply_at::<(), _>(1, &[W], &[W, S], |t| {
                Ok(g.column(t).map(|(b, w)| (b.clone(), *w)).collect())
            })
            .unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn product_order() {
        let p = product(&[vec![0, 1], vec![5]]);
        assert_eq!(p, vec![Tuple::from_slice(&[0, 5]), Tuple::from_slice(&[1, 5])]);
        assert_eq!(product(&[]), vec![Tuple::new()]);
    }
}
