//! Finite subsets of a ring with elementwise sum and product.

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing, RingId};

/// Sorted, duplicate-free subset of one ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    ring: RingId,
    elems: Vec<Elem>,
}

impl ElementSet {
    pub fn new(ring: &FiniteRing, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut elems: Vec<Elem> = elems.into_iter().collect();
        elems.sort_unstable();
        elems.dedup();
        debug_assert!(elems.last().is_none_or(|e| e.index() < ring.size()));
        ElementSet { ring: ring.id(), elems }
    }

    pub fn empty(ring: &FiniteRing) -> Self {
        ElementSet {
            ring: ring.id(),
            elems: Vec::new(),
        }
    }

    pub fn whole(ring: &FiniteRing) -> Self {
        ElementSet {
            ring: ring.id(),
            elems: ring.elements().collect(),
        }
    }

    pub fn singleton(ring: &FiniteRing, x: Elem) -> Self {
        ElementSet {
            ring: ring.id(),
            elems: vec![x],
        }
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elems.iter().copied()
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.elems
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.ring == other.ring && self.iter().all(|x| other.contains(x))
    }

    pub fn labels(&self, ring: &FiniteRing) -> Vec<String> {
        self.iter().map(|x| ring.label(x).to_string()).collect()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().map(Elem::index).collect()
    }

    /// Image of the set under `f`.
    pub fn map(&self, ring: &FiniteRing, f: impl Fn(Elem) -> Elem) -> ElementSet {
        ElementSet::new(ring, self.iter().map(f))
    }

    /// Closed under `+` and `-` and contains zero.
    pub fn is_additive_subgroup(&self, ring: &FiniteRing) -> bool {
        self.contains(ring.zero()) && self.iter().all(|a| self.iter().all(|b| self.contains(ring.sub(a, b))))
    }
}

fn combine(ring: &FiniteRing, a: &ElementSet, b: &ElementSet, op: impl Fn(Elem, Elem) -> Elem) -> Result<ElementSet> {
    if a.ring != ring.id() || b.ring != ring.id() {
        return Err(Error::RingMismatch);
    }
    let mut seen = vec![false; ring.size()];
    for x in a.iter() {
        for y in b.iter() {
            seen[op(x, y).index()] = true;
        }
    }
    Ok(ElementSet {
        ring: ring.id(),
        elems: ring.elements().filter(|e| seen[e.index()]).collect(),
    })
}

/// `A + B = {a + b}`. Empty if either operand is empty.
pub fn set_add(ring: &FiniteRing, a: &ElementSet, b: &ElementSet) -> Result<ElementSet> {
    combine(ring, a, b, |x, y| ring.add(x, y))
}

/// `A · B = {a · b}`. Empty if either operand is empty.
pub fn set_mul(ring: &FiniteRing, a: &ElementSet, b: &ElementSet) -> Result<ElementSet> {
    combine(ring, a, b, |x, y| ring.mul(x, y))
}
