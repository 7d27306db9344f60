//! Finite rings given by explicit addition and multiplication tables.
//!
//! Every ring is built from a [`RingSpec`]. Construction tabulates both
//! operations, fixes a canonical element order and (unless disabled) checks
//! the ring axioms exhaustively, so all later operations are table lookups.

mod build;
mod labels;
mod spec;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::ElementSet;

pub use build::{BuildOptions, MAX_RING_SIZE};
pub use spec::RingSpec;

/// An element of a [`FiniteRing`], identified by its index in the canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub(crate) const fn from_index(i: usize) -> Self {
        Elem(i as u32)
    }
}

/// Fingerprint of a ring's tables, used to detect mixing values from different rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingId(u64);

/// How the elements of a constructed ring are encoded; kept for labels and parsing.
#[derive(Debug, Clone)]
pub(crate) enum Structure {
    Zn,
    TruncPoly { p: usize, m: usize },
    Matrix { base: Box<FiniteRing>, dim: usize },
    TriPattern { base: Box<FiniteRing> },
    Product { factors: Vec<FiniteRing> },
    Tables,
}

/// A complete finite ring: element domain, Cayley tables and optional unity.
#[derive(Debug, Clone)]
pub struct FiniteRing {
    size: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    zero: Elem,
    unity: Option<Elem>,
    labels: Vec<String>,
    spec: RingSpec,
    structure: Structure,
    id: RingId,
}

/// Pair `(a, b)` of nonzero elements with `a·r·b = 0` for every `r`.
pub type PrimeWitness = (Elem, Elem);

impl FiniteRing {
    /// Build a ring from its spec, checking every ring axiom.
    pub fn build(spec: &RingSpec) -> Result<Self> {
        build::build(spec, BuildOptions::default())
    }

    pub fn build_with(spec: &RingSpec, options: BuildOptions) -> Result<Self> {
        build::build(spec, options)
    }

    pub(crate) fn from_parts(
        spec: RingSpec,
        structure: Structure,
        size: usize,
        add: Vec<Elem>,
        mul: Vec<Elem>,
        labels: Vec<String>,
        unity_hint: Option<Elem>,
    ) -> Result<Self> {
        let zero = find_zero(size, &add).ok_or(Error::AxiomViolation {
            axiom: "additive identity exists",
            witness: vec![],
        })?;
        let mut neg = vec![zero; size];
        for x in 0..size {
            let inv = (0..size)
                .find(|&y| add[x * size + y] == zero)
                .ok_or(Error::AxiomViolation {
                    axiom: "additive inverse exists",
                    witness: vec![x],
                })?;
            neg[x] = Elem::from_index(inv);
        }
        let mut hasher = DefaultHasher::new();
        size.hash(&mut hasher);
        add.hash(&mut hasher);
        mul.hash(&mut hasher);
        let mut ring = FiniteRing {
            size,
            add,
            mul,
            neg,
            zero,
            unity: None,
            labels,
            spec,
            structure,
            id: RingId(hasher.finish()),
        };
        ring.unity = match unity_hint {
            Some(u) => {
                if let Some(x) = ring.elements().find(|&x| ring.mul(u, x) != x || ring.mul(x, u) != x) {
                    return Err(Error::AxiomViolation {
                        axiom: "declared unity is a two-sided identity",
                        witness: vec![u.index(), x.index()],
                    });
                }
                Some(u)
            }
            None => ring.find_unity(),
        };
        Ok(ring)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn id(&self) -> RingId {
        self.id
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn unity(&self) -> Option<Elem> {
        self.unity
    }

    pub(crate) fn structure(&self) -> &Structure {
        &self.structure
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone + '_ {
        (0..self.size).map(Elem::from_index)
    }

    /// Resolve an index to an element of this ring.
    pub fn elem(&self, index: usize) -> Result<Elem> {
        if index < self.size {
            Ok(Elem::from_index(index))
        } else {
            Err(Error::IndexOutOfRange { index, size: self.size })
        }
    }

    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.add[x.index() * self.size + y.index()]
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.mul[x.index() * self.size + y.index()]
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        self.neg[x.index()]
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    /// Jordan product `x∘y = xy + yx`.
    #[inline]
    pub fn jordan(&self, x: Elem, y: Elem) -> Elem {
        self.add(self.mul(x, y), self.mul(y, x))
    }

    /// Integer multiple `k·x` (repeated addition; negative `k` uses `-x`).
    pub fn times(&self, k: i64, x: Elem) -> Elem {
        let (mut base, mut k) = if k < 0 {
            (self.neg(x), k.unsigned_abs())
        } else {
            (x, k as u64)
        };
        let mut acc = self.zero;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// `x^n` for `n >= 1`; `x^0` is the unity when present.
    pub fn pow(&self, x: Elem, n: u32) -> Result<Elem> {
        if n == 0 {
            return self.unity.ok_or(Error::NoUnity);
        }
        let mut acc = x;
        for _ in 1..n {
            acc = self.mul(acc, x);
        }
        Ok(acc)
    }

    /// Additive order of `x`.
    pub fn additive_order(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut acc = x;
        while acc != self.zero {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    /// The element `n·1`.
    pub fn bold_n(&self, n: i64) -> Result<Elem> {
        let one = self.unity.ok_or(Error::NoUnity)?;
        Ok(self.times(n, one))
    }

    /// Two-sided inverse of `x`, if any.
    pub fn invert(&self, x: Elem) -> Result<Option<Elem>> {
        let one = self.unity.ok_or(Error::NoUnity)?;
        let mut found = None;
        for y in self.elements() {
            if self.mul(x, y) == one && self.mul(y, x) == one {
                assert!(found.is_none(), "two-sided inverse is unique in an associative ring");
                found = Some(y);
            }
        }
        Ok(found)
    }

    pub fn is_commutative(&self) -> bool {
        self.elements().all(|x| {
            self.elements()
                .filter(|&y| y > x)
                .all(|y| self.mul(x, y) == self.mul(y, x))
        })
    }

    /// First nonzero `x` with `n·x = 0`, if any.
    pub fn torsion_witness(&self, n: u32) -> Option<Elem> {
        assert!(n > 1, "torsion-freeness is defined for n > 1");
        self.elements()
            .find(|&x| x != self.zero && self.times(n as i64, x) == self.zero)
    }

    pub fn is_n_torsion_free(&self, n: u32) -> bool {
        self.torsion_witness(n).is_none()
    }

    /// First pair of nonzero `a, b` with `aRb = {0}`, if any.
    pub fn primality_witness(&self) -> Option<PrimeWitness> {
        let nonzero: Vec<Elem> = self.elements().filter(|&x| x != self.zero).collect();
        for &a in &nonzero {
            let ar: Vec<Elem> = self.elements().map(|r| self.mul(a, r)).collect();
            for &b in &nonzero {
                if ar.iter().all(|&t| self.mul(t, b) == self.zero) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// `aRb = {0}` implies `a = 0` or `b = 0`. The zero ring is not prime.
    pub fn is_prime(&self) -> bool {
        self.size > 1 && self.primality_witness().is_none()
    }

    /// Smallest subring containing `seed`: closure under `+`, `-` and `·`.
    pub fn subring_closure(&self, seed: &ElementSet) -> Result<ElementSet> {
        if seed.ring() != self.id {
            return Err(Error::RingMismatch);
        }
        let mut member = vec![false; self.size];
        let mut members = Vec::new();
        let mut queue = vec![self.zero];
        queue.extend(seed.iter());
        while let Some(z) = queue.pop() {
            if member[z.index()] {
                continue;
            }
            member[z.index()] = true;
            members.push(z);
            queue.push(self.neg(z));
            for &w in &members {
                for v in [self.add(z, w), self.mul(z, w), self.mul(w, z)] {
                    if !member[v.index()] {
                        queue.push(v);
                    }
                }
            }
        }
        Ok(ElementSet::new(self, members))
    }

    fn find_unity(&self) -> Option<Elem> {
        self.elements()
            .find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// Exhaustive check of the ring axioms; returns the first violated one.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.size;
        let violation = |axiom, witness: &[Elem]| Error::AxiomViolation {
            axiom,
            witness: witness.iter().map(|e| e.index()).collect(),
        };
        for x in self.elements() {
            for y in self.elements() {
                if self.add(x, y) != self.add(y, x) {
                    return Err(violation("addition is commutative", &[x, y]));
                }
            }
        }
        for x in self.elements() {
            for y in self.elements() {
                let xy_sum = self.add(x, y);
                let xy_prod = self.mul(x, y);
                for z in self.elements() {
                    if self.add(xy_sum, z) != self.add(x, self.add(y, z)) {
                        return Err(violation("addition is associative", &[x, y, z]));
                    }
                    if self.mul(xy_prod, z) != self.mul(x, self.mul(y, z)) {
                        return Err(violation("multiplication is associative", &[x, y, z]));
                    }
                    let yz_sum = self.add(y, z);
                    if self.mul(x, yz_sum) != self.add(xy_prod, self.mul(x, z)) {
                        return Err(violation("left distributivity", &[x, y, z]));
                    }
                    if self.mul(yz_sum, x) != self.add(self.mul(y, x), self.mul(z, x)) {
                        return Err(violation("right distributivity", &[x, y, z]));
                    }
                }
            }
        }
        debug_assert!(n == 0 || self.zero.index() < n);
        Ok(())
    }
}

fn find_zero(size: usize, add: &[Elem]) -> Option<Elem> {
    (0..size)
        .find(|&z| (0..size).all(|x| add[z * size + x].index() == x && add[x * size + z].index() == x))
        .map(Elem::from_index)
}
