//! Additive self-maps of a finite ring and the derivation laws on them.

mod basis;
mod descriptor;
mod enumerate;

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing, RingId, Structure};
use crate::set::ElementSet;

pub use basis::GeneratorBasis;
pub use descriptor::{MapDescriptor, NamedMap};
pub use enumerate::{enumerate_derivations, enumerate_jordan_derivations, enumerate_maps, Progress};

/// Pair of elements at which a law fails.
pub type PairWitness = (Elem, Elem);

/// The two product laws a map can satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    /// `d(xy) = d(x)y + x d(y)`
    Leibniz,
    /// `δ(x∘y) = δ(x)∘y + x∘δ(y)`
    Jordan,
}

/// Which pairs a law is checked on.
#[derive(Debug, Clone, Copy)]
pub enum CheckMode<'a> {
    Full,
    /// Only pairs of generators; sufficient because the defect is biadditive.
    GeneratorPairs(&'a GeneratorBasis),
}

/// A total additive self-map with its validated law flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveMap {
    ring: RingId,
    table: Vec<Elem>,
    derivation: bool,
    jordan: bool,
    inner_witness: Option<Elem>,
}

impl AdditiveMap {
    /// Validate additivity and compute the derivation / Jordan flags.
    pub fn new(ring: &FiniteRing, table: Vec<Elem>) -> Result<Self> {
        if table.len() != ring.size() {
            return Err(Error::TableLength {
                got: table.len(),
                expected: ring.size(),
            });
        }
        if let Some((x, y)) = additive_violation(ring, &table) {
            return Err(Error::NotAdditive {
                x: x.index(),
                y: y.index(),
            });
        }
        let derivation = law_violation(ring, &table, Law::Leibniz, CheckMode::Full).is_none();
        let jordan = derivation || law_violation(ring, &table, Law::Jordan, CheckMode::Full).is_none();
        Ok(AdditiveMap {
            ring: ring.id(),
            table,
            derivation,
            jordan,
            inner_witness: None,
        })
    }

    pub fn from_indices(ring: &FiniteRing, indices: &[usize]) -> Result<Self> {
        let table = indices.iter().map(|&i| ring.elem(i)).collect::<Result<Vec<_>>>()?;
        AdditiveMap::new(ring, table)
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        AdditiveMap {
            ring: ring.id(),
            table: vec![ring.zero(); ring.size()],
            derivation: true,
            jordan: true,
            inner_witness: None,
        }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x.index()]
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn indices(&self) -> Vec<usize> {
        self.table.iter().map(|e| e.index()).collect()
    }

    pub fn is_derivation(&self) -> bool {
        self.derivation
    }

    pub fn is_jordan_derivation(&self) -> bool {
        self.jordan
    }

    /// `a` such that this map is `x ↦ xa − ax`, when built by [`inner_derivation`].
    pub fn inner_witness(&self) -> Option<Elem> {
        self.inner_witness
    }

    pub fn is_zero(&self, ring: &FiniteRing) -> bool {
        self.table.iter().all(|&e| e == ring.zero())
    }

    pub(crate) fn check_ring(&self, ring: &FiniteRing) -> Result<()> {
        if self.ring == ring.id() {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// `{f(x)}`
    pub fn image(&self, ring: &FiniteRing) -> Result<ElementSet> {
        self.check_ring(ring)?;
        Ok(ElementSet::new(ring, self.table.iter().copied()))
    }

    /// `{x : f(x) = 0}`
    pub fn kernel(&self, ring: &FiniteRing) -> Result<ElementSet> {
        self.check_ring(ring)?;
        let kernel = ElementSet::new(ring, ring.elements().filter(|&x| self.apply(x) == ring.zero()));
        assert!(
            kernel.is_additive_subgroup(ring),
            "kernel of an additive map is a subgroup"
        );
        Ok(kernel)
    }
}

/// First `(x, y)` with `f(x+y) != f(x)+f(y)`.
pub fn additive_violation(ring: &FiniteRing, table: &[Elem]) -> Option<PairWitness> {
    let f = |x: Elem| table[x.index()];
    for x in ring.elements() {
        for y in ring.elements().filter(|&y| y >= x) {
            if f(ring.add(x, y)) != ring.add(f(x), f(y)) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn check_additive(ring: &FiniteRing, table: &[Elem]) -> Result<Option<PairWitness>> {
    if table.len() != ring.size() {
        return Err(Error::TableLength {
            got: table.len(),
            expected: ring.size(),
        });
    }
    Ok(additive_violation(ring, table))
}

/// Value of the law's defect at `(x, y)`; zero iff the law holds there.
#[inline]
pub(crate) fn defect(ring: &FiniteRing, law: Law, f: impl Fn(Elem) -> Elem, x: Elem, y: Elem) -> Elem {
    match law {
        Law::Leibniz => {
            let rhs = ring.add(ring.mul(f(x), y), ring.mul(x, f(y)));
            ring.sub(f(ring.mul(x, y)), rhs)
        }
        Law::Jordan => {
            let rhs = ring.add(ring.jordan(f(x), y), ring.jordan(x, f(y)));
            ring.sub(f(ring.jordan(x, y)), rhs)
        }
    }
}

/// First pair violating the law. The table must be additive.
pub fn law_violation(ring: &FiniteRing, table: &[Elem], law: Law, mode: CheckMode<'_>) -> Option<PairWitness> {
    let f = |x: Elem| table[x.index()];
    let zero = ring.zero();
    match mode {
        CheckMode::Full => ring
            .elements()
            .flat_map(|x| ring.elements().map(move |y| (x, y)))
            .find(|&(x, y)| defect(ring, law, f, x, y) != zero),
        CheckMode::GeneratorPairs(basis) => basis
            .generators()
            .iter()
            .flat_map(|&x| basis.generators().iter().map(move |&y| (x, y)))
            .find(|&(x, y)| defect(ring, law, f, x, y) != zero),
    }
}

fn checked_law(ring: &FiniteRing, table: &[Elem], law: Law, mode: CheckMode<'_>) -> Result<Option<PairWitness>> {
    if let Some((x, y)) = check_additive(ring, table)? {
        return Err(Error::NotAdditive {
            x: x.index(),
            y: y.index(),
        });
    }
    Ok(law_violation(ring, table, law, mode))
}

/// `None` if the Leibniz law holds; otherwise the first failing pair.
pub fn check_derivation(ring: &FiniteRing, table: &[Elem], mode: CheckMode<'_>) -> Result<Option<PairWitness>> {
    checked_law(ring, table, Law::Leibniz, mode)
}

/// `None` if the Jordan law holds; otherwise the first failing pair.
pub fn check_jordan_derivation(ring: &FiniteRing, table: &[Elem], mode: CheckMode<'_>) -> Result<Option<PairWitness>> {
    checked_law(ring, table, Law::Jordan, mode)
}

/// `x ↦ xa − ax`
pub fn inner_derivation(ring: &FiniteRing, a: Elem) -> AdditiveMap {
    let table = ring
        .elements()
        .map(|x| ring.sub(ring.mul(x, a), ring.mul(a, x)))
        .collect();
    let mut map = AdditiveMap::new(ring, table).expect("commutator maps are additive");
    assert!(map.derivation, "inner derivations satisfy the Leibniz law");
    map.inner_witness = Some(a);
    map
}

/// Formal derivative `Σ c_k X^k ↦ Σ k c_k X^(k-1)` on a truncated polynomial ring.
///
/// Always additive; it satisfies the Leibniz law only when `p` divides `m`
/// (or `m = 1`), since otherwise `X · X^(m-1) = 0` but `m X^(m-1) != 0`.
pub fn formal_derivative(ring: &FiniteRing) -> Result<AdditiveMap> {
    let Structure::TruncPoly { p, m } = *ring.structure() else {
        return Err(Error::MapDescriptor {
            text: "formal".into(),
            reason: "the formal derivative needs a trunc_poly ring".into(),
        });
    };
    // index = Σ c_k p^(m-1-k), constant term most significant
    let table = ring
        .elements()
        .map(|x| {
            let mut rest = x.index();
            let mut coeffs = vec![0usize; m];
            for c in coeffs.iter_mut().rev() {
                *c = rest % p;
                rest /= p;
            }
            let mut out = vec![0usize; m];
            for k in 1..m {
                out[k - 1] = k * coeffs[k] % p;
            }
            Elem::from_index(out.iter().fold(0, |acc, &c| acc * p + c))
        })
        .collect();
    AdditiveMap::new(ring, table)
}
