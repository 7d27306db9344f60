//! Integrals of a (Jordan) derivation: `i_d(x) = {y : d(y) = x}`.
//!
//! A nonempty integral is a coset `y + Ker(d)`, so it is stored as its
//! smallest member plus a shared kernel and materialized on demand.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::maps::AdditiveMap;
use crate::ring::{Elem, FiniteRing, RingId};
use crate::set::{set_add, ElementSet};

/// Whether integrals are taken with respect to a derivation or a Jordan derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Derivation,
    Jordan,
}

/// `i_d(x)`: empty, or `representative + kernel`.
#[derive(Debug, Clone)]
pub struct Integral {
    ring: RingId,
    target: Elem,
    coset: Option<Coset>,
}

#[derive(Debug, Clone)]
struct Coset {
    representative: Elem,
    kernel: Arc<ElementSet>,
}

impl Integral {
    /// The element this is an integral of.
    pub fn target(&self) -> Elem {
        self.target
    }

    pub fn is_empty(&self) -> bool {
        self.coset.is_none()
    }

    /// Canonical (smallest) member.
    pub fn representative(&self) -> Option<Elem> {
        self.coset.as_ref().map(|c| c.representative)
    }

    pub fn kernel(&self) -> Option<&ElementSet> {
        self.coset.as_ref().map(|c| c.kernel.as_ref())
    }

    pub fn len(&self) -> usize {
        self.coset.as_ref().map_or(0, |c| c.kernel.len())
    }

    fn check_ring(&self, ring: &FiniteRing) -> Result<()> {
        if self.ring == ring.id() {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Membership via `y − representative ∈ kernel`.
    pub fn contains(&self, ring: &FiniteRing, y: Elem) -> Result<bool> {
        self.check_ring(ring)?;
        Ok(self
            .coset
            .as_ref()
            .is_some_and(|c| c.kernel.contains(ring.sub(y, c.representative))))
    }

    /// Set equality; `Empty` equals only `Empty`.
    pub fn equals(&self, ring: &FiniteRing, other: &Integral) -> Result<bool> {
        self.check_ring(ring)?;
        other.check_ring(ring)?;
        Ok(match (&self.coset, &other.coset) {
            (None, None) => true,
            (Some(a), Some(b)) => {
                a.kernel == b.kernel && a.kernel.contains(ring.sub(a.representative, b.representative))
            }
            _ => false,
        })
    }

    pub fn as_set(&self, ring: &FiniteRing) -> Result<ElementSet> {
        self.check_ring(ring)?;
        Ok(match &self.coset {
            None => ElementSet::empty(ring),
            Some(c) => c.kernel.map(ring, |k| ring.add(c.representative, k)),
        })
    }

    /// Coset sum `(a + K) + (b + K) = (a + b) + K`; empty if either side is.
    pub fn sum(&self, ring: &FiniteRing, other: &Integral) -> Result<Integral> {
        self.check_ring(ring)?;
        other.check_ring(ring)?;
        let target = ring.add(self.target, other.target);
        let coset = match (&self.coset, &other.coset) {
            (Some(a), Some(b)) => {
                if a.kernel != b.kernel {
                    return Err(Error::RingMismatch);
                }
                let r = ring.add(a.representative, b.representative);
                Some(Coset {
                    representative: canonical_representative(ring, r, &a.kernel),
                    kernel: Arc::clone(&a.kernel),
                })
            }
            _ => None,
        };
        Ok(Integral {
            ring: self.ring,
            target,
            coset,
        })
    }

    /// `{"status":"empty"}` or `{"status":"coset","representative":i,"kernel":[..],"size":k}`,
    /// with `"elements"` added when `materialize` is set.
    pub fn to_json(&self, ring: &FiniteRing, materialize: bool) -> Value {
        match &self.coset {
            None => json!({ "status": "empty" }),
            Some(c) => {
                let mut v = json!({
                    "status": "coset",
                    "representative": c.representative.index(),
                    "kernel": c.kernel.indices(),
                    "size": c.kernel.len(),
                });
                if materialize {
                    let members = self.as_set(ring).expect("same ring");
                    v["elements"] = json!(members.indices());
                }
                v
            }
        }
    }
}

fn canonical_representative(ring: &FiniteRing, r: Elem, kernel: &ElementSet) -> Elem {
    kernel
        .iter()
        .map(|k| ring.add(r, k))
        .min()
        .expect("kernel contains zero")
}

/// Integrals of one map on one ring, with a precomputed preimage index.
#[derive(Debug, Clone)]
pub struct Integrator<'r> {
    ring: &'r FiniteRing,
    map: &'r AdditiveMap,
    flavor: Flavor,
    kernel: Arc<ElementSet>,
    first_preimage: Vec<Option<Elem>>,
}

impl<'r> Integrator<'r> {
    /// `i_d` for a validated derivation `d`.
    pub fn derivation(ring: &'r FiniteRing, map: &'r AdditiveMap) -> Result<Self> {
        if !map.is_derivation() {
            return Err(Error::NotDerivation);
        }
        Self::build(ring, map, Flavor::Derivation)
    }

    /// `j_δ` for a validated Jordan derivation `δ`.
    pub fn jordan(ring: &'r FiniteRing, map: &'r AdditiveMap) -> Result<Self> {
        if !map.is_jordan_derivation() {
            return Err(Error::NotJordanDerivation);
        }
        Self::build(ring, map, Flavor::Jordan)
    }

    fn build(ring: &'r FiniteRing, map: &'r AdditiveMap, flavor: Flavor) -> Result<Self> {
        map.check_ring(ring)?;
        let kernel = Arc::new(map.kernel(ring)?);
        let mut first_preimage = vec![None; ring.size()];
        for y in ring.elements() {
            first_preimage[map.apply(y).index()].get_or_insert(y);
        }
        Ok(Integrator {
            ring,
            map,
            flavor,
            kernel,
            first_preimage,
        })
    }

    pub fn ring(&self) -> &'r FiniteRing {
        self.ring
    }

    pub fn map(&self) -> &'r AdditiveMap {
        self.map
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn kernel(&self) -> &ElementSet {
        &self.kernel
    }

    pub fn integrate(&self, x: Elem) -> Integral {
        Integral {
            ring: self.ring.id(),
            target: x,
            coset: self.first_preimage[x.index()].map(|representative| Coset {
                representative,
                kernel: Arc::clone(&self.kernel),
            }),
        }
    }

    /// Reference implementation: scan every `y` for `d(y) = x`.
    pub fn integrate_scan(&self, x: Elem) -> ElementSet {
        ElementSet::new(self.ring, self.ring.elements().filter(|&y| self.map.apply(y) == x))
    }

    /// `y ∈ i(x)`, decided through the coset representation.
    pub fn contains(&self, x: Elem, y: Elem) -> bool {
        self.first_preimage[x.index()].is_some_and(|r| self.kernel.contains(self.ring.sub(y, r)))
    }

    pub fn is_nonempty(&self, x: Elem) -> bool {
        self.first_preimage[x.index()].is_some()
    }
}

/// `i_d(x)` for a validated derivation.
pub fn integrate(ring: &FiniteRing, d: &AdditiveMap, x: Elem) -> Result<Integral> {
    Ok(Integrator::derivation(ring, d)?.integrate(x))
}

/// `j_δ(x)` for a validated Jordan derivation.
pub fn jordan_integrate(ring: &FiniteRing, delta: &AdditiveMap, x: Elem) -> Result<Integral> {
    Ok(Integrator::jordan(ring, delta)?.integrate(x))
}

/// Witness that `d(R)` is not closed under multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotProper {
    pub u: Elem,
    pub v: Elem,
    pub product: Elem,
}

/// `None` if `d(R)` is a subring, otherwise the first `u, v ∈ d(R)` with `uv ∉ d(R)`.
pub fn is_proper(ring: &FiniteRing, d: &AdditiveMap) -> Result<Option<NotProper>> {
    if !d.is_derivation() {
        return Err(Error::NotDerivation);
    }
    let image = d.image(ring)?;
    for u in image.iter() {
        for v in image.iter() {
            let product = ring.mul(u, v);
            if !image.contains(product) {
                return Ok(Some(NotProper { u, v, product }));
            }
        }
    }
    Ok(None)
}

/// `R / Ker(d)` as a partition of `R`, with the induced bijection onto `d(R)`.
#[derive(Debug, Clone)]
pub struct QuotientView {
    cosets: Vec<ElementSet>,
    index_map: Vec<usize>,
    images: Vec<Elem>,
}

impl QuotientView {
    pub fn cosets(&self) -> &[ElementSet] {
        &self.cosets
    }

    pub fn coset_of(&self, x: Elem) -> usize {
        self.index_map[x.index()]
    }

    /// `d(representative)` of each coset, in coset order.
    pub fn images(&self) -> &[Elem] {
        &self.images
    }
}

/// Why a quotient view failed to verify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientDefect {
    NotWellDefined { x: Elem, y: Elem },
    NotInjective { a: usize, b: usize },
    NotOntoImage { missing: Elem },
    NotAdditive { a: usize, b: usize },
}

/// Partition `R` into kernel translates and verify that `x + Ker(d) ↦ d(x)`
/// is a well-defined additive bijection onto `d(R)`.
pub fn quotient_view(ring: &FiniteRing, d: &AdditiveMap) -> Result<std::result::Result<QuotientView, QuotientDefect>> {
    let kernel = d.kernel(ring)?;
    let mut index_map = vec![usize::MAX; ring.size()];
    let mut cosets = Vec::new();
    for x in ring.elements() {
        if index_map[x.index()] != usize::MAX {
            continue;
        }
        let coset = kernel.map(ring, |k| ring.add(x, k));
        for y in coset.iter() {
            index_map[y.index()] = cosets.len();
        }
        cosets.push(coset);
    }
    let images: Vec<Elem> = cosets.iter().map(|c| d.apply(c.as_slice()[0])).collect();
    for (c, &img) in cosets.iter().zip(&images) {
        let first = c.as_slice()[0];
        if let Some(y) = c.iter().find(|&y| d.apply(y) != img) {
            return Ok(Err(QuotientDefect::NotWellDefined { x: first, y }));
        }
    }
    let mut seen: Vec<Option<usize>> = vec![None; ring.size()];
    for (i, &img) in images.iter().enumerate() {
        if let Some(a) = seen[img.index()] {
            return Ok(Err(QuotientDefect::NotInjective { a, b: i }));
        }
        seen[img.index()] = Some(i);
    }
    if let Some(missing) = d.image(ring)?.iter().find(|y| seen[y.index()].is_none()) {
        return Ok(Err(QuotientDefect::NotOntoImage { missing }));
    }
    for (a, ca) in cosets.iter().enumerate() {
        for (b, cb) in cosets.iter().enumerate() {
            let sum = ring.add(ca.as_slice()[0], cb.as_slice()[0]);
            if images[index_map[sum.index()]] != ring.add(images[a], images[b]) {
                return Ok(Err(QuotientDefect::NotAdditive { a, b }));
            }
        }
    }
    Ok(Ok(QuotientView {
        cosets,
        index_map,
        images,
    }))
}

/// `A + B` with materialized integrals; kept for cross-checking [`Integral::sum`].
pub fn integral_set_sum(ring: &FiniteRing, a: &Integral, b: &Integral) -> Result<ElementSet> {
    set_add(ring, &a.as_set(ring)?, &b.as_set(ring)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{formal_derivative, inner_derivation};
    use crate::ring::RingSpec;
    use proptest::prelude::*;

    fn ring(spec: RingSpec) -> FiniteRing {
        FiniteRing::build(&spec).unwrap()
    }

    fn el(r: &FiniteRing, s: &str) -> Elem {
        r.parse_element(s).unwrap()
    }

    fn labels(r: &FiniteRing, i: &Integral) -> Vec<String> {
        i.as_set(r).unwrap().labels(r)
    }

    #[test]
    fn trivial_derivation() {
        for spec in [RingSpec::zn(5), RingSpec::matrix(RingSpec::zn(2), 2)] {
            let r = ring(spec);
            let d = AdditiveMap::zero(&r);
            let integ = Integrator::derivation(&r, &d).unwrap();
            assert_eq!(integ.integrate(r.zero()).as_set(&r).unwrap(), ElementSet::whole(&r));
            for x in r.elements().filter(|&x| x != r.zero()) {
                assert!(integ.integrate(x).is_empty());
            }
        }
    }

    #[test]
    fn formal_derivative_integrals() {
        let r = ring(RingSpec::trunc_poly(3, 3));
        let d = formal_derivative(&r).unwrap();
        let one = integrate(&r, &d, el(&r, "1")).unwrap();
        assert_eq!(labels(&r, &one), ["X", "1+X", "2+X"]);
        assert_eq!(one.representative(), Some(el(&r, "X")));
        assert!(integrate(&r, &d, el(&r, "X^2")).unwrap().is_empty());
        assert!(one.contains(&r, el(&r, "X+2")).unwrap());
        assert!(!one.contains(&r, el(&r, "X^2")).unwrap());
    }

    #[test]
    fn inner_derivation_integrals() {
        let r = ring(RingSpec::matrix(RingSpec::zn(2), 2));
        let d = inner_derivation(&r, el(&r, "E11"));
        assert!(integrate(&r, &d, el(&r, "E11")).unwrap().is_empty());
        let i = integrate(&r, &d, el(&r, "E12")).unwrap();
        assert_eq!(
            labels(&r, &i),
            ["[[0,1],[0,0]]", "[[0,1],[0,1]]", "[[1,1],[0,0]]", "[[1,1],[0,1]]"]
        );
    }

    #[test]
    fn jordan_integrals_on_z4() {
        let r = ring(RingSpec::zn(4));
        let delta = AdditiveMap::from_indices(&r, &[0, 2, 0, 2]).unwrap();
        assert!(integrate(&r, &delta, el(&r, "2")).is_err());
        assert_eq!(
            labels(&r, &jordan_integrate(&r, &delta, el(&r, "2")).unwrap()),
            ["1", "3"]
        );
        assert!(jordan_integrate(&r, &delta, el(&r, "1")).unwrap().is_empty());
        assert_eq!(labels(&r, &jordan_integrate(&r, &delta, r.zero()).unwrap()), ["0", "2"]);
    }

    #[test]
    fn jordan_integral_of_a_derivation_matches() {
        let r = ring(RingSpec::trunc_poly(3, 3));
        let d = formal_derivative(&r).unwrap();
        let i = Integrator::derivation(&r, &d).unwrap();
        let j = Integrator::jordan(&r, &d).unwrap();
        for x in r.elements() {
            assert!(i.integrate(x).equals(&r, &j.integrate(x)).unwrap());
        }
    }

    #[test]
    fn equality_and_json() {
        let r = ring(RingSpec::zn(4));
        let z = AdditiveMap::zero(&r);
        let i = Integrator::derivation(&r, &z).unwrap();
        assert!(i.integrate(el(&r, "1")).equals(&r, &i.integrate(el(&r, "3"))).unwrap());
        assert!(!i.integrate(el(&r, "1")).equals(&r, &i.integrate(r.zero())).unwrap());
        assert_eq!(i.integrate(el(&r, "1")).to_json(&r, false), json!({"status":"empty"}));
        assert_eq!(
            i.integrate(r.zero()).to_json(&r, true),
            json!({"status":"coset","representative":0,"kernel":[0,1,2,3],"size":4,"elements":[0,1,2,3]})
        );
        let other = ring(RingSpec::zn(5));
        assert!(i.integrate(r.zero()).contains(&other, other.zero()).is_err());
    }

    #[test]
    fn properness() {
        let m = ring(RingSpec::matrix(RingSpec::zn(2), 2));
        assert_eq!(is_proper(&m, &AdditiveMap::zero(&m)).unwrap(), None);
        let d = inner_derivation(&m, el(&m, "E11"));
        let w = is_proper(&m, &d).unwrap().expect("not proper");
        let img = d.image(&m).unwrap();
        assert!(img.contains(w.u) && img.contains(w.v) && !img.contains(w.product));
        assert_eq!(w.product, m.mul(w.u, w.v));

        // d(X) = [[0, a-b, a+b-d-e], [0,0,d-e], [0,0,0]]: the corner entry is
        // (a-b) - (d-e) + 2(b-e), which is tied to the others in characteristic 2.
        let t = ring(RingSpec::tri_pattern(RingSpec::zn(2)));
        let d = inner_derivation(&t, el(&t, "A"));
        assert_eq!(d.image(&t).unwrap().len(), 4);
        let w = is_proper(&t, &d).unwrap().expect("not closed in characteristic 2");
        assert_eq!(t.label(w.product), "[[0,0,1],[0,0,0],[0,0,0]]");

        let t3 = ring(RingSpec::tri_pattern(RingSpec::zn(3)));
        let d3 = inner_derivation(&t3, el(&t3, "A"));
        assert_eq!(d3.image(&t3).unwrap().len(), 27);
        assert_eq!(is_proper(&t3, &d3).unwrap(), None);

        let z4 = ring(RingSpec::zn(4));
        let delta = AdditiveMap::from_indices(&z4, &[0, 2, 0, 2]).unwrap();
        assert_eq!(is_proper(&z4, &delta), Err(Error::NotDerivation));
    }

    #[test]
    fn quotient_examples() {
        let tp = ring(RingSpec::trunc_poly(3, 3));
        let q = quotient_view(&tp, &formal_derivative(&tp).unwrap()).unwrap().unwrap();
        assert_eq!(q.cosets().len(), 9);
        assert!(q.cosets().iter().all(|c| c.len() == 3));

        let q = quotient_view(&tp, &AdditiveMap::zero(&tp)).unwrap().unwrap();
        assert_eq!(q.cosets().len(), 1);

        let m = ring(RingSpec::matrix(RingSpec::zn(2), 2));
        let q = quotient_view(&m, &inner_derivation(&m, el(&m, "E11")))
            .unwrap()
            .unwrap();
        assert_eq!(q.cosets().len(), 4);
        assert!(q.cosets().iter().all(|c| c.len() == 4));
        assert_eq!(q.coset_of(el(&m, "E12")), q.coset_of(el(&m, "[[1,1],[0,1]]")));
    }

    fn suite_map() -> impl Strategy<Value = (RingSpec, String)> {
        prop::sample::select(vec![
            (RingSpec::trunc_poly(3, 3), "formal".to_string()),
            (RingSpec::trunc_poly(2, 2), "formal".to_string()),
            (RingSpec::matrix(RingSpec::zn(2), 2), "inner:E11".to_string()),
            (RingSpec::matrix(RingSpec::zn(2), 2), "inner:E12".to_string()),
            (RingSpec::matrix(RingSpec::zn(3), 2), "inner:E21".to_string()),
            (RingSpec::tri_pattern(RingSpec::zn(2)), "inner:A".to_string()),
            (RingSpec::zn(6), "trivial".to_string()),
        ])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn integrals_are_exact_preimages((spec, desc) in suite_map()) {
            let r = ring(spec);
            let d = desc.parse::<crate::MapDescriptor>().unwrap().resolve(&r, None).unwrap().remove(0).map;
            let integ = Integrator::derivation(&r, &d).unwrap();
            let ker = integ.kernel().len();
            let mut covered = 0;
            for x in r.elements() {
                let fast = integ.integrate(x);
                let scan = integ.integrate_scan(x);
                prop_assert_eq!(fast.as_set(&r).unwrap(), scan.clone());
                prop_assert!(fast.is_empty() || fast.len() == ker);
                prop_assert_eq!(fast.representative(), scan.iter().next());
                covered += scan.len();
                if let Some(y) = fast.representative() {
                    prop_assert_eq!(scan.map(&r, |z| d.apply(z)), ElementSet::singleton(&r, x));
                    prop_assert!(fast.contains(&r, y).unwrap());
                }
            }
            prop_assert_eq!(covered, r.size());
            let everything = ElementSet::whole(&r);
            prop_assert_eq!(set_add(&r, &everything, integ.kernel()).unwrap(), everything);
        }

        #[test]
        fn coset_sum_matches_materialized_sum((spec, desc) in suite_map(), a in 0usize..81, b in 0usize..81) {
            let r = ring(spec);
            let d = desc.parse::<crate::MapDescriptor>().unwrap().resolve(&r, None).unwrap().remove(0).map;
            let integ = Integrator::derivation(&r, &d).unwrap();
            let (x, y) = (r.elem(a % r.size()).unwrap(), r.elem(b % r.size()).unwrap());
            let (ix, iy) = (integ.integrate(x), integ.integrate(y));
            prop_assert_eq!(
                ix.sum(&r, &iy).unwrap().as_set(&r).unwrap(),
                integral_set_sum(&r, &ix, &iy).unwrap()
            );
        }
    }
}
