//! Checkers for integrals of derivations.

use super::{integer_range, inverse_table, Checker, SuiteConfig, Tally};
use crate::error::Result;
use crate::integral::Integrator;
use crate::maps::{AdditiveMap, NamedMap};
use crate::ring::{Elem, FiniteRing};
use crate::set::{set_add, ElementSet};
use crate::theorems::TheoremReport;

fn setup<'r>(
    checker: Checker,
    ring: &'r FiniteRing,
    map: &'r NamedMap,
) -> std::result::Result<(Tally<'r>, Integrator<'r>), Box<TheoremReport>> {
    let tally = Tally::new(checker, ring, &map.name);
    match Integrator::derivation(ring, &map.map) {
        Ok(integ) => Ok((tally, integ)),
        Err(_) => Err(Box::new(tally.skip("map is not a derivation"))),
    }
}

macro_rules! derivation_setup {
    ($checker:expr, $ring:expr, $map:expr) => {
        match setup($checker, $ring, $map) {
            Ok(pair) => pair,
            Err(report) => return *report,
        }
    };
}

/// Membership basics plus the surjectivity and injectivity criteria.
pub fn verify_basic(ring: &FiniteRing, map: &NamedMap, _cfg: &SuiteConfig) -> TheoremReport {
    let (mut t, integ) = derivation_setup!(Checker::Basic, ring, map);
    let d = &map.map;
    let zero = ring.zero();
    t.check(integ.contains(zero, zero), "0 ∈ i(0)", || [("x", zero)]);
    for y in ring.elements() {
        let x = d.apply(y);
        t.check(integ.contains(x, y), "y ∈ i(d(y))", || [("y", y), ("d(y)", x)]);
    }

    let mut all_nonempty = true;
    let mut all_singletons = true;
    for x in ring.elements() {
        let integral = integ.integrate(x);
        let members = integral.as_set(ring).expect("same ring");
        t.check(members == integ.integrate_scan(x), "i(x) = {y : d(y) = x}", || {
            [("x", x)]
        });
        if members.is_empty() {
            if all_nonempty {
                t.positive("empty-integral", "i(x) = ∅", &[("x", x)]);
            }
            all_nonempty = false;
        } else {
            let images = members.map(ring, |y| d.apply(y));
            t.check(images == ElementSet::singleton(ring, x), "d(i(x)) = {x}", || [("x", x)]);
        }
        all_singletons &= members.len() == 1;
    }

    let image_size = d.image(ring).expect("same ring").len();
    let surjective = image_size == ring.size();
    let injective = d.kernel(ring).expect("same ring").len() == 1;
    t.check(surjective == all_nonempty, "d surjective ⇔ i(x) ≠ ∅ for all x", || []);
    t.check(injective == all_singletons, "d injective ⇔ |i(x)| = 1 for all x", || []);
    t.note(format!(
        "d is {}surjective and {}injective",
        if surjective { "" } else { "not " },
        if injective { "" } else { "not " }
    ));
    t.finish()
}

/// Integer constants and their quotients lie in the kernel.
pub fn verify_kernel_constants(ring: &FiniteRing, map: &NamedMap, cfg: &SuiteConfig) -> TheoremReport {
    let (mut t, integ) = derivation_setup!(Checker::KernelConstants, ring, map);
    let Some(one) = ring.unity() else {
        return t.skip("ring has no unity");
    };
    let range = integer_range(ring, cfg, &mut t);
    let inv = inverse_table(ring);
    let zero = ring.zero();
    let bold = |n: i64| ring.times(n, one);

    for &n in &range {
        let b = bold(n);
        t.check(integ.contains(zero, b), "n ∈ i(0)", || [("n", b)]);
        t.check(integ.contains(zero, ring.neg(b)), "−n ∈ i(0)", || [("n", b)]);
    }
    let invertible: Vec<(Elem, Elem)> = range
        .iter()
        .filter_map(|&n| inv[bold(n).index()].map(|i| (bold(n), i)))
        .collect();
    for &(b, ib) in &invertible {
        for &m in &range {
            let bm = bold(m);
            let (l, r) = (ring.mul(ib, bm), ring.mul(bm, ib));
            t.check(integ.contains(zero, l), "n⁻¹·m ∈ i(0)", || [("n", b), ("m", bm)]);
            t.check(integ.contains(zero, r), "m·n⁻¹ ∈ i(0)", || [("n", b), ("m", bm)]);
        }
    }
    for y in ring.elements() {
        let x = map.map.apply(y);
        for &(b, ib) in &invertible {
            for &m in &range {
                let bm = bold(m);
                let (l, r) = (ring.add(y, ring.mul(ib, bm)), ring.add(y, ring.mul(bm, ib)));
                t.check(integ.contains(x, l), "y ∈ i(x) ⇒ y + n⁻¹·m ∈ i(x)", || {
                    [("x", x), ("y", y), ("n", b), ("m", bm)]
                });
                t.check(integ.contains(x, r), "y ∈ i(x) ⇒ y + m·n⁻¹ ∈ i(x)", || {
                    [("x", x), ("y", y), ("n", b), ("m", bm)]
                });
            }
        }
    }
    t.finish()
}

/// Every nonempty integral is a kernel coset, reproduced from any member
/// with a unique offset.
pub fn verify_coset_structure(ring: &FiniteRing, map: &NamedMap, _cfg: &SuiteConfig) -> TheoremReport {
    let (mut t, integ) = derivation_setup!(Checker::CosetStructure, ring, map);
    let zero = ring.zero();
    let kernel = integ.integrate_scan(zero);
    for x in ring.elements() {
        let fiber = integ.integrate_scan(x);
        let stored = integ.integrate(x).as_set(ring).expect("same ring");
        t.check(stored == fiber, "stored coset equals the scanned preimage", || {
            [("x", x)]
        });
        for y in fiber.iter() {
            let translate = kernel.map(ring, |w| ring.add(y, w));
            t.check(translate == fiber, "i(x) = {y + w : w ∈ Ker d}", || {
                [("x", x), ("y", y)]
            });
            for z in fiber.iter() {
                let offsets = kernel.iter().filter(|&w| ring.add(y, w) == z).count();
                t.check(offsets == 1, "z = y + w for a unique w ∈ Ker d", || {
                    [("x", x), ("y", y), ("z", z)]
                });
            }
        }
    }
    t.finish()
}

/// Multiplying integrals by kernel elements, with the strictness witness.
pub fn verify_kernel_scaling(ring: &FiniteRing, map: &NamedMap, _cfg: &SuiteConfig) -> TheoremReport {
    let (mut t, integ) = derivation_setup!(Checker::KernelScaling, ring, map);
    let inv = inverse_table(ring);
    let kernel = integ.kernel().clone();
    let members: Vec<ElementSet> = ring
        .elements()
        .map(|x| integ.integrate(x).as_set(ring).expect("same ring"))
        .collect();
    // First strict inclusion with w ≠ 0, falling back to the trivial w = 0 case.
    let mut strict: Option<[(&str, Elem); 3]> = None;
    let mut strict_at_zero: Option<[(&str, Elem); 3]> = None;
    for w in kernel.iter() {
        for x in ring.elements() {
            let ix = &members[x.index()];
            let (wx, xw) = (ring.mul(w, x), ring.mul(x, w));
            let left = ix.map(ring, |y| ring.mul(w, y));
            let right = ix.map(ring, |y| ring.mul(y, w));
            t.check(left.is_subset(&members[wx.index()]), "w·i(x) ⊆ i(wx)", || {
                [("w", w), ("x", x)]
            });
            t.check(right.is_subset(&members[xw.index()]), "i(x)·w ⊆ i(xw)", || {
                [("w", w), ("x", x)]
            });
            if ix.is_empty() {
                continue;
            }
            t.check(integ.is_nonempty(wx), "i(x) ≠ ∅ ⇒ i(wx) ≠ ∅", || {
                [("w", w), ("x", x)]
            });
            t.check(integ.is_nonempty(xw), "i(x) ≠ ∅ ⇒ i(xw) ≠ ∅", || {
                [("w", w), ("x", x)]
            });
            if inv[w.index()].is_some() {
                t.check(left == members[wx.index()], "w invertible ⇒ w·i(x) = i(wx)", || {
                    [("w", w), ("x", x)]
                });
                t.check(right == members[xw.index()], "w invertible ⇒ i(x)·w = i(xw)", || {
                    [("w", w), ("x", x)]
                });
            } else if left.len() < members[wx.index()].len() {
                let slot = if w == ring.zero() {
                    &mut strict_at_zero
                } else {
                    &mut strict
                };
                slot.get_or_insert([("w", w), ("x", x), ("wx", wx)]);
            }
        }
    }
    match strict.or(strict_at_zero) {
        Some(values) => t.positive("strict-inclusion", "w·i(x) ⊊ i(wx)", &values),
        None => t.note("no strict inclusion w·i(x) ⊊ i(wx) exists for this map"),
    }
    t.finish()
}

/// Sum, product and inverse rules for integrals.
pub fn verify_combination_rules(ring: &FiniteRing, map: &NamedMap, cfg: &SuiteConfig) -> TheoremReport {
    let (mut t, integ) = derivation_setup!(Checker::CombinationRules, ring, map);
    let d = &map.map;
    // Every quadruple with y_i ∈ i(x_i) is determined by (y1, y2) via x_i = d(y_i).
    for (y1, y2) in t.pairs(cfg) {
        let (x1, x2) = (d.apply(y1), d.apply(y2));
        let vals = || [("x1", x1), ("y1", y1), ("x2", x2), ("y2", y2)];
        t.check(
            integ.contains(ring.add(x1, x2), ring.add(y1, y2)),
            "y1 + y2 ∈ i(x1 + x2)",
            vals,
        );
        let target = ring.add(ring.mul(x1, y2), ring.mul(y1, x2));
        t.check(
            integ.contains(target, ring.mul(y1, y2)),
            "y1·y2 ∈ i(x1·y2 + y1·x2)",
            vals,
        );
        if x1 == x2 {
            let x = x1;
            let vals = || [("x", x), ("y", y1), ("z", y2)];
            t.check(
                integ.contains(ring.add(x, x), ring.add(y1, y2)),
                "y, z ∈ i(x) ⇒ y + z ∈ i(2x)",
                vals,
            );
            let target = ring.add(ring.mul(x, y2), ring.mul(y1, x));
            t.check(
                integ.contains(target, ring.mul(y1, y2)),
                "y, z ∈ i(x) ⇒ yz ∈ i(xz + yx)",
                vals,
            );
        }
    }

    if ring.unity().is_none() {
        t.note("inverse rules vacuous: ring has no unity");
        return t.finish();
    }
    let inv = inverse_table(ring);
    let commutative = ring.is_commutative();
    for y in ring.elements() {
        let Some(iy) = inv[y.index()] else { continue };
        let x = d.apply(y);
        let target = ring.neg(ring.mul(ring.mul(iy, x), iy));
        t.check(
            integ.contains(target, iy),
            "y ∈ i(x) ⇒ y⁻¹ ∈ i(−y⁻¹·x·y⁻¹)",
            || [("x", x), ("y", y)],
        );
        if commutative {
            let target = ring.neg(ring.mul(ring.mul(iy, iy), x));
            t.check(
                integ.contains(target, iy),
                "y ∈ i(x) ⇒ y⁻¹ ∈ i(−y⁻²·x)",
                || [("x", x), ("y", y)],
            );
        }
    }
    t.finish()
}

/// One instance of integration by parts for the pair `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartsInstance {
    /// `d(x)·y`
    pub left_target: Elem,
    /// `x·d(y)`
    pub right_target: Elem,
    pub left_empty: bool,
    pub right_empty: bool,
    /// `xy ∈ i(d(xy))`, which holds unconditionally.
    pub product_in_integral: bool,
    /// `xy ∈ i(d(x)y) + i(x d(y))`; false whenever either part is empty.
    pub product_in_sum: bool,
}

impl PartsInstance {
    pub fn both_empty(&self) -> bool {
        self.left_empty && self.right_empty
    }
}

/// Evaluate integration by parts for `(x, y)` under the derivation `d`.
pub fn parts_instance(ring: &FiniteRing, d: &AdditiveMap, x: Elem, y: Elem) -> Result<PartsInstance> {
    let integ = Integrator::derivation(ring, d)?;
    Ok(parts_with(ring, &integ, x, y))
}

fn parts_with(ring: &FiniteRing, integ: &Integrator<'_>, x: Elem, y: Elem) -> PartsInstance {
    let d = integ.map();
    let left_target = ring.mul(d.apply(x), y);
    let right_target = ring.mul(x, d.apply(y));
    let (left, right) = (integ.integrate(left_target), integ.integrate(right_target));
    let xy = ring.mul(x, y);
    let sum = left.sum(ring, &right).expect("same ring and kernel");
    PartsInstance {
        left_target,
        right_target,
        left_empty: left.is_empty(),
        right_empty: right.is_empty(),
        product_in_integral: integ.contains(d.apply(xy), xy),
        product_in_sum: sum.contains(ring, xy).expect("same ring"),
    }
}

/// Additivity of nonempty integrals and integration by parts.
pub fn verify_additivity_and_parts(ring: &FiniteRing, map: &NamedMap, cfg: &SuiteConfig) -> TheoremReport {
    let (mut t, integ) = derivation_setup!(Checker::AdditivityParts, ring, map);
    let mut precondition_witness = false;
    for (x, y) in t.pairs(cfg) {
        let (ix, iy) = (integ.integrate(x), integ.integrate(y));
        if !ix.is_empty() && !iy.is_empty() {
            let sum = set_add(
                ring,
                &ix.as_set(ring).expect("same ring"),
                &iy.as_set(ring).expect("same ring"),
            )
            .expect("same ring");
            let whole = integ.integrate(ring.add(x, y)).as_set(ring).expect("same ring");
            t.check(sum == whole, "i(x) + i(y) = i(x + y)", || [("x", x), ("y", y)]);
        }

        let p = parts_with(ring, &integ, x, y);
        let xy = ring.mul(x, y);
        let vals = || [("x", x), ("y", y), ("d(x)y", p.left_target), ("x d(y)", p.right_target)];
        t.check(p.product_in_integral, "xy ∈ i(d(xy))", vals);
        if !p.left_empty && !p.right_empty {
            t.check(p.product_in_sum, "xy ∈ i(d(x)y) + i(x d(y))", vals);
        } else if p.both_empty() && !precondition_witness {
            precondition_witness = true;
            t.positive(
                "precondition-failure",
                "i(d(x)y) = ∅ and i(x d(y)) = ∅ while xy ∈ i(d(xy))",
                &[
                    ("x", x),
                    ("y", y),
                    ("d(x)y", p.left_target),
                    ("x d(y)", p.right_target),
                    ("xy", xy),
                ],
            );
        }
    }
    t.finish()
}

/// Power and inverse-power rules in commutative rings with unity.
pub fn verify_power_rules(ring: &FiniteRing, map: &NamedMap, cfg: &SuiteConfig) -> TheoremReport {
    let (mut t, integ) = derivation_setup!(Checker::PowerRules, ring, map);
    let Some(one) = ring.unity() else {
        return t.skip("ring has no unity");
    };
    if !ring.is_commutative() {
        return t.skip("not commutative");
    }
    let d = &map.map;
    let inv = inverse_table(ring);
    let bold = |n: i64| ring.times(n, one);
    let pow = |x: Elem, n: u32| ring.pow(x, n).expect("ring has unity");
    // x^k for any integer k, if defined.
    let ipow = |x: Elem, k: i64| -> Option<Elem> {
        if k >= 0 {
            Some(pow(x, k as u32))
        } else {
            inv[x.index()].map(|ix| pow(ix, k.unsigned_abs() as u32))
        }
    };
    let max_exp = cfg.max_exponent as i64;

    for x in ring.elements() {
        let dx = d.apply(x);
        for n in -max_exp..=max_exp {
            let (Some(xn), Some(xn1)) = (ipow(x, n), ipow(x, n - 1)) else {
                continue; // x^(n-1) with n <= 0 needs x invertible
            };
            let target = ring.mul(bold(n), ring.mul(xn1, dx));
            t.check(integ.contains(target, xn), "x^n ∈ i(n·x^(n−1)·d(x))", || {
                [("x", x), ("n", bold(n)), ("x^n", xn)]
            });
            if let Some(inv_n) = inv[bold(n).index()] {
                let scaled = ring.mul(inv_n, xn);
                t.check(
                    integ.contains(ring.mul(xn1, dx), scaled),
                    "n⁻¹·x^n ∈ i(x^(n−1)·d(x))",
                    || [("x", x), ("n", bold(n))],
                );
            }
        }
    }

    let range = integer_range(ring, cfg, &mut t);
    let units: Vec<(Elem, Elem)> = range
        .iter()
        .filter_map(|&n| inv[bold(n).index()].map(|i| (bold(n), i)))
        .collect();
    for (x, y) in t.pairs(cfg) {
        for &(b, ib) in &units {
            if integ.contains(ring.mul(b, y), x) {
                t.check(
                    integ.contains(y, ring.mul(ib, x)),
                    "x ∈ i(n·y) ⇒ n⁻¹·x ∈ i(y)",
                    || [("x", x), ("y", y), ("n", b)],
                );
            }
            if integ.contains(y, ring.mul(b, x)) {
                t.check(
                    integ.contains(ring.mul(ib, y), x),
                    "n·x ∈ i(y) ⇒ x ∈ i(n⁻¹·y)",
                    || [("x", x), ("y", y), ("n", b)],
                );
            }
        }
    }
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{formal_derivative, inner_derivation};
    use crate::ring::RingSpec;
    use crate::theorems::Status;

    fn named(name: &str, map: AdditiveMap) -> NamedMap {
        NamedMap { name: name.into(), map }
    }

    fn tp33() -> (FiniteRing, NamedMap) {
        let r = FiniteRing::build(&RingSpec::trunc_poly(3, 3)).unwrap();
        let d = formal_derivative(&r).unwrap();
        (r, named("formal", d))
    }

    #[test]
    fn basic_on_formal_reports_empty_integral() {
        let (r, d) = tp33();
        let rep = verify_basic(&r, &d, &SuiteConfig::default());
        assert_eq!(rep.status, Status::Pass, "{rep:?}");
        assert!(rep.positive_witnesses().any(|w| w.kind == "empty-integral"));
        assert!(rep.notes.iter().any(|n| n.contains("not surjective")));
    }

    #[test]
    fn basic_on_zn4_trivial() {
        let r = FiniteRing::build(&RingSpec::zn(4)).unwrap();
        let rep = verify_basic(&r, &named("trivial", AdditiveMap::zero(&r)), &SuiteConfig::default());
        assert_eq!(rep.status, Status::Pass);
        assert!(rep.instances >= 4);
    }

    #[test]
    fn skips_non_derivations() {
        let r = FiniteRing::build(&RingSpec::zn(4)).unwrap();
        let delta = AdditiveMap::from_indices(&r, &[0, 2, 0, 2]).unwrap();
        let rep = verify_coset_structure(&r, &named("double", delta), &SuiteConfig::default());
        assert_eq!(rep.status, Status::Skipped);
        assert_eq!(rep.reason.as_deref(), Some("map is not a derivation"));
    }

    #[test]
    fn kernel_constants_cap_note() {
        let (r, d) = tp33();
        let rep = verify_kernel_constants(&r, &d, &SuiteConfig::default());
        assert_eq!(rep.status, Status::Pass);
        assert!(rep
            .notes
            .iter()
            .any(|n| n.contains("capped by additive order of 1 (3)")));
    }

    #[test]
    fn scaling_finds_strictness_and_zero_map_fails_nothing() {
        let (r, d) = tp33();
        let rep = verify_kernel_scaling(&r, &d, &SuiteConfig::default());
        assert_eq!(rep.status, Status::Pass);
        assert!(rep.positive_witnesses().any(|w| w.kind == "strict-inclusion"));
    }

    #[test]
    fn formal_two_x_squared_example() {
        let (r, d) = tp33();
        let x = r.parse_element("X").unwrap();
        let y2 = r.parse_element("2X^2").unwrap();
        let integ = Integrator::derivation(&r, &d.map).unwrap();
        assert!(integ.contains(r.parse_element("1").unwrap(), x));
        assert!(integ.contains(x, y2));
        assert_eq!(r.mul(x, y2), r.zero());
        let rep = verify_combination_rules(&r, &d, &SuiteConfig::default());
        assert_eq!(rep.status, Status::Pass);
        assert_eq!(rep.mode, crate::theorems::QuantifierMode::Exhaustive);
    }

    #[test]
    fn matrix_parts_precondition_failure() {
        let r = FiniteRing::build(&RingSpec::matrix(RingSpec::zn(2), 2)).unwrap();
        let e11 = r.parse_element("E11").unwrap();
        let d = inner_derivation(&r, e11);
        let (x, y) = (r.parse_element("E12").unwrap(), r.parse_element("E21").unwrap());
        let p = parts_instance(&r, &d, x, y).unwrap();
        assert_eq!(p.left_target, e11);
        assert_eq!(p.right_target, e11);
        assert!(p.both_empty() && p.product_in_integral && !p.product_in_sum);
        let rep = verify_additivity_and_parts(&r, &named("inner:E11", d), &SuiteConfig::default());
        assert_eq!(rep.status, Status::Pass);
        assert!(rep.positive_witnesses().any(|w| w.kind == "precondition-failure"));
    }

    #[test]
    fn power_rules_skip_and_pass() {
        let (r, d) = tp33();
        let rep = verify_power_rules(&r, &d, &SuiteConfig::default());
        assert_eq!(rep.status, Status::Pass, "{rep:?}");
        let m = FiniteRing::build(&RingSpec::matrix(RingSpec::zn(2), 2)).unwrap();
        let rep = verify_power_rules(&m, &named("trivial", AdditiveMap::zero(&m)), &SuiteConfig::default());
        assert_eq!(rep.status, Status::Skipped);
        assert_eq!(rep.reason.as_deref(), Some("not commutative"));
    }

    #[test]
    fn failing_instance_is_reported() {
        let r = FiniteRing::build(&RingSpec::zn(4)).unwrap();
        let d = named("trivial", AdditiveMap::zero(&r));
        let mut t = Tally::new(Checker::Basic, &r, &d.name);
        t.check(false, "forced", || [("x", r.zero())]);
        let rep = t.finish();
        assert_eq!(rep.status, Status::Fail);
        assert_eq!(rep.witnesses[0].values["x"], "0");
    }
}
