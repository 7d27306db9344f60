//! Jordan integrals, the separation property and Herstein's condition.

use std::collections::BTreeMap;

use super::{Checker, SuiteConfig, Tally, TheoremReport, Witness};
use crate::error::{Error, Result};
use crate::integral::Integrator;
use crate::maps::{enumerate_derivations, enumerate_jordan_derivations, AdditiveMap, NamedMap};
use crate::ring::FiniteRing;
use crate::set::{set_add, ElementSet};

/// The canonically first Jordan derivation that is not a derivation.
pub fn find_jordan_not_derivation(ring: &FiniteRing) -> Option<AdditiveMap> {
    enumerate_jordan_derivations(ring)
        .into_iter()
        .find(|m| !m.is_derivation())
}

/// Membership, coset, additivity, product and bijectivity statements for
/// Jordan integrals `j(x) = {y : δ(y) = x}`.
pub fn verify_jordan_suite(ring: &FiniteRing, map: &NamedMap, cfg: &SuiteConfig) -> TheoremReport {
    let mut t = Tally::new(Checker::JordanSuite, ring, &map.name);
    let Ok(integ) = Integrator::jordan(ring, &map.map) else {
        return t.skip("map is not a Jordan derivation");
    };
    let delta = &map.map;
    let zero = ring.zero();
    let kernel = integ.integrate_scan(zero);
    t.check(integ.contains(zero, zero), "0 ∈ j(0)", || [("x", zero)]);

    let mut all_nonempty = true;
    let mut all_singletons = true;
    for x in ring.elements() {
        let fiber = integ.integrate_scan(x);
        let stored = integ.integrate(x).as_set(ring).expect("same ring");
        t.check(stored == fiber, "stored coset equals the scanned preimage", || {
            [("x", x)]
        });
        all_nonempty &= !fiber.is_empty();
        all_singletons &= fiber.len() == 1;
        for y in fiber.iter() {
            t.check(integ.contains(delta.apply(y), y), "y ∈ j(δ(y))", || [("y", y)]);
            let translate = kernel.map(ring, |w| ring.add(y, w));
            t.check(translate == fiber, "j(x) = {y + w : w ∈ Ker δ}", || {
                [("x", x), ("y", y)]
            });
            for z in fiber.iter() {
                t.check(
                    integ.contains(zero, ring.sub(y, z)),
                    "y, z ∈ j(x) ⇒ y − z ∈ j(0)",
                    || [("x", x), ("y", y), ("z", z)],
                );
            }
        }
        if !fiber.is_empty() {
            let images = fiber.map(ring, |y| delta.apply(y));
            t.check(images == ElementSet::singleton(ring, x), "δ(j(x)) = {x}", || {
                [("x", x)]
            });
        }
    }
    let surjective = delta.image(ring).expect("same ring").len() == ring.size();
    let injective = kernel.len() == 1;
    t.check(surjective == all_nonempty, "δ surjective ⇔ j(x) ≠ ∅ for all x", || []);
    t.check(injective == all_singletons, "δ injective ⇔ |j(x)| = 1 for all x", || []);

    let mut parts_precondition_noted = false;
    for (x, y) in t.pairs(cfg) {
        let (jx, jy) = (integ.integrate(x), integ.integrate(y));
        if !jx.is_empty() && !jy.is_empty() {
            let sum = set_add(
                ring,
                &jx.as_set(ring).expect("same ring"),
                &jy.as_set(ring).expect("same ring"),
            )
            .expect("same ring");
            let whole = integ.integrate(ring.add(x, y)).as_set(ring).expect("same ring");
            t.check(sum == whole, "j(x) + j(y) = j(x + y)", || [("x", x), ("y", y)]);
        }

        let (dx, dy) = (delta.apply(x), delta.apply(y));
        let targets = [ring.mul(dx, y), ring.mul(x, dy), ring.mul(dy, x), ring.mul(y, dx)];
        let parts: Vec<_> = targets.iter().map(|&u| integ.integrate(u)).collect();
        if parts.iter().all(|p| !p.is_empty()) {
            let sum = parts[1..]
                .iter()
                .try_fold(parts[0].clone(), |acc, p| acc.sum(ring, p))
                .expect("same ring and kernel");
            t.check(
                sum.contains(ring, ring.jordan(x, y)).expect("same ring"),
                "x∘y ∈ j(δ(x)y) + j(xδ(y)) + j(δ(y)x) + j(yδ(x))",
                || [("x", x), ("y", y)],
            );
        } else if !parts_precondition_noted {
            parts_precondition_noted = true;
            t.positive(
                "precondition-failure",
                "some part of Jordan integration by parts has an empty integral",
                &[("x", x), ("y", y)],
            );
        }

        // Every (x_i, y_i) with y_i ∈ j(x_i) arises as x_i = δ(y_i).
        let (y1, y2, x1, x2) = (x, y, dx, dy);
        let vals = || [("x1", x1), ("y1", y1), ("x2", x2), ("y2", y2)];
        t.check(
            integ.contains(ring.add(x1, x2), ring.add(y1, y2)),
            "y1 + y2 ∈ j(x1 + x2)",
            vals,
        );
        let target = [ring.mul(x1, y2), ring.mul(y1, x2), ring.mul(x2, y1), ring.mul(y2, x1)]
            .into_iter()
            .fold(zero, |acc, u| ring.add(acc, u));
        t.check(
            integ.contains(target, ring.jordan(y1, y2)),
            "y1∘y2 ∈ j(x1y2 + y1x2 + x2y1 + y2x1)",
            vals,
        );
    }
    t.finish()
}

/// Every derivation `d` has some `x` with `i_d(x) ≠ j_δ(x)`.
///
/// Errors if `δ` is a derivation or not a Jordan derivation.
pub fn verify_separation(ring: &FiniteRing, map: &NamedMap, _cfg: &SuiteConfig) -> Result<TheoremReport> {
    if map.map.is_derivation() {
        return Err(Error::IsDerivation);
    }
    let jordan = Integrator::jordan(ring, &map.map)?;
    let mut t = Tally::new(Checker::Separation, ring, &map.name);
    let derivations = enumerate_derivations(ring);
    t.note(format!("{} derivations enumerated", derivations.len()));
    for (i, d) in derivations.iter().enumerate() {
        let integ = Integrator::derivation(ring, d)?;
        let separating = ring.elements().find(|&x| {
            !integ
                .integrate(x)
                .equals(ring, &jordan.integrate(x))
                .expect("same ring")
        });
        match separating {
            Some(x) => {
                let mut w = t.witness("separating-element", "i_d(x) ≠ j(x)", &[("x", x)]);
                w.values.insert("d".into(), format!("{:?}", d.indices()));
                w.values.insert("derivation".into(), format!("#{i}"));
                t.push_witness(w);
                t.pass_instance();
            }
            None => t.check(false, "i_d = j for some derivation d", || []),
        }
    }
    Ok(t.finish())
}

/// On 2-torsion-free prime rings every Jordan derivation is a derivation.
pub fn herstein_check(ring: &FiniteRing, _cfg: &SuiteConfig) -> TheoremReport {
    let mut t = Tally::new(Checker::Herstein, ring, "enumerate:jordan");
    if !ring.is_n_torsion_free(2) {
        return t.skip("not 2-torsion-free");
    }
    if !ring.is_prime() {
        return t.skip("not prime");
    }
    let maps = enumerate_jordan_derivations(ring);
    t.note(format!("{} Jordan derivations enumerated", maps.len()));
    for (i, m) in maps.iter().enumerate() {
        if m.is_derivation() {
            t.pass_instance();
        } else {
            t.fail_with(Witness {
                kind: "violation".into(),
                statement: "Jordan derivation that is not a derivation".into(),
                values: BTreeMap::from([
                    ("map".to_string(), format!("{:?}", m.indices())),
                    ("index".to_string(), format!("#{i}")),
                ]),
            });
        }
    }
    t.finish()
}
