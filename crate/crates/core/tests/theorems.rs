use proptest::prelude::*;
use ringlab::maps::{enumerate_derivations, enumerate_jordan_derivations, AdditiveMap, NamedMap};
use ringlab::theorems::{run_checker, run_suite, Checker, QuantifierMode, Status, SuiteConfig};
use ringlab::{FiniteRing, MapDescriptor, RingSpec};

fn corpus() -> Vec<FiniteRing> {
    RingSpec::standard_corpus()
        .iter()
        .map(|s| FiniteRing::build(s).unwrap())
        .collect()
}

const DERIVATION_CHECKERS: [Checker; 7] = [
    Checker::Basic,
    Checker::KernelConstants,
    Checker::CosetStructure,
    Checker::KernelScaling,
    Checker::CombinationRules,
    Checker::AdditivityParts,
    Checker::PowerRules,
];

fn named(name: &str, map: AdditiveMap) -> NamedMap {
    NamedMap { name: name.into(), map }
}

#[test]
fn suite_examples() {
    let cfg = SuiteConfig::default();
    let tp = FiniteRing::build(&RingSpec::trunc_poly(3, 3)).unwrap();
    let suite = run_suite(&tp, &MapDescriptor::Formal, &Checker::ALL, &cfg, None).unwrap();
    assert_eq!(suite.status, Status::Pass);
    let order: Vec<&str> = suite.reports.iter().map(|r| r.checker.as_str()).collect();
    assert_eq!(order, Checker::ALL.map(Checker::id));
    for id in ["basic", "kernel_constants", "power_rules", "jordan_suite"] {
        assert!(suite.reports.iter().any(|r| r.checker == id && r.passed()), "{id}");
    }

    let z4 = FiniteRing::build(&RingSpec::zn(4)).unwrap();
    let suite = run_suite(
        &z4,
        &MapDescriptor::Enumerate { jordan: true },
        &[Checker::Separation],
        &cfg,
        None,
    )
    .unwrap();
    assert_eq!(suite.status, Status::Pass);
    assert_eq!(suite.reports.iter().filter(|r| r.passed()).count(), 1);
}

#[test]
fn suite_rejects_oversized_rings_and_bad_descriptors() {
    let m = FiniteRing::build(&RingSpec::matrix(RingSpec::zn(2), 2)).unwrap();
    let cfg = SuiteConfig {
        max_size: 8,
        ..SuiteConfig::default()
    };
    assert!(run_suite(&m, &MapDescriptor::Trivial, &Checker::ALL, &cfg, None).is_err());
    let bad = MapDescriptor::Inner("E33".into());
    assert!(run_suite(&m, &bad, &Checker::ALL, &SuiteConfig::default(), None).is_err());
}

#[test]
fn sampled_mode_is_labelled_and_reproducible() {
    let r = FiniteRing::build(&RingSpec::trunc_poly(3, 3)).unwrap();
    let cfg = SuiteConfig {
        exhaustive_limit: 100,
        seed: 99,
        ..SuiteConfig::default()
    };
    let map = MapDescriptor::Formal.resolve(&r, None).unwrap().remove(0);
    let a = run_checker(Checker::CombinationRules, &r, &map, &cfg);
    let b = run_checker(Checker::CombinationRules, &r, &map, &cfg);
    assert_eq!(a.status, Status::Pass);
    assert_eq!(a.mode, QuantifierMode::Sampled);
    assert_eq!(a.seed, Some(99));
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let exhaustive = run_checker(Checker::CombinationRules, &r, &map, &SuiteConfig::default());
    assert_eq!(exhaustive.mode, QuantifierMode::Exhaustive);
    assert!(exhaustive.instances > a.instances);
}

#[test]
fn every_corpus_derivation_passes_everything() {
    let cfg = SuiteConfig::default();
    for r in corpus() {
        for (i, d) in enumerate_derivations(&r).into_iter().enumerate() {
            let map = named(&format!("#{i}"), d);
            for c in Checker::ALL {
                let rep = run_checker(c, &r, &map, &cfg);
                assert!(!rep.failed(), "{} {c} #{i}: {:?}", r.spec().name(), rep.witnesses);
            }
        }
    }
}

#[test]
fn jordan_maps_pass_jordan_suite() {
    let cfg = SuiteConfig::default();
    for r in corpus().into_iter().filter(|r| r.size() <= 32) {
        for (i, m) in enumerate_jordan_derivations(&r).into_iter().enumerate() {
            let rep = run_checker(Checker::JordanSuite, &r, &named(&format!("#{i}"), m), &cfg);
            assert_eq!(rep.status, Status::Pass, "{} #{i}", r.spec().name());
        }
    }
}

/// Additive maps of `Z_n^k`-like rings given by random generator images.
fn arbitrary_additive(r: &FiniteRing, seed: Vec<usize>) -> AdditiveMap {
    let basis = ringlab::maps::GeneratorBasis::compute(r);
    let images: Vec<_> = basis
        .orders()
        .iter()
        .zip(seed.iter().cycle())
        .map(|(&order, &s)| {
            let ok: Vec<_> = r.elements().filter(|&e| order % r.additive_order(e) == 0).collect();
            ok[s % ok.len()]
        })
        .collect();
    let table = r.elements().map(|x| basis.extend(r, &images, x)).collect();
    AdditiveMap::new(r, table).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Unmet hypotheses give `skipped`, never `pass`.
    #[test]
    fn non_derivations_are_skipped(ring_idx in 0usize..12, seed in prop::collection::vec(0usize..1000, 4)) {
        let rings = corpus();
        let r = &rings[ring_idx % rings.len()];
        let map = arbitrary_additive(r, seed);
        let cfg = SuiteConfig::default();
        let named = named("random", map.clone());
        for c in DERIVATION_CHECKERS {
            let rep = run_checker(c, r, &named, &cfg);
            if !map.is_derivation() {
                prop_assert_eq!(rep.status, Status::Skipped);
            } else {
                prop_assert!(!rep.failed());
            }
        }
        let jordan = run_checker(Checker::JordanSuite, r, &named, &cfg);
        prop_assert_eq!(jordan.status == Status::Skipped, !map.is_jordan_derivation());
        let sep = run_checker(Checker::Separation, r, &named, &cfg);
        if map.is_derivation() || !map.is_jordan_derivation() {
            prop_assert_eq!(sep.status, Status::Skipped);
        }
    }

    /// Whenever the derivation checkers pass, the Jordan suite passes too.
    #[test]
    fn derivation_suite_implies_jordan_suite(ring_idx in 0usize..12, pick in 0usize..64) {
        let rings = corpus();
        let r = &rings[ring_idx % rings.len()];
        let ds = enumerate_derivations(r);
        let d = named("d", ds[pick % ds.len()].clone());
        let cfg = SuiteConfig::default();
        let all_pass = DERIVATION_CHECKERS.iter().all(|&c| !run_checker(c, r, &d, &cfg).failed());
        if all_pass {
            prop_assert_eq!(run_checker(Checker::JordanSuite, r, &d, &cfg).status, Status::Pass);
        }
    }
}
