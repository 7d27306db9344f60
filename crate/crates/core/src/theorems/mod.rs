//! Exhaustive checkers for the identities satisfied by integrals.
//!
//! Each checker quantifies one family of statements over a concrete
//! `(ring, map)` pair and returns a [`TheoremReport`]. Unmet hypotheses
//! (no unity, not commutative, map is not a derivation, ...) give
//! `skipped`, never `pass`.

mod derivation;
mod jordan;
mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::maps::{MapDescriptor, NamedMap, Progress};
use crate::ring::{Elem, FiniteRing};

pub use derivation::{
    parts_instance, verify_additivity_and_parts, verify_basic, verify_combination_rules, verify_coset_structure,
    verify_kernel_constants, verify_kernel_scaling, verify_power_rules, PartsInstance,
};
pub use jordan::{find_jordan_not_derivation, herstein_check, verify_jordan_suite, verify_separation};
pub use report::{QuantifierMode, Status, SuiteReport, TheoremReport, Witness};

/// Default ceiling on ring size for suite runs.
pub const DEFAULT_MAX_SUITE_SIZE: usize = 256;

/// Tunables shared by all checkers.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Integers `m, n` range over `-max_n..=max_n`, capped by the additive order of 1.
    pub max_n: i64,
    /// Exponents range over `1..=max_exponent`.
    pub max_exponent: u32,
    /// Seed for sampled quantifiers.
    pub seed: u64,
    /// Largest pair space quantified exhaustively; above it pairs are sampled.
    pub exhaustive_limit: u64,
    pub max_size: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 8,
            max_exponent: 6,
            seed: 0,
            exhaustive_limit: 10_000_000,
            max_size: DEFAULT_MAX_SUITE_SIZE,
        }
    }
}

/// Checker identifiers, in the order `run_suite` executes them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Checker {
    Basic,
    KernelConstants,
    CosetStructure,
    KernelScaling,
    CombinationRules,
    AdditivityParts,
    PowerRules,
    JordanSuite,
    Separation,
    Herstein,
}

impl Checker {
    pub const ALL: [Checker; 10] = [
        Checker::Basic,
        Checker::KernelConstants,
        Checker::CosetStructure,
        Checker::KernelScaling,
        Checker::CombinationRules,
        Checker::AdditivityParts,
        Checker::PowerRules,
        Checker::JordanSuite,
        Checker::Separation,
        Checker::Herstein,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Checker::Basic => "basic",
            Checker::KernelConstants => "kernel_constants",
            Checker::CosetStructure => "coset_structure",
            Checker::KernelScaling => "kernel_scaling",
            Checker::CombinationRules => "combination_rules",
            Checker::AdditivityParts => "additivity_parts",
            Checker::PowerRules => "power_rules",
            Checker::JordanSuite => "jordan_suite",
            Checker::Separation => "separation",
            Checker::Herstein => "herstein",
        }
    }

    /// Checkers that look at the ring only, not the selected map.
    pub fn is_ring_level(self) -> bool {
        self == Checker::Herstein
    }

    /// Parse `all` or a comma-separated list of ids.
    pub fn parse_selection(text: &str) -> Result<Vec<Checker>> {
        if text.trim() == "all" {
            return Ok(Checker::ALL.to_vec());
        }
        let mut picked: Vec<Checker> = text.split(',').map(|s| s.trim().parse()).collect::<Result<_>>()?;
        picked.sort_by_key(|c| Checker::ALL.iter().position(|a| a == c));
        picked.dedup();
        Ok(picked)
    }
}

impl fmt::Display for Checker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Checker {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Checker::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::UnknownChecker(s.to_string()))
    }
}

/// Run one checker against one map.
pub fn run_checker(checker: Checker, ring: &FiniteRing, map: &NamedMap, cfg: &SuiteConfig) -> TheoremReport {
    match checker {
        Checker::Basic => verify_basic(ring, map, cfg),
        Checker::KernelConstants => verify_kernel_constants(ring, map, cfg),
        Checker::CosetStructure => verify_coset_structure(ring, map, cfg),
        Checker::KernelScaling => verify_kernel_scaling(ring, map, cfg),
        Checker::CombinationRules => verify_combination_rules(ring, map, cfg),
        Checker::AdditivityParts => verify_additivity_and_parts(ring, map, cfg),
        Checker::PowerRules => verify_power_rules(ring, map, cfg),
        Checker::JordanSuite => verify_jordan_suite(ring, map, cfg),
        Checker::Separation => match verify_separation(ring, map, cfg) {
            Ok(report) => report,
            Err(e) => Tally::new(checker, ring, &map.name).skip(&precondition_reason(&e)),
        },
        Checker::Herstein => herstein_check(ring, cfg),
    }
}

fn precondition_reason(e: &Error) -> String {
    match e {
        Error::IsDerivation => "map is a derivation (needs a Jordan derivation that is not one)".into(),
        Error::NotJordanDerivation => "map is not a Jordan derivation".into(),
        other => other.to_string(),
    }
}

/// Resolve the map descriptor and run the selected checkers in fixed order.
///
/// Ring-level checkers run once; the others run once per resolved map.
pub fn run_suite(
    ring: &FiniteRing,
    descriptor: &MapDescriptor,
    checkers: &[Checker],
    cfg: &SuiteConfig,
    progress: Option<&Progress>,
) -> Result<SuiteReport> {
    if ring.size() > cfg.max_size {
        return Err(Error::TooLarge {
            size: ring.size(),
            limit: cfg.max_size,
        });
    }
    let maps = descriptor.resolve(ring, progress)?;
    let ring_placeholder = NamedMap {
        name: "-".to_string(),
        map: crate::maps::AdditiveMap::zero(ring),
    };
    let mut jobs: Vec<(Checker, &NamedMap)> = Vec::new();
    for &checker in Checker::ALL.iter().filter(|c| checkers.contains(c)) {
        if checker.is_ring_level() {
            jobs.push((checker, &ring_placeholder));
        } else {
            jobs.extend(maps.iter().map(|m| (checker, m)));
        }
    }
    let reports: Vec<TheoremReport> = jobs
        .par_iter()
        .map(|&(checker, map)| run_checker(checker, ring, map, cfg))
        .collect();
    Ok(SuiteReport::new(ring.spec().clone(), descriptor.to_string(), reports))
}

/// Accumulates instance counts and witnesses for one checker run.
pub(crate) struct Tally<'r> {
    checker: Checker,
    ring: &'r FiniteRing,
    map: String,
    clock: Stopwatch,
    instances: u64,
    failures: u64,
    witnesses: Vec<Witness>,
    notes: Vec<String>,
    sampled: bool,
    seed: Option<u64>,
}

const MAX_FAILURE_WITNESSES: usize = 8;

impl<'r> Tally<'r> {
    pub(crate) fn new(checker: Checker, ring: &'r FiniteRing, map: &str) -> Self {
        Tally {
            checker,
            ring,
            map: map.to_string(),
            clock: Stopwatch::start(),
            instances: 0,
            failures: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
            sampled: false,
            seed: None,
        }
    }

    pub(crate) fn label(&self, x: Elem) -> String {
        self.ring.label(x).to_string()
    }

    /// Record one instance of `statement`; `values` is only evaluated on failure.
    pub(crate) fn check<const N: usize>(
        &mut self,
        ok: bool,
        statement: &str,
        values: impl FnOnce() -> [(&'static str, Elem); N],
    ) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < MAX_FAILURE_WITNESSES {
                let w = self.witness("violation", statement, &values());
                self.witnesses.push(w);
            }
        }
    }

    /// Record a passing instance whose witness is reported separately.
    pub(crate) fn pass_instance(&mut self) {
        self.instances += 1;
    }

    /// Record a failing instance with a prepared witness.
    pub(crate) fn fail_with(&mut self, w: Witness) {
        self.instances += 1;
        self.failures += 1;
        if self.witnesses.len() < MAX_FAILURE_WITNESSES {
            self.witnesses.push(w);
        }
    }

    pub(crate) fn witness(&self, kind: &str, statement: &str, values: &[(&str, Elem)]) -> Witness {
        Witness {
            kind: kind.to_string(),
            statement: statement.to_string(),
            values: values
                .iter()
                .map(|&(k, v)| (k.to_string(), self.label(v)))
                .collect::<BTreeMap<_, _>>(),
        }
    }

    /// Record a notable witness that is not a failure.
    pub(crate) fn positive(&mut self, kind: &str, statement: &str, values: &[(&str, Elem)]) {
        let w = self.witness(kind, statement, values);
        self.witnesses.push(w);
    }

    pub(crate) fn push_witness(&mut self, w: Witness) {
        self.witnesses.push(w);
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        let note = note.into();
        if !self.notes.contains(&note) {
            self.notes.push(note);
        }
    }

    /// Pairs of elements, exhaustively or by seeded stratified sampling.
    pub(crate) fn pairs(&mut self, cfg: &SuiteConfig) -> Vec<(Elem, Elem)> {
        let n = self.ring.size();
        if (n as u64) * (n as u64) <= cfg.exhaustive_limit {
            return self
                .ring
                .elements()
                .flat_map(|x| self.ring.elements().map(move |y| (x, y)))
                .collect();
        }
        self.sampled = true;
        self.seed = Some(cfg.seed);
        let per_stratum = (cfg.exhaustive_limit / n as u64).max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut pairs = Vec::new();
        for x in self.ring.elements() {
            for _ in 0..per_stratum {
                pairs.push((x, Elem::from_index(rng.gen_range(0..n))));
            }
        }
        pairs
    }

    pub(crate) fn skip(self, reason: &str) -> TheoremReport {
        self.finish_with(Status::Skipped, Some(reason.to_string()))
    }

    pub(crate) fn finish(self) -> TheoremReport {
        let status = if self.failures > 0 { Status::Fail } else { Status::Pass };
        self.finish_with(status, None)
    }

    fn finish_with(self, status: Status, reason: Option<String>) -> TheoremReport {
        let reason = reason.or_else(|| (self.failures > 0).then(|| format!("{} failing instances", self.failures)));
        TheoremReport {
            checker: self.checker.id().to_string(),
            ring: self.ring.spec().clone(),
            map: self.map,
            status,
            reason,
            mode: if self.sampled {
                QuantifierMode::Sampled
            } else {
                QuantifierMode::Exhaustive
            },
            instances: self.instances,
            witnesses: self.witnesses,
            notes: self.notes,
            seed: self.seed,
            runtime_ms: self.clock.elapsed_ms(),
        }
    }
}

/// Wall-clock timer; `std::time::Instant` is unavailable in the browser.
#[cfg(not(target_family = "wasm"))]
struct Stopwatch(std::time::Instant);

#[cfg(not(target_family = "wasm"))]
impl Stopwatch {
    fn start() -> Self {
        Stopwatch(std::time::Instant::now())
    }

    fn elapsed_ms(&self) -> f64 {
        self.0.elapsed().as_secs_f64() * 1e3
    }
}

#[cfg(target_family = "wasm")]
struct Stopwatch;

#[cfg(target_family = "wasm")]
impl Stopwatch {
    fn start() -> Self {
        Stopwatch
    }

    fn elapsed_ms(&self) -> f64 {
        0.0
    }
}

/// Two-sided inverse of every element (all `None` without unity).
pub(crate) fn inverse_table(ring: &FiniteRing) -> Vec<Option<Elem>> {
    let mut inv = vec![None; ring.size()];
    let Some(one) = ring.unity() else {
        return inv;
    };
    for x in ring.elements() {
        if inv[x.index()].is_some() {
            continue;
        }
        if let Some(y) = ring
            .elements()
            .find(|&y| ring.mul(x, y) == one && ring.mul(y, x) == one)
        {
            inv[x.index()] = Some(y);
            inv[y.index()] = Some(x);
        }
    }
    inv
}

/// Integers `-k..=k` with `k = min(max_n, additive order of 1)`.
pub(crate) fn integer_range(ring: &FiniteRing, cfg: &SuiteConfig, tally: &mut Tally<'_>) -> Vec<i64> {
    let one = ring.unity().expect("caller checked unity");
    let order = ring.additive_order(one) as i64;
    let k = if order < cfg.max_n {
        tally.note(format!("range capped by additive order of 1 ({order})"));
        order
    } else {
        cfg.max_n
    };
    (-k..=k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn checker_selection() {
        assert_eq!(Checker::parse_selection("all").unwrap().len(), 10);
        assert_eq!(
            Checker::parse_selection("separation,basic,basic").unwrap(),
            vec![Checker::Basic, Checker::Separation]
        );
        assert!(Checker::parse_selection("basic,bogus").is_err());
        for c in Checker::ALL {
            assert_eq!(c.id().parse::<Checker>().unwrap(), c);
        }
    }

    #[test]
    fn inverse_table_matches_invert() {
        let r = FiniteRing::build(&RingSpec::trunc_poly(3, 3)).unwrap();
        let inv = inverse_table(&r);
        for x in r.elements() {
            assert_eq!(inv[x.index()], r.invert(x).unwrap());
        }
    }

    #[test]
    fn sampled_pairs_are_seeded() {
        let r = FiniteRing::build(&RingSpec::zn(8)).unwrap();
        let cfg = SuiteConfig {
            exhaustive_limit: 16,
            seed: 7,
            ..SuiteConfig::default()
        };
        let mut a = Tally::new(Checker::Basic, &r, "trivial");
        let mut b = Tally::new(Checker::Basic, &r, "trivial");
        let pa = a.pairs(&cfg);
        assert_eq!(pa, b.pairs(&cfg));
        assert_eq!(pa.len(), 16);
        let report = a.finish();
        assert_eq!(report.mode, QuantifierMode::Sampled);
        assert_eq!(report.seed, Some(7));
    }
}
