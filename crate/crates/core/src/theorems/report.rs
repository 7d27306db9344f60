use std::collections::BTreeMap;

use serde::Serialize;

use crate::ring::RingSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Whether every instance was checked or a seeded sample was drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantifierMode {
    Exhaustive,
    Sampled,
}

/// A concrete assignment of labelled values, either a counterexample
/// (`kind = "violation"`) or a notable positive finding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: String,
    pub statement: String,
    pub values: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub checker: String,
    pub ring: RingSpec,
    pub map: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub mode: QuantifierMode,
    pub instances: u64,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Wall time; excluded from JSON so reports are reproducible byte for byte.
    #[serde(skip)]
    pub runtime_ms: f64,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }

    /// Witnesses that are not counterexamples.
    pub fn positive_witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| w.kind != "violation")
    }

    /// One-line human summary.
    pub fn summary_line(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        let mut line = format!(
            "{status} {:<18} {:<22} {} instances",
            self.checker, self.map, self.instances
        );
        if self.mode == QuantifierMode::Sampled {
            line.push_str(&format!(" (sampled, seed {})", self.seed.unwrap_or_default()));
        }
        if let Some(reason) = &self.reason {
            line.push_str(&format!(" [{reason}]"));
        }
        line
    }
}

/// All reports of one suite run; fails iff any report fails.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub ring: RingSpec,
    pub ring_name: String,
    pub map: String,
    pub status: Status,
    pub reports: Vec<TheoremReport>,
}

impl SuiteReport {
    pub fn new(ring: RingSpec, map: String, reports: Vec<TheoremReport>) -> Self {
        let status = if reports.iter().any(TheoremReport::failed) {
            Status::Fail
        } else if reports.iter().any(TheoremReport::passed) {
            Status::Pass
        } else {
            Status::Skipped
        };
        SuiteReport {
            ring_name: ring.name(),
            ring,
            map,
            status,
            reports,
        }
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}
