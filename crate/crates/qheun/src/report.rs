//! Machine-readable verification reports.
//!
//! Every number in a report is an exact rational string; no decimal
//! rendering happens anywhere. Reports carry no timestamp, so identical
//! configuration and seed reproduce byte-identical output.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One check: a name, the exact inputs it ran on, and the outcome.
/// Failing records carry a witness (the offending operator, polynomial or
/// residual, serialized as text).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub inputs: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl CheckRecord {
    pub fn pass(name: impl Into<String>, inputs: Value) -> Self {
        CheckRecord {
            name: name.into(),
            inputs,
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, inputs: Value, witness: impl Into<String>) -> Self {
        CheckRecord {
            name: name.into(),
            inputs,
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    /// Pass/fail from a condition, with the witness attached on failure.
    pub fn assert(
        name: impl Into<String>,
        inputs: Value,
        ok: bool,
        witness: impl Into<String>,
    ) -> Self {
        if ok {
            CheckRecord::pass(name, inputs)
        } else {
            CheckRecord::fail(name, inputs, witness)
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

/// A full suite report: the resolved configuration echo, every check
/// record in deterministic order, and the tallies.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub suite: String,
    pub version: String,
    pub config: Value,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: impl Into<String>, config: Value, records: Vec<CheckRecord>) -> Self {
        let passed = records.iter().filter(|r| r.passed()).count();
        let failed = records.len() - passed;
        Report {
            suite: suite.into(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            records,
            summary: Summary { passed, failed },
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Canonical JSON rendering (two-space indent, sorted object keys via
    /// `serde_json`'s default BTreeMap representation).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

/// Collects records and tracks overall success; shared by the library-level
/// check functions.
#[derive(Default, Debug, Clone)]
pub struct Recorder {
    pub records: Vec<CheckRecord>,
}

impl Recorder {
    pub fn new() -> Self {
        Recorder::default()
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    pub fn check(
        &mut self,
        name: impl Into<String>,
        inputs: Value,
        ok: bool,
        witness: impl Into<String>,
    ) {
        self.push(CheckRecord::assert(name, inputs, ok, witness));
    }

    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.passed())
    }

    pub fn into_records(self) -> Vec<CheckRecord> {
        self.records
    }
}
