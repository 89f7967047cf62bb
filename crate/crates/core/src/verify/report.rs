use std::fmt;

use serde::{Deserialize, Serialize};

use crate::joyce::SCHEMA;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    /// Largest residual magnitude seen.
    pub residual: f64,
    /// First failing input, when there is one.
    pub witness: Option<String>,
    pub note: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn skipped(name: &str, note: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            status: Status::Skipped,
            residual: 0.0,
            witness: None,
            note: Some(note.into()),
        }
    }

    pub fn boolean(name: &str, ok: bool, witness: Option<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            residual: if ok { 0.0 } else { 1.0 },
            witness: if ok { None } else { witness },
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Residual accumulator: worst magnitude plus the first failing witness.
#[derive(Clone, Debug, Default)]
pub struct Residual {
    worst: f64,
    failed: bool,
    witness: Option<String>,
    count: usize,
}

impl Residual {
    pub fn observe<F: Scalar>(&mut self, v: &F, witness: impl FnOnce() -> String) {
        self.count += 1;
        if v.is_zero() {
            return;
        }
        self.worst = self.worst.max(v.magnitude());
        if !v.negligible() && !self.failed {
            self.failed = true;
            self.witness = Some(witness());
        }
    }

    pub fn observe_all<F: Scalar>(&mut self, vs: &[F], witness: impl Fn(usize) -> String) {
        for (i, v) in vs.iter().enumerate() {
            self.observe(v, || witness(i));
        }
    }

    /// Ordered merge: the earlier accumulator keeps its witness.
    pub fn merge(mut self, other: Residual) -> Residual {
        self.worst = self.worst.max(other.worst);
        self.count += other.count;
        if !self.failed && other.failed {
            self.failed = true;
            self.witness = other.witness;
        }
        self
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn finish(self, name: &str) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            status: if self.failed { Status::Fail } else { Status::Pass },
            residual: self.worst,
            witness: self.witness,
            note: Some(format!("{} values", self.count)),
        }
    }
}

/// Named checks run against one triple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub algebra: String,
    pub backend: String,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new(algebra: &str, backend: &str) -> Self {
        VerificationReport {
            schema: SCHEMA.to_string(),
            algebra: algebra.to_string(),
            backend: backend.to_string(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// True when no check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("check\tstatus\tresidual\twitness\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{}\t{}\t{:e}\t{}\n",
                c.name,
                c.status,
                c.residual,
                c.witness.as_deref().unwrap_or("")
            ));
        }
        out
    }
}
