//! Schema-versioned JSON reports.  Everything here is deterministic: no
//! timestamps, no timings, and only ordered maps.

use serde::Serialize;
use serde_json::{json, Value};

use super::args::JobConfig;
use crate::error::Error;
use crate::linalg::AbGroup;

pub const SCHEMA: &str = "gammaspec.report/1";

/// Truncation data every numeric claim in a report is relative to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    #[serde(rename = "N")]
    pub bound: usize,
    #[serde(rename = "D")]
    pub truncation: usize,
    pub k_max: usize,
    /// homology degrees certified by the truncation
    pub valid_through: usize,
}

impl Provenance {
    pub fn of(job: &JobConfig) -> Provenance {
        Provenance { bound: job.bound, truncation: job.truncation, k_max: job.k_max, valid_through: job.truncation - 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: Value) -> Check {
        Check { name: name.into(), passed, detail, witness: None }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Check {
        self.witness = Some(w.into());
        self
    }
}

/// The failure that stopped a job.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub stage: String,
    pub kind: String,
    pub message: String,
}

impl Failure {
    pub fn new(stage: &str, e: &Error) -> Failure {
        Failure { stage: stage.into(), kind: error_kind(e).into(), message: e.to_string() }
    }
}

/// Name of an error variant, as used in reports.
pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Overflow => "Overflow",
        Error::InsufficientDimension { .. } => "InsufficientDimension",
        Error::InvalidSSet(_) => "InvalidSSet",
        Error::InvalidCategory(_) => "InvalidCategory",
        Error::NotAFunctor(_) => "NotAFunctor",
        Error::MismatchedBase => "MismatchedBase",
        Error::IdentityViolation { .. } => "IdentityViolation",
        Error::ObjectOutOfRange(_) => "ObjectOutOfRange",
        Error::LawViolation { .. } => "LawViolation",
        Error::TruncationTooSmall(_) => "TruncationTooSmall",
        Error::InvalidRing(_) => "InvalidRing",
        Error::InvalidModule(_) => "InvalidModule",
        Error::NotDkBacked(_) => "NotDkBacked",
        Error::BijectionFailure(_) => "BijectionFailure",
        Error::NotStabilized(_) => "NotStabilized",
        Error::NotCommutative(_) => "NotCommutative",
        Error::InsufficientGammaRange { .. } => "InsufficientGammaRange",
        Error::BudgetExceeded(_) => "BudgetExceeded",
        Error::Parse(_) => "Parse",
    }
}

/// Errors that mean the job was misconfigured or truncated too far, as
/// opposed to a property failing.
pub fn is_configuration_error(e: &Error) -> bool {
    is_configuration_kind(error_kind(e))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub job: JobConfig,
    pub provenance: Provenance,
    pub checks: Vec<Check>,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Failure>,
    pub passed: bool,
}

impl Report {
    pub fn new(job: &JobConfig) -> Report {
        Report {
            schema: SCHEMA,
            job: job.clone(),
            provenance: Provenance::of(job),
            checks: Vec::new(),
            results: json!({}),
            failure: None,
            passed: false,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Seals the report: it passes iff nothing failed.
    pub fn finish(mut self) -> Report {
        self.passed = self.failure.is_none() && self.checks.iter().all(|c| c.passed);
        self
    }

    pub fn fail(mut self, stage: &str, e: &Error) -> Report {
        self.failure = Some(Failure::new(stage, e));
        self.passed = false;
        self
    }

    /// Exit status: 0 pass, 1 property failure, 2 configuration error.
    pub fn exit_code(&self) -> i32 {
        match &self.failure {
            Some(f) if is_configuration_kind(&f.kind) => 2,
            _ if self.passed => 0,
            _ => 1,
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn is_configuration_kind(kind: &str) -> bool {
    matches!(
        kind,
        "TruncationTooSmall"
            | "NotStabilized"
            | "InsufficientGammaRange"
            | "InsufficientDimension"
            | "BudgetExceeded"
            | "Parse"
            | "InvalidRing"
            | "ObjectOutOfRange"
    )
}

/// A group as its invariant factors, e.g. `["Z", "Z/2"]`.
pub fn group(g: &AbGroup) -> Value {
    json!(g.factor_strings())
}

pub fn groups(gs: &[AbGroup]) -> Value {
    Value::Array(gs.iter().map(group).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::args::Command;

    fn job() -> JobConfig {
        JobConfig {
            command: Command::Suite,
            ring: None,
            diagram: None,
            bound: 3,
            truncation: 4,
            n_max: 3,
            k_max: 1,
            seed: 42,
            out: None,
        }
    }

    #[test]
    fn exit_codes() {
        let mut r = Report::new(&job());
        r.push(Check::new("a", true, json!(null)));
        assert_eq!(r.clone().finish().exit_code(), 0);
        r.push(Check::new("b", false, json!(null)));
        assert_eq!(r.clone().finish().exit_code(), 1);
        let e = Error::NotStabilized("x".into());
        assert_eq!(r.fail("stage", &e).exit_code(), 2);
    }

    #[test]
    fn kinds_agree_with_the_classifier() {
        for e in [Error::TruncationTooSmall(String::new()), Error::InsufficientGammaRange { needed: 1, available: 0 }] {
            assert!(is_configuration_error(&e));
            assert!(is_configuration_kind(error_kind(&e)));
        }
        assert!(!is_configuration_kind(error_kind(&Error::MismatchedBase)));
    }

    #[test]
    fn serialization_is_stable() {
        let r = Report::new(&job()).finish();
        assert_eq!(r.to_json_string(), r.clone().to_json_string());
        let v: Value = serde_json::from_str(&r.to_json_string()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["provenance"]["N"], 3);
    }
}
