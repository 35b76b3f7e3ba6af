//! Suite assembly: select checks, run them, and build the JSON report.
//!
//! The report's `comparison` section is a pure function of the resolved
//! configuration: checks are ordered by id, every check derives its
//! randomness from the root seed and its own id, and wall-clock data lives
//! outside the section. Two runs with the same configuration serialize it
//! byte for byte identically.

use std::time::Instant;

use groupderiv_core::{ProfilePoint, VerificationReport, Witness};
use serde::Serialize;

use crate::checks::{catalog, run_check, CheckDef};
use crate::config::ResolvedConfig;

/// Schema version of the JSON report.
pub const SCHEMA_VERSION: u32 = 1;

/// One executed check in the report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    /// Catalog id.
    pub id: String,
    /// Owning suite.
    pub suite: String,
    /// Group the check exercised.
    pub group: String,
    /// Law statement.
    pub anchor: String,
    /// Verdict.
    pub passed: bool,
    /// Sampled inputs examined.
    pub samples: usize,
    /// Largest violation observed, in the check's own units.
    pub max_violation: f64,
    /// Tolerance the violations were compared against.
    pub tolerance: f64,
    /// Probe set description, when the check used one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<String>,
    /// Recorded sweep, when the check produced one.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub profile: Vec<ProfilePoint>,
    /// Worst offending inputs, when the check failed on a sample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Extra context from the check.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// The deterministic part of the report.
#[derive(Debug, Serialize)]
pub struct Comparison {
    /// Configuration the run resolved to.
    pub config: ResolvedConfig,
    /// Every executed check, ordered by id.
    pub checks: Vec<CheckOutcome>,
    /// Ids of the checks that failed.
    pub failures: Vec<String>,
    /// True when every check passed.
    pub overall: bool,
}

/// Run metadata excluded from the deterministic section.
#[derive(Debug, Serialize)]
pub struct Meta {
    /// Wall-clock duration of the run.
    pub duration_ms: u128,
    /// Version of this tool.
    pub tool_version: String,
}

/// The full JSON report.
#[derive(Debug, Serialize)]
pub struct SuiteReport {
    /// Report format version.
    pub schema_version: u32,
    /// Deterministic results.
    pub comparison: Comparison,
    /// Non-deterministic run metadata.
    pub meta: Meta,
}

/// Catalog entries the configuration selects: the chosen suite (or all) and,
/// when group filters are present, only checks on those groups.
pub fn selected_checks(cfg: &ResolvedConfig) -> Vec<CheckDef> {
    catalog()
        .into_iter()
        .filter(|d| cfg.suite == "all" || d.suite == cfg.suite)
        .filter(|d| cfg.groups.is_empty() || cfg.groups.iter().any(|g| g == &d.group))
        .collect()
}

fn outcome_from_report(def: &CheckDef, report: VerificationReport) -> CheckOutcome {
    let mut notes = report.notes;
    let max_violation = if report.max_violation.is_finite() {
        report.max_violation
    } else {
        // JSON has no non-finite numbers; a negative sentinel keeps the
        // report parseable and the note keeps it honest.
        notes.push(format!(
            "non-finite max violation {} recorded as -1",
            report.max_violation
        ));
        -1.0
    };
    CheckOutcome {
        id: def.id.clone(),
        suite: String::from(def.suite),
        group: def.group.clone(),
        anchor: String::from(def.anchor),
        passed: report.passed,
        samples: report.samples,
        max_violation,
        tolerance: report.tolerance,
        probe: report.probe,
        profile: report.profile,
        witness: report.witness,
        notes,
    }
}

fn outcome_from_error(def: &CheckDef, message: String) -> CheckOutcome {
    CheckOutcome {
        id: def.id.clone(),
        suite: String::from(def.suite),
        group: def.group.clone(),
        anchor: String::from(def.anchor),
        passed: false,
        samples: 0,
        max_violation: -1.0,
        tolerance: 0.0,
        probe: None,
        profile: Vec::new(),
        witness: None,
        notes: vec![format!("check did not run: {message}")],
    }
}

/// Runs every selected check, invoking `on_check` after each one (for
/// progress lines), and assembles the report.
pub fn run_suite<F>(cfg: &ResolvedConfig, mut on_check: F) -> SuiteReport
where
    F: FnMut(&CheckOutcome),
{
    let started = Instant::now();
    let defs = selected_checks(cfg);
    let mut checks = Vec::with_capacity(defs.len());
    for def in &defs {
        let outcome = match run_check(def, cfg) {
            Ok(report) => outcome_from_report(def, report),
            Err(e) => outcome_from_error(def, e.to_string()),
        };
        on_check(&outcome);
        checks.push(outcome);
    }
    let failures: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.id.clone())
        .collect();
    let overall = failures.is_empty();
    SuiteReport {
        schema_version: SCHEMA_VERSION,
        comparison: Comparison {
            config: cfg.clone(),
            checks,
            failures,
            overall,
        },
        meta: Meta {
            duration_ms: started.elapsed().as_millis(),
            tool_version: String::from(env!("CARGO_PKG_VERSION")),
        },
    }
}
