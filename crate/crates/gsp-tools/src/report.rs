//! Machine-readable verification reports.
//!
//! A report is deterministic under a fixed [`RunConfig`]: checks are sorted
//! by their canonical id and every recorded value is produced by exact
//! arithmetic, so two runs with the same configuration serialize to
//! byte-identical JSON except for the single `generated_at` header field.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

/// The run configuration a suite was invoked with.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    /// Seed for the documented 64-bit generator.
    pub seed: u64,
    /// Number of randomized trials (suites with no randomness ignore it).
    pub trials: u32,
    /// Base-2 logarithm of the enumeration budget.
    pub budget_log2: u32,
    /// Grid bound for brute-force weight scans (only some suites use it).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
}

/// A single verified fact: inputs, the expected value, the observed value,
/// an optional corridor, and the verdict.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    /// Canonical id; reports are sorted by this field.
    pub id: String,
    /// The check's inputs, as a JSON object of decimal strings.
    pub inputs: serde_json::Value,
    /// Expected value or relation.
    pub expected: String,
    /// Observed value.
    pub observed: String,
    /// Corridor the observed value must lie in, when the check is an
    /// interval test rather than an equality.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corridor: Option<String>,
    /// Whether the check passed.
    pub pass: bool,
}

impl CheckResult {
    /// An equality check: passes iff `expected == observed`.
    pub fn equality(
        id: impl Into<String>,
        inputs: serde_json::Value,
        expected: impl Into<String>,
        observed: impl Into<String>,
    ) -> Self {
        let expected = expected.into();
        let observed = observed.into();
        let pass = expected == observed;
        CheckResult {
            id: id.into(),
            inputs,
            expected,
            observed,
            corridor: None,
            pass,
        }
    }

    /// A corridor check: the caller evaluates membership and supplies the
    /// verdict together with the printed corridor.
    pub fn corridor(
        id: impl Into<String>,
        inputs: serde_json::Value,
        expected: impl Into<String>,
        observed: impl Into<String>,
        corridor: impl Into<String>,
        pass: bool,
    ) -> Self {
        CheckResult {
            id: id.into(),
            inputs,
            expected: expected.into(),
            observed: observed.into(),
            corridor: Some(corridor.into()),
            pass,
        }
    }

    /// A statistics record: never fails, it only documents observations.
    pub fn statistic(
        id: impl Into<String>,
        inputs: serde_json::Value,
        observed: impl Into<String>,
    ) -> Self {
        CheckResult {
            id: id.into(),
            inputs,
            expected: "recorded (no assertion)".to_string(),
            observed: observed.into(),
            corridor: None,
            pass: true,
        }
    }
}

/// Pass/fail tallies.
#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

/// A complete suite run.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    /// Seconds since the Unix epoch at generation time — the only field
    /// that varies between identically configured runs.
    pub generated_at: String,
    pub config: RunConfig,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl VerificationReport {
    /// Assembles a report: sorts checks canonically and tallies verdicts.
    pub fn new(suite: impl Into<String>, config: RunConfig, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        let total = checks.len();
        let passed = checks.iter().filter(|c| c.pass).count();
        let generated_at = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs().to_string())
            .unwrap_or_else(|_| "0".to_string());
        VerificationReport {
            suite: suite.into(),
            generated_at,
            config,
            checks,
            summary: Summary {
                total,
                passed,
                failed: total - passed,
            },
        }
    }

    /// Whether every check passed.
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}
