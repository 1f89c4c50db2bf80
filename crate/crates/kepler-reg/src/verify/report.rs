//! Check records and suite reports.

use std::time::Duration;

use serde::Serialize;

/// How a residual is compared with its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Bound {
    /// Passes when `residual ≤ tol`.
    #[default]
    AtMost,
    /// Passes when `residual ≥ tol` (negative controls and rates).
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    /// The identity being checked.
    pub anchor: String,
    /// Worst residual over the samples; `null` in JSON if the check failed
    /// to evaluate.
    pub residual: f64,
    pub tol: f64,
    #[serde(skip)]
    pub bound: Bound,
    #[serde(skip)]
    pub samples: usize,
    /// Error that stopped the check, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(name: &str, anchor: &str, residual: f64, tol: f64, bound: Bound, samples: usize) -> Self {
        let pass = match bound {
            Bound::AtMost => residual <= tol,
            Bound::AtLeast => residual >= tol,
        };
        Self {
            name: name.to_string(),
            anchor: anchor.to_string(),
            residual,
            tol,
            bound,
            samples,
            error: None,
            pass,
        }
    }

    pub fn failed(name: &str, anchor: &str, tol: f64, bound: Bound, samples: usize, error: String) -> Self {
        Self {
            error: Some(error),
            ..Self::new(name, anchor, f64::NAN, tol, bound, samples)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
    #[serde(skip)]
    pub samples: usize,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn new(suite: &str, seed: u64, samples: usize, checks: Vec<CheckRecord>, wall_time: Duration) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            suite: suite.to_string(),
            seed,
            checks,
            pass,
            samples,
            wall_time,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only plain data")
    }
}
