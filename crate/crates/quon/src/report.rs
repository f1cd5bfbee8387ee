//! Verification suite reports.

use serde::{Deserialize, Serialize};

/// Outcome of one verification suite.
///
/// `max_residual` is the largest numeric residual for floating-point suites;
/// exact (integer/structural) suites store the number of mismatches, so `0.0`
/// always means a clean pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub grid: String,
    pub max_residual: f64,
    pub pass: bool,
}

impl VerifyReport {
    pub fn new(suite: impl Into<String>, grid: impl Into<String>) -> Self {
        VerifyReport {
            suite: suite.into(),
            grid: grid.into(),
            max_residual: 0.0,
            pass: true,
        }
    }

    /// Folds one observed residual into the report.
    pub fn record(&mut self, residual: f64, tolerance: f64) {
        if residual > self.max_residual {
            self.max_residual = residual;
        }
        if !(residual <= tolerance) {
            self.pass = false;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
