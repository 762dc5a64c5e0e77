use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One measured residual against its tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Raw measured quantity when the residual is derived from it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub runtime_ms: f64,
}

impl CheckResult {
    /// Runs `measure` and compares its result with `tolerance`.
    ///
    /// A measurement error yields a failed check with a NaN residual.
    pub fn measure<F>(name: &str, tolerance: f64, measure: F) -> Self
    where
        F: FnOnce() -> anyhow::Result<f64>,
    {
        let start = Instant::now();
        let outcome = measure();
        let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
        let (residual, error) = match outcome {
            Ok(r) => (r, None),
            Err(e) => (f64::NAN, Some(format!("{e:#}"))),
        };
        Self {
            name: name.to_string(),
            residual,
            tolerance,
            passed: residual < tolerance,
            value: None,
            error,
            runtime_ms,
        }
    }

    pub fn with_value(mut self, value: f64) -> Self {
        self.value = Some(value);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub command: String,
    pub inputs: Value,
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub outcome: Value,
    pub passed: bool,
    pub runtime_ms: f64,
}

impl VerificationReport {
    pub fn new(command: &str, inputs: Value, checks: Vec<CheckResult>, runtime_ms: f64) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self {
            command: command.to_string(),
            inputs,
            checks,
            outcome: Value::Null,
            passed,
            runtime_ms,
        }
    }

    pub fn with_outcome(mut self, outcome: Value) -> Self {
        self.outcome = outcome;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with every runtime field zeroed.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        r.runtime_ms = 0.0;
        for c in &mut r.checks {
            c.runtime_ms = 0.0;
        }
        r
    }

    pub fn summary_lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "[{}] {:<52} residual {:>10.3e}  tol {:.1e}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.residual,
                    c.tolerance
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_requires_every_residual_below_tolerance() {
        let ok = CheckResult::measure("a", 1.0, || Ok(0.5));
        let bad = CheckResult::measure("b", 1.0, || Ok(1.0));
        let err = CheckResult::measure("c", 1.0, || anyhow::bail!("boom"));
        assert!(ok.passed && !bad.passed && !err.passed);
        assert!(err.residual.is_nan());
        assert_eq!(err.error.as_deref(), Some("boom"));
        let r = VerificationReport::new("x", Value::Null, vec![ok.clone()], 0.0);
        assert!(r.passed);
        let r = VerificationReport::new("x", Value::Null, vec![ok, bad], 0.0);
        assert!(!r.passed);
        // NaN residuals serialize as null
        assert!(r.to_json().contains("\"passed\": false"));
    }
}
