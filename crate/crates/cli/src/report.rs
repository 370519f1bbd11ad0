//! Verification outcomes and their JSON form.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use grolab_core::json::{array, JsonObject};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub actual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// `|actual − expected| ≤ tolerance`.
    pub fn within(name: impl Into<String>, expected: f64, actual: f64, tolerance: f64) -> Self {
        let passed = (actual - expected).abs() <= tolerance;
        Self { name: name.into(), expected, actual, tolerance, passed }
    }

    /// `actual ≥ bound`.
    pub fn at_least(name: impl Into<String>, bound: f64, actual: f64) -> Self {
        Self { name: name.into(), expected: bound, actual, tolerance: 0.0, passed: actual >= bound }
    }

    /// `actual ≤ bound`.
    pub fn at_most(name: impl Into<String>, bound: f64, actual: f64) -> Self {
        Self { name: name.into(), expected: bound, actual, tolerance: 0.0, passed: actual <= bound }
    }

    /// A count of violations that must be zero.
    pub fn no_violations(name: impl Into<String>, violations: usize) -> Self {
        Self { name: name.into(), expected: 0.0, actual: violations as f64, tolerance: 0.0, passed: violations == 0 }
    }

    /// A computation that could not be carried out.
    pub fn error(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Self { name: format!("{}: error: {err}", name.into()), expected: f64::NAN, actual: f64::NAN, tolerance: f64::NAN, passed: false }
    }

    pub fn to_json(&self) -> String {
        let mut o = JsonObject::new();
        o.string("name", &self.name)
            .number("expected", self.expected)
            .number("actual", self.actual)
            .number("tolerance", self.tolerance)
            .boolean("passed", self.passed);
        o.finish()
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{} {}: actual {:e}, expected {:e}, tolerance {:e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.actual,
            self.expected,
            self.tolerance
        )
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationOutcome {
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl VerificationOutcome {
    pub fn new(checks: Vec<Check>) -> Self {
        let overall = checks.iter().all(|c| c.passed);
        Self { checks, overall }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut o = JsonObject::new();
        o.raw("checks", array(self.checks.iter().map(Check::to_json)))
            .boolean("overall", self.overall);
        o.finish()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).context("report is not valid JSON")?;
        let checks = v
            .get("checks")
            .and_then(Value::as_array)
            .ok_or_else(|| anyhow!("missing checks array"))?
            .iter()
            .map(parse_check)
            .collect::<Result<Vec<_>>>()?;
        let overall = v.get("overall").and_then(Value::as_bool).ok_or_else(|| anyhow!("missing overall flag"))?;
        Ok(Self { checks, overall })
    }
}

fn parse_check(v: &Value) -> Result<Check> {
    let num = |k: &str| -> Result<f64> {
        match v.get(k) {
            Some(Value::Null) => Ok(f64::NAN),
            Some(x) => x.as_f64().ok_or_else(|| anyhow!("{k} is not a number")),
            None => Err(anyhow!("missing {k}")),
        }
    };
    Ok(Check {
        name: v.get("name").and_then(Value::as_str).ok_or_else(|| anyhow!("missing name"))?.to_string(),
        expected: num("expected")?,
        actual: num("actual")?,
        tolerance: num("tolerance")?,
        passed: v.get("passed").and_then(Value::as_bool).ok_or_else(|| anyhow!("missing passed"))?,
    })
}

pub fn emit_report(outcome: &VerificationOutcome, path: &Path) -> Result<()> {
    fs::write(path, outcome.to_json() + "\n").with_context(|| format!("writing report to {}", path.display()))
}
