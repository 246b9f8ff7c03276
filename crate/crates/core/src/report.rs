//! Quality reports emitted by the verifier.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Absolute tolerance on normalized violations.
pub const TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Vertex set of a violating cut.
    Set(Vec<usize>),
    /// Violating direction or eigenvector.
    Vector(Vec<f64>),
}

/// Outcome of one certificate. `worst_violation` is measured against the
/// stated bound, so the check passes iff it is at most [`TOLERANCE`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityReport {
    pub guarantee: String,
    pub epsilon: Option<f64>,
    pub scale: Option<f64>,
    pub worst_violation: f64,
    pub witness: Option<Witness>,
    pub eigenvalues: BTreeMap<String, f64>,
    pub measured: BTreeMap<String, f64>,
    pub pass: bool,
    pub seeds: Vec<u64>,
    pub config: Value,
}

impl QualityReport {
    pub fn new(guarantee: &str) -> Self {
        Self {
            guarantee: guarantee.to_string(),
            epsilon: None,
            scale: None,
            worst_violation: f64::NEG_INFINITY,
            witness: None,
            eigenvalues: BTreeMap::new(),
            measured: BTreeMap::new(),
            pass: true,
            seeds: Vec::new(),
            config: Value::Null,
        }
    }

    /// Records a violation value, keeping the witness of the worst one.
    pub fn observe(&mut self, violation: f64, witness: impl FnOnce() -> Witness) {
        if violation > self.worst_violation {
            self.worst_violation = violation;
            self.witness = Some(witness());
        }
    }

    /// Sets `pass` from the worst violation and any extra condition.
    pub fn finish(mut self, extra: bool) -> Self {
        self.pass = extra && !(self.worst_violation > TOLERANCE) && !self.worst_violation.is_nan();
        self
    }

    pub fn measure(&mut self, key: &str, value: f64) {
        self.measured.insert(key.to_string(), value);
    }

    /// JSON with keys in sorted order and non-finite numbers as `null`.
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report fields are serializable")
    }

    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }
}

/// Combined pass flag of several reports.
pub fn all_pass(reports: &[QualityReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted_and_stable() {
        let mut r = QualityReport::new("cut");
        r.measure("zeta", 1.0);
        r.measure("alpha", 2.0);
        r.observe(0.0, || Witness::Set(vec![1]));
        let r = r.finish(true);
        let s = r.to_canonical_string();
        assert_eq!(s, r.clone().to_canonical_string());
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
        assert!(s.find("\"epsilon\"").unwrap() < s.find("\"guarantee\"").unwrap());
        assert!(r.pass);
    }

    #[test]
    fn violation_above_tolerance_fails() {
        let mut r = QualityReport::new("x");
        r.observe(1e-7, || Witness::Vector(vec![1.0]));
        assert!(!r.finish(true).pass);
        let mut r = QualityReport::new("x");
        r.observe(1e-9, || Witness::Vector(vec![1.0]));
        assert!(r.finish(true).pass);
    }
}
