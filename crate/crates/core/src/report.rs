use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Pass/fail certificate: `{pass, violations, metrics}`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub pass: bool,
    pub violations: Vec<String>,
    pub metrics: BTreeMap<String, Value>,
}

impl CertificateReport {
    pub fn new() -> Self {
        CertificateReport { pass: true, ..Default::default() }
    }

    pub fn violation(&mut self, msg: impl Into<String>) {
        self.pass = false;
        self.violations.push(msg.into());
    }

    pub fn metric(&mut self, key: &str, value: impl Into<Value>) {
        self.metrics.insert(key.to_string(), value.into());
    }

    /// Records a `measured <= bound` check as two metrics plus a violation on failure.
    pub fn bound(&mut self, name: &str, measured: f64, bound: f64) {
        self.metric(&format!("{name}_measured"), measured);
        self.metric(&format!("{name}_bound"), bound);
        if measured > bound {
            self.violation(format!("{name}: measured {measured} exceeds bound {bound}"));
        }
    }

    pub fn merge(&mut self, prefix: &str, other: CertificateReport) {
        for v in other.violations {
            self.violation(format!("{prefix}: {v}"));
        }
        for (k, v) in other.metrics {
            self.metrics.insert(format!("{prefix}.{k}"), v);
        }
    }
}
