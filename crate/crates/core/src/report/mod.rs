//! Run reports and the acceptance suite shared by the command line tool and
//! the `acceptance` test target.

mod acceptance;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::catalog::{CheckReport, NumericVerdict};
use crate::numeric::PrecisionPolicy;
use crate::symbol::Verdict;

pub use acceptance::{criteria, run_criterion, Criterion, CriterionResult};

/// Version tag of the JSON layout below. Bump on incompatible changes.
pub const SCHEMA: &str = "polylog-run-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolicyRecord {
    pub digits: u32,
    pub guard: u32,
    pub slack: u32,
}

impl From<&PrecisionPolicy> for PolicyRecord {
    fn from(p: &PrecisionPolicy) -> Self {
        PolicyRecord { digits: p.digits, guard: p.guard, slack: p.slack }
    }
}

impl PolicyRecord {
    pub fn policy(&self) -> crate::Result<PrecisionPolicy> {
        PrecisionPolicy::with(self.digits, self.guard, self.slack)
    }
}

/// Outcome of one named check inside a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckVerdict {
    pub name: String,
    pub passed: bool,
    pub details: Value,
}

impl CheckVerdict {
    pub fn new(name: &str, passed: bool, details: Value) -> Self {
        CheckVerdict { name: name.to_string(), passed, details }
    }

    pub fn from_kernel(name: &str, v: &Verdict) -> Self {
        Self::new(name, v.passed, v.to_json())
    }

    pub fn from_numeric(name: &str, v: &NumericVerdict) -> Self {
        Self::new(name, v.passed, serde_json::to_value(v).expect("verdict serializes"))
    }

    pub fn from_check(r: &CheckReport) -> Self {
        Self::new(&r.name, r.passed, r.to_json())
    }
}

/// Everything needed to rerun a command and compare verdicts. `timings` is
/// the only field that changes between identical invocations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub version: String,
    pub command: Vec<String>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<PolicyRecord>,
    pub passed: bool,
    pub verdicts: Vec<CheckVerdict>,
    /// Wall-clock seconds per verdict name.
    pub timings: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: u64, policy: Option<&PrecisionPolicy>) -> Self {
        RunReport {
            schema: SCHEMA.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            seed,
            policy: policy.map(PolicyRecord::from),
            passed: true,
            verdicts: Vec::new(),
            timings: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, v: CheckVerdict, seconds: f64) {
        self.passed &= v.passed;
        self.timings.insert(v.name.clone(), seconds);
        self.verdicts.push(v);
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn from_json(v: &Value) -> crate::Result<Self> {
        let r: RunReport = serde_json::from_value(v.clone())?;
        if r.schema != SCHEMA {
            return Err(crate::Error::Domain(format!("unsupported report schema {}", r.schema)));
        }
        Ok(r)
    }

    /// One line per verdict.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            let secs = self.timings.get(&v.name).copied().unwrap_or(0.0);
            out.push_str(&format!("{} {} ({secs:.2}s)\n", if v.passed { "PASS" } else { "FAIL" }, v.name));
        }
        out.push_str(if self.passed { "all checks passed\n" } else { "some checks failed\n" });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = RunReport::new(vec!["verify".into(), "--seed".into(), "3".into()], 3, Some(&PrecisionPolicy::new(50).unwrap()));
        r.push(CheckVerdict::new("a", true, serde_json::json!({"k": 1})), 0.5);
        r.push(CheckVerdict::new("b", false, Value::Null), 0.1);
        assert!(!r.passed);
        let back = RunReport::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.policy.unwrap().policy().unwrap(), PrecisionPolicy::new(50).unwrap());
        let mut bad = r.to_json();
        bad["schema"] = "other".into();
        assert!(RunReport::from_json(&bad).is_err());
    }
}
