use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of one named comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skip => "skip",
        })
    }
}

/// A named check with its expected and observed values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub verdict: Verdict,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

impl Check {
    /// Exact comparison.
    pub fn exact<T: Serialize + PartialEq>(name: &str, expected: T, actual: T) -> Self {
        let verdict = if expected == actual {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Check {
            name: name.to_string(),
            expected: to_value(&expected),
            actual: to_value(&actual),
            verdict,
        }
    }

    /// Passes when `deviation <= tol`.
    pub fn within(name: &str, tol: f64, deviation: f64) -> Self {
        Check {
            name: name.to_string(),
            expected: to_value(&tol),
            actual: to_value(&deviation),
            verdict: if deviation <= tol {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
        }
    }

    pub fn holds(name: &str, ok: bool) -> Self {
        Self::exact(name, true, ok)
    }

    pub fn skipped(name: &str, reason: &str) -> Self {
        Check {
            name: name.to_string(),
            expected: Value::Null,
            actual: Value::String(reason.to_string()),
            verdict: Verdict::Skip,
        }
    }

    /// Demotes a failure to a skip (used for advisory runs at bad primes).
    pub fn advisory(mut self) -> Self {
        if self.verdict == Verdict::Fail {
            self.verdict = Verdict::Skip;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}
