use std::collections::BTreeMap;
use std::fmt::Write as _;

use regnilp_core::{Check, Verdict};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
}

impl CaseReport {
    pub fn new(parameters: BTreeMap<String, Value>) -> Self {
        CaseReport {
            parameters,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseReport>,
    pub summary: Summary,
    pub wall_time: f64,
}

impl SuiteReport {
    pub fn new(suite: &str, cases: Vec<CaseReport>, wall_time: f64) -> Self {
        let mut summary = Summary::default();
        for c in cases.iter().flat_map(|c| &c.checks) {
            match c.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Skip => summary.skip += 1,
            }
        }
        SuiteReport {
            suite: suite.to_string(),
            cases,
            summary,
            wall_time,
        }
    }

    /// 0 when nothing failed (and, under `strict`, nothing was skipped).
    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.summary.fail > 0 || (strict && self.summary.skip > 0) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for case in &self.cases {
            let params: Vec<String> = case
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={}", plain(v)))
                .collect();
            let _ = writeln!(out, "[{}] {}", self.suite, params.join(" "));
            for c in &case.checks {
                let _ = match c.verdict {
                    Verdict::Skip => writeln!(out, "  skip  {}: {}", c.name, plain(&c.actual)),
                    v => writeln!(
                        out,
                        "  {v:<4}  {}: expected {}, got {}",
                        c.name,
                        plain(&c.expected),
                        plain(&c.actual)
                    ),
                };
            }
        }
        let _ = writeln!(
            out,
            "{}: {} passed, {} failed, {} skipped ({:.3} s)",
            self.suite, self.summary.pass, self.summary.fail, self.summary.skip, self.wall_time
        );
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
