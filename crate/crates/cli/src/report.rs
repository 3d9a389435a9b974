//! Reports: byte-stable JSON for a fixed config and seed, plus a short text
//! summary.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::config::{Case, JobConfig};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: String,
    #[serde(skip_serializing_if = "is_empty_case")]
    pub case: Case,
    pub detail: String,
}

fn is_empty_case(c: &Case) -> bool {
    *c == Case::default()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    pub oracle: String,
    pub compared: usize,
    pub agreed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub backend: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub inputs: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    pub warnings: Vec<String>,
    /// a minimal config reproducing the first witness
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproduce: Option<JobConfig>,
}

impl Report {
    pub fn new(command: &str, backend: String, seed: Option<u64>) -> Report {
        Report {
            command: command.to_string(),
            backend,
            seed,
            inputs: BTreeMap::new(),
            results: BTreeMap::new(),
            checks: Vec::new(),
            passed: true,
            witnesses: Vec::new(),
            oracle: None,
            warnings: Vec::new(),
            reproduce: None,
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) {
        self.inputs.insert(key.to_string(), v.into());
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.to_string(), v.into());
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(Check { name: name.to_string(), passed, detail: detail.into() });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{verdict} {} on {}\n", self.command, self.backend));
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            if c.detail.is_empty() {
                out.push_str(&format!("  {mark} {}\n", c.name));
            } else {
                out.push_str(&format!("  {mark} {}: {}\n", c.name, c.detail));
            }
        }
        for w in &self.witnesses {
            out.push_str(&format!("  witness [{}] {}\n", w.check, w.detail));
        }
        for w in &self.warnings {
            out.push_str(&format!("  warning: {w}\n"));
        }
        out
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}
