//! Report documents and their text / structured renderings.

use serde::Serialize;
use serde_json::Value;

use crate::{Format, RunConfig};

/// Identifier of the structured report schema (`schema/report.schema.json`).
pub const SCHEMA_ID: &str = "milnor-report/1";

/// A computed value compared against an expected one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub computed: String,
    pub expected: String,
    pub pass: bool,
}

impl Check {
    pub fn equal(name: impl Into<String>, computed: impl ToString, expected: impl ToString) -> Self {
        let computed = computed.to_string();
        let expected = expected.to_string();
        Check {
            name: name.into(),
            pass: computed == expected,
            computed,
            expected,
        }
    }

    pub fn with(name: impl Into<String>, computed: impl ToString, expected: impl ToString, pass: bool) -> Self {
        Check {
            name: name.into(),
            computed: computed.to_string(),
            expected: expected.to_string(),
            pass,
        }
    }

    pub fn line(&self) -> String {
        if self.pass {
            format!("{} = {} : PASS", self.name, self.computed)
        } else {
            format!("{} = {} (expected {}) : FAIL", self.name, self.computed, self.expected)
        }
    }
}

/// What a command produced: text lines, a structured result and checks.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub lines: Vec<String>,
    pub result: Value,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
struct Document<'a> {
    schema: &'static str,
    command: &'a str,
    config: &'a RunConfig,
    result: &'a Value,
    checks: &'a [Check],
    passed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            lines: Vec::new(),
            result: Value::Null,
            checks: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn render(&self, format: Format, config: &RunConfig) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                for l in self.lines.iter().cloned().chain(self.checks.iter().map(Check::line)) {
                    out.push_str(&l);
                    out.push('\n');
                }
                out
            }
            Format::Structured => {
                let doc = Document {
                    schema: SCHEMA_ID,
                    command: &self.command,
                    config,
                    result: &self.result,
                    checks: &self.checks,
                    passed: self.passed(),
                };
                let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}
