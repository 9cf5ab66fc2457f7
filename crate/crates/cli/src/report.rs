//! Machine-parseable verification reports: a command echo, structured
//! results and one pass/fail line per assertion. Deterministic for a fixed
//! input.

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub results: Value,
    pub checks: Vec<Check>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report { command: command.into(), results: Value::Null, checks: vec![], pass: true }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.pass &= pass;
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn set_results(&mut self, v: Value) {
        self.results = v;
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("report serializes");
        }
        let mut out = String::new();
        out.push_str(&format!("== {}\n", self.command));
        if self.results != Value::Null {
            out.push_str(&format!(
                "{}\n",
                serde_json::to_string_pretty(&self.results).expect("results serialize")
            ));
        }
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {}: {}\n",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                c.detail
            ));
        }
        out.push_str(&format!(
            "overall: {} ({} checks)\n",
            if self.pass { "pass" } else { "FAIL" },
            self.checks.len()
        ));
        out
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass { 0 } else { 1 }
    }
}
