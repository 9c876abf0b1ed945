use std::fmt::Write as _;

use morita_core::Violation;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub location: String,
    pub detail: String,
}

/// A named value produced by a command, such as a trivializing cochain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    #[serde(default)]
    pub outcomes: Vec<Outcome>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), checks: Vec::new(), outcomes: Vec::new(), summary: Summary::default() }
    }

    pub fn pass(&mut self, name: impl Into<String>, location: impl Into<String>, detail: impl Into<String>) {
        self.push(Status::Pass, name.into(), location.into(), detail.into());
    }

    pub fn fail(&mut self, name: impl Into<String>, location: impl Into<String>, detail: impl Into<String>) {
        self.push(Status::Fail, name.into(), location.into(), detail.into());
    }

    fn push(&mut self, status: Status, name: String, location: String, detail: String) {
        match status {
            Status::Pass => self.summary.passed += 1,
            Status::Fail => self.summary.failed += 1,
        }
        self.checks.push(Check { name, status, location, detail });
    }

    /// One passing check named `name` if `findings` is empty, otherwise one
    /// failing check per finding.
    pub fn findings(&mut self, name: &str, prefix: &str, findings: &[Violation]) {
        if findings.is_empty() {
            self.pass(name, prefix, "");
        }
        for v in findings {
            let loc = if prefix.is_empty() { v.location.clone() } else { format!("{prefix}: {}", v.location) };
            self.fail(v.check.clone(), loc, v.detail.clone());
        }
    }

    pub fn outcome(&mut self, name: impl Into<String>, value: impl Into<String>) {
        self.outcomes.push(Outcome { name: name.into(), value: value.into() });
    }

    pub fn extend(&mut self, other: Report) {
        for c in other.checks {
            self.push(c.status, c.name, c.location, c.detail);
        }
        self.outcomes.extend(other.outcomes);
    }

    pub fn ok(&self) -> bool {
        self.summary.failed == 0
    }

    /// Recounts the summary from the checks.
    pub fn is_consistent(&self) -> bool {
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        self.summary.failed == failed && self.summary.passed + failed == self.checks.len()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self, color: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.command);
        for c in &self.checks {
            let tag = match (c.status, color) {
                (Status::Pass, false) => "PASS".to_string(),
                (Status::Fail, false) => "FAIL".to_string(),
                (Status::Pass, true) => "\x1b[32mPASS\x1b[0m".to_string(),
                (Status::Fail, true) => "\x1b[31mFAIL\x1b[0m".to_string(),
            };
            let _ = write!(s, "{tag} {}", c.name);
            if !c.location.is_empty() {
                let _ = write!(s, " [{}]", c.location);
            }
            if !c.detail.is_empty() {
                let _ = write!(s, " {}", c.detail);
            }
            s.push('\n');
        }
        for o in &self.outcomes {
            let _ = writeln!(s, "{} = {}", o.name, o.value);
        }
        let _ = writeln!(s, "passed {}, failed {}", self.summary.passed, self.summary.failed);
        s
    }
}
