use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Named pass/fail checks. `passed` holds iff every check passed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport { passed: true, checks: Vec::new() }
    }

    pub fn pass(&mut self, name: &str) {
        self.push(name, None);
    }

    pub fn fail(&mut self, name: &str, witness: impl Into<String>) {
        self.push(name, Some(witness.into()));
    }

    /// Records `name` as passing when `witness` is `None`.
    pub fn push(&mut self, name: &str, witness: Option<String>) {
        let status = if witness.is_none() { Status::Pass } else { Status::Fail };
        self.passed &= status == Status::Pass;
        self.checks.push(Check { name: name.to_string(), status, witness });
    }

    pub fn check(&mut self, name: &str, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, witness());
        }
    }

    /// Appends every check of `other`, prefixing names with `prefix.` when non-empty.
    pub fn merge(&mut self, prefix: &str, other: CheckReport) {
        for c in other.checks {
            let name = if prefix.is_empty() { c.name } else { format!("{prefix}.{}", c.name) };
            self.push(&name, c.witness);
        }
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => format!("{} checks passed", self.checks.len()),
            Some(c) => format!(
                "{} failed (witness: {})",
                c.name,
                c.witness.as_deref().unwrap_or("-")
            ),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            match &c.witness {
                Some(w) => writeln!(f, "{tag} {} (witness: {w})", c.name)?,
                None => writeln!(f, "{tag} {}", c.name)?,
            }
        }
        write!(f, "{}", if self.passed { "PASSED" } else { "FAILED" })
    }
}
