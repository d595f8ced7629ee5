//! Pass/fail records for identity checks.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// A list of named checks, all certified modulo total degree `> degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub degree: u32,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(degree: u32) -> Self {
        Report {
            degree,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: None,
        });
    }

    pub fn push_detail(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: Some(detail.into()),
        });
    }

    /// Records an equality, noting the lowest degree where it breaks.
    /// Differences above the certified degree are ignored.
    pub fn push_mismatch(&mut self, name: impl Into<String>, first_difference: Option<u32>) {
        match first_difference.filter(|&d| d <= self.degree) {
            None => self.push(name, true),
            Some(d) => self.push_detail(name, false, format!("first mismatch at degree {d}")),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }
}
