//! Structured pass/fail reporting shared by validation, lemma checks,
//! and the end-to-end diagram verification.

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CheckItem {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<CheckItem>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(CheckItem { name: name.into(), index: None, pass, witness: None });
    }

    pub fn push_at(&mut self, name: impl Into<String>, index: usize, pass: bool) {
        self.checks.push(CheckItem { name: name.into(), index: Some(index), pass, witness: None });
    }

    pub fn push_witness(&mut self, name: impl Into<String>, pass: bool, witness: impl Into<String>) {
        self.checks.push(CheckItem {
            name: name.into(),
            index: None,
            pass,
            witness: Some(witness.into()),
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    /// Prefix every check name, for nesting sub-reports.
    pub fn merge_under(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}.{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.checks.iter().find(|c| !c.pass)
    }
}
