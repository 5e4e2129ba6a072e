//! Verification reports: a flat list of identified checks with stable ids,
//! deterministic ordering and a JSON form that round-trips.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: CheckStatus,
    pub statement: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<CheckRecord>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport { checks: Vec::new() }
    }

    /// Records one check. Ids must be unique within a report.
    pub fn push(&mut self, id: &str, pass: bool, statement: &str) {
        self.push_with_witness(id, pass, statement, None);
    }

    pub fn push_with_witness(
        &mut self,
        id: &str,
        pass: bool,
        statement: &str,
        witness: Option<String>,
    ) {
        assert!(
            self.checks.iter().all(|c| c.id != id),
            "duplicate check id {id:?}"
        );
        self.checks.push(CheckRecord {
            id: id.to_owned(),
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            statement: statement.to_owned(),
            witness,
        });
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn merge(&mut self, other: CheckReport) {
        for c in other.checks {
            assert!(
                self.checks.iter().all(|e| e.id != c.id),
                "duplicate check id {:?}",
                c.id
            );
            self.checks.push(c);
        }
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl Default for CheckReport {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
            };
            write!(f, "{tag} {} — {}", c.id, c.statement)?;
            if let Some(w) = &c.witness {
                write!(f, " [{w}]")?;
            }
            writeln!(f)?;
        }
        let overall = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "overall: {overall} ({} checks)", self.checks.len())
    }
}
