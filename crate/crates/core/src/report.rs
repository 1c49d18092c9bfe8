//! Pass/fail records for identity checks.

use serde_json::{json, Value};

use crate::glmn::Violation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub identity: String,
    pub passed: bool,
    pub witness: String,
}

impl Check {
    pub fn pass(identity: impl Into<String>) -> Self {
        Self { identity: identity.into(), passed: true, witness: String::new() }
    }

    pub fn fail(identity: impl Into<String>, witness: impl Into<String>) -> Self {
        Self { identity: identity.into(), passed: false, witness: witness.into() }
    }

    pub fn from_bool(identity: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        if ok {
            Self::pass(identity)
        } else {
            Self::fail(identity, witness)
        }
    }

    /// One check summarizing a family of identities.
    pub fn from_violations(identity: impl Into<String>, v: &[Violation]) -> Self {
        match v.first() {
            None => Self::pass(identity),
            Some(first) => Self::fail(identity, format!("{} failing; first {}: {}", v.len(), first.identity, first.witness)),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity,
            "status": if self.passed { "pass" } else { "fail" },
            "witness": if self.passed { Value::Null } else { Value::String(self.witness.clone()) },
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.checks.iter().map(Check::to_json).collect())
    }
}
