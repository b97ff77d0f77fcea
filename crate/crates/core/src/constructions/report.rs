use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A non-failing note, e.g. a strict fixed-point-freeness failure where
    /// only the top-rank condition is required.
    Observation,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// What the check is about, e.g. `"H#12"` or `"Q#0 H#12"`.
    pub subject: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup_class: Option<usize>,
    pub witness: Value,
    pub detail: String,
}

/// The outcome of one verification run: a claim, the group, and the list of
/// checks performed.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub group: String,
    pub parameters: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub conclusion: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn new(claim: impl Into<String>, group: impl Into<String>) -> Self {
        VerificationReport {
            claim: claim.into(),
            group: group.into(),
            parameters: BTreeMap::new(),
            checks: Vec::new(),
            conclusion: String::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn pass(&mut self, name: &str, subject: impl Into<String>, detail: impl Into<String>) {
        self.push(Check::pass(name, subject, detail));
    }

    pub fn fail(&mut self, name: &str, subject: impl Into<String>, witness: Value, detail: impl Into<String>) {
        self.push(Check::fail(name, subject, witness, detail));
    }

    pub fn observe(&mut self, name: &str, subject: impl Into<String>, witness: Value, detail: impl Into<String>) {
        self.push(Check::observation(name, subject, witness, detail));
    }

    /// True when no check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn checks_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Check> + 'a {
        self.checks.iter().filter(move |c| c.name == name)
    }
}

impl Check {
    pub fn pass(name: &str, subject: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            subject: subject.into(),
            status: Status::Pass,
            subgroup_class: None,
            witness: Value::Null,
            detail: detail.into(),
        }
    }

    /// A failing check; the witness must identify the offending data.
    pub fn fail(name: &str, subject: impl Into<String>, witness: Value, detail: impl Into<String>) -> Self {
        assert!(!witness.is_null(), "a failing check needs a witness");
        Check { name: name.into(), subject: subject.into(), status: Status::Fail, subgroup_class: None, witness, detail: detail.into() }
    }

    pub fn observation(name: &str, subject: impl Into<String>, witness: Value, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            subject: subject.into(),
            status: Status::Observation,
            subgroup_class: None,
            witness,
            detail: detail.into(),
        }
    }

    pub fn with_class(mut self, class_id: usize) -> Self {
        self.subgroup_class = Some(class_id);
        self
    }

    pub fn from_bool(ok: bool, name: &str, subject: impl Into<String>, witness: Value, detail: impl Into<String>) -> Self {
        if ok {
            Check::pass(name, subject, detail)
        } else {
            Check::fail(name, subject, witness, detail)
        }
    }
}
