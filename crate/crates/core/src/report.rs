//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One verified statement. `form` is `"printed"` or `"alternate:<label>"` for
/// catalog relations that carry a corrected reading.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub form: Option<String>,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, form: None, detail: String::new(), witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            form: None,
            detail: String::new(),
            witness: Some(witness.into()),
        }
    }

    pub fn skip(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Skip, form: None, detail: detail.into(), witness: None }
    }

    /// Pass iff `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    pub fn with_form(mut self, form: impl Into<String>) -> Self {
        self.form = Some(form.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub params: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), params: BTreeMap::new(), checks: Vec::new() }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }

    /// Sorted `(check name, form)` pairs for checks that held only in an alternate reading.
    pub fn alternates_used(&self) -> Vec<(String, String)> {
        let mut out: Vec<_> = self
            .checks
            .iter()
            .filter_map(|c| match &c.form {
                Some(f) if f.starts_with("alternate") && c.status == Status::Pass => Some((c.name.clone(), f.clone())),
                _ => None,
            })
            .collect();
        out.sort();
        out
    }

    /// Canonical JSON: sorted keys, versioned.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(map) = &mut v {
            map.insert("schema".into(), Value::from(1));
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(f, "suite {} [{}]", self.suite, params.join(", "))?;
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            write!(f, "  {tag} {}", c.name)?;
            if let Some(form) = &c.form {
                write!(f, " ({form})")?;
            }
            if !c.detail.is_empty() {
                write!(f, " - {}", c.detail)?;
            }
            if let Some(w) = &c.witness {
                write!(f, " witness: {w}")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().len();
        write!(f, "  {} checks, {} failed", self.checks.len(), failed)
    }
}
