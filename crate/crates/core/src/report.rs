//! Itemized pass/fail results shared by all validators.

use crate::linalg::Mat;
use crate::Scalar;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Set on failure: the basis tuple or vector where the identity breaks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check; `failure` is the witness when it failed.
    pub fn record(&mut self, name: impl Into<String>, failure: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass: failure.is_none(),
            witness: failure,
        });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.record(name, None);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: impl Into<String>) {
        self.record(name, Some(witness.into()));
    }

    pub fn expect(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        self.record(name, (!ok).then(witness));
    }

    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// First differing entry of two equally sized matrices.
pub(crate) fn first_diff<F: Scalar>(a: &Mat<F>, b: &Mat<F>) -> Option<String> {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a.get(i, j) != b.get(i, j) {
                return Some(format!("entry ({i}, {j}): {} != {}", a.get(i, j), b.get(i, j)));
            }
        }
    }
    None
}
