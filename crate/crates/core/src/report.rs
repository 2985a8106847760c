use serde::Serialize;

/// Outcome of one named verification step; a failure carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            witness: Some(witness.into()),
        }
    }

    /// Passes when `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => CheckResult::pass(name),
            Some(w) => CheckResult::fail(name, w),
        }
    }
}

pub fn all_passed(checks: &[CheckResult]) -> bool {
    checks.iter().all(|c| c.passed)
}
