use serde::{Deserialize, Serialize};

/// One named comparison. `left` and `right` are the two sides in rendered normal
/// form, so a failing entry shows what differs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<usize>,
    pub passed: bool,
    pub left: String,
    pub right: String,
}

impl Check {
    /// Passes iff the rendered sides agree.
    pub fn equal(
        name: impl Into<String>,
        degree: Option<usize>,
        left: impl ToString,
        right: impl ToString,
    ) -> Check {
        let (left, right) = (left.to_string(), right.to_string());
        Check {
            name: name.into(),
            degree,
            passed: left == right,
            left,
            right,
        }
    }

    pub fn with(
        name: impl Into<String>,
        degree: Option<usize>,
        passed: bool,
        left: impl ToString,
        right: impl ToString,
    ) -> Check {
        Check {
            name: name.into(),
            degree,
            passed,
            left: left.to_string(),
            right: right.to_string(),
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}
