//! Named pass/fail results shared by the verification suites.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub holds: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl fmt::Display, got: impl fmt::Display, holds: bool) -> Self {
        Check { name: name.into(), expected: expected.to_string(), got: got.to_string(), holds }
    }

    /// A check whose value is the comparison `expected == got`.
    pub fn eq<T: PartialEq + fmt::Display>(name: impl Into<String>, expected: &T, got: &T) -> Self {
        Check::new(name, expected, got, expected == got)
    }

    pub fn flag(name: impl Into<String>, holds: bool) -> Self {
        Check::new(name, true, holds, holds)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.holds { "ok" } else { "MISMATCH" };
        write!(f, "{tag:8} {}: expected {}, got {}", self.name, self.expected, self.got)
    }
}

pub fn all_hold(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.holds)
}
