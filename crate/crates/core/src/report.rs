use std::fmt;

/// One failed check, with a human readable location.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub check: String,
    pub location: String,
    pub detail: String,
}

impl Violation {
    pub fn new(check: impl Into<String>, location: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation { check: check.into(), location: location.into(), detail: detail.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.check, self.location, self.detail)
    }
}

/// Violations found by a validator; empty means the data passed.
pub type Findings = Vec<Violation>;
