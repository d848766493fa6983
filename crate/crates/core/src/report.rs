use std::fmt;

use serde::{Deserialize, Serialize};

/// One verified inequality: `achieved <= bound`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub bound: f64,
    pub achieved: f64,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, achieved: f64, bound: f64) -> Self {
        Check {
            name: name.into(),
            bound,
            achieved,
            passed: achieved <= bound,
        }
    }

    /// A check whose outcome was decided exactly elsewhere.
    pub fn decided(name: impl Into<String>, achieved: f64, bound: f64, passed: bool) -> Self {
        Check {
            name: name.into(),
            bound,
            achieved,
            passed,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: achieved {} (bound {})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.achieved,
            self.bound
        )
    }
}
