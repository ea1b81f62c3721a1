//! Named assertion collection for structural certificates. A failed
//! assertion is a falsification witness for the corresponding statement on
//! the instance at hand, never silently repaired.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Checks {
    pub assertions: Vec<Assertion>,
}

impl Checks {
    pub fn record(&mut self, name: impl Into<String>, pass: bool, witness: impl FnOnce() -> String) {
        self.assertions.push(Assertion {
            name: name.into(),
            pass,
            witness: if pass { None } else { Some(witness()) },
        });
    }

    pub fn merge(&mut self, mut other: Checks) {
        self.assertions.append(&mut other.assertions);
    }

    /// Merge with a prefix on every assertion name (used for the inverted,
    /// S-side run of the Q machinery).
    pub fn merge_prefixed(&mut self, prefix: &str, other: Checks) {
        for mut a in other.assertions {
            a.name = format!("{prefix}{}", a.name);
            self.assertions.push(a);
        }
    }

    pub fn all_pass(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn failures(&self) -> Vec<&Assertion> {
        self.assertions.iter().filter(|a| !a.pass).collect()
    }
}
