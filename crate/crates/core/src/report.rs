use serde::Serialize;

/// Outcome of checking one property over many instances.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PropertyCheck {
    pub passed: bool,
    /// Number of instances examined.
    pub checked: usize,
    /// First failing instance; empty on pass.
    pub counterexample: String,
}

impl PropertyCheck {
    pub fn new() -> Self {
        PropertyCheck {
            passed: true,
            checked: 0,
            counterexample: String::new(),
        }
    }

    /// A check that could not run.
    pub fn skipped(reason: impl Into<String>) -> Self {
        PropertyCheck {
            passed: false,
            checked: 0,
            counterexample: reason.into(),
        }
    }

    /// Counts one instance; keeps the first witness on failure.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.passed {
            self.passed = false;
            self.counterexample = witness();
        }
    }
}

impl Default for PropertyCheck {
    fn default() -> Self {
        Self::new()
    }
}
