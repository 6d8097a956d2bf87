use std::fmt;

use serde::Serialize;

/// One failed instance of an axiom.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub detail: String,
}

/// Outcome of a validation pass. Empty means every checked instance held.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, axiom: &str, detail: impl Into<String>) {
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            detail: detail.into(),
        });
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Sorts violations so reports do not depend on evaluation order.
    pub fn finish(mut self) -> Self {
        self.violations.sort();
        self.violations.dedup();
        self
    }

    pub fn count(&self, axiom: &str) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        writeln!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {}: {}", v.axiom, v.detail)?;
        }
        Ok(())
    }
}
