use std::fmt;

use serde::Serialize;

/// One violated axiom instance together with the ids that witness it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Vec<usize>,
    pub detail: String,
}

/// Outcome of an exhaustive axiom scan. Empty means every axiom holds.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub(crate) fn push(&mut self, axiom: &'static str, witness: Vec<usize>, detail: String) {
        self.violations.push(Violation {
            axiom,
            witness,
            detail,
        });
    }

    pub(crate) fn extend_prefixed(&mut self, prefix: &str, other: ValidationReport) {
        for mut v in other.violations {
            v.detail = format!("{prefix}: {}", v.detail);
            self.violations.push(v);
        }
    }

    pub fn count(&self, axiom: &str) -> usize {
        self.violations.iter().filter(|v| v.axiom == axiom).count()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} {:?}: {}", v.axiom, v.witness, v.detail)?;
        }
        Ok(())
    }
}
