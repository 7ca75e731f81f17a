use std::collections::BTreeMap;
use std::fmt;

use crate::element::Element;

/// Outcome of a check: either clean, or the exact nonzero defect of every
/// violated equation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Verdict {
    pub defects: BTreeMap<String, Element>,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.defects.is_empty()
    }

    /// Records `defect` under `label` unless it is zero.
    pub fn check(&mut self, label: impl Into<String>, defect: Element) {
        if !defect.is_zero() {
            self.defects.insert(label.into(), defect);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// True if any defect label starts with `prefix`.
    pub fn fails(&self, prefix: &str) -> bool {
        self.defects.keys().any(|k| k.starts_with(prefix))
    }

    pub fn merge(&mut self, prefix: &str, other: Verdict) {
        for (k, v) in other.defects {
            self.defects.insert(format!("{prefix}{k}"), v);
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })?;
        for (label, d) in &self.defects {
            writeln!(f, "  {label}: {d}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
