//! Pass/fail reports with basis-level witnesses.

use std::fmt;

use crate::error::Result;
use crate::graded::{Difference, GradedMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// The first source basis element on which two composites disagree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub degree: i64,
    /// Position of the basis element inside its degree.
    pub position: usize,
    /// `(degree, index)` of every tensor factor of the basis element.
    pub factors: Vec<(i64, usize)>,
    pub basis: String,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn from_difference(lhs_map: &GradedMap, d: &Difference) -> Self {
        let field = lhs_map.field();
        let source = lhs_map.source();
        let target = lhs_map.target();
        let elem = &source.basis(d.degree)[d.column];
        let out = d.degree + lhs_map.degree();
        Witness {
            degree: d.degree,
            position: d.column,
            factors: elem.atoms().iter().map(|a| (a.degree, a.index)).collect(),
            basis: elem.label(),
            lhs: target.render_vector(field, out, &d.lhs),
            rhs: target.render_vector(field, out, &d.rhs),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramEntry {
    pub label: String,
    pub status: Status,
    pub witness: Option<Witness>,
    /// Number of source basis elements on which the two sides disagree.
    pub failures: usize,
    /// Set when this entry is literally the same equation as another check.
    pub duplicate_of: Option<String>,
}

impl DiagramEntry {
    pub fn pass(label: impl Into<String>) -> Self {
        DiagramEntry {
            label: label.into(),
            status: Status::Pass,
            witness: None,
            failures: 0,
            duplicate_of: None,
        }
    }

    pub fn fail(label: impl Into<String>, witness: Witness, failures: usize) -> Self {
        DiagramEntry {
            label: label.into(),
            status: Status::Fail,
            witness: Some(witness),
            failures,
            duplicate_of: None,
        }
    }

    /// Exact equality check of two parallel composites `lhs = rhs`.
    pub fn compare(label: impl Into<String>, lhs: &GradedMap, rhs: &GradedMap) -> Result<Self> {
        let diffs = lhs.differences(rhs)?;
        Ok(match diffs.first() {
            None => Self::pass(label),
            Some(d) => Self::fail(label, Witness::from_difference(lhs, d), diffs.len()),
        })
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn duplicate_of(mut self, other: impl Into<String>) -> Self {
        self.duplicate_of = Some(other.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DiagramReport {
    pub entries: Vec<DiagramEntry>,
}

impl DiagramReport {
    pub fn new(entries: Vec<DiagramEntry>) -> Self {
        DiagramReport { entries }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(DiagramEntry::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &DiagramEntry> {
        self.entries.iter().filter(|e| !e.passed())
    }

    pub fn get(&self, label: &str) -> Option<&DiagramEntry> {
        self.entries.iter().find(|e| e.label == label)
    }

    pub fn extend(&mut self, other: DiagramReport) {
        self.entries.extend(other.entries);
    }
}

impl fmt::Display for DiagramReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            write!(f, "{:<12} {}", e.label, e.status.as_str())?;
            if let Some(d) = &e.duplicate_of {
                write!(f, " (same equation as {d})")?;
            }
            if let Some(w) = &e.witness {
                write!(
                    f,
                    " at degree {} basis {}: {} != {} ({} failing)",
                    w.degree, w.basis, w.lhs, w.rhs, e.failures
                )?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
