use alloc::vec::Vec;

use crate::finite::{PointSet, Relation};

/// The object a failed axiom points at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A listed entourage, by position in the basis.
    Entourage { index: usize, relation: Relation },
    /// A listed cover, by position in the cover basis.
    Cover { index: usize },
    /// A single subset of the carrier (e.g. a missing open set).
    Set(PointSet),
    /// Two subsets whose union or intersection is missing.
    Pair { left: PointSet, right: PointSet },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: Witness,
}

/// Outcome of an axiom check. Valid exactly when no violation was recorded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, axiom: &'static str, witness: Witness) {
        self.violations.push(Violation { axiom, witness });
    }
}
