//! Named numeric checks shared by the verifiers and reports.

use alloc::string::String;
use core::fmt;

/// How the two sides of a [`Check`] are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Relation {
    #[cfg_attr(feature = "serde", serde(rename = "=="))]
    Eq,
    #[cfg_attr(feature = "serde", serde(rename = "<="))]
    Le,
    #[cfg_attr(feature = "serde", serde(rename = "<"))]
    Lt,
}

impl Relation {
    pub fn holds(self, lhs: u128, rhs: u128) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "==",
            Relation::Le => "<=",
            Relation::Lt => "<",
        }
    }
}

/// `lhs relation rhs`, evaluated once at construction.
///
/// Property sweeps report the number of violations as `lhs` against `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Check {
    pub name: String,
    pub relation: Relation,
    pub lhs: u128,
    pub rhs: u128,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, lhs: u128, relation: Relation, rhs: u128) -> Self {
        Check { name: name.into(), relation, lhs, rhs, pass: relation.holds(lhs, rhs) }
    }

    /// A sweep that found `violations` failures.
    pub fn violations(name: impl Into<String>, violations: u128) -> Self {
        Check::new(name, violations, Relation::Eq, 0)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {} {} {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.lhs,
            self.relation.symbol(),
            self.rhs
        )
    }
}
