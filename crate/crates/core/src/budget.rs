//! Work limits for the expensive builders.

use alloc::string::String;

use crate::error::{Error, Result};

/// Limits on dense matrix size, elimination work and exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Budget {
    /// Largest `rows · cols` of any matrix that may be materialized.
    pub max_matrix_entries: u128,
    /// Largest estimated `rows · cols · rank` for one elimination.
    pub max_elimination_work: u128,
    /// Largest number of evaluations in an exhaustive enumeration.
    pub max_exhaustive: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_matrix_entries: 1 << 26, max_elimination_work: 1 << 32, max_exhaustive: 10_000_000 }
    }
}

impl Budget {
    pub fn check_entries(&self, what: &str, rows: u128, cols: u128) -> Result<()> {
        let needed = rows.saturating_mul(cols);
        if needed > self.max_matrix_entries {
            return Err(Error::BudgetExceeded { what: String::from(what), needed, limit: self.max_matrix_entries });
        }
        Ok(())
    }

    pub fn check_elimination(&self, what: &str, rows: u128, cols: u128, rank_bound: u128) -> Result<()> {
        self.check_entries(what, rows, cols)?;
        let needed = rows.saturating_mul(cols).saturating_mul(rank_bound.min(rows).min(cols));
        if needed > self.max_elimination_work {
            return Err(Error::BudgetExceeded { what: String::from(what), needed, limit: self.max_elimination_work });
        }
        Ok(())
    }

    pub fn check_exhaustive(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.max_exhaustive {
            return Err(Error::BudgetExceeded { what: String::from(what), needed, limit: self.max_exhaustive });
        }
        Ok(())
    }
}
