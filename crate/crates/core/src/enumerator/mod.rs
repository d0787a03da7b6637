//! Todd–Coxeter coset enumeration.
//!
//! [`coset_enumerate`] turns a presentation and a list of subgroup
//! generators into the complete, standardized [`CosetTable`] of `H\G`.
//! Enumeration only terminates when the index is finite, so it runs
//! under an [`EnumerationLimits`] budget.

mod felsch;
mod table;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::words::{Presentation, Word};

pub(crate) use felsch::conjugates_by_column;
pub use table::{Coset, CosetTable, InvariantViolation, TableError};
pub(crate) use table::validate_action;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Maximum number of simultaneously live cosets.
    pub max_cosets: usize,
    /// Maximum number of coset definitions over the whole run.
    pub max_definitions: usize,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_cosets: 1_000_000, max_definitions: 10_000_000 }
    }
}

impl EnumerationLimits {
    pub fn new(max_cosets: usize, max_definitions: usize) -> Result<Self, EnumerationError> {
        if max_cosets == 0 || max_definitions == 0 {
            return Err(EnumerationError::InvalidLimits);
        }
        Ok(EnumerationLimits { max_cosets, max_definitions })
    }

    pub fn with_max_cosets(max_cosets: usize) -> Self {
        EnumerationLimits { max_cosets, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    MaxCosets(usize),
    MaxDefinitions(usize),
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::MaxCosets(n) => write!(f, "max_cosets = {n}"),
            Limit::MaxDefinitions(n) => write!(f, "max_definitions = {n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("index not shown finite within budget ({0})")]
    LimitExceeded(Limit),
    #[error("subgroup generator {0} uses a generator the presentation does not have")]
    ForeignSubgroupWord(usize),
    #[error("enumeration limits must be positive")]
    InvalidLimits,
}

/// Enumerates the cosets of `H = <subgroup_gens>` in the group presented by
/// `presentation`.
///
/// Deterministic: the same input always produces the same table.
pub fn coset_enumerate(
    presentation: &Arc<Presentation>,
    subgroup_gens: &[Word],
    limits: &EnumerationLimits,
) -> Result<CosetTable, EnumerationError> {
    if limits.max_cosets == 0 || limits.max_definitions == 0 {
        return Err(EnumerationError::InvalidLimits);
    }
    if let Some(i) = subgroup_gens.iter().position(|w| !presentation.contains_word(w)) {
        return Err(EnumerationError::ForeignSubgroupWord(i));
    }
    let (n, table) = felsch::Felsch::new(presentation, subgroup_gens, limits).run()?;
    Ok(CosetTable::from_raw(presentation.clone(), subgroup_gens.to_vec(), n, table))
}

/// `|G|`, as the index of the trivial subgroup.
pub fn group_order(presentation: &Arc<Presentation>, limits: &EnumerationLimits) -> Result<usize, EnumerationError> {
    coset_enumerate(presentation, &[], limits).map(|t| t.num_cosets())
}
