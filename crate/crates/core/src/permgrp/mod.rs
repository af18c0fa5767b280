//! Permutation groups of degree at most 30.
//!
//! Groups are held as a base and strong generating set built by
//! Schreier–Sims. Cycle-type sets are computed by streaming every product
//! of transversal elements, so memory stays linear in the degree.

mod bsgs;
mod builtin;
mod catalog;
mod names;
mod perm;

use thiserror::Error;

pub use bsgs::{GroupHandle, ENUMERATION_BUDGET};
pub use builtin::{builtin_group, parse_generator_data, GeneratorData, DATA_ENV};
pub use catalog::{
    contains_all_types, jones_candidates, named_cycle_type_set, triply_transitive_candidates,
    Candidates, Family,
};
pub use names::{prime_power, GroupName, Mathieu};
pub use perm::{CycleType, Permutation, MAX_DEGREE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree {0} exceeds the supported maximum of 30")]
    DegreeTooLarge(usize),
    #[error("image array is not a bijection")]
    NotABijection,
    #[error("cannot parse permutation data: {0}")]
    Parse(String),
    #[error("unknown group name: {0}")]
    UnknownName(String),
    #[error("generator data unavailable: {0}")]
    MissingDataFile(String),
    #[error("group of order {0} exceeds the enumeration budget")]
    BudgetExceeded(u128),
    #[error("a cycle fixing {k} points needs 0 <= k <= n-2 (n = {n})")]
    BadK { n: usize, k: usize },
}

pub fn cycle_type(g: &Permutation) -> CycleType {
    g.cycle_type()
}

/// Group generated by `generators`, all of degree `degree`.
pub fn group_generate(degree: usize, generators: Vec<Permutation>) -> Result<GroupHandle, PermError> {
    GroupHandle::new(degree, generators)
}

pub fn cycle_type_set(g: &GroupHandle) -> Result<std::collections::BTreeSet<CycleType>, PermError> {
    g.cycle_type_set()
}

pub fn transitivity_degree(g: &GroupHandle, max_k: usize) -> usize {
    g.transitivity_degree(max_k)
}

pub fn is_primitive(g: &GroupHandle) -> bool {
    g.is_primitive()
}
