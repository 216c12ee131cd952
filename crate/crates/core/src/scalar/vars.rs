//! Global ordered table of named indeterminates.
//!
//! The position of a name in the table is its variable index; index 0 is the
//! most significant variable in the graded lexicographic order. The table is
//! append-only, so canonical forms built earlier stay canonical when new names
//! are declared later.

use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};

/// Names present in every process, in order.
const DEFAULT_NAMES: &[&str] = &[
    "q", "hbar", "h", "nu", "x", "y", "t", "mu1", "mu2", "mu3", "mu4", "mu5", "mu6", "c1", "c2",
    "c3", "c4", "c5", "c6", "m1", "m2", "m3", "m4", "m5", "m6",
];

fn table() -> &'static RwLock<Vec<String>> {
    static TABLE: OnceLock<RwLock<Vec<String>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(DEFAULT_NAMES.iter().map(|s| s.to_string()).collect()))
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Index of a declared indeterminate.
pub fn lookup(name: &str) -> Option<usize> {
    table().read().unwrap().iter().position(|n| n == name)
}

/// Declare `name` (idempotent) and return its index.
pub fn declare(name: &str) -> Result<usize> {
    if !is_identifier(name) {
        return Err(Error::InvalidIndeterminate(name.to_string()));
    }
    if let Some(i) = lookup(name) {
        return Ok(i);
    }
    let mut t = table().write().unwrap();
    if let Some(i) = t.iter().position(|n| n == name) {
        return Ok(i);
    }
    t.push(name.to_string());
    Ok(t.len() - 1)
}

pub fn name(index: usize) -> String {
    table().read().unwrap()[index].clone()
}

/// Index of `name`, panicking if it was never declared. Only used for the
/// built-in names.
pub(crate) fn builtin(name: &str) -> usize {
    lookup(name).unwrap_or_else(|| panic!("built-in indeterminate {name} missing"))
}
