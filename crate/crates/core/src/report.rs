//! Serializable verification reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cartan::CartanType;

/// Version of the JSON layout of [`Report`] and the atlas records.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub subject: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub subject: String,
    pub roots: Vec<String>,
    pub note: String,
}

/// Outcome of one verifier over one type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub check: String,
    pub subject_count: usize,
    pub counts: BTreeMap<String, usize>,
    pub mismatches: Vec<Mismatch>,
    pub witnesses: Vec<Witness>,
}

impl Report {
    pub fn new(cartan_type: CartanType, check: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            cartan_type,
            check: check.to_string(),
            subject_count: 0,
            counts: BTreeMap::new(),
            mismatches: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    /// Ensures `key` is present even when it stays zero.
    pub fn declare(&mut self, keys: &[&str]) {
        for k in keys {
            self.counts.entry(k.to_string()).or_insert(0);
        }
    }

    pub fn bump(&mut self, key: &str, by: usize) {
        *self.counts.entry(key.to_string()).or_insert(0) += by;
    }

    pub fn count(&self, key: &str) -> usize {
        self.counts.get(key).copied().unwrap_or(0)
    }

    pub fn mismatch(&mut self, subject: impl Into<String>, detail: impl Into<String>) {
        self.mismatches.push(Mismatch {
            subject: subject.into(),
            detail: detail.into(),
        });
    }

    pub fn witness(&mut self, subject: impl Into<String>, roots: Vec<String>, note: impl Into<String>) {
        self.witnesses.push(Witness {
            subject: subject.into(),
            roots,
            note: note.into(),
        });
    }

    /// Appends `other` (same type and check) after `self`.
    pub fn merge(&mut self, other: Report) {
        debug_assert_eq!(self.cartan_type, other.cartan_type);
        self.subject_count += other.subject_count;
        for (k, v) in other.counts {
            *self.counts.entry(k).or_insert(0) += v;
        }
        self.mismatches.extend(other.mismatches);
        self.witnesses.extend(other.witnesses);
    }

    pub fn is_success(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
