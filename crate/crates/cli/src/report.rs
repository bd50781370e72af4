use std::fmt::Display;

use mac_core::ViolationReport;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Single JSON document emitted by `--json`.
///
/// Schema (stable):
/// `command`: argv after the program name;
/// `input_digest`: sha256 over the input files in the order given, or null;
/// `outcome`: object with a `verdict` string and command-specific fields;
/// `stats`: `max_color`, `resamples`, `nodes_explored` (null when not
/// applicable) and `wall_ms`;
/// `violations`: `[{vertex, sum, witnesses}]` with sums as decimal strings.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input_digest: Option<String>,
    pub outcome: Value,
    pub stats: Stats,
    pub violations: Vec<ViolationEntry>,
}

#[derive(Debug, Default, Serialize)]
pub struct Stats {
    pub max_color: Option<String>,
    pub resamples: Option<u64>,
    pub nodes_explored: Option<u64>,
    pub wall_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct ViolationEntry {
    pub vertex: usize,
    pub sum: String,
    pub witnesses: Vec<usize>,
}

pub fn violation_entries<S: Display>(report: &ViolationReport<S>) -> Vec<ViolationEntry> {
    report
        .violations
        .iter()
        .map(|v| ViolationEntry {
            vertex: v.vertex,
            sum: v.sum.to_string(),
            witnesses: v.witnesses.clone(),
        })
        .collect()
}

#[derive(Default)]
pub struct Digest256 {
    hasher: Option<Sha256>,
}

impl Digest256 {
    pub fn update(&mut self, bytes: &[u8]) {
        self.hasher.get_or_insert_with(Sha256::new).update(bytes);
    }

    pub fn finish(self) -> Option<String> {
        self.hasher.map(|h| hex::encode(h.finalize()))
    }
}
