//! Deterministic run reports.
//!
//! A report captures everything a run saw and produced: the argument
//! vector, every input file (digest plus full text, so the report is
//! self-contained), the result payload, the engine's per-subset
//! statuses, the budgets, and the exit classification. Fixed inputs and
//! budgets give byte-identical reports.

use std::collections::BTreeMap;

use proximal::complexity::QueryStatus;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One input file as the run saw it. The text is embedded so a report
/// can be re-checked without the original file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputRecord {
    pub role: String,
    pub path: String,
    pub sha256: String,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetRecord {
    pub max_states: u64,
    pub max_layers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// Argument vector after the binary name.
    pub command: Vec<String>,
    pub inputs: Vec<InputRecord>,
    pub result: Value,
    pub statuses: Vec<QueryStatus>,
    pub budgets: BudgetRecord,
    pub version: String,
    /// 0 computed, 1 negative verdict, 3 budget-exhausted unknown.
    pub exit: i32,
}

pub fn sha256_hex(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Inputs keyed by role, for replaying a report without its files.
    pub fn input_texts(&self) -> BTreeMap<String, String> {
        self.inputs
            .iter()
            .map(|rec| (rec.role.clone(), rec.text.clone()))
            .collect()
    }

    /// Digest bookkeeping: every embedded text must match its recorded
    /// digest, otherwise the report was edited after the run.
    pub fn digests_consistent(&self) -> bool {
        self.inputs.iter().all(|rec| sha256_hex(&rec.text) == rec.sha256)
    }
}
