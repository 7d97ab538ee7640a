use chrono::{SecondsFormat, Utc};
use serde::{Deserialize, Serialize};

use crate::geometry::Scale;

/// Version of the CSV and JSON layouts written by this crate.
pub const FORMAT_VERSION: &str = "1";

/// Reproducibility metadata written next to every output file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunLedger {
    pub format_version: String,
    pub command: String,
    pub dim: usize,
    pub target_records: u64,
    pub seed: u64,
    /// Maintainer name, or `"none"` for commands that do not simulate.
    pub variant: String,
    /// Coordinate scale of the emitted points, or `"none"`.
    pub scale: String,
    /// UTC, ISO-8601.
    pub timestamp: String,
    pub software_version: String,
}

impl RunLedger {
    pub fn new(command: &str, dim: usize, target_records: u64, seed: u64, variant: &str) -> Self {
        RunLedger {
            format_version: FORMAT_VERSION.to_string(),
            command: command.to_string(),
            dim,
            target_records,
            seed,
            variant: variant.to_string(),
            scale: "none".to_string(),
            timestamp: Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true),
            software_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn with_scale(mut self, scale: Scale) -> Self {
        self.scale = scale.as_str().to_string();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes")
    }
}
