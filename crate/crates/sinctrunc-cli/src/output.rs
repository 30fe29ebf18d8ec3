//! Output envelope and the JSON/CSV encoders.
//!
//! Every subcommand emits the same envelope: the echoed command line, the
//! effective configuration, the seed, crate versions and the results
//! payload. JSON is the envelope verbatim; CSV carries the envelope
//! metadata as `#`-prefixed comment lines followed by a header row and the
//! flattened payload with 17-significant-digit numbers (lossless for f64).

use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Serialize, serde::Deserialize)]
pub struct Envelope<T> {
    pub command: String,
    pub config: serde_json::Value,
    pub seed: u64,
    pub versions: BTreeMap<String, String>,
    pub results: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: String, config: serde_json::Value, seed: u64, results: T) -> Self {
        let mut versions = BTreeMap::new();
        versions.insert("sinctrunc".into(), env!("CARGO_PKG_VERSION").into());
        Self {
            command,
            config,
            seed,
            versions,
            results,
        }
    }

    pub fn to_json(&self) -> anyhow::Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_csv(&self, table: &CsvTable) -> String {
        let mut out = String::new();
        out.push_str(&format!("# command={}\n", self.command));
        out.push_str(&format!("# seed={}\n", self.seed));
        for (name, version) in &self.versions {
            out.push_str(&format!("# {name}={version}\n"));
        }
        out.push_str(&table.header.join(","));
        out.push('\n');
        for row in &table.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Flattened payload for the CSV encoder.
pub struct CsvTable {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// 17 significant digits: enough to round-trip any f64.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}
