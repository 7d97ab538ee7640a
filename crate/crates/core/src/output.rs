//! CSV layouts for simulation histories, record-breaking tallies and
//! expectation tables.
//!
//! Floats are written in Rust's shortest round-trip form, so equal runs give
//! byte-identical files.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::analysis::ExpectationTable;
use crate::error::{Error, Result};
use crate::sampler::RecordEntry;

/// `record_index, c1..cd, records_broken, rho_after, gamma_after, rejections`.
pub fn records_header(d: usize) -> Vec<String> {
    let mut h = vec!["record_index".to_string()];
    h.extend((1..=d).map(|j| format!("c{j}")));
    h.extend(["records_broken", "rho_after", "gamma_after", "rejections"].map(String::from));
    h
}

pub fn write_records_csv<W: Write>(out: W, d: usize, entries: &[RecordEntry]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(records_header(d))?;
    for e in entries {
        if e.record.dim() != d {
            return Err(Error::DimensionMismatch { expected: d, found: e.record.dim() });
        }
        let mut row = vec![e.index.to_string()];
        row.extend(e.record.coords().iter().map(f64::to_string));
        row.extend([e.records_broken, e.rho_after, e.gamma_after].map(|v| v.to_string()));
        row.push(e.rejections.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub k: usize,
    pub count: u64,
    pub fraction: f64,
}

/// How many records broke exactly `k` current records, for each `k` from 0
/// to the largest value seen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Summary {
    pub records: u64,
    pub rows: Vec<Table1Row>,
}

impl Table1Summary {
    pub fn from_entries(entries: &[RecordEntry]) -> Self {
        let max_k = entries.iter().map(|e| e.records_broken).max();
        let mut counts = vec![0u64; max_k.map_or(0, |k| k + 1)];
        for e in entries {
            counts[e.records_broken] += 1;
        }
        let m = entries.len() as u64;
        let rows = counts
            .into_iter()
            .enumerate()
            .map(|(k, count)| Table1Row { k, count, fraction: count as f64 / m as f64 })
            .collect();
        Table1Summary { records: m, rows }
    }

    /// Fraction of records that broke `k` records, zero when none did.
    pub fn fraction(&self, k: usize) -> f64 {
        self.rows.get(k).map_or(0.0, |r| r.fraction)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["k", "N_k", "p_tilde_k"])?;
        for r in &self.rows {
            w.write_record([r.k.to_string(), r.count.to_string(), r.fraction.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn optional(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// `d, n, I_exact, G_exact, I_poissonized, G_asymptotic, abs_gap`; columns
/// that were not computed are left empty.
pub fn write_expectation_csv<W: Write>(out: W, table: &ExpectationTable) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["d", "n", "I_exact", "G_exact", "I_poissonized", "G_asymptotic", "abs_gap"])?;
    for r in &table.rows {
        w.write_record([
            table.d.to_string(),
            r.n.to_string(),
            r.i_exact.to_string(),
            r.g_exact.to_string(),
            optional(r.i_poissonized),
            optional(r.g_asymptotic),
            optional(r.abs_gap()),
        ])?;
    }
    w.flush()?;
    Ok(())
}
