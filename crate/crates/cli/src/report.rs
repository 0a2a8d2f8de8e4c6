//! Bench reports, table rendering and report comparison.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

/// Timing of one stream across all recorded repetitions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub name: String,
    /// Frames measured (stream length times repetitions).
    pub frames: u64,
    pub mean_ms: f64,
    pub std_ms: f64,
    /// Hash of the detection output, identical across timing runs with the
    /// same config and seed.
    pub detections_sha: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub streams: Vec<BenchRow>,
    pub overall: BenchRow,
    /// Mean per-stage time in ms over all measured frames.
    pub per_stage_mean_ms: BTreeMap<String, f64>,
    pub repetitions: u32,
    pub config_fingerprint: String,
}

/// Mean and sample standard deviation of a total list.
pub fn mean_std(totals_ms: &[f64]) -> (f64, f64) {
    let n = totals_ms.len() as f64;
    let mean = totals_ms.iter().sum::<f64>() / n;
    let std = if totals_ms.len() >= 2 {
        (totals_ms.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, std)
}

impl BenchReport {
    /// Aligned text table in the mean-with-std-in-parentheses shape.
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<14} {:>8}  {:>16}\n",
            "Image stream", "Frames", "ms per frame"
        ));
        for row in self.streams.iter().chain(std::iter::once(&self.overall)) {
            out.push_str(&format!(
                "{:<14} {:>8}  {:>10.2} ({:.2})\n",
                row.name, row.frames, row.mean_ms, row.std_ms
            ));
        }
        out.push_str("\nper-stage mean ms:\n");
        for (stage, ms) in &self.per_stage_mean_ms {
            out.push_str(&format!("  {stage:<20} {ms:>8.3}\n"));
        }
        out.push_str(&format!("\nconfig fingerprint: {}\n", self.config_fingerprint));
        out
    }
}

/// Per-stream delta between two bench reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub name: String,
    pub mean_ms_a: f64,
    pub mean_ms_b: f64,
    /// Percent change of B relative to A.
    pub change_percent: f64,
    pub fps_a: f64,
    pub fps_b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub streams: Vec<CompareRow>,
    pub overall: CompareRow,
}

fn compare_row(name: &str, a: &BenchRow, b: &BenchRow) -> CompareRow {
    CompareRow {
        name: name.to_string(),
        mean_ms_a: a.mean_ms,
        mean_ms_b: b.mean_ms,
        change_percent: (b.mean_ms - a.mean_ms) / a.mean_ms * 100.0,
        fps_a: 1000.0 / a.mean_ms,
        fps_b: 1000.0 / b.mean_ms,
    }
}

/// Compare two reports over the same stream set.
pub fn compare(a: &BenchReport, b: &BenchReport) -> CliResult<CompareReport> {
    let names_a: Vec<&str> = a.streams.iter().map(|r| r.name.as_str()).collect();
    let names_b: Vec<&str> = b.streams.iter().map(|r| r.name.as_str()).collect();
    if names_a != names_b {
        return Err(CliError::Runtime(format!(
            "stream sets differ: {names_a:?} vs {names_b:?}"
        )));
    }
    let streams = a
        .streams
        .iter()
        .zip(&b.streams)
        .map(|(ra, rb)| compare_row(&ra.name, ra, rb))
        .collect();
    Ok(CompareReport {
        streams,
        overall: compare_row("overall", &a.overall, &b.overall),
    })
}

impl CompareReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<14} {:>10} {:>10} {:>9} {:>8} {:>8}\n",
            "Image stream", "A ms", "B ms", "change", "A fps", "B fps"
        ));
        for row in self.streams.iter().chain(std::iter::once(&self.overall)) {
            out.push_str(&format!(
                "{:<14} {:>10.2} {:>10.2} {:>+8.1}% {:>8.1} {:>8.1}\n",
                row.name, row.mean_ms_a, row.mean_ms_b, row.change_percent, row.fps_a, row.fps_b
            ));
        }
        out
    }
}
