//! `compare`: delta between two bench reports.

use std::fs;
use std::path::Path;

use crate::report::{compare, BenchReport, CompareReport};
use crate::{CliError, CliResult};

pub fn load_report(path: &Path) -> CliResult<BenchReport> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Runtime(format!("cannot read report `{}`: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Runtime(format!("report `{}`: {e}", path.display())))
}

pub fn compare_files(a: &Path, b: &Path, output: Option<&Path>) -> CliResult<CompareReport> {
    let report_a = load_report(a)?;
    let report_b = load_report(b)?;
    let delta = compare(&report_a, &report_b)?;
    if let Some(path) = output {
        let json =
            serde_json::to_string_pretty(&delta).map_err(|e| CliError::Runtime(e.to_string()))?;
        fs::write(path, json)
            .map_err(|e| CliError::Runtime(format!("cannot write `{}`: {e}", path.display())))?;
    }
    Ok(delta)
}
