//! `score`: match a detections file against a truth sidecar.

use std::fs;
use std::path::{Path, PathBuf};

use crate::commands::{load_detections, load_truth};
use crate::score::{score, ScoreReport, Tolerances};
use crate::{CliError, CliResult};

pub struct ScoreArgs {
    pub detections: PathBuf,
    pub truth: PathBuf,
    pub output: Option<PathBuf>,
    pub tolerances: Tolerances,
}

pub fn score_files(args: &ScoreArgs) -> CliResult<ScoreReport> {
    let detections = load_detections(&args.detections)?;
    let truths = load_truth(&args.truth)?;
    let report = score(&detections, &truths, &args.tolerances)?;
    if let Some(path) = &args.output {
        write_report(&report, path)?;
    }
    Ok(report)
}

pub fn write_report(report: &ScoreReport, path: &Path) -> CliResult<()> {
    let json =
        serde_json::to_string_pretty(report).map_err(|e| CliError::Runtime(e.to_string()))?;
    fs::write(path, json)
        .map_err(|e| CliError::Runtime(format!("cannot write `{}`: {e}", path.display())))
}
