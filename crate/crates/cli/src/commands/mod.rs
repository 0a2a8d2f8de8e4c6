//! Command implementations behind the CLI surface.

pub mod bench;
pub mod build_lut;
pub mod compare;
pub mod gen;
pub mod run;
pub mod score;

use std::fs;
use std::path::Path;

use crate::records::DetectionRecord;
use crate::{CliError, CliResult};
use fieldvision_synth::GroundTruth;

pub(crate) fn read_jsonl<T: serde::de::DeserializeOwned>(
    path: &Path,
    what: &str,
) -> CliResult<Vec<T>> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Runtime(format!("cannot read {what} `{}`: {e}", path.display())))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            serde_json::from_str(line).map_err(|e| {
                CliError::Runtime(format!("{what} `{}` line {}: {e}", path.display(), i + 1))
            })
        })
        .collect()
}

pub fn load_detections(path: &Path) -> CliResult<Vec<DetectionRecord>> {
    read_jsonl(path, "detections file")
}

pub fn load_truth(path: &Path) -> CliResult<Vec<GroundTruth>> {
    read_jsonl(path, "truth file")
}
