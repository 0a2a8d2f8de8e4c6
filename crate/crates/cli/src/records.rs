//! JSON-lines record schemas written by the run and bench commands.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use fieldvision_core::{DetectionSet, FrameReport, StageStatus};

/// One line of `detections.jsonl`: deterministic per (config, seed, stream),
/// so it carries no timing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionRecord {
    pub seq: u64,
    /// Status ledger keyed by stage identifier.
    pub stages: BTreeMap<String, StageStatus>,
    pub detections: DetectionSet,
    /// Pinhole-model ball distance estimates, present when the run was
    /// given a ball radius and focal length.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ball_distances_m: Option<Vec<f64>>,
}

impl DetectionRecord {
    pub fn from_report(report: &FrameReport, ball_distances_m: Option<Vec<f64>>) -> Self {
        let stages = report
            .stages
            .iter()
            .map(|r| (r.stage.identifier().to_string(), r.status))
            .collect();
        DetectionRecord {
            seq: report.sequence_index,
            stages,
            detections: report.detections.clone(),
            ball_distances_m,
        }
    }
}

/// One line of a bench per-frame log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchFrameRecord {
    pub stream: String,
    pub repetition: u32,
    pub seq: u64,
    pub total_us: u64,
    /// Per-stage durations in microseconds, for stages that executed.
    pub stages_us: BTreeMap<String, u64>,
}

impl BenchFrameRecord {
    pub fn from_report(stream: &str, repetition: u32, report: &FrameReport) -> Self {
        let stages_us = report
            .stages
            .iter()
            .filter_map(|r| {
                r.duration_us
                    .map(|us| (r.stage.identifier().to_string(), us))
            })
            .collect();
        BenchFrameRecord {
            stream: stream.to_string(),
            repetition,
            seq: report.sequence_index,
            total_us: report.total_us,
            stages_us,
        }
    }
}
