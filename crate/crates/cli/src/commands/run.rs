//! `run`: process one stream and write detections plus frame reports.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use fieldvision_core::{FrameReport, StageResult, StreamSummary};
use fieldvision_platform::replay::{HeadlessBackend, ReplayBackend, ReplayOptions};
use fieldvision_platform::ControlWrapper;

use crate::config::PipelineConfig;
use crate::records::DetectionRecord;
use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BackendKind {
    /// Replay with the kinematics sidecar when the stream carries one.
    #[default]
    Replay,
    /// Replay as a sensorless platform: top-of-frame horizon everywhere.
    Headless,
}

pub struct RunArgs {
    pub stream: PathBuf,
    pub config: Option<PathBuf>,
    pub output: PathBuf,
    pub backend: BackendKind,
    /// Override the config seed (the global --seed flag).
    pub seed: Option<u64>,
    /// Real ball radius in metres for the pinhole distance estimate.
    pub ball_radius_m: Option<f64>,
    /// Focal length in pixels for the pinhole distance estimate.
    pub focal_px: Option<f64>,
}

pub struct RunOutcome {
    pub summary: StreamSummary,
    pub detections_path: PathBuf,
    pub reports_path: PathBuf,
    pub config_fingerprint: String,
}

pub fn load_config(path: Option<&Path>, seed: Option<u64>) -> CliResult<PipelineConfig> {
    let mut config = match path {
        Some(p) => PipelineConfig::load(p)?,
        None => PipelineConfig::default(),
    };
    if let Some(seed) = seed {
        config.seed = seed;
    }
    Ok(config)
}

/// Radius-known pinhole triangulation: distance = focal * R / r.
fn ball_distances(report: &FrameReport, radius_m: f64, focal_px: f64) -> Option<Vec<f64>> {
    match &report.detections.balls {
        StageResult::Ok { items } => Some(
            items
                .iter()
                .map(|b| focal_px * radius_m / b.radius)
                .collect(),
        ),
        _ => None,
    }
}

pub fn run(args: &RunArgs) -> CliResult<RunOutcome> {
    let config = load_config(args.config.as_deref(), args.seed)?;
    let lut = config.load_lut(args.config.as_deref().and_then(Path::parent))?;
    let plan = config.plan()?;
    let params = config.params();

    fs::create_dir_all(&args.output)
        .map_err(|e| CliError::Runtime(format!("cannot create output dir: {e}")))?;
    let detections_path = args.output.join("detections.jsonl");
    let reports_path = args.output.join("frame_reports.jsonl");
    let mut detections_file = fs::File::create(&detections_path)
        .map_err(|e| CliError::Runtime(format!("cannot create detections file: {e}")))?;
    let mut reports_file = fs::File::create(&reports_path)
        .map_err(|e| CliError::Runtime(format!("cannot create reports file: {e}")))?;

    let estimator = args.ball_radius_m.zip(args.focal_px);
    let mut write_error: Option<std::io::Error> = None;
    let mut sink = |report: &FrameReport| {
        if write_error.is_some() {
            return;
        }
        let distances = estimator.and_then(|(r, f)| ball_distances(report, r, f));
        let record = DetectionRecord::from_report(report, distances);
        let outcome = serde_json::to_writer(&mut detections_file, &record)
            .map_err(std::io::Error::from)
            .and_then(|()| detections_file.write_all(b"\n"))
            .and_then(|()| {
                serde_json::to_writer(&mut reports_file, report).map_err(std::io::Error::from)
            })
            .and_then(|()| reports_file.write_all(b"\n"));
        if let Err(e) = outcome {
            write_error = Some(e);
        }
    };

    let options = ReplayOptions { lut };
    let summary = match args.backend {
        BackendKind::Replay => {
            let backend = ReplayBackend::open(&args.stream, options)
                .map_err(|e| CliError::Stream(e.to_string()))?;
            let mut wrapper = ControlWrapper::new(backend, plan, params)
                .map_err(|e| CliError::Config(e.to_string()))?;
            wrapper.run_stream(&mut sink)
        }
        BackendKind::Headless => {
            let backend = HeadlessBackend::open(&args.stream, options)
                .map_err(|e| CliError::Stream(e.to_string()))?;
            let mut wrapper = ControlWrapper::new(backend, plan, params)
                .map_err(|e| CliError::Config(e.to_string()))?;
            wrapper.run_stream(&mut sink)
        }
    }
    .map_err(|e| CliError::Runtime(e.to_string()))?;

    if let Some(e) = write_error {
        return Err(CliError::Runtime(format!("output write failed: {e}")));
    }
    Ok(RunOutcome {
        summary,
        detections_path,
        reports_path,
        config_fingerprint: config.fingerprint(),
    })
}
