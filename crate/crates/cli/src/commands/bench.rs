//! `bench`: timing runs over one or more streams with a warm-up pass,
//! emitting a per-frame log and a table-shaped report.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use fieldvision_core::FrameReport;
use fieldvision_platform::replay::{ReplayBackend, ReplayOptions};
use fieldvision_platform::ControlWrapper;

use crate::commands::run::load_config;
use crate::records::BenchFrameRecord;
use crate::report::{mean_std, BenchReport, BenchRow};
use crate::{CliError, CliResult};

pub struct BenchArgs {
    pub streams: Vec<PathBuf>,
    pub config: Option<PathBuf>,
    pub output: PathBuf,
    /// Recorded passes per stream, after one unrecorded warm-up pass.
    pub repetitions: u32,
    pub seed: Option<u64>,
}

pub struct BenchOutcome {
    pub report: BenchReport,
    pub report_path: PathBuf,
    pub frames_log_path: PathBuf,
}

pub fn bench(args: &BenchArgs) -> CliResult<BenchOutcome> {
    if args.streams.is_empty() {
        return Err(CliError::Config("at least one stream is required".into()));
    }
    if args.repetitions < 1 {
        return Err(CliError::Config("repetitions must be >= 1".into()));
    }
    let config = load_config(args.config.as_deref(), args.seed)?;
    let lut = config.load_lut(args.config.as_deref().and_then(Path::parent))?;
    let plan = config.plan()?;

    fs::create_dir_all(&args.output)
        .map_err(|e| CliError::Runtime(format!("cannot create output dir: {e}")))?;
    let frames_log_path = args.output.join("bench_frames.jsonl");
    let mut frames_log = fs::File::create(&frames_log_path)
        .map_err(|e| CliError::Runtime(format!("cannot create frames log: {e}")))?;

    let mut rows = Vec::new();
    let mut all_totals_ms = Vec::new();
    let mut all_frames = 0u64;
    let mut stage_sums_us: BTreeMap<String, (u64, u64)> = BTreeMap::new();

    for stream in &args.streams {
        let mut stream_totals_ms = Vec::new();
        let mut name = String::new();
        let mut detections_sha = String::new();

        // One warm-up pass plus the recorded repetitions.
        for pass in 0..=args.repetitions {
            let backend = ReplayBackend::open(stream, ReplayOptions { lut: lut.clone() })
                .map_err(|e| CliError::Stream(e.to_string()))?;
            name = backend.manifest().name.clone();
            let mut wrapper = ControlWrapper::new(backend, plan, config.params())
                .map_err(|e| CliError::Config(e.to_string()))?;

            let recorded = pass > 0;
            let repetition = pass.saturating_sub(1);
            let mut hasher = (pass == 1).then(Sha256::new);
            let mut write_error: Option<std::io::Error> = None;
            let stream_name = name.clone();
            wrapper
                .run_stream(|report: &FrameReport| {
                    if !recorded {
                        return;
                    }
                    if let Some(h) = hasher.as_mut() {
                        h.update(
                            serde_json::to_vec(&report.detections).expect("detections serialize"),
                        );
                    }
                    stream_totals_ms.push(report.total_ms());
                    for record in &report.stages {
                        if let Some(us) = record.duration_us {
                            let entry = stage_sums_us
                                .entry(record.stage.identifier().to_string())
                                .or_insert((0, 0));
                            entry.0 += us;
                            entry.1 += 1;
                        }
                    }
                    let row = BenchFrameRecord::from_report(&stream_name, repetition, report);
                    if write_error.is_none() {
                        let outcome = serde_json::to_writer(&mut frames_log, &row)
                            .map_err(std::io::Error::from)
                            .and_then(|()| frames_log.write_all(b"\n"));
                        if let Err(e) = outcome {
                            write_error = Some(e);
                        }
                    }
                })
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            if let Some(e) = write_error {
                return Err(CliError::Runtime(format!("frames log write failed: {e}")));
            }
            if let Some(h) = hasher {
                detections_sha = hex_prefix(&h.finalize());
            }
        }

        if stream_totals_ms.is_empty() {
            return Err(CliError::Stream(format!(
                "stream `{}` has no frames to time",
                stream.display()
            )));
        }
        let (mean_ms, std_ms) = mean_std(&stream_totals_ms);
        rows.push(BenchRow {
            name,
            frames: stream_totals_ms.len() as u64,
            mean_ms,
            std_ms,
            detections_sha,
        });
        all_frames += stream_totals_ms.len() as u64;
        all_totals_ms.extend(stream_totals_ms);
    }

    let (mean_ms, std_ms) = mean_std(&all_totals_ms);
    let mut overall_sha = Sha256::new();
    for row in &rows {
        overall_sha.update(row.detections_sha.as_bytes());
    }
    let report = BenchReport {
        streams: rows,
        overall: BenchRow {
            name: "overall".to_string(),
            frames: all_frames,
            mean_ms,
            std_ms,
            detections_sha: hex_prefix(&overall_sha.finalize()),
        },
        per_stage_mean_ms: stage_sums_us
            .into_iter()
            .map(|(stage, (sum_us, count))| (stage, sum_us as f64 / count as f64 / 1000.0))
            .collect(),
        repetitions: args.repetitions,
        config_fingerprint: config.fingerprint(),
    };

    let report_path = args.output.join("bench_report.json");
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    fs::write(&report_path, json)
        .map_err(|e| CliError::Runtime(format!("cannot write report: {e}")))?;
    Ok(BenchOutcome {
        report,
        report_path,
        frames_log_path,
    })
}

fn hex_prefix(digest: &[u8]) -> String {
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}
