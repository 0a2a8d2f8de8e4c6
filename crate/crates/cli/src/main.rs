use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fieldvision_cli::commands::bench::{bench, BenchArgs};
use fieldvision_cli::commands::build_lut::build_lut;
use fieldvision_cli::commands::compare::compare_files;
use fieldvision_cli::commands::gen::{gen, GenArgs};
use fieldvision_cli::commands::run::{run, BackendKind, RunArgs};
use fieldvision_cli::commands::score::{score_files, ScoreArgs};
use fieldvision_cli::score::Tolerances;
use fieldvision_cli::{CliError, CliResult};

/// Real-time colour-vision pipeline for field-sport robot scenes.
#[derive(Parser)]
#[command(name = "fieldvision", version, about)]
struct Cli {
    /// Pipeline config file (JSON, version 1).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed override for generators and detectors.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory or file, depending on the command.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Replay,
    Headless,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic stream from a preset or a spec file.
    Gen {
        /// Preset name (lab1, lab2, difficult, rc2012, rc2013) or path to a
        /// JSON array of scene specs.
        source: String,
        /// Number of frames (presets default to their bundled count).
        #[arg(long)]
        frames: Option<usize>,
        /// Render with the per-pixel noise probability forced to zero.
        #[arg(long)]
        noise_free: bool,
        /// Skip the kinematics sidecar.
        #[arg(long)]
        no_kinematics: bool,
        #[arg(long, default_value_t = 30.0)]
        fps: f64,
        /// Stream name recorded in the manifest.
        #[arg(long)]
        name: Option<String>,
    },
    /// Compile colour rules into a binary lookup table.
    BuildLut {
        /// Rules file (JSON, version 1); bundled field rules when omitted.
        #[arg(long)]
        rules: Option<PathBuf>,
    },
    /// Run the pipeline over a stream, writing detections and reports.
    Run {
        stream: PathBuf,
        #[arg(long, value_enum, default_value = "replay")]
        backend: BackendArg,
        /// Real ball radius in metres (enables distance estimates).
        #[arg(long, requires = "focal_px")]
        ball_radius_m: Option<f64>,
        /// Focal length in pixels (enables distance estimates).
        #[arg(long, requires = "ball_radius_m")]
        focal_px: Option<f64>,
    },
    /// Time the pipeline over one or more streams.
    Bench {
        streams: Vec<PathBuf>,
        /// Recorded passes per stream after one warm-up pass.
        #[arg(long, default_value_t = 1)]
        repetitions: u32,
    },
    /// Score a detections file against a ground-truth sidecar.
    Score {
        #[arg(long)]
        detections: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        #[arg(long, default_value_t = 5.0)]
        ball_px: f64,
        #[arg(long, default_value_t = 8.0)]
        post_px: f64,
        #[arg(long, default_value_t = 0.5)]
        obstacle_iou: f64,
        #[arg(long, default_value_t = 3.0)]
        line_px: f64,
        #[arg(long, default_value_t = 3.0)]
        line_deg: f64,
    },
    /// Percent deltas between two bench reports.
    Compare { report_a: PathBuf, report_b: PathBuf },
}

fn required_output(output: Option<PathBuf>) -> CliResult<PathBuf> {
    output.ok_or_else(|| CliError::Config("--output is required for this command".into()))
}

fn dispatch(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Gen {
            source,
            frames,
            noise_free,
            no_kinematics,
            fps,
            name,
        } => {
            let output = required_output(cli.output)?;
            let dir = gen(&GenArgs {
                source: &source,
                output,
                frames,
                noise_free,
                kinematics: !no_kinematics,
                fps,
                name,
                seed: cli.seed.unwrap_or(0),
            })?;
            println!("stream written to {}", dir.display());
            Ok(())
        }
        Command::BuildLut { rules } => {
            let output = required_output(cli.output)?;
            let count = build_lut(rules.as_deref(), &output)?;
            println!("built lookup table from {count} rules: {}", output.display());
            Ok(())
        }
        Command::Run {
            stream,
            backend,
            ball_radius_m,
            focal_px,
        } => {
            let output = required_output(cli.output)?;
            let outcome = run(&RunArgs {
                stream,
                config: cli.config,
                output,
                backend: match backend {
                    BackendArg::Replay => BackendKind::Replay,
                    BackendArg::Headless => BackendKind::Headless,
                },
                seed: cli.seed,
                ball_radius_m,
                focal_px,
            })?;
            let summary = outcome.summary;
            match (summary.mean_ms, summary.std_ms) {
                (Some(mean), Some(std)) => println!(
                    "{} frames, {:.2} ({:.2}) ms per frame [config {}]",
                    summary.frames, mean, std, outcome.config_fingerprint
                ),
                _ => println!("{} frames [config {}]", summary.frames, outcome.config_fingerprint),
            }
            println!("detections: {}", outcome.detections_path.display());
            println!("reports:    {}", outcome.reports_path.display());
            Ok(())
        }
        Command::Bench {
            streams,
            repetitions,
        } => {
            let output = required_output(cli.output)?;
            let outcome = bench(&BenchArgs {
                streams,
                config: cli.config,
                output,
                repetitions,
                seed: cli.seed,
            })?;
            print!("{}", outcome.report.table());
            println!("report:     {}", outcome.report_path.display());
            println!("frame log:  {}", outcome.frames_log_path.display());
            Ok(())
        }
        Command::Score {
            detections,
            truth,
            ball_px,
            post_px,
            obstacle_iou,
            line_px,
            line_deg,
        } => {
            let report = score_files(&ScoreArgs {
                detections,
                truth,
                output: cli.output,
                tolerances: Tolerances {
                    ball_px,
                    post_px,
                    obstacle_iou,
                    line_px,
                    line_deg,
                },
            })?;
            print!("{}", report.summary());
            Ok(())
        }
        Command::Compare { report_a, report_b } => {
            let delta = compare_files(&report_a, &report_b, cli.output.as_deref())?;
            print!("{}", delta.table());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
