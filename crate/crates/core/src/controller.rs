//! The controller: invokes the processing stages in dependency order with
//! per-stage enable flags, timing every stage.
//!
//! Two modes exist. Rigid reproduces the behaviour of a fixed pipeline that
//! applies every stage to every frame; Selective allows stages to be
//! suppressed per frame. With every stage enabled the two produce identical
//! detections frame for frame.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::blackboard::{BlackboardError, StageStatus, VisionBlackboard};
use crate::detect::{
    detect_ball, detect_field_lines, detect_goalposts, detect_obstacles, BallDetection, FieldLine,
    GoalParams, Goalpost, Obstacle, ObstacleParams, RansacParams,
};
use crate::frame::{Frame, KinematicsSnapshot};
use crate::preprocess::{classify_scanlines, detect_green_horizon, filter_transitions, ScanConfig};
use crate::source::{FrameSource, SourceError};
use crate::stage::Stage;

/// Controller behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Every stage runs on every frame; enable flags are forced on.
    Rigid,
    /// Stages may be suppressed per frame.
    #[default]
    Selective,
}

/// Plan validation failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("stage {stage} is enabled but its prerequisite {prerequisite} is disabled")]
    MissingPrerequisite { stage: Stage, prerequisite: Stage },
}

/// The ordered stage list with per-stage enable flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StagePlan {
    mode: Mode,
    enabled: [bool; 7],
}

impl StagePlan {
    /// All stages enabled, in the given mode.
    pub fn all_enabled(mode: Mode) -> StagePlan {
        StagePlan {
            mode,
            enabled: [true; 7],
        }
    }

    pub fn rigid() -> StagePlan {
        StagePlan::all_enabled(Mode::Rigid)
    }

    /// A selective plan with explicit flags; fails when an enabled stage has
    /// a disabled prerequisite.
    pub fn selective(flags: [bool; 7]) -> Result<StagePlan, PlanError> {
        let plan = StagePlan {
            mode: Mode::Selective,
            enabled: flags,
        };
        plan.validate()?;
        Ok(plan)
    }

    pub fn mode(self) -> Mode {
        self.mode
    }

    /// Effective enablement. Rigid mode forces every flag on.
    pub fn is_enabled(self, stage: Stage) -> bool {
        self.mode == Mode::Rigid || self.enabled[stage.index()]
    }

    /// Record a flag change, rejecting configurations where an enabled stage
    /// would lose a prerequisite. In Rigid mode the flag is stored but has
    /// no effect.
    pub fn set_enabled(&mut self, stage: Stage, enabled: bool) -> Result<(), PlanError> {
        let previous = self.enabled[stage.index()];
        self.enabled[stage.index()] = enabled;
        if let Err(e) = self.validate() {
            self.enabled[stage.index()] = previous;
            return Err(e);
        }
        Ok(())
    }

    /// Check that every enabled stage has its prerequisites enabled; reports
    /// the first violating (stage, prerequisite) pair. Rigid plans are
    /// always valid.
    pub fn validate(&self) -> Result<(), PlanError> {
        if self.mode == Mode::Rigid {
            return Ok(());
        }
        for stage in Stage::ALL {
            if !self.enabled[stage.index()] {
                continue;
            }
            for &prerequisite in stage.prerequisites() {
                if !self.enabled[prerequisite.index()] {
                    return Err(PlanError::MissingPrerequisite {
                        stage,
                        prerequisite,
                    });
                }
            }
        }
        Ok(())
    }
}

/// The tuning parameters every stage draws from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PipelineParams {
    pub scan: ScanConfig,
    pub goal_ransac: RansacParams,
    pub line_ransac: RansacParams,
    pub obstacle: ObstacleParams,
    pub goal: GoalParams,
    /// Base seed; per-frame, per-stage generator seeds derive from it.
    pub seed: u64,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            scan: ScanConfig::default(),
            goal_ransac: RansacParams::default(),
            line_ransac: RansacParams::default(),
            obstacle: ObstacleParams::default(),
            goal: GoalParams::default(),
            seed: 0,
        }
    }
}

impl PipelineParams {
    pub fn validate(&self) -> Result<(), String> {
        self.scan.validate().map_err(|e| format!("scan: {e}"))?;
        self.goal_ransac
            .validate()
            .map_err(|e| format!("goal_ransac: {e}"))?;
        self.line_ransac
            .validate()
            .map_err(|e| format!("line_ransac: {e}"))?;
        self.obstacle
            .validate()
            .map_err(|e| format!("obstacle: {e}"))?;
        Ok(())
    }
}

/// Result of one detector stage within a frame's detection set. Suppression
/// is distinct from an empty result: "didn't look" is not "looked and found
/// nothing".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StageResult<T> {
    Suppressed,
    Failed,
    Ok { items: Vec<T> },
}

impl<T> StageResult<T> {
    pub fn items(&self) -> Option<&[T]> {
        match self {
            StageResult::Ok { items } => Some(items),
            _ => None,
        }
    }

    pub fn is_suppressed(&self) -> bool {
        matches!(self, StageResult::Suppressed)
    }
}

/// Typed detection outputs of one frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionSet {
    pub balls: StageResult<BallDetection>,
    pub goalposts: StageResult<Goalpost>,
    pub obstacles: StageResult<Obstacle>,
    pub field_lines: StageResult<FieldLine>,
}

/// Status and timing of one stage in one frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub stage: Stage,
    pub status: StageStatus,
    /// Present exactly for stages that executed (ok or failed).
    pub duration_us: Option<u64>,
}

/// Everything the controller knows about one processed frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub sequence_index: u64,
    pub stages: Vec<StageRecord>,
    /// Whole-frame wall time including controller bookkeeping; always at
    /// least the sum of the stage durations.
    pub total_us: u64,
    pub detections: DetectionSet,
}

impl FrameReport {
    pub fn stage_record(&self, stage: Stage) -> &StageRecord {
        &self.stages[stage.index()]
    }

    pub fn total_ms(&self) -> f64 {
        self.total_us as f64 / 1000.0
    }
}

/// Per-stream timing summary: mean and sample (n-1) standard deviation of
/// total ms per frame. Undefined moments are `None`, never fabricated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StreamSummary {
    pub frames: u64,
    pub mean_ms: Option<f64>,
    pub std_ms: Option<f64>,
}

impl StreamSummary {
    /// Summarize a list of per-frame totals.
    pub fn from_totals_ms(totals: &[f64]) -> StreamSummary {
        let frames = totals.len() as u64;
        if frames == 0 {
            return StreamSummary {
                frames,
                mean_ms: None,
                std_ms: None,
            };
        }
        let mean = totals.iter().sum::<f64>() / frames as f64;
        let std = if frames >= 2 {
            let ss: f64 = totals.iter().map(|t| (t - mean) * (t - mean)).sum();
            Some((ss / (frames as f64 - 1.0)).sqrt())
        } else {
            None
        };
        StreamSummary {
            frames,
            mean_ms: Some(mean),
            std_ms: std,
        }
    }
}

/// A stream run aborted by backend I/O failure.
#[derive(Debug, Error)]
#[error("stream aborted after {completed} frames: {source}")]
pub struct StreamRunError {
    /// Frames fully processed before the failure.
    pub completed: u64,
    #[source]
    pub source: SourceError,
}

/// Runs the stages over a blackboard according to a validated plan.
pub struct Controller {
    plan: StagePlan,
    params: PipelineParams,
    fault: Option<Stage>,
}

impl Controller {
    pub fn new(plan: StagePlan, params: PipelineParams) -> Result<Controller, PlanError> {
        plan.validate()?;
        Ok(Controller {
            plan,
            params,
            fault: None,
        })
    }

    pub fn plan(&self) -> &StagePlan {
        &self.plan
    }

    pub fn params(&self) -> &PipelineParams {
        &self.params
    }

    pub fn set_plan(&mut self, plan: StagePlan) -> Result<(), PlanError> {
        plan.validate()?;
        self.plan = plan;
        Ok(())
    }

    /// Debug hook: make one stage report failure on every frame. Exercises
    /// the suppression of transitive dependents; the stages themselves have
    /// no organic failure path.
    pub fn force_stage_failure(&mut self, stage: Option<Stage>) {
        self.fault = stage;
    }

    /// Process one frame: begin the blackboard frame, run each enabled stage
    /// in the fixed order, suppress disabled stages and the dependents of
    /// failed ones, and assemble the report. Stage errors never escape; they
    /// become a failed status.
    pub fn run_frame(
        &self,
        bb: &mut VisionBlackboard,
        frame: Frame,
        kinematics: KinematicsSnapshot,
    ) -> FrameReport {
        let frame_start = Instant::now();
        let sequence_index = frame.sequence_index;
        bb.begin_frame(frame, kinematics);

        for stage in Stage::ALL {
            if !self.plan.is_enabled(stage) {
                bb.set_status(stage, StageStatus::Suppressed);
                continue;
            }
            if stage
                .prerequisites()
                .iter()
                .any(|&p| bb.status(p) != StageStatus::Ok)
            {
                // A failed prerequisite silences the whole dependent subtree;
                // independent stages keep running.
                bb.set_status(stage, StageStatus::Suppressed);
                continue;
            }
            let stage_start = Instant::now();
            let outcome = if self.fault == Some(stage) {
                Err(BlackboardError::NoFrame {
                    slot: crate::blackboard::Slot::Frame,
                })
            } else {
                self.execute(stage, bb, sequence_index)
            };
            bb.record_duration(stage, stage_start.elapsed().as_micros() as u64);
            if outcome.is_err() {
                bb.set_status(stage, StageStatus::Failed);
            }
        }

        let stages = Stage::ALL
            .iter()
            .map(|&stage| StageRecord {
                stage,
                status: bb.status(stage),
                duration_us: bb.duration_us(stage),
            })
            .collect();
        let detections = DetectionSet {
            balls: collect(bb.status(Stage::BallDetection), || {
                bb.balls().map(<[_]>::to_vec)
            }),
            goalposts: collect(bb.status(Stage::GoalDetection), || {
                bb.goalposts().map(<[_]>::to_vec)
            }),
            obstacles: collect(bb.status(Stage::ObstacleDetection), || {
                bb.obstacles().map(<[_]>::to_vec)
            }),
            field_lines: collect(bb.status(Stage::LineDetection), || {
                bb.field_lines().map(<[_]>::to_vec)
            }),
        };

        FrameReport {
            sequence_index,
            stages,
            total_us: frame_start.elapsed().as_micros() as u64,
            detections,
        }
    }

    fn execute(
        &self,
        stage: Stage,
        bb: &mut VisionBlackboard,
        sequence_index: u64,
    ) -> Result<(), BlackboardError> {
        let params = &self.params;
        let lut = bb.lut().clone();
        match stage {
            Stage::GreenHorizon => {
                let horizon =
                    detect_green_horizon(bb.frame()?, &lut, bb.kinematics()?, &params.scan);
                bb.post_green_horizon(stage, horizon)
            }
            Stage::ScanlineClassifier => {
                let segments =
                    classify_scanlines(bb.frame()?, &lut, bb.horizon_hull()?, &params.scan);
                bb.post_segments(stage, segments)
            }
            Stage::TransitionFilter => {
                let transitions =
                    filter_transitions(bb.segments()?, params.scan.min_segment_length);
                bb.post_transitions(stage, transitions)
            }
            Stage::BallDetection => {
                let balls = detect_ball(
                    &bb.transitions()?.ball,
                    bb.frame()?,
                    &lut,
                    bb.horizon_hull()?,
                    &params.scan,
                );
                bb.post_balls(stage, balls)
            }
            Stage::GoalDetection => {
                let seeded = params
                    .goal_ransac
                    .with_seed(derive_seed(params.seed, sequence_index, stage));
                let posts = detect_goalposts(
                    &bb.transitions()?.goal,
                    &seeded,
                    &params.goal,
                    bb.horizon_hull()?,
                    bb.frame()?,
                    &lut,
                );
                bb.post_goalposts(stage, posts)
            }
            Stage::ObstacleDetection => {
                let obstacles =
                    detect_obstacles(bb.horizon_markers()?, bb.horizon_hull()?, &params.obstacle);
                bb.post_obstacles(stage, obstacles)
            }
            Stage::LineDetection => {
                let seeded = params
                    .line_ransac
                    .with_seed(derive_seed(params.seed, sequence_index, stage));
                let lines = detect_field_lines(&bb.transitions()?.line, &seeded, bb.horizon_hull()?);
                bb.post_field_lines(stage, lines)
            }
        }
    }

    /// Process every frame a source yields, emitting each report to `sink`.
    /// Backend I/O errors abort with the completed frame count.
    pub fn run_stream(
        &self,
        bb: &mut VisionBlackboard,
        source: &mut dyn FrameSource,
        mut sink: impl FnMut(&FrameReport),
    ) -> Result<StreamSummary, StreamRunError> {
        bb.set_lut(source.lut());
        let mut totals_ms = Vec::new();
        loop {
            match source.next_frame() {
                Ok(Some((frame, kinematics))) => {
                    let report = self.run_frame(bb, frame, kinematics);
                    totals_ms.push(report.total_ms());
                    sink(&report);
                }
                Ok(None) => break,
                Err(source) => {
                    return Err(StreamRunError {
                        completed: totals_ms.len() as u64,
                        source,
                    })
                }
            }
        }
        Ok(StreamSummary::from_totals_ms(&totals_ms))
    }
}

fn collect<T: Clone>(
    status: StageStatus,
    read: impl FnOnce() -> Result<Vec<T>, BlackboardError>,
) -> StageResult<T> {
    match status {
        StageStatus::Suppressed => StageResult::Suppressed,
        StageStatus::Ok => match read() {
            Ok(items) => StageResult::Ok { items },
            Err(_) => StageResult::Failed,
        },
        StageStatus::Failed | StageStatus::NotRun => StageResult::Failed,
    }
}

/// Mix the base seed, frame index and stage into one generator seed
/// (splitmix64 steps).
fn derive_seed(base: u64, sequence_index: u64, stage: Stage) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(mix(base ^ mix(sequence_index)) ^ (stage.index() as u64))
}
