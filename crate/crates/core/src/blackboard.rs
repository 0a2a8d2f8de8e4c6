//! The per-pipeline blackboard: every stage reads its inputs here and posts
//! its results back.
//!
//! One blackboard exists per pipeline instance. Slots declare their
//! producing stage; posting from the wrong stage or reading before the
//! producer has completed is a contract violation, not undefined behaviour.
//! That closes the classic blackboard failure mode where a reordered
//! controller silently feeds a stage stale or missing data.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colour::ColourLut;
use crate::detect::{BallDetection, FieldLine, Goalpost, Obstacle};
use crate::frame::{Frame, KinematicsSnapshot};
use crate::geometry::Point2;
use crate::preprocess::{ColourSegment, GreenHorizon, HorizonHull, TransitionSet};
use crate::stage::Stage;

/// Every readable slot on the blackboard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Slot {
    Frame,
    Kinematics,
    Lut,
    HorizonMarkers,
    HorizonHull,
    Segments,
    Transitions,
    Balls,
    Goalposts,
    Obstacles,
    FieldLines,
}

impl Slot {
    /// The stage that owns the slot; `None` for input slots filled by
    /// `begin_frame`.
    pub fn producer(self) -> Option<Stage> {
        match self {
            Slot::Frame | Slot::Kinematics | Slot::Lut => None,
            Slot::HorizonMarkers | Slot::HorizonHull => Some(Stage::GreenHorizon),
            Slot::Segments => Some(Stage::ScanlineClassifier),
            Slot::Transitions => Some(Stage::TransitionFilter),
            Slot::Balls => Some(Stage::BallDetection),
            Slot::Goalposts => Some(Stage::GoalDetection),
            Slot::Obstacles => Some(Stage::ObstacleDetection),
            Slot::FieldLines => Some(Stage::LineDetection),
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Slot::Frame => "frame",
            Slot::Kinematics => "kinematics",
            Slot::Lut => "lut",
            Slot::HorizonMarkers => "horizon-markers",
            Slot::HorizonHull => "horizon-hull",
            Slot::Segments => "segments",
            Slot::Transitions => "transitions",
            Slot::Balls => "balls",
            Slot::Goalposts => "goalposts",
            Slot::Obstacles => "obstacles",
            Slot::FieldLines => "field-lines",
        };
        f.write_str(name)
    }
}

/// Lifecycle state of one stage within the current frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    #[default]
    NotRun,
    Suppressed,
    Ok,
    Failed,
}

/// Blackboard contract violations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlackboardError {
    #[error("stage {stage} cannot post to slot {slot}; its producer is {expected}")]
    WrongProducer {
        slot: Slot,
        stage: Stage,
        expected: Stage,
    },
    #[error("slot {slot} is not readable: producer {producer} status is {status:?}")]
    SlotNotReady {
        slot: Slot,
        producer: Stage,
        status: StageStatus,
    },
    #[error("input slot {slot} is empty: begin_frame has not run")]
    NoFrame { slot: Slot },
}

/// Central repository of the current frame's inputs, intermediate products
/// and results. Strictly one per pipeline instance; reset at frame start.
#[derive(Debug)]
pub struct VisionBlackboard {
    lut: Arc<ColourLut>,
    frame: Option<Frame>,
    kinematics: Option<KinematicsSnapshot>,
    horizon_markers: Option<Vec<Point2>>,
    horizon_hull: Option<HorizonHull>,
    segments: Option<Vec<ColourSegment>>,
    transitions: Option<TransitionSet>,
    balls: Option<Vec<BallDetection>>,
    goalposts: Option<Vec<Goalpost>>,
    obstacles: Option<Vec<Obstacle>>,
    field_lines: Option<Vec<FieldLine>>,
    statuses: [StageStatus; 7],
    durations_us: [Option<u64>; 7],
}

impl VisionBlackboard {
    pub fn new(lut: Arc<ColourLut>) -> VisionBlackboard {
        VisionBlackboard {
            lut,
            frame: None,
            kinematics: None,
            horizon_markers: None,
            horizon_hull: None,
            segments: None,
            transitions: None,
            balls: None,
            goalposts: None,
            obstacles: None,
            field_lines: None,
            statuses: [StageStatus::NotRun; 7],
            durations_us: [None; 7],
        }
    }

    /// Start a new frame: clear every per-frame slot (the LUT persists),
    /// store the inputs, reset all stage statuses to not-run.
    pub fn begin_frame(&mut self, frame: Frame, kinematics: KinematicsSnapshot) {
        self.frame = Some(frame);
        self.kinematics = Some(kinematics);
        self.horizon_markers = None;
        self.horizon_hull = None;
        self.segments = None;
        self.transitions = None;
        self.balls = None;
        self.goalposts = None;
        self.obstacles = None;
        self.field_lines = None;
        self.statuses = [StageStatus::NotRun; 7];
        self.durations_us = [None; 7];
    }

    /// Swap in a new lookup table; survives `begin_frame`.
    pub fn set_lut(&mut self, lut: Arc<ColourLut>) {
        self.lut = lut;
    }

    fn check_producer(&self, slot: Slot, stage: Stage) -> Result<(), BlackboardError> {
        let expected = slot.producer().expect("input slots have no producer");
        if stage != expected {
            return Err(BlackboardError::WrongProducer {
                slot,
                stage,
                expected,
            });
        }
        Ok(())
    }

    fn check_readable(&self, slot: Slot) -> Result<(), BlackboardError> {
        match slot.producer() {
            None => Ok(()),
            Some(producer) => {
                let status = self.statuses[producer.index()];
                if status == StageStatus::Ok {
                    Ok(())
                } else {
                    Err(BlackboardError::SlotNotReady {
                        slot,
                        producer,
                        status,
                    })
                }
            }
        }
    }

    // ---- input slots -------------------------------------------------

    pub fn frame(&self) -> Result<&Frame, BlackboardError> {
        self.frame
            .as_ref()
            .ok_or(BlackboardError::NoFrame { slot: Slot::Frame })
    }

    pub fn kinematics(&self) -> Result<&KinematicsSnapshot, BlackboardError> {
        self.kinematics.as_ref().ok_or(BlackboardError::NoFrame {
            slot: Slot::Kinematics,
        })
    }

    pub fn lut(&self) -> &Arc<ColourLut> {
        &self.lut
    }

    // ---- posting -----------------------------------------------------

    /// Post the green-horizon products (markers and hull fill together).
    pub fn post_green_horizon(
        &mut self,
        stage: Stage,
        horizon: GreenHorizon,
    ) -> Result<(), BlackboardError> {
        self.check_producer(Slot::HorizonMarkers, stage)?;
        self.horizon_markers = Some(horizon.markers);
        self.horizon_hull = Some(horizon.hull);
        self.statuses[stage.index()] = StageStatus::Ok;
        Ok(())
    }

    pub fn post_segments(
        &mut self,
        stage: Stage,
        segments: Vec<ColourSegment>,
    ) -> Result<(), BlackboardError> {
        self.check_producer(Slot::Segments, stage)?;
        self.segments = Some(segments);
        self.statuses[stage.index()] = StageStatus::Ok;
        Ok(())
    }

    pub fn post_transitions(
        &mut self,
        stage: Stage,
        transitions: TransitionSet,
    ) -> Result<(), BlackboardError> {
        self.check_producer(Slot::Transitions, stage)?;
        self.transitions = Some(transitions);
        self.statuses[stage.index()] = StageStatus::Ok;
        Ok(())
    }

    pub fn post_balls(
        &mut self,
        stage: Stage,
        balls: Vec<BallDetection>,
    ) -> Result<(), BlackboardError> {
        self.check_producer(Slot::Balls, stage)?;
        self.balls = Some(balls);
        self.statuses[stage.index()] = StageStatus::Ok;
        Ok(())
    }

    pub fn post_goalposts(
        &mut self,
        stage: Stage,
        goalposts: Vec<Goalpost>,
    ) -> Result<(), BlackboardError> {
        self.check_producer(Slot::Goalposts, stage)?;
        self.goalposts = Some(goalposts);
        self.statuses[stage.index()] = StageStatus::Ok;
        Ok(())
    }

    pub fn post_obstacles(
        &mut self,
        stage: Stage,
        obstacles: Vec<Obstacle>,
    ) -> Result<(), BlackboardError> {
        self.check_producer(Slot::Obstacles, stage)?;
        self.obstacles = Some(obstacles);
        self.statuses[stage.index()] = StageStatus::Ok;
        Ok(())
    }

    pub fn post_field_lines(
        &mut self,
        stage: Stage,
        lines: Vec<FieldLine>,
    ) -> Result<(), BlackboardError> {
        self.check_producer(Slot::FieldLines, stage)?;
        self.field_lines = Some(lines);
        self.statuses[stage.index()] = StageStatus::Ok;
        Ok(())
    }

    // ---- reading -----------------------------------------------------

    pub fn horizon_markers(&self) -> Result<&[Point2], BlackboardError> {
        self.check_readable(Slot::HorizonMarkers)?;
        Ok(self.horizon_markers.as_deref().unwrap_or_default())
    }

    pub fn horizon_hull(&self) -> Result<&HorizonHull, BlackboardError> {
        self.check_readable(Slot::HorizonHull)?;
        Ok(self.horizon_hull.as_ref().expect("status ok implies slot"))
    }

    pub fn segments(&self) -> Result<&[ColourSegment], BlackboardError> {
        self.check_readable(Slot::Segments)?;
        Ok(self.segments.as_deref().unwrap_or_default())
    }

    pub fn transitions(&self) -> Result<&TransitionSet, BlackboardError> {
        self.check_readable(Slot::Transitions)?;
        Ok(self.transitions.as_ref().expect("status ok implies slot"))
    }

    pub fn balls(&self) -> Result<&[BallDetection], BlackboardError> {
        self.check_readable(Slot::Balls)?;
        Ok(self.balls.as_deref().unwrap_or_default())
    }

    pub fn goalposts(&self) -> Result<&[Goalpost], BlackboardError> {
        self.check_readable(Slot::Goalposts)?;
        Ok(self.goalposts.as_deref().unwrap_or_default())
    }

    pub fn obstacles(&self) -> Result<&[Obstacle], BlackboardError> {
        self.check_readable(Slot::Obstacles)?;
        Ok(self.obstacles.as_deref().unwrap_or_default())
    }

    pub fn field_lines(&self) -> Result<&[FieldLine], BlackboardError> {
        self.check_readable(Slot::FieldLines)?;
        Ok(self.field_lines.as_deref().unwrap_or_default())
    }

    // ---- status ledger -------------------------------------------------

    pub fn status(&self, stage: Stage) -> StageStatus {
        self.statuses[stage.index()]
    }

    pub fn set_status(&mut self, stage: Stage, status: StageStatus) {
        self.statuses[stage.index()] = status;
    }

    pub fn duration_us(&self, stage: Stage) -> Option<u64> {
        self.durations_us[stage.index()]
    }

    pub fn record_duration(&mut self, stage: Stage, micros: u64) {
        self.durations_us[stage.index()] = Some(micros);
    }
}
