//! Core of a real-time colour-vision pipeline for field-sport robot scenes.
//!
//! The pipeline is organised as seven processing stages (green-horizon
//! detection, scanline classification, transition filtering and four feature
//! detectors) coordinated by a [`controller`] over a per-pipeline
//! [`blackboard`]. All sensory input enters through the [`source::FrameSource`]
//! data-wrapper contract; this crate has no knowledge of where frames come
//! from or how they are stored.

pub mod blackboard;
pub mod colour;
pub mod controller;
pub mod detect;
pub mod frame;
pub mod geometry;
pub mod preprocess;
pub mod source;
pub mod stage;
pub mod testkit;

pub use blackboard::{BlackboardError, StageStatus, VisionBlackboard};
pub use colour::{ColourClass, ColourLut, ColourRule, RuleError};
pub use controller::{
    Controller, DetectionSet, FrameReport, Mode, PipelineParams, PlanError, StagePlan,
    StageRecord, StageResult, StreamRunError, StreamSummary,
};
pub use detect::{
    BallDetection, FieldLine, GoalParams, Goalpost, Obstacle, ObstacleParams, RansacParams,
};
pub use frame::{Frame, FrameError, KinematicsSnapshot};
pub use geometry::{Line2, Point2};
pub use preprocess::{
    AboveHullPolicy, ColourSegment, ColourTransition, GreenHorizon, HorizonHull, Orientation,
    ScanConfig, TransitionSet,
};
pub use source::{FrameSource, SourceError};
pub use stage::Stage;
