//! The four feature detectors and the shared multi-model RANSAC line
//! extractor.

mod ball;
mod goal;
mod lines;
mod obstacle;
mod ransac;

pub use ball::detect_ball;
pub use goal::detect_goalposts;
pub use lines::detect_field_lines;
pub use obstacle::detect_obstacles;
pub use ransac::{ransac_lines, ransac_lines_filtered};

use serde::{Deserialize, Serialize};

use crate::geometry::{Line2, Point2};

/// Multi-model RANSAC parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RansacParams {
    /// Random 2-point samples tried per model.
    pub iterations: u32,
    /// Inlier distance threshold in pixels.
    pub threshold: f64,
    /// Minimum inlier count for a model to be accepted.
    pub min_consensus: usize,
    /// Maximum number of models extracted from one point set.
    pub max_models: usize,
    pub seed: u64,
}

impl Default for RansacParams {
    fn default() -> Self {
        RansacParams {
            iterations: 100,
            threshold: 2.0,
            min_consensus: 10,
            max_models: 6,
            seed: 0,
        }
    }
}

impl RansacParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.iterations < 1 {
            return Err("ransac iterations must be >= 1".into());
        }
        if !(self.threshold > 0.0) {
            return Err("ransac threshold must be > 0".into());
        }
        if self.min_consensus < 2 {
            return Err("ransac min_consensus must be >= 2".into());
        }
        Ok(())
    }
}

/// Obstacle detection thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ObstacleParams {
    /// Minimum consecutive off-hull scans forming an obstacle.
    pub min_scan_run: usize,
    /// Pixels a marker must sit below the hull to count as off-hull.
    pub min_drop: f64,
}

impl Default for ObstacleParams {
    fn default() -> Self {
        ObstacleParams {
            min_scan_run: 3,
            min_drop: 5.0,
        }
    }
}

impl ObstacleParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.min_scan_run < 1 {
            return Err("obstacle min_scan_run must be >= 1".into());
        }
        if self.min_drop < 0.0 {
            return Err("obstacle min_drop must be >= 0".into());
        }
        Ok(())
    }
}

/// Goalpost extraction gates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GoalParams {
    /// Maximum edge tilt from vertical, degrees.
    pub max_tilt_deg: f64,
    /// Minimum edge-pair gap in pixels.
    pub min_post_width: f64,
    /// Maximum edge-pair gap as a fraction of frame width.
    pub max_post_width_frac: f64,
}

impl Default for GoalParams {
    fn default() -> Self {
        GoalParams {
            max_tilt_deg: 15.0,
            min_post_width: 4.0,
            max_post_width_frac: 1.0 / 3.0,
        }
    }
}

/// A detected ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallDetection {
    pub centre: Point2,
    pub radius: f64,
    /// Edges whose occlusion probe did not end on field or line colour.
    pub occluded_edges: Vec<BallEdge>,
    /// Number of transitions that voted for this ball.
    pub support: usize,
}

/// The four cardinal probe directions of the occlusion check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BallEdge {
    Top,
    Bottom,
    Left,
    Right,
}

/// A detected goalpost: two near-vertical edges paired around goal colour.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Goalpost {
    pub left_edge: Line2,
    pub right_edge: Line2,
    /// Foot of the post on the green horizon.
    pub base: Point2,
    /// Width in pixels at the base row.
    pub width: f64,
}

/// A break in the green horizon wide enough to be an object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Obstacle {
    pub left_x: i32,
    pub right_x: i32,
    /// The lowest off-hull marker of the run.
    pub base: Point2,
    /// Number of consecutive off-hull scans.
    pub scan_count: usize,
}

/// A fitted field line with the extent of its supporting transitions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldLine {
    pub line: Line2,
    /// Extremes of the inlier projections onto the line.
    pub endpoints: (Point2, Point2),
    pub inliers: usize,
}
