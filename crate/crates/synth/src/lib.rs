//! Deterministic synthetic field-scene generator.
//!
//! Renders soccer-field scenes with exact per-frame ground truth and emits
//! them in the on-disk stream layout the replay backends consume. Scenes
//! are painted in the canonical bucket-centre colours of the default colour
//! rules, so a noise-free pixel always classifies exactly.

pub mod emit;
pub mod palette;
pub mod presets;
pub mod render;

pub use emit::{emit_stream, EmitOptions};
pub use render::render_scene;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use fieldvision_core::ColourClass;

/// Which side of the ball an occluder covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OcclusionSide {
    Left,
    Right,
    Top,
    Bottom,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallSpec {
    pub centre: (i32, i32),
    pub radius: i32,
    /// Fraction of the ball's extent covered by the occluder, in [0, 0.6].
    pub occlusion: f64,
    pub occlusion_from: OcclusionSide,
}

/// A goalpost standing on the horizon profile at `column`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GoalpostSpec {
    /// Left edge column of the post.
    pub column: i32,
    pub width: i32,
    pub height: i32,
}

/// A robot-like block breaking the green horizon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObstacleSpec {
    pub left_x: i32,
    pub right_x: i32,
    /// Lowest row of the block; must sit below the horizon profile.
    pub base_y: i32,
    /// Highest row of the block; must sit above the horizon profile.
    pub top_y: i32,
}

/// A painted straight field line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineSpec {
    pub from: (i32, i32),
    pub to: (i32, i32),
    pub stroke: i32,
}

/// Background clutter rectangle in a class's canonical colour.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClutterRect {
    pub x: i32,
    pub y: i32,
    pub w: i32,
    pub h: i32,
    pub colour: ColourClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Probability that a pixel is replaced by a random class colour.
    pub flip_probability: f64,
}

/// Full description of one rendered frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneSpec {
    pub width: u32,
    pub height: u32,
    /// Horizon profile control points (x, y), strictly increasing x; rows
    /// interpolate linearly and clamp beyond the ends.
    pub horizon: Vec<(i32, i32)>,
    /// Kinematic horizon line (a, b, c) recorded in the sidecar, if any.
    pub kinematic_horizon: Option<(f64, f64, f64)>,
    pub ball: Option<BallSpec>,
    pub goalposts: Vec<GoalpostSpec>,
    pub obstacles: Vec<ObstacleSpec>,
    pub lines: Vec<LineSpec>,
    pub clutter: Vec<ClutterRect>,
    pub noise: NoiseModel,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("frame dimensions must be at least 2x2")]
    BadDimensions,
    #[error("horizon profile needs at least one control point with increasing x")]
    BadHorizon,
    #[error("ball occlusion {0} outside [0, 0.6]")]
    BadOcclusion(f64),
    #[error("{what} extends outside the frame")]
    OutOfBounds { what: &'static str },
    #[error("obstacle must straddle the horizon profile (top above, base below)")]
    ObstacleOffHorizon,
    #[error("noise probability {0} outside [0, 1]")]
    BadNoise(f64),
}

impl SceneSpec {
    /// Interpolated horizon profile row at a column.
    pub fn horizon_y(&self, x: i32) -> f64 {
        match self.horizon.as_slice() {
            [] => 0.0,
            [only] => only.1 as f64,
            points => {
                let first = points[0];
                let last = points[points.len() - 1];
                if x <= first.0 {
                    return first.1 as f64;
                }
                if x >= last.0 {
                    return last.1 as f64;
                }
                let i = points.partition_point(|p| p.0 <= x);
                let (x0, y0) = points[i - 1];
                let (x1, y1) = points[i];
                let t = (x - x0) as f64 / (x1 - x0) as f64;
                y0 as f64 + t * (y1 - y0) as f64
            }
        }
    }

    pub fn validate(&self) -> Result<(), SpecError> {
        if self.width < 2 || self.height < 2 {
            return Err(SpecError::BadDimensions);
        }
        if self.horizon.is_empty() || self.horizon.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(SpecError::BadHorizon);
        }
        let (w, h) = (self.width as i32, self.height as i32);
        let inside = |x: i32, y: i32| x >= 0 && x < w && y >= 0 && y < h;
        if let Some(ball) = &self.ball {
            if !(0.0..=0.6).contains(&ball.occlusion) {
                return Err(SpecError::BadOcclusion(ball.occlusion));
            }
            let (cx, cy) = ball.centre;
            let r = ball.radius;
            if !inside(cx - r, cy - r) || !inside(cx + r, cy + r) {
                return Err(SpecError::OutOfBounds { what: "ball" });
            }
        }
        for post in &self.goalposts {
            let base = self.horizon_y(post.column + post.width / 2).round() as i32;
            if !inside(post.column, base - post.height) || !inside(post.column + post.width - 1, base)
            {
                return Err(SpecError::OutOfBounds { what: "goalpost" });
            }
        }
        for o in &self.obstacles {
            if !inside(o.left_x, o.top_y) || !inside(o.right_x, o.base_y) {
                return Err(SpecError::OutOfBounds { what: "obstacle" });
            }
            let mid = (o.left_x + o.right_x) / 2;
            let horizon = self.horizon_y(mid);
            if !((o.top_y as f64) < horizon && (o.base_y as f64) > horizon) {
                return Err(SpecError::ObstacleOffHorizon);
            }
        }
        for line in &self.lines {
            let pad = line.stroke.max(1);
            for (x, y) in [line.from, line.to] {
                if !inside(x - pad, y - pad) || !inside(x + pad, y + pad) {
                    return Err(SpecError::OutOfBounds { what: "field line" });
                }
            }
        }
        for c in &self.clutter {
            if !inside(c.x, c.y) || !inside(c.x + c.w - 1, c.y + c.h - 1) {
                return Err(SpecError::OutOfBounds { what: "clutter" });
            }
        }
        if !(0.0..=1.0).contains(&self.noise.flip_probability) {
            return Err(SpecError::BadNoise(self.noise.flip_probability));
        }
        Ok(())
    }
}

/// Exact per-frame truth, consistent with the rendered frame by
/// construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub frame_index: u64,
    pub horizon: Vec<(i32, i32)>,
    pub ball: Option<BallTruth>,
    pub posts: Vec<PostTruth>,
    pub obstacles: Vec<ObstacleTruth>,
    pub lines: Vec<LineTruth>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BallTruth {
    pub centre: (i32, i32),
    pub radius: i32,
    pub occlusion: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PostTruth {
    pub base: (i32, i32),
    pub width: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObstacleTruth {
    pub left_x: i32,
    pub right_x: i32,
    pub base: (i32, i32),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineTruth {
    pub from: (i32, i32),
    pub to: (i32, i32),
    pub stroke: i32,
}
