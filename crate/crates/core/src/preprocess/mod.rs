//! The three shared stages feeding all detectors: green-horizon detection,
//! scanline classification into colour segments, and transition filtering.

mod horizon;
mod scan;
mod transitions;

pub use horizon::detect_green_horizon;
pub use scan::classify_scanlines;
pub use transitions::filter_transitions;

use serde::{Deserialize, Serialize};

use crate::colour::ColourClass;
use crate::geometry::Point2;

/// Whether horizontal scanlines cover the region above the green horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AboveHullPolicy {
    /// Always scan above the hull. Keeps output independent of scene content
    /// and of the controller mode.
    #[default]
    Always,
    /// Scan above the hull only when the below-hull segments contain goal
    /// colour; the only features up there are goalposts.
    IfGoalEvidenceBelow,
}

/// Scanline geometry and run-length thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScanConfig {
    /// Pixels between vertical scanlines.
    pub vertical_spacing: u32,
    /// Pixels between horizontal scanlines.
    pub horizontal_spacing: u32,
    /// Consecutive green pixels required to mark the field start.
    pub min_green_run: u32,
    /// Minimum stored segment length in pixels; shorter runs become gaps.
    pub min_segment_length: u32,
    pub above_hull: AboveHullPolicy,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            vertical_spacing: 8,
            horizontal_spacing: 8,
            min_green_run: 3,
            min_segment_length: 2,
            above_hull: AboveHullPolicy::Always,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.vertical_spacing < 1 {
            return Err("vertical_spacing must be >= 1".into());
        }
        if self.horizontal_spacing < 1 {
            return Err("horizontal_spacing must be >= 1".into());
        }
        if self.min_green_run < 1 {
            return Err("min_green_run must be >= 1".into());
        }
        Ok(())
    }
}

/// Scanline direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Vertical,
    Horizontal,
}

/// A maximal run of same-class pixels along one scanline. Unclassified runs
/// are never stored; they are the gaps between segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColourSegment {
    pub orientation: Orientation,
    /// Ordinal of the scanline within its orientation.
    pub scan_index: u32,
    pub start: Point2,
    pub end: Point2,
    pub colour: ColourClass,
    /// Pixels covered: coordinate difference + 1.
    pub length: u32,
}

impl ColourSegment {
    /// Position of the start along the scan direction.
    pub fn start_coord(&self) -> i32 {
        match self.orientation {
            Orientation::Vertical => self.start.y,
            Orientation::Horizontal => self.start.x,
        }
    }

    /// Position of the end along the scan direction.
    pub fn end_coord(&self) -> i32 {
        match self.orientation {
            Orientation::Vertical => self.end.y,
            Orientation::Horizontal => self.end.x,
        }
    }
}

/// Boundary between two adjacent segments of different classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColourTransition {
    /// Midpoint between the adjoining segment ends.
    pub position: Point2,
    pub before: ColourClass,
    pub after: ColourClass,
    pub orientation: Orientation,
}

impl ColourTransition {
    pub fn involves(&self, class: ColourClass) -> bool {
        self.before == class || self.after == class
    }
}

/// Transitions bucketed by the detector rule they satisfy. A transition can
/// appear in several buckets.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TransitionSet {
    /// orange -> any or any -> orange.
    pub ball: Vec<ColourTransition>,
    /// yellow -> any or any -> yellow.
    pub goal: Vec<ColourTransition>,
    /// white -> any or any -> white.
    pub line: Vec<ColourTransition>,
}

/// Piecewise-linear upper boundary of the field, as hull vertices with
/// strictly increasing x. Total as a function of x: outside the vertex range
/// the height extends horizontally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HorizonHull(Vec<Point2>);

impl HorizonHull {
    pub fn new(vertices: Vec<Point2>) -> HorizonHull {
        debug_assert!(vertices.windows(2).all(|w| w[0].x < w[1].x));
        HorizonHull(vertices)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.0
    }

    /// Interpolated hull height (row) at a column. Columns outside the
    /// vertex range take the nearest endpoint's height.
    pub fn height_at(&self, x: f64) -> f64 {
        match self.0.as_slice() {
            [] => 0.0,
            [only] => only.y as f64,
            vertices => {
                let first = vertices[0];
                let last = vertices[vertices.len() - 1];
                if x <= first.x as f64 {
                    return first.y as f64;
                }
                if x >= last.x as f64 {
                    return last.y as f64;
                }
                let i = vertices.partition_point(|v| (v.x as f64) <= x);
                let p = vertices[i - 1];
                let q = vertices[i];
                let t = (x - p.x as f64) / ((q.x - p.x) as f64);
                p.y as f64 + t * ((q.y - p.y) as f64)
            }
        }
    }

    /// True when the pixel row `y` at column `x` is on or below the hull.
    pub fn is_below(&self, x: f64, y: f64) -> bool {
        y >= self.height_at(x)
    }
}

/// Output of green-horizon detection: the first-green markers (one per
/// vertical scanline, increasing x) and their upper convex hull.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenHorizon {
    pub markers: Vec<Point2>,
    pub hull: HorizonHull,
}
