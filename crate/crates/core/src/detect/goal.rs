//! Goalpost detection: RANSAC over goal-rule transitions for near-vertical
//! edges, then a greedy pairing heuristic to turn edges into posts.

use crate::colour::{ColourClass, ColourLut};
use crate::frame::Frame;
use crate::geometry::Point2;
use crate::preprocess::{ColourTransition, HorizonHull};

use super::{ransac_lines_filtered, FieldLine, GoalParams, Goalpost, RansacParams};

struct Edge {
    model: FieldLine,
    /// Column of the edge at its mean inlier row.
    x_at_mean_y: f64,
    y_min: f64,
    y_max: f64,
}

/// Fraction of samples on the vertical midline between two edges that must
/// be goal coloured for the pair to count as a post.
const MIDLINE_MAJORITY: f64 = 0.5;
const MIDLINE_SAMPLES: u32 = 16;

fn midline_is_goal_coloured(
    frame: &Frame,
    lut: &ColourLut,
    x: f64,
    y_lo: f64,
    y_hi: f64,
) -> bool {
    if y_hi <= y_lo {
        return false;
    }
    let mut yellow = 0u32;
    let mut total = 0u32;
    for i in 0..MIDLINE_SAMPLES {
        let t = (i as f64 + 0.5) / MIDLINE_SAMPLES as f64;
        let sy = y_lo + t * (y_hi - y_lo);
        let px = x.round() as i32;
        let py = sy.round() as i32;
        if !frame.contains(px, py) {
            continue;
        }
        total += 1;
        if lut.classify_triple(frame.pixel(px as u32, py as u32)) == ColourClass::GoalYellow {
            yellow += 1;
        }
    }
    total > 0 && yellow as f64 / total as f64 > MIDLINE_MAJORITY
}

/// Detect zero, one or two goalposts from the goal-rule transition bucket.
///
/// Edges come from RANSAC restricted to near-vertical models; surviving
/// edges are sorted by column and greedily paired when their gap is a
/// plausible post width and the pixels between them are mostly goal
/// coloured. Unpaired edges are discarded, which is what keeps scattered
/// goal-coloured background noise from becoming posts.
pub fn detect_goalposts(
    transitions: &[ColourTransition],
    params: &RansacParams,
    goal: &GoalParams,
    hull: &HorizonHull,
    frame: &Frame,
    lut: &ColourLut,
) -> Vec<Goalpost> {
    let points: Vec<Point2> = transitions.iter().map(|t| t.position).collect();
    let max_tilt = goal.max_tilt_deg.to_radians();
    let models = ransac_lines_filtered(&points, params, |line| {
        line.angle_from_vertical() <= max_tilt
    });

    let mut edges: Vec<Edge> = models
        .into_iter()
        .map(|model| {
            let (e0, e1) = model.endpoints;
            let y_min = e0.y.min(e1.y) as f64;
            let y_max = e0.y.max(e1.y) as f64;
            let mean_y = (y_min + y_max) / 2.0;
            // Near-vertical models always solve for x.
            let x_at_mean_y = model.line.x_at(mean_y).unwrap_or(e0.x as f64);
            Edge {
                model,
                x_at_mean_y,
                y_min,
                y_max,
            }
        })
        .collect();
    edges.sort_by(|a, b| a.x_at_mean_y.total_cmp(&b.x_at_mean_y));

    let max_width = frame.width() as f64 * goal.max_post_width_frac;
    let mut posts = Vec::new();
    let mut i = 0;
    while i + 1 < edges.len() {
        let (left, right) = (&edges[i], &edges[i + 1]);
        let gap = right.x_at_mean_y - left.x_at_mean_y;
        let y_lo = left.y_min.max(right.y_min);
        let y_hi = left.y_max.min(right.y_max);
        let mid_x = (left.x_at_mean_y + right.x_at_mean_y) / 2.0;
        let plausible = gap >= goal.min_post_width
            && gap <= max_width
            && midline_is_goal_coloured(frame, lut, mid_x, y_lo, y_hi);
        if !plausible {
            i += 1;
            continue;
        }

        // The post base: centreline extended down to the green horizon, or
        // to the lowest inlier endpoint if that reaches further.
        let lowest_y = left.y_max.max(right.y_max);
        let base_y = hull.height_at(mid_x).max(lowest_y);
        let base_x = {
            let lx = left.model.line.x_at(base_y).unwrap_or(left.x_at_mean_y);
            let rx = right.model.line.x_at(base_y).unwrap_or(right.x_at_mean_y);
            (lx + rx) / 2.0
        };
        let width = {
            let lx = left.model.line.x_at(base_y).unwrap_or(left.x_at_mean_y);
            let rx = right.model.line.x_at(base_y).unwrap_or(right.x_at_mean_y);
            (rx - lx).abs()
        };
        posts.push(Goalpost {
            left_edge: left.model.line,
            right_edge: right.model.line,
            base: Point2::new(base_x.round() as i32, base_y.round() as i32),
            width,
        });
        i += 2;
    }
    posts
}
