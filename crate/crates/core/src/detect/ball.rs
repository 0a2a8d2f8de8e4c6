//! Ball detection from orange transitions.
//!
//! The candidate centre is the centroid of the below-hull ball-rule
//! transitions; a 4-point probe then walks the cardinal directions to
//! measure the radius and flag occluded edges. Handles partial occlusion of
//! up to half the ball.

use crate::colour::{ColourClass, ColourLut};
use crate::frame::Frame;
use crate::geometry::Point2;
use crate::preprocess::{ColourTransition, HorizonHull, ScanConfig};

use super::{BallDetection, BallEdge};

struct Ray {
    edge: BallEdge,
    /// Orange pixels traversed from the centre (exclusive).
    length: u32,
    /// Probe ended on a pixel inside the frame.
    in_frame: bool,
    /// Class of the terminating pixel, when in frame.
    terminal: Option<ColourClass>,
}

impl Ray {
    /// An edge is occluded when the probe did not end on field or line
    /// colour. Leaving the frame counts as occluded: nothing says the ball
    /// ends there.
    fn occluded(&self) -> bool {
        !matches!(
            self.terminal,
            Some(ColourClass::FieldGreen) | Some(ColourClass::LineWhite)
        )
    }
}

/// Walk from `centre` one pixel at a time in `(dx, dy)` while the pixels
/// stay orange, tolerating non-orange gaps up to `gap_tolerance` pixels.
fn cast_ray(
    frame: &Frame,
    lut: &ColourLut,
    centre: Point2,
    step: (i32, i32),
    edge: BallEdge,
    gap_tolerance: u32,
) -> Ray {
    let (mut x, mut y) = (centre.x, centre.y);
    let mut length = 0u32;
    let mut travelled = 0u32;
    let mut gap = 0u32;
    loop {
        let nx = x + step.0;
        let ny = y + step.1;
        if !frame.contains(nx, ny) {
            return Ray {
                edge,
                length,
                in_frame: false,
                terminal: None,
            };
        }
        travelled += 1;
        let class = lut.classify_triple(frame.pixel(nx as u32, ny as u32));
        if class == ColourClass::BallOrange {
            length = travelled;
            gap = 0;
        } else {
            gap += 1;
            if gap > gap_tolerance {
                return Ray {
                    edge,
                    length,
                    in_frame: true,
                    terminal: Some(class),
                };
            }
        }
        x = nx;
        y = ny;
    }
}

/// Detect at most one ball from the ball-rule transition bucket.
pub fn detect_ball(
    transitions: &[ColourTransition],
    frame: &Frame,
    lut: &ColourLut,
    hull: &HorizonHull,
    config: &ScanConfig,
) -> Vec<BallDetection> {
    let candidates: Vec<Point2> = transitions
        .iter()
        .map(|t| t.position)
        .filter(|p| hull.is_below(p.x as f64, p.y as f64))
        .collect();
    if candidates.len() < 2 {
        return Vec::new();
    }

    let (mut sx, mut sy) = (0i64, 0i64);
    for p in &candidates {
        sx += p.x as i64;
        sy += p.y as i64;
    }
    let n = candidates.len() as i64;
    let centre = Point2::new(
        ((sx as f64) / n as f64).round() as i32,
        ((sy as f64) / n as f64).round() as i32,
    );
    if !frame.contains(centre.x, centre.y) {
        return Vec::new();
    }

    let gap = config.min_segment_length;
    let rays = [
        cast_ray(frame, lut, centre, (0, -1), BallEdge::Top, gap),
        cast_ray(frame, lut, centre, (0, 1), BallEdge::Bottom, gap),
        cast_ray(frame, lut, centre, (-1, 0), BallEdge::Left, gap),
        cast_ray(frame, lut, centre, (1, 0), BallEdge::Right, gap),
    ];

    if rays.iter().filter(|r| r.in_frame).count() < 2 {
        return Vec::new();
    }

    // A clean opposite pair contributes half its span; a pair with an
    // occluded side falls back to the longest clean ray overall, which
    // tracks the true radius far better than the surviving ray of that
    // axis (the centroid shifts towards the visible side, shortening it).
    let max_clean_ray = rays
        .iter()
        .filter(|r| !r.occluded())
        .map(|r| r.length)
        .max();
    let mut estimates = Vec::with_capacity(2);
    for pair in [[&rays[0], &rays[1]], [&rays[2], &rays[3]]] {
        if pair.iter().all(|r| !r.occluded()) {
            estimates.push((pair[0].length + pair[1].length) as f64 / 2.0);
        } else if let Some(max) = max_clean_ray {
            estimates.push(max as f64);
        }
    }
    if estimates.is_empty() {
        return Vec::new();
    }
    let radius = estimates.iter().sum::<f64>() / estimates.len() as f64;
    if radius < 2.0 {
        return Vec::new();
    }

    let occluded_edges = rays
        .iter()
        .filter(|r| r.occluded())
        .map(|r| r.edge)
        .collect();

    vec![BallDetection {
        centre,
        radius,
        occluded_edges,
        support: candidates.len(),
    }]
}
