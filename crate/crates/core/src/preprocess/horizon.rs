//! Green-horizon detection.
//!
//! Vertical scanlines walk down from the kinematic horizon looking for the
//! first run of green pixels; the upper convex hull over those markers is
//! the boundary between field and background. Linear in the scanned pixels;
//! the hull pass is linear in the marker count because markers arrive
//! x-sorted.

use crate::colour::{ColourClass, ColourLut};
use crate::frame::{Frame, KinematicsSnapshot};
use crate::geometry::{upper_hull, Point2};

use super::{GreenHorizon, HorizonHull, ScanConfig};

/// Scan start row for a column: the kinematic horizon clamped into the
/// frame, or the top edge when kinematics are invalid.
fn start_row(kinematics: &KinematicsSnapshot, x: u32, height: u32) -> u32 {
    if !kinematics.valid {
        return 0;
    }
    match kinematics.horizon.y_at(x as f64) {
        Some(y) => y.ceil().clamp(0.0, (height - 1) as f64) as u32,
        // A vertical "horizon" carries no usable row; scan the full column.
        None => 0,
    }
}

/// Find the first-green marker per vertical scanline and build the hull.
///
/// A marker is the first pixel at or below the kinematic horizon that begins
/// a run of at least `min_green_run` green pixels; scanlines with no such
/// run contribute a bottom-edge marker so the hull stays total.
pub fn detect_green_horizon(
    frame: &Frame,
    lut: &ColourLut,
    kinematics: &KinematicsSnapshot,
    config: &ScanConfig,
) -> GreenHorizon {
    let width = frame.width();
    let height = frame.height();
    let mut markers = Vec::with_capacity((width / config.vertical_spacing + 1) as usize);

    let mut x = 0;
    while x < width {
        let top = start_row(kinematics, x, height);
        let mut marker_y = height - 1;
        let mut run = 0u32;
        for y in top..height {
            if lut.classify_triple(frame.pixel(x, y)) == ColourClass::FieldGreen {
                run += 1;
                if run == config.min_green_run {
                    marker_y = y + 1 - config.min_green_run;
                    break;
                }
            } else {
                run = 0;
            }
        }
        markers.push(Point2::new(x as i32, marker_y as i32));
        x += config.vertical_spacing;
    }

    let hull = HorizonHull::new(upper_hull(&markers));
    GreenHorizon { markers, hull }
}
