//! Obstacle detection from breaks in the green horizon.
//!
//! First-green markers that sit measurably below the hull are obstacle
//! candidates; runs of enough consecutive off-hull scans become obstacles.

use crate::geometry::Point2;
use crate::preprocess::HorizonHull;

use super::{Obstacle, ObstacleParams};

/// Find obstacles as maximal runs of consecutive off-hull markers.
///
/// A marker is off-hull when its row exceeds the hull's interpolated row at
/// its column by at least `min_drop`. Width comes from the outer scanlines
/// of the run, the base from its lowest marker.
pub fn detect_obstacles(
    markers: &[Point2],
    hull: &HorizonHull,
    params: &ObstacleParams,
) -> Vec<Obstacle> {
    let mut obstacles = Vec::new();
    let mut run: Vec<usize> = Vec::new();

    let mut flush = |run: &mut Vec<usize>| {
        if run.len() >= params.min_scan_run {
            let first = markers[run[0]];
            let last = markers[*run.last().unwrap()];
            let base = run
                .iter()
                .map(|&i| markers[i])
                .max_by_key(|m| m.y)
                .unwrap();
            obstacles.push(Obstacle {
                left_x: first.x,
                right_x: last.x,
                base,
                scan_count: run.len(),
            });
        }
        run.clear();
    };

    for (i, marker) in markers.iter().enumerate() {
        let drop = marker.y as f64 - hull.height_at(marker.x as f64);
        if drop >= params.min_drop {
            run.push(i);
        } else {
            flush(&mut run);
        }
    }
    flush(&mut run);
    obstacles
}
