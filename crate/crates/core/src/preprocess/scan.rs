//! Scanline classification into colour segments.
//!
//! The image is split at the green horizon: below it both vertical and
//! horizontal scanlines run; above it only horizontal scanlines, since the
//! only features of interest up there are goalposts. The whole image is
//! never classified per-pixel.

use crate::colour::{ColourClass, ColourLut};
use crate::frame::Frame;
use crate::geometry::Point2;

use super::{AboveHullPolicy, ColourSegment, HorizonHull, Orientation, ScanConfig};

/// Run-length encode one span of a scanline into segments. Unclassified runs
/// and runs shorter than `min_len` become gaps.
fn encode_span(
    classes: impl Iterator<Item = ColourClass>,
    span_start: i32,
    min_len: u32,
    mut emit: impl FnMut(i32, i32, ColourClass),
) {
    let mut run_class = ColourClass::Unclassified;
    let mut run_start = span_start;
    let mut coord = span_start;
    for class in classes {
        if class != run_class {
            if run_class != ColourClass::Unclassified && (coord - run_start) as u32 >= min_len {
                emit(run_start, coord - 1, run_class);
            }
            run_class = class;
            run_start = coord;
        }
        coord += 1;
    }
    if run_class != ColourClass::Unclassified && (coord - run_start) as u32 >= min_len {
        emit(run_start, coord - 1, run_class);
    }
}

/// Classify scanlines against the hull and emit colour segments in scan
/// order: vertical scanlines (left to right) first, then horizontal rows
/// (top to bottom). Horizontal runs never bridge the hull boundary; each
/// below- or above-hull span is encoded independently.
pub fn classify_scanlines(
    frame: &Frame,
    lut: &ColourLut,
    hull: &HorizonHull,
    config: &ScanConfig,
) -> Vec<ColourSegment> {
    let width = frame.width();
    let height = frame.height();
    let min_len = config.min_segment_length.max(1);

    // Hull height per column, once.
    let heights: Vec<f64> = (0..width).map(|x| hull.height_at(x as f64)).collect();
    let start_rows: Vec<u32> = heights
        .iter()
        .map(|h| h.round().clamp(0.0, (height - 1) as f64) as u32)
        .collect();

    let mut segments = Vec::new();

    // Vertical scanlines, hull to bottom.
    let mut x = 0;
    while x < width {
        let top = start_rows[x as usize];
        let scan_index = x / config.vertical_spacing;
        encode_span(
            (top..height).map(|y| lut.classify_triple(frame.pixel(x, y))),
            top as i32,
            min_len,
            |y0, y1, colour| {
                segments.push(ColourSegment {
                    orientation: Orientation::Vertical,
                    scan_index,
                    start: Point2::new(x as i32, y0),
                    end: Point2::new(x as i32, y1),
                    colour,
                    length: (y1 - y0 + 1) as u32,
                });
            },
        );
        x += config.vertical_spacing;
    }

    let scan_above = match config.above_hull {
        AboveHullPolicy::Always => true,
        AboveHullPolicy::IfGoalEvidenceBelow => segments
            .iter()
            .any(|s| s.colour == ColourClass::GoalYellow),
    };

    // Horizontal scanlines, split into maximal below/above-hull spans.
    let mut y = 0;
    while y < height {
        let scan_index = y / config.horizontal_spacing;
        let mut span_start = 0u32;
        let mut span_below = y >= start_rows[0];
        for x in 1..=width {
            let below = x < width && y >= start_rows[x as usize];
            if x == width || below != span_below {
                if span_below || scan_above {
                    encode_span(
                        (span_start..x).map(|sx| lut.classify_triple(frame.pixel(sx, y))),
                        span_start as i32,
                        min_len,
                        |x0, x1, colour| {
                            segments.push(ColourSegment {
                                orientation: Orientation::Horizontal,
                                scan_index,
                                start: Point2::new(x0, y as i32),
                                end: Point2::new(x1, y as i32),
                                colour,
                                length: (x1 - x0 + 1) as u32,
                            });
                        },
                    );
                }
                span_start = x;
                span_below = below;
            }
        }
        y += config.horizontal_spacing;
    }

    segments
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colour::ColourRule;

    fn lut() -> ColourLut {
        ColourLut::build(&[
            ColourRule::new(ColourClass::FieldGreen, [60, 160], [72, 108], [72, 108]),
            ColourRule::new(ColourClass::BallOrange, [60, 160], [72, 108], [168, 212]),
        ])
        .unwrap()
    }

    const GREEN: (u8, u8, u8) = (110, 90, 90);
    const ORANGE: (u8, u8, u8) = (110, 90, 190);
    const GREY: (u8, u8, u8) = (40, 126, 126);

    fn paint(width: u32, height: u32, f: impl Fn(u32, u32) -> (u8, u8, u8)) -> Frame {
        let mut pixels = Vec::with_capacity((width * height * 3) as usize);
        for y in 0..height {
            for x in 0..width {
                let (l, cb, cr) = f(x, y);
                pixels.extend_from_slice(&[l, cb, cr]);
            }
        }
        Frame::new(width, height, pixels, 0, 0).unwrap()
    }

    fn flat_hull(y: i32, width: i32) -> HorizonHull {
        HorizonHull::new(vec![Point2::new(0, y), Point2::new(width - 1, y)])
    }

    #[test]
    fn uniform_green_yields_one_segment_per_vertical_scanline() {
        let frame = paint(32, 32, |_, _| GREEN);
        let hull = flat_hull(8, 32);
        let segments = classify_scanlines(&frame, &lut(), &hull, &ScanConfig::default());
        let verticals: Vec<_> = segments
            .iter()
            .filter(|s| s.orientation == Orientation::Vertical)
            .collect();
        assert_eq!(verticals.len(), 4); // x = 0, 8, 16, 24
        for s in verticals {
            assert_eq!(s.start.y, 8);
            assert_eq!(s.end.y, 31);
            assert_eq!(s.length, 24);
            assert_eq!(s.colour, ColourClass::FieldGreen);
        }
    }

    #[test]
    fn vertical_runs_split_at_class_changes() {
        // green rows 20..=40, orange 41..=46, green 47..=100.
        let frame = paint(16, 101, |_, y| match y {
            20..=40 => GREEN,
            41..=46 => ORANGE,
            47..=100 => GREEN,
            _ => GREY,
        });
        let hull = flat_hull(20, 16);
        let segments = classify_scanlines(&frame, &lut(), &hull, &ScanConfig::default());
        let column0: Vec<_> = segments
            .iter()
            .filter(|s| s.orientation == Orientation::Vertical && s.start.x == 0)
            .collect();
        assert_eq!(column0.len(), 3);
        assert_eq!((column0[0].start.y, column0[0].end.y), (20, 40));
        assert_eq!(column0[0].colour, ColourClass::FieldGreen);
        assert_eq!((column0[1].start.y, column0[1].end.y), (41, 46));
        assert_eq!(column0[1].colour, ColourClass::BallOrange);
        assert_eq!((column0[2].start.y, column0[2].end.y), (47, 100));
    }

    #[test]
    fn no_vertical_segments_above_the_hull() {
        let frame = paint(32, 32, |_, _| GREEN);
        let hull = flat_hull(16, 32);
        let segments = classify_scanlines(&frame, &lut(), &hull, &ScanConfig::default());
        assert!(segments
            .iter()
            .filter(|s| s.orientation == Orientation::Vertical)
            .all(|s| s.start.y >= 16));
    }

    #[test]
    fn short_runs_are_dropped_as_gaps() {
        // A single orange pixel inside green: below min_segment_length = 2.
        let frame = paint(8, 16, |x, y| if (x, y) == (0, 8) { ORANGE } else { GREEN });
        let hull = flat_hull(0, 8);
        let segments = classify_scanlines(&frame, &lut(), &hull, &ScanConfig::default());
        assert!(segments.iter().all(|s| s.colour != ColourClass::BallOrange));
    }

    #[test]
    fn goal_evidence_policy_skips_above_hull_without_yellow() {
        let frame = paint(32, 32, |_, y| if y >= 16 { GREEN } else { GREY });
        let hull = flat_hull(16, 32);
        let config = ScanConfig {
            above_hull: AboveHullPolicy::IfGoalEvidenceBelow,
            ..ScanConfig::default()
        };
        let with_policy = classify_scanlines(&frame, &lut(), &hull, &config);
        assert!(with_policy
            .iter()
            .filter(|s| s.orientation == Orientation::Horizontal)
            .all(|s| s.start.y >= 16));
    }
}
