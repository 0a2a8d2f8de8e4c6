//! Test support: independent brute-force oracles for the scanning
//! pipeline, shared by this crate's test suites and by downstream
//! acceptance tests. Nothing here reuses the implementation paths it
//! checks.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::colour::{ColourClass, ColourLut};
use crate::detect::RansacParams;
use crate::frame::Frame;
use crate::geometry::{fit_line_total_least_squares, Line2, Point2};
use crate::preprocess::{ColourSegment, HorizonHull, Orientation, ScanConfig, TransitionSet};

/// Canonical per-class paint values used by the random frame generator.
pub const CANONICAL_COLOURS: [(u8, u8, u8); 5] = [
    (110, 90, 90),   // field green
    (110, 90, 190),  // ball orange
    (182, 50, 142),  // goal yellow
    (230, 126, 126), // line white
    (40, 126, 126),  // unclassified grey
];

/// A frame of random content: half canonical class colours, half arbitrary
/// bytes, sized 24..96 per side.
pub fn random_frame(seed: u64) -> Frame {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = rng.gen_range(24..96);
    let height = rng.gen_range(24..96);
    let mut pixels = Vec::with_capacity((width * height * 3) as usize);
    for _ in 0..width * height {
        let (l, cb, cr) = if rng.gen_bool(0.5) {
            CANONICAL_COLOURS[rng.gen_range(0..CANONICAL_COLOURS.len())]
        } else {
            (rng.gen(), rng.gen(), rng.gen())
        };
        pixels.extend_from_slice(&[l, cb, cr]);
    }
    Frame::new(width, height, pixels, 0, 0).unwrap()
}

/// A random x-sorted marker set like green-horizon detection produces.
pub fn random_markers(seed: u64) -> Vec<Point2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.gen_range(1..=90);
    let mut x = 0i32;
    let mut markers = Vec::with_capacity(count);
    for _ in 0..count {
        markers.push(Point2::new(x, rng.gen_range(0..240)));
        x += rng.gen_range(1..=12);
    }
    markers
}

fn cross(o: Point2, p1: Point2, p2: Point2) -> i64 {
    (p1.x as i64 - o.x as i64) * (p2.y as i64 - o.y as i64)
        - (p1.y as i64 - o.y as i64) * (p2.x as i64 - o.x as i64)
}

/// Check the upper-hull invariants over a marker set: the hull is an
/// x-increasing subsequence of the markers, strictly convex viewed from
/// above, and dominates every marker.
pub fn check_hull_invariants(markers: &[Point2], hull: &HorizonHull) -> Result<(), String> {
    let vertices = hull.vertices();
    let mut cursor = 0;
    for v in vertices {
        match markers[cursor..].iter().position(|m| m == v) {
            Some(offset) => cursor += offset + 1,
            None => return Err(format!("hull vertex {v:?} is not a marker")),
        }
    }
    if !vertices.windows(2).all(|w| w[0].x < w[1].x) {
        return Err("hull x not strictly increasing".to_string());
    }
    for w in vertices.windows(3) {
        if cross(w[0], w[2], w[1]) >= 0 {
            return Err(format!("interior vertex {:?} not strictly above chord", w[1]));
        }
    }
    for m in markers {
        if (m.y as f64) < hull.height_at(m.x as f64) - 1e-6 {
            return Err(format!("marker {m:?} lies above the hull"));
        }
    }
    Ok(())
}

/// Re-derive the scan plan and per-span runs straight from the LUT and
/// compare with the classifier's segments: classified pixels of kept runs
/// must be covered with the right class, everything else must be a gap.
pub fn check_segmentation_oracle(
    frame: &Frame,
    lut: &ColourLut,
    hull: &HorizonHull,
    segments: &[ColourSegment],
    config: &ScanConfig,
) -> Result<(), String> {
    use std::collections::BTreeMap;

    let mut covered: BTreeMap<(u8, i32, i32), ColourClass> = BTreeMap::new();
    for s in segments {
        let o = match s.orientation {
            Orientation::Vertical => 0u8,
            Orientation::Horizontal => 1u8,
        };
        match s.orientation {
            Orientation::Vertical => {
                for y in s.start.y..=s.end.y {
                    if covered.insert((o, s.start.x, y), s.colour).is_some() {
                        return Err(format!("pixel ({}, {y}) covered twice", s.start.x));
                    }
                }
            }
            Orientation::Horizontal => {
                for x in s.start.x..=s.end.x {
                    if covered.insert((o, x, s.start.y), s.colour).is_some() {
                        return Err(format!("pixel ({x}, {}) covered twice", s.start.y));
                    }
                }
            }
        }
    }

    let width = frame.width();
    let height = frame.height();
    let start_rows: Vec<u32> = (0..width)
        .map(|x| {
            hull.height_at(x as f64)
                .round()
                .clamp(0.0, (height - 1) as f64) as u32
        })
        .collect();

    let check_span = |o: u8, pts: &[(i32, i32)]| -> Result<(), String> {
        let mut i = 0;
        while i < pts.len() {
            let class = lut.classify_triple(frame.pixel(pts[i].0 as u32, pts[i].1 as u32));
            let mut j = i + 1;
            while j < pts.len()
                && lut.classify_triple(frame.pixel(pts[j].0 as u32, pts[j].1 as u32)) == class
            {
                j += 1;
            }
            let kept = class != ColourClass::Unclassified
                && (j - i) as u32 >= config.min_segment_length;
            for &(x, y) in &pts[i..j] {
                match covered.get(&(o, x, y)) {
                    Some(&c) => {
                        if !(kept && c == class) {
                            return Err(format!(
                                "pixel ({x},{y}) covered as {c:?}, expected kept={kept} {class:?}"
                            ));
                        }
                    }
                    None => {
                        if kept {
                            return Err(format!("pixel ({x},{y}) of a kept {class:?} run missing"));
                        }
                    }
                }
            }
            i = j;
        }
        Ok(())
    };

    let mut x = 0;
    while x < width {
        let pts: Vec<(i32, i32)> = (start_rows[x as usize]..height)
            .map(|y| (x as i32, y as i32))
            .collect();
        check_span(0, &pts)?;
        x += config.vertical_spacing;
    }
    let mut y = 0;
    while y < height {
        let mut span: Vec<(i32, i32)> = Vec::new();
        let mut below = y >= start_rows[0];
        for x in 0..=width {
            let b = x < width && y >= start_rows[x as usize];
            if x == width || b != below {
                check_span(1, &span)?;
                span.clear();
                below = b;
            }
            if x < width {
                span.push((x as i32, y as i32));
            }
        }
        y += config.horizontal_spacing;
    }
    Ok(())
}

/// Brute-force recount of one rule bucket from independently regrouped
/// segment lists: consumed-pair adjacencies plus boundaries against
/// unclassified content.
pub fn recount_bucket(
    segments: &[ColourSegment],
    class: ColourClass,
    gap_tolerance: u32,
) -> usize {
    use std::collections::BTreeMap;

    let mut groups: BTreeMap<(u8, u32), Vec<&ColourSegment>> = BTreeMap::new();
    for s in segments {
        let o = match s.orientation {
            Orientation::Vertical => 0u8,
            Orientation::Horizontal => 1u8,
        };
        groups.entry((o, s.scan_index)).or_default().push(s);
    }
    let mut expected = 0usize;
    for group in groups.values_mut() {
        group.sort_by_key(|s| s.start_coord());
        let bridged = |a: &ColourSegment, b: &ColourSegment| {
            let gap = b.start_coord() - a.end_coord() - 1;
            (0..=gap_tolerance as i32).contains(&gap)
        };
        for (i, s) in group.iter().enumerate() {
            let involved = s.colour == class;
            if (i == 0 || !bridged(group[i - 1], s)) && involved {
                expected += 1;
            }
            if i + 1 < group.len() && bridged(s, group[i + 1]) {
                if s.colour != group[i + 1].colour
                    && (involved || group[i + 1].colour == class)
                {
                    expected += 1;
                }
            } else if involved {
                expected += 1;
            }
        }
    }
    expected
}

/// Exhaustive analogue of the RANSAC sampling loop: best consensus over all
/// point pairs instead of random samples, the same total-least-squares
/// refit over the winner's inliers, remove and repeat. Only usable on small
/// instances.
pub fn ransac_oracle_lines(points: &[Point2], params: &RansacParams) -> Vec<(Line2, usize)> {
    let mut remaining: Vec<(f64, f64)> = points.iter().map(|p| p.as_f64()).collect();
    let mut models = Vec::new();
    while models.len() < params.max_models && remaining.len() >= params.min_consensus.max(2) {
        let mut best: Option<(Line2, usize)> = None;
        for i in 0..remaining.len() {
            for j in (i + 1)..remaining.len() {
                let Some(line) = Line2::through(remaining[i], remaining[j]) else {
                    continue;
                };
                let consensus = remaining
                    .iter()
                    .filter(|&&p| line.distance_to(p) <= params.threshold)
                    .count();
                if best.as_ref().is_none_or(|(_, c)| consensus > *c) {
                    best = Some((line, consensus));
                }
            }
        }
        let Some((sample_line, consensus)) = best else {
            break;
        };
        if consensus < params.min_consensus {
            break;
        }
        let inlier_pts: Vec<(f64, f64)> = remaining
            .iter()
            .copied()
            .filter(|&p| sample_line.distance_to(p) <= params.threshold)
            .collect();
        let line = fit_line_total_least_squares(&inlier_pts).unwrap_or(sample_line);
        let (inliers, rest): (Vec<_>, Vec<_>) = remaining
            .iter()
            .partition(|&&p| line.distance_to(p) <= params.threshold);
        models.push((line, inliers.len()));
        remaining = rest;
    }
    models
}

/// Compare every bucket of a transition set against the brute-force
/// recount.
pub fn check_transition_recount(
    segments: &[ColourSegment],
    set: &TransitionSet,
    gap_tolerance: u32,
) -> Result<(), String> {
    for (name, bucket, class) in [
        ("ball", &set.ball, ColourClass::BallOrange),
        ("goal", &set.goal, ColourClass::GoalYellow),
        ("line", &set.line, ColourClass::LineWhite),
    ] {
        let expected = recount_bucket(segments, class, gap_tolerance);
        if bucket.len() != expected {
            return Err(format!(
                "{name} bucket holds {} transitions, recount says {expected}",
                bucket.len()
            ));
        }
    }
    Ok(())
}
