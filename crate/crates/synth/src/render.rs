//! Scene rasterization.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fieldvision_core::{ColourClass, Frame};

use crate::palette;
use crate::{GroundTruth, ObstacleTruth, OcclusionSide, PostTruth, SceneSpec, SpecError};

struct Canvas {
    width: i32,
    height: i32,
    pixels: Vec<u8>,
}

impl Canvas {
    fn filled(width: u32, height: u32, colour: (u8, u8, u8)) -> Canvas {
        let mut pixels = Vec::with_capacity((width * height * 3) as usize);
        for _ in 0..width * height {
            pixels.extend_from_slice(&[colour.0, colour.1, colour.2]);
        }
        Canvas {
            width: width as i32,
            height: height as i32,
            pixels,
        }
    }

    #[inline]
    fn put(&mut self, x: i32, y: i32, colour: (u8, u8, u8)) {
        if x >= 0 && x < self.width && y >= 0 && y < self.height {
            let i = ((y * self.width + x) * 3) as usize;
            self.pixels[i] = colour.0;
            self.pixels[i + 1] = colour.1;
            self.pixels[i + 2] = colour.2;
        }
    }

    fn fill_rect(&mut self, x0: i32, y0: i32, x1: i32, y1: i32, colour: (u8, u8, u8)) {
        for y in y0.max(0)..=y1.min(self.height - 1) {
            for x in x0.max(0)..=x1.min(self.width - 1) {
                self.put(x, y, colour);
            }
        }
    }

    /// Stroke a straight segment by painting a disc of half the stroke
    /// width along a dense parameterization.
    fn stroke_line(&mut self, from: (i32, i32), to: (i32, i32), stroke: i32, c: (u8, u8, u8)) {
        let (x0, y0) = (from.0 as f64, from.1 as f64);
        let (x1, y1) = (to.0 as f64, to.1 as f64);
        let length = ((x1 - x0).powi(2) + (y1 - y0).powi(2)).sqrt().max(1.0);
        let steps = (length * 2.0).ceil() as i32;
        let half = stroke as f64 / 2.0;
        let reach = half.ceil() as i32;
        for s in 0..=steps {
            let t = s as f64 / steps as f64;
            let px = x0 + t * (x1 - x0);
            let py = y0 + t * (y1 - y0);
            for dy in -reach..=reach {
                for dx in -reach..=reach {
                    let qx = (px + dx as f64).round();
                    let qy = (py + dy as f64).round();
                    if (qx - px).powi(2) + (qy - py).powi(2) <= half * half {
                        self.put(qx as i32, qy as i32, c);
                    }
                }
            }
        }
    }
}

/// Rasterize one frame and its ground truth.
///
/// Z-order: background, clutter, field below the horizon profile, lines,
/// posts, ball (with its occluder), obstacles; seeded per-pixel noise last.
pub fn render_scene(spec: &SceneSpec, frame_index: u64) -> Result<(Frame, GroundTruth), SpecError> {
    spec.validate()?;
    let mut canvas = Canvas::filled(
        spec.width,
        spec.height,
        palette::paint(ColourClass::Unclassified),
    );

    for c in &spec.clutter {
        canvas.fill_rect(c.x, c.y, c.x + c.w - 1, c.y + c.h - 1, palette::paint(c.colour));
    }

    // Field: everything below the horizon profile.
    let green = palette::paint(ColourClass::FieldGreen);
    for x in 0..canvas.width {
        let top = spec.horizon_y(x).ceil().max(0.0) as i32;
        for y in top..canvas.height {
            canvas.put(x, y, green);
        }
    }

    for line in &spec.lines {
        canvas.stroke_line(
            line.from,
            line.to,
            line.stroke,
            palette::paint(ColourClass::LineWhite),
        );
    }

    let mut post_truths = Vec::new();
    let yellow = palette::paint(ColourClass::GoalYellow);
    for post in &spec.goalposts {
        let centre_x = post.column + post.width / 2;
        let base_y = spec.horizon_y(centre_x).round() as i32;
        canvas.fill_rect(
            post.column,
            base_y - post.height,
            post.column + post.width - 1,
            base_y,
            yellow,
        );
        post_truths.push(PostTruth {
            base: (centre_x, base_y),
            width: post.width,
        });
    }

    if let Some(ball) = &spec.ball {
        let (cx, cy) = ball.centre;
        let r = ball.radius;
        let orange = palette::paint(ColourClass::BallOrange);
        for y in cy - r..=cy + r {
            for x in cx - r..=cx + r {
                if (x - cx).pow(2) + (y - cy).pow(2) <= r * r {
                    canvas.put(x, y, orange);
                }
            }
        }
        if ball.occlusion > 0.0 {
            // Occluder: a goal-coloured block covering the stated fraction
            // of the ball's extent, with a small margin so probes terminate
            // inside it.
            let cut = (2.0 * r as f64 * ball.occlusion).round() as i32;
            let m = 2;
            let (x0, y0, x1, y1) = match ball.occlusion_from {
                OcclusionSide::Left => (cx - r - m, cy - r - m, cx - r + cut, cy + r + m),
                OcclusionSide::Right => (cx + r - cut, cy - r - m, cx + r + m, cy + r + m),
                OcclusionSide::Top => (cx - r - m, cy - r - m, cx + r + m, cy - r + cut),
                OcclusionSide::Bottom => (cx - r - m, cy + r - cut, cx + r + m, cy + r + m),
            };
            canvas.fill_rect(x0, y0, x1, y1, yellow);
        }
    }

    let mut obstacle_truths = Vec::new();
    for o in &spec.obstacles {
        canvas.fill_rect(o.left_x, o.top_y, o.right_x, o.base_y, palette::robot_grey());
        obstacle_truths.push(ObstacleTruth {
            left_x: o.left_x,
            right_x: o.right_x,
            base: ((o.left_x + o.right_x) / 2, o.base_y),
        });
    }

    if spec.noise.flip_probability > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ frame_index.wrapping_mul(0x9E37));
        let classes = ColourClass::ALL;
        for i in 0..(canvas.width * canvas.height) as usize {
            if rng.gen_bool(spec.noise.flip_probability) {
                let colour = palette::paint(classes[rng.gen_range(0..classes.len())]);
                canvas.pixels[i * 3] = colour.0;
                canvas.pixels[i * 3 + 1] = colour.1;
                canvas.pixels[i * 3 + 2] = colour.2;
            }
        }
    }

    let frame = Frame::new(spec.width, spec.height, canvas.pixels, frame_index, 0)
        .expect("validated dimensions");
    let truth = GroundTruth {
        frame_index,
        horizon: spec.horizon.clone(),
        ball: spec.ball.map(|b| crate::BallTruth {
            centre: b.centre,
            radius: b.radius,
            occlusion: b.occlusion,
        }),
        posts: post_truths,
        obstacles: obstacle_truths,
        lines: spec
            .lines
            .iter()
            .map(|l| crate::LineTruth {
                from: l.from,
                to: l.to,
                stroke: l.stroke,
            })
            .collect(),
    };
    Ok((frame, truth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{BallSpec, NoiseModel};
    use fieldvision_core::{ColourLut, KinematicsSnapshot, ScanConfig};

    fn base_spec() -> SceneSpec {
        SceneSpec {
            width: 160,
            height: 120,
            horizon: vec![(0, 40), (159, 48)],
            kinematic_horizon: None,
            ball: None,
            goalposts: Vec::new(),
            obstacles: Vec::new(),
            lines: Vec::new(),
            clutter: Vec::new(),
            noise: NoiseModel::default(),
            seed: 1,
        }
    }

    #[test]
    fn field_only_scene_classifies_green_below_horizon() {
        let spec = base_spec();
        let (frame, _) = render_scene(&spec, 0).unwrap();
        let lut = ColourLut::build(&crate::palette::field_rules()).unwrap();
        for x in [0u32, 80, 159] {
            let top = spec.horizon_y(x as i32).ceil() as u32;
            for y in [top, top + 10, 119] {
                assert_eq!(
                    lut.classify_triple(frame.pixel(x, y)),
                    ColourClass::FieldGreen
                );
            }
            assert_eq!(
                lut.classify_triple(frame.pixel(x, top.saturating_sub(3))),
                ColourClass::Unclassified
            );
        }
    }

    #[test]
    fn markers_follow_the_horizon_profile() {
        let spec = base_spec();
        let (frame, _) = render_scene(&spec, 0).unwrap();
        let lut = ColourLut::build(&crate::palette::field_rules()).unwrap();
        let config = ScanConfig::default();
        let horizon = fieldvision_core::preprocess::detect_green_horizon(
            &frame,
            &lut,
            &KinematicsSnapshot::invalid(),
            &config,
        );
        for m in &horizon.markers {
            let expected = spec.horizon_y(m.x).ceil();
            assert!(
                (m.y as f64 - expected).abs() <= config.min_green_run as f64,
                "marker {m:?} vs profile {expected}"
            );
        }
    }

    #[test]
    fn identical_spec_and_seed_render_byte_identical_frames() {
        let mut spec = base_spec();
        spec.noise.flip_probability = 0.02;
        spec.ball = Some(BallSpec {
            centre: (80, 80),
            radius: 12,
            occlusion: 0.0,
            occlusion_from: OcclusionSide::Left,
        });
        let (a, _) = render_scene(&spec, 3).unwrap();
        let (b, _) = render_scene(&spec, 3).unwrap();
        assert_eq!(a.raw(), b.raw());
        // A different frame index draws different noise.
        let (c, _) = render_scene(&spec, 4).unwrap();
        assert_ne!(a.raw(), c.raw());
    }

    #[test]
    fn occluded_ball_is_overpainted_on_the_stated_side() {
        let mut spec = base_spec();
        spec.ball = Some(BallSpec {
            centre: (80, 80),
            radius: 20,
            occlusion: 0.4,
            occlusion_from: OcclusionSide::Left,
        });
        let (frame, truth) = render_scene(&spec, 0).unwrap();
        let lut = ColourLut::build(&crate::palette::field_rules()).unwrap();
        // Left part of the disc is goal coloured, right part is orange.
        assert_eq!(
            lut.classify_triple(frame.pixel(65, 80)),
            ColourClass::GoalYellow
        );
        assert_eq!(
            lut.classify_triple(frame.pixel(90, 80)),
            ColourClass::BallOrange
        );
        assert_eq!(truth.ball.unwrap().occlusion, 0.4);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let mut spec = base_spec();
        spec.ball = Some(BallSpec {
            centre: (5, 5),
            radius: 10,
            occlusion: 0.0,
            occlusion_from: OcclusionSide::Left,
        });
        assert_eq!(
            render_scene(&spec, 0).unwrap_err(),
            SpecError::OutOfBounds { what: "ball" }
        );

        let mut spec = base_spec();
        spec.ball = Some(BallSpec {
            centre: (80, 80),
            radius: 10,
            occlusion: 0.9,
            occlusion_from: OcclusionSide::Left,
        });
        assert_eq!(render_scene(&spec, 0).unwrap_err(), SpecError::BadOcclusion(0.9));
    }
}
