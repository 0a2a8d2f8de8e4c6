//! Bundled scene presets: five stream analogues spanning clean lab scenes,
//! noisy cluttered scenes and obstacle-heavy scenes, plus a goal-and-line
//! rich stream for suppression benchmarks.

use std::f64::consts::TAU;

use fieldvision_core::ColourClass;

use crate::{
    BallSpec, ClutterRect, GoalpostSpec, LineSpec, NoiseModel, ObstacleSpec, OcclusionSide,
    SceneSpec,
};

pub const WIDTH: u32 = 640;
pub const HEIGHT: u32 = 480;

pub const PRESET_NAMES: [&str; 5] = ["lab1", "lab2", "difficult", "rc2012", "rc2013"];

/// Default frame count of each preset stream.
pub fn default_frame_count(name: &str) -> Option<usize> {
    match name {
        "lab1" => Some(5090),
        "lab2" => Some(470),
        "difficult" => Some(175),
        "rc2012" => Some(2640),
        "rc2013" => Some(625),
        _ => None,
    }
}

fn base(seed: u64, noise: f64) -> SceneSpec {
    SceneSpec {
        width: WIDTH,
        height: HEIGHT,
        horizon: vec![(0, 150), (639, 162)],
        kinematic_horizon: Some((0.0, 1.0, -130.0)),
        ball: None,
        goalposts: Vec::new(),
        obstacles: Vec::new(),
        lines: Vec::new(),
        clutter: Vec::new(),
        noise: NoiseModel {
            flip_probability: noise,
        },
        seed,
    }
}

/// Ball on a closed elliptical path, always inside the field.
fn orbiting_ball(i: usize, radius: i32, occlusion: f64) -> BallSpec {
    let theta = TAU * (i as f64) / 120.0;
    BallSpec {
        centre: (
            (320.0 + 180.0 * theta.cos()).round() as i32,
            (310.0 + 65.0 * theta.sin()).round() as i32,
        ),
        radius,
        occlusion,
        occlusion_from: OcclusionSide::Left,
    }
}

fn two_posts() -> Vec<GoalpostSpec> {
    vec![
        GoalpostSpec {
            column: 120,
            width: 18,
            height: 116,
        },
        GoalpostSpec {
            column: 470,
            width: 18,
            height: 116,
        },
    ]
}

fn two_lines() -> Vec<LineSpec> {
    vec![
        LineSpec {
            from: (50, 220),
            to: (590, 238),
            stroke: 2,
        },
        LineSpec {
            from: (80, 420),
            to: (560, 402),
            stroke: 2,
        },
    ]
}

/// An obstacle block straddling the horizon, drifting slowly with `i`.
///
/// Placement keeps clear profile on both sides even at full drift: a break
/// touching the frame edge has no outer marker to bridge from, so its
/// outermost markers become hull endpoints and stop counting as a break.
fn obstacle(i: usize, left: i32, width: i32, phase: f64) -> ObstacleSpec {
    let drift = (12.0 * (TAU * i as f64 / 240.0 + phase).sin()).round() as i32;
    ObstacleSpec {
        left_x: left + drift,
        right_x: left + drift + width,
        base_y: 200,
        top_y: 122,
    }
}

/// Small background blobs. Goal-coloured blobs stay short and vertically
/// separated so they can never accumulate a post-like edge.
fn clutter_rects(heavy: bool) -> Vec<ClutterRect> {
    let mut rects = vec![
        ClutterRect {
            x: 390,
            y: 30,
            w: 64,
            h: 22,
            colour: ColourClass::LineWhite,
        },
        ClutterRect {
            x: 210,
            y: 64,
            w: 30,
            h: 26,
            colour: ColourClass::GoalYellow,
        },
    ];
    if heavy {
        rects.extend([
            ClutterRect {
                x: 30,
                y: 20,
                w: 48,
                h: 30,
                colour: ColourClass::LineWhite,
            },
            ClutterRect {
                x: 540,
                y: 84,
                w: 26,
                h: 22,
                colour: ColourClass::GoalYellow,
            },
            ClutterRect {
                x: 300,
                y: 16,
                w: 80,
                h: 24,
                colour: ColourClass::LineWhite,
            },
            ClutterRect {
                x: 100,
                y: 90,
                w: 56,
                h: 18,
                colour: ColourClass::LineWhite,
            },
        ]);
    }
    rects
}

/// Build the spec sequence for a named preset. `noise_override` forces the
/// per-pixel flip probability (0.0 renders the noise-free variant).
pub fn preset_specs(
    name: &str,
    frames: usize,
    noise_override: Option<f64>,
    seed: u64,
) -> Option<Vec<SceneSpec>> {
    if !PRESET_NAMES.contains(&name) {
        return None;
    }
    let specs = (0..frames)
        .map(|i| {
            let mut spec = match name {
                // Controlled lab scene: everything visible, light noise.
                "lab1" => {
                    let mut s = base(seed, 0.002);
                    s.ball = Some(orbiting_ball(i, 18, 0.0));
                    s.goalposts = two_posts();
                    s.lines = two_lines();
                    s.obstacles = vec![obstacle(i, 500, 100, 0.0)];
                    s.clutter = clutter_rects(false);
                    s
                }
                // Stable lighting, no clutter, no occlusion.
                "lab2" => {
                    let mut s = base(seed, 0.0);
                    s.ball = Some(orbiting_ball(i, 20, 0.0));
                    s.goalposts = two_posts();
                    s.lines = two_lines();
                    s
                }
                // Poor imaging: heavy noise and clutter, intermittent ball
                // occlusion.
                "difficult" => {
                    let mut s = base(seed, 0.02);
                    let occlusion = if i % 4 == 0 { 0.25 } else { 0.0 };
                    s.ball = Some(orbiting_ball(i, 20, occlusion));
                    s.goalposts = vec![GoalpostSpec {
                        column: 300,
                        width: 20,
                        height: 110,
                    }];
                    s.lines = two_lines();
                    s.clutter = clutter_rects(true);
                    s
                }
                // Lighting gradient venue: no goals in view.
                "rc2012" => {
                    let mut s = base(seed, 0.008);
                    s.ball = Some(orbiting_ball(i, 18, 0.0));
                    s.lines = two_lines();
                    s.obstacles = vec![obstacle(i, 200, 110, 1.3)];
                    s.clutter = clutter_rects(false);
                    s
                }
                // Clean venue crowded with robots.
                "rc2013" => {
                    let mut s = base(seed, 0.004);
                    s.ball = Some(orbiting_ball(i, 18, 0.0));
                    s.goalposts = two_posts();
                    s.lines = two_lines();
                    s.obstacles = vec![
                        obstacle(i, 30, 104, 0.4),
                        obstacle(i, 230, 120, 2.1),
                        obstacle(i, 500, 100, 4.0),
                    ];
                    s.clutter = clutter_rects(false);
                    s
                }
                _ => unreachable!(),
            };
            if let Some(noise) = noise_override {
                spec.noise.flip_probability = noise;
            }
            spec
        })
        .collect();
    Some(specs)
}

/// A goal-and-line-rich stream: three long lines and two posts every frame,
/// making the goal and line detection stages carry a large share of the
/// per-frame work.
pub fn goal_line_rich_specs(frames: usize, seed: u64) -> Vec<SceneSpec> {
    (0..frames)
        .map(|i| {
            let mut s = base(seed, 0.004);
            s.ball = Some(orbiting_ball(i, 18, 0.0));
            s.goalposts = two_posts();
            s.lines = vec![
                LineSpec {
                    from: (50, 220),
                    to: (590, 238),
                    stroke: 2,
                },
                LineSpec {
                    from: (80, 420),
                    to: (560, 402),
                    stroke: 2,
                },
                LineSpec {
                    from: (60, 260),
                    to: (600, 330),
                    stroke: 2,
                },
            ];
            s.clutter = clutter_rects(false);
            s
        })
        .collect()
}
