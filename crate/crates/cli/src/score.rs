//! Detection scoring against ground truth: precision/recall per object
//! class plus error percentiles.

use serde::{Deserialize, Serialize};

use fieldvision_core::{Line2, StageResult};
use fieldvision_synth::GroundTruth;

use crate::records::DetectionRecord;
use crate::{CliError, CliResult};

/// Match tolerances; all are overridable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub ball_px: f64,
    pub post_px: f64,
    pub obstacle_iou: f64,
    pub line_px: f64,
    pub line_deg: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            ball_px: 5.0,
            post_px: 8.0,
            obstacle_iou: 0.5,
            line_px: 3.0,
            line_deg: 3.0,
        }
    }
}

/// Counts for one object class. Precision is undefined (and flagged `null`)
/// when nothing was detected; recall likewise when no truth exists.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassScore {
    pub truth: u64,
    pub detected: u64,
    pub matched: u64,
    pub false_positives: u64,
    pub missed: u64,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
}

impl ClassScore {
    fn finalize(&mut self) {
        self.false_positives = self.detected - self.matched;
        self.missed = self.truth - self.matched;
        self.precision = (self.detected > 0).then(|| self.matched as f64 / self.detected as f64);
        self.recall = (self.truth > 0).then(|| self.matched as f64 / self.truth as f64);
    }
}

/// Percentiles over the matched-pair errors (or IoUs).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorStats {
    pub count: u64,
    pub median: Option<f64>,
    pub p90: Option<f64>,
    pub max: Option<f64>,
}

impl ErrorStats {
    fn from_values(mut values: Vec<f64>) -> ErrorStats {
        if values.is_empty() {
            return ErrorStats::default();
        }
        values.sort_by(f64::total_cmp);
        let n = values.len();
        let median = if n % 2 == 1 {
            values[n / 2]
        } else {
            (values[n / 2 - 1] + values[n / 2]) / 2.0
        };
        let p90 = values[((n as f64 * 0.9).ceil() as usize).clamp(1, n) - 1];
        ErrorStats {
            count: n as u64,
            median: Some(median),
            p90: Some(p90),
            max: Some(values[n - 1]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub frames: u64,
    pub tolerances: Tolerances,
    pub ball: ClassScore,
    pub goalposts: ClassScore,
    pub obstacles: ClassScore,
    pub lines: ClassScore,
    /// Post detections on frames whose truth has no posts.
    pub post_false_positives_on_post_free_frames: u64,
    pub post_free_frames: u64,
    pub ball_centre_error_px: ErrorStats,
    pub post_base_error_px: ErrorStats,
    pub obstacle_iou: ErrorStats,
    pub line_distance_error_px: ErrorStats,
    pub line_angle_error_deg: ErrorStats,
}

fn interval_iou(a: (i32, i32), b: (i32, i32)) -> f64 {
    let overlap = (a.1.min(b.1) - a.0.max(b.0) + 1).max(0) as f64;
    let union = (a.1.max(b.1) - a.0.min(b.0) + 1) as f64;
    overlap / union
}

/// Greedy one-to-one matching: pairs sorted by badness, best first.
fn greedy_match(mut pairs: Vec<(usize, usize, f64)>, ascending: bool) -> Vec<(usize, usize, f64)> {
    pairs.sort_by(|a, b| {
        if ascending {
            a.2.total_cmp(&b.2)
        } else {
            b.2.total_cmp(&a.2)
        }
    });
    let mut used_det = std::collections::HashSet::new();
    let mut used_truth = std::collections::HashSet::new();
    let mut matches = Vec::new();
    for (d, t, v) in pairs {
        if used_det.insert(d) && used_truth.insert(t) {
            matches.push((d, t, v));
        }
    }
    matches
}

/// Score aligned detection and truth rows.
pub fn score(
    detections: &[DetectionRecord],
    truths: &[GroundTruth],
    tolerances: &Tolerances,
) -> CliResult<ScoreReport> {
    if detections.len() != truths.len() {
        return Err(CliError::Runtime(format!(
            "frame count mismatch: {} detection records vs {} truth records",
            detections.len(),
            truths.len()
        )));
    }
    let mut report = ScoreReport {
        frames: detections.len() as u64,
        tolerances: *tolerances,
        ball: ClassScore::default(),
        goalposts: ClassScore::default(),
        obstacles: ClassScore::default(),
        lines: ClassScore::default(),
        post_false_positives_on_post_free_frames: 0,
        post_free_frames: 0,
        ball_centre_error_px: ErrorStats::default(),
        post_base_error_px: ErrorStats::default(),
        obstacle_iou: ErrorStats::default(),
        line_distance_error_px: ErrorStats::default(),
        line_angle_error_deg: ErrorStats::default(),
    };
    let mut ball_errors = Vec::new();
    let mut post_errors = Vec::new();
    let mut obstacle_ious = Vec::new();
    let mut line_dists = Vec::new();
    let mut line_angles = Vec::new();

    for (record, truth) in detections.iter().zip(truths) {
        if record.seq != truth.frame_index {
            return Err(CliError::Runtime(format!(
                "sequence mismatch: detection seq {} vs truth frame {}",
                record.seq, truth.frame_index
            )));
        }

        // Balls: at most one on each side.
        if let StageResult::Ok { items } = &record.detections.balls {
            let truth_ball = truth.ball.as_ref();
            report.ball.truth += truth_ball.is_some() as u64;
            report.ball.detected += items.len() as u64;
            if let (Some(det), Some(tb)) = (items.first(), truth_ball) {
                let dx = det.centre.x as f64 - tb.centre.0 as f64;
                let dy = det.centre.y as f64 - tb.centre.1 as f64;
                let err = (dx * dx + dy * dy).sqrt();
                if err <= tolerances.ball_px {
                    report.ball.matched += 1;
                    ball_errors.push(err);
                }
            }
        }

        // Goalposts: greedy nearest base within tolerance.
        if let StageResult::Ok { items } = &record.detections.goalposts {
            report.goalposts.truth += truth.posts.len() as u64;
            report.goalposts.detected += items.len() as u64;
            if truth.posts.is_empty() {
                report.post_free_frames += 1;
                report.post_false_positives_on_post_free_frames += items.len() as u64;
            }
            let mut pairs = Vec::new();
            for (d, det) in items.iter().enumerate() {
                for (t, tp) in truth.posts.iter().enumerate() {
                    let dx = det.base.x as f64 - tp.base.0 as f64;
                    let dy = det.base.y as f64 - tp.base.1 as f64;
                    let err = (dx * dx + dy * dy).sqrt();
                    if err <= tolerances.post_px {
                        pairs.push((d, t, err));
                    }
                }
            }
            for (_, _, err) in greedy_match(pairs, true) {
                report.goalposts.matched += 1;
                post_errors.push(err);
            }
        }

        // Obstacles: x-span IoU.
        if let StageResult::Ok { items } = &record.detections.obstacles {
            report.obstacles.truth += truth.obstacles.len() as u64;
            report.obstacles.detected += items.len() as u64;
            let mut pairs = Vec::new();
            for (d, det) in items.iter().enumerate() {
                for (t, to) in truth.obstacles.iter().enumerate() {
                    let iou = interval_iou((det.left_x, det.right_x), (to.left_x, to.right_x));
                    if iou >= tolerances.obstacle_iou {
                        pairs.push((d, t, iou));
                    }
                }
            }
            for (_, _, iou) in greedy_match(pairs, false) {
                report.obstacles.matched += 1;
                obstacle_ious.push(iou);
            }
        }

        // Lines: angle plus worst endpoint distance.
        if let StageResult::Ok { items } = &record.detections.field_lines {
            report.lines.truth += truth.lines.len() as u64;
            report.lines.detected += items.len() as u64;
            let mut pairs = Vec::new();
            for (t, tl) in truth.lines.iter().enumerate() {
                let Some(expected) = Line2::through(
                    (tl.from.0 as f64, tl.from.1 as f64),
                    (tl.to.0 as f64, tl.to.1 as f64),
                ) else {
                    continue;
                };
                for (d, det) in items.iter().enumerate() {
                    let angle = det.line.angle_to(&expected).to_degrees();
                    let dist = det
                        .line
                        .distance_to((tl.from.0 as f64, tl.from.1 as f64))
                        .max(det.line.distance_to((tl.to.0 as f64, tl.to.1 as f64)));
                    if angle <= tolerances.line_deg && dist <= tolerances.line_px {
                        pairs.push((d, t, dist.max(angle)));
                    }
                }
            }
            for (d, t, _) in greedy_match(pairs, true) {
                report.lines.matched += 1;
                let tl = &truth.lines[t];
                let expected = Line2::through(
                    (tl.from.0 as f64, tl.from.1 as f64),
                    (tl.to.0 as f64, tl.to.1 as f64),
                )
                .unwrap();
                let det = &record.detections.field_lines.items().unwrap()[d];
                line_angles.push(det.line.angle_to(&expected).to_degrees());
                line_dists.push(
                    det.line
                        .distance_to((tl.from.0 as f64, tl.from.1 as f64))
                        .max(det.line.distance_to((tl.to.0 as f64, tl.to.1 as f64))),
                );
            }
        }
    }

    report.ball.finalize();
    report.goalposts.finalize();
    report.obstacles.finalize();
    report.lines.finalize();
    report.ball_centre_error_px = ErrorStats::from_values(ball_errors);
    report.post_base_error_px = ErrorStats::from_values(post_errors);
    report.obstacle_iou = ErrorStats::from_values(obstacle_ious);
    report.line_distance_error_px = ErrorStats::from_values(line_dists);
    report.line_angle_error_deg = ErrorStats::from_values(line_angles);
    Ok(report)
}

impl ScoreReport {
    pub fn summary(&self) -> String {
        fn opt(v: Option<f64>) -> String {
            v.map_or("undefined".to_string(), |x| format!("{x:.3}"))
        }
        let mut out = String::new();
        out.push_str(&format!("frames: {}\n", self.frames));
        for (name, class) in [
            ("ball", &self.ball),
            ("goalposts", &self.goalposts),
            ("obstacles", &self.obstacles),
            ("lines", &self.lines),
        ] {
            out.push_str(&format!(
                "{:<10} truth {:>5}  detected {:>5}  matched {:>5}  precision {:>9}  recall {:>9}\n",
                name,
                class.truth,
                class.detected,
                class.matched,
                opt(class.precision),
                opt(class.recall),
            ));
        }
        out.push_str(&format!(
            "ball centre error px: median {} p90 {} max {}\n",
            opt(self.ball_centre_error_px.median),
            opt(self.ball_centre_error_px.p90),
            opt(self.ball_centre_error_px.max)
        ));
        out.push_str(&format!(
            "post base error px:   median {} (false posts on {} post-free frames: {})\n",
            opt(self.post_base_error_px.median),
            self.post_free_frames,
            self.post_false_positives_on_post_free_frames
        ));
        out.push_str(&format!(
            "obstacle x-span IoU:  median {}\n",
            opt(self.obstacle_iou.median)
        ));
        out.push_str(&format!(
            "line error:           median {} px / {} deg\n",
            opt(self.line_distance_error_px.median),
            opt(self.line_angle_error_deg.median)
        ));
        out
    }
}
