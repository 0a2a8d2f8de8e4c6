//! Multi-model RANSAC line extraction.
//!
//! Repeatedly fits a minimal 2-point model to random samples, scores by
//! inlier count, keeps the best, refits by total least squares over the
//! consensus set, removes its inliers and goes again. Resilient to extreme
//! outlier fractions, which is what makes it usable for finding several
//! lines in one transition cloud. Deterministic for a fixed seed.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{fit_line_total_least_squares, Line2, Point2};

use super::{FieldLine, RansacParams};

/// Extract up to `max_models` lines. See [`ransac_lines_filtered`] for the
/// model-acceptance hook; this variant accepts every candidate orientation.
pub fn ransac_lines(points: &[Point2], params: &RansacParams) -> Vec<FieldLine> {
    ransac_lines_filtered(points, params, |_| true)
}

/// Extract lines, skipping candidate models rejected by `accept`.
///
/// The gate runs inside the sampling loop so consensus never accumulates on
/// unacceptable orientations (goalpost edges reject anything far from
/// vertical).
pub fn ransac_lines_filtered(
    points: &[Point2],
    params: &RansacParams,
    accept: impl Fn(&Line2) -> bool,
) -> Vec<FieldLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut remaining: Vec<(f64, f64)> = points.iter().map(|p| p.as_f64()).collect();
    let mut models = Vec::new();

    while models.len() < params.max_models && remaining.len() >= params.min_consensus.max(2) {
        let mut best: Option<(Line2, usize)> = None;
        for _ in 0..params.iterations {
            let i = rng.gen_range(0..remaining.len());
            let mut j = rng.gen_range(0..remaining.len() - 1);
            if j >= i {
                j += 1;
            }
            let Some(candidate) = Line2::through(remaining[i], remaining[j]) else {
                continue;
            };
            if !accept(&candidate) {
                continue;
            }
            let consensus = remaining
                .iter()
                .filter(|&&p| candidate.distance_to(p) <= params.threshold)
                .count();
            if best.as_ref().is_none_or(|(_, c)| consensus > *c) {
                best = Some((candidate, consensus));
            }
        }
        let Some((sample_line, consensus)) = best else {
            break;
        };
        if consensus < params.min_consensus {
            break;
        }

        let sample_inliers: Vec<(f64, f64)> = remaining
            .iter()
            .copied()
            .filter(|&p| sample_line.distance_to(p) <= params.threshold)
            .collect();
        // Refit over the consensus set; fall back to the sample line when the
        // set is degenerate. Keep the refit only if the gate still accepts it.
        let line = fit_line_total_least_squares(&sample_inliers)
            .filter(&accept)
            .unwrap_or(sample_line);

        let (inliers, rest): (Vec<(f64, f64)>, Vec<(f64, f64)>) = remaining
            .iter()
            .partition(|&&p| line.distance_to(p) <= params.threshold);
        if inliers.len() < 2 {
            break;
        }

        let mut t_min = f64::INFINITY;
        let mut t_max = f64::NEG_INFINITY;
        for &p in &inliers {
            let t = line.project_parameter(p);
            t_min = t_min.min(t);
            t_max = t_max.max(t);
        }
        let e0 = line.point_at(t_min);
        let e1 = line.point_at(t_max);
        let mut endpoints = (
            Point2::new(e0.0.round() as i32, e0.1.round() as i32),
            Point2::new(e1.0.round() as i32, e1.1.round() as i32),
        );
        if (endpoints.1.x, endpoints.1.y) < (endpoints.0.x, endpoints.0.y) {
            endpoints = (endpoints.1, endpoints.0);
        }
        models.push(FieldLine {
            line,
            endpoints,
            inliers: inliers.len(),
        });
        remaining = rest;
    }
    models
}
