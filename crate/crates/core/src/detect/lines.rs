//! Field line detection: multi-model RANSAC over white transitions below
//! the green horizon.

use crate::geometry::Point2;
use crate::preprocess::{ColourTransition, HorizonHull};

use super::{ransac_lines, FieldLine, RansacParams};

/// Fit straight lines to the line-rule transitions below the hull.
pub fn detect_field_lines(
    transitions: &[ColourTransition],
    params: &RansacParams,
    hull: &HorizonHull,
) -> Vec<FieldLine> {
    let points: Vec<Point2> = transitions
        .iter()
        .map(|t| t.position)
        .filter(|p| hull.is_below(p.x as f64, p.y as f64))
        .collect();
    ransac_lines(&points, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colour::ColourClass;
    use crate::preprocess::Orientation;

    fn transition(x: i32, y: i32) -> ColourTransition {
        ColourTransition {
            position: Point2::new(x, y),
            before: ColourClass::FieldGreen,
            after: ColourClass::LineWhite,
            orientation: Orientation::Vertical,
        }
    }

    fn hull_at(y: i32) -> HorizonHull {
        HorizonHull::new(vec![Point2::new(0, y), Point2::new(639, y)])
    }

    #[test]
    fn empty_bucket_gives_empty_list() {
        let lines = detect_field_lines(&[], &RansacParams::default(), &hull_at(100));
        assert!(lines.is_empty());
    }

    #[test]
    fn straight_transition_row_is_fitted() {
        let transitions: Vec<ColourTransition> =
            (0..40).map(|i| transition(i * 8, 200)).collect();
        let lines = detect_field_lines(
            &transitions,
            &RansacParams::default().with_seed(5),
            &hull_at(100),
        );
        assert_eq!(lines.len(), 1);
        assert!(lines[0].line.distance_to((100.0, 200.0)) < 0.5);
        assert_eq!(lines[0].inliers, 40);
    }

    #[test]
    fn transitions_above_the_hull_are_ignored() {
        let transitions: Vec<ColourTransition> =
            (0..40).map(|i| transition(i * 8, 50)).collect();
        let lines = detect_field_lines(
            &transitions,
            &RansacParams::default().with_seed(5),
            &hull_at(100),
        );
        assert!(lines.is_empty());
    }
}
