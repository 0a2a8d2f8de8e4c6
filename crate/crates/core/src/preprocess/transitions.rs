//! Transition filtering: turn segment boundaries on a scanline into colour
//! transitions and bucket them by detector rule.

use crate::colour::ColourClass;
use crate::geometry::Point2;

use super::{ColourSegment, ColourTransition, Orientation, TransitionSet};

fn midpoint(a: Point2, b: Point2) -> Point2 {
    Point2::new((a.x + b.x) / 2, (a.y + b.y) / 2)
}

fn shifted(p: Point2, orientation: Orientation, delta: i32) -> Point2 {
    match orientation {
        Orientation::Vertical => Point2::new(p.x, p.y + delta),
        Orientation::Horizontal => Point2::new(p.x + delta, p.y),
    }
}

/// Pair segment boundaries into transitions.
///
/// Two adjacent segments whose gap is at most `gap_tolerance` unclassified
/// pixels pair directly; the tolerance absorbs thin borders from colour
/// bleed. A boundary not consumed by such a pairing faces unclassified
/// image content and is emitted as a transition from or to
/// `Unclassified` - goalposts mostly stand against unclassifiable
/// background, and their edges are exactly these boundaries. Segments must
/// arrive sorted per scanline, which is how the classifier emits them. Each
/// transition lands in every rule bucket it matches, so an orange|yellow
/// adjacency shows up for both the ball and the goal detectors.
pub fn filter_transitions(segments: &[ColourSegment], gap_tolerance: u32) -> TransitionSet {
    let mut set = TransitionSet::default();
    let mut push = |transition: ColourTransition| {
        if transition.involves(ColourClass::BallOrange) {
            set.ball.push(transition);
        }
        if transition.involves(ColourClass::GoalYellow) {
            set.goal.push(transition);
        }
        if transition.involves(ColourClass::LineWhite) {
            set.line.push(transition);
        }
    };

    let mut start = 0;
    while start < segments.len() {
        let key = (segments[start].orientation, segments[start].scan_index);
        let mut end = start + 1;
        while end < segments.len()
            && (segments[end].orientation, segments[end].scan_index) == key
        {
            end += 1;
        }
        let group = &segments[start..end];

        let bridged = |i: usize| -> bool {
            let gap = group[i + 1].start_coord() - group[i].end_coord() - 1;
            (0..=gap_tolerance as i32).contains(&gap)
        };

        for (i, segment) in group.iter().enumerate() {
            let orientation = segment.orientation;
            if i == 0 || !bridged(i - 1) {
                push(ColourTransition {
                    position: midpoint(shifted(segment.start, orientation, -1), segment.start),
                    before: ColourClass::Unclassified,
                    after: segment.colour,
                    orientation,
                });
            }
            if i + 1 < group.len() && bridged(i) {
                if segment.colour != group[i + 1].colour {
                    push(ColourTransition {
                        position: midpoint(segment.end, group[i + 1].start),
                        before: segment.colour,
                        after: group[i + 1].colour,
                        orientation,
                    });
                }
            } else {
                push(ColourTransition {
                    position: midpoint(segment.end, shifted(segment.end, orientation, 1)),
                    before: segment.colour,
                    after: ColourClass::Unclassified,
                    orientation,
                });
            }
        }
        start = end;
    }
    set
}
