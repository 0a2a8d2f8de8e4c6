//! The default colour rules and the canonical paint colour of each class.
//!
//! Paint colours sit at the centre of their quantization bucket and inside
//! their rule's range, so a noise-free rendered pixel classifies exactly.

use fieldvision_core::{ColourClass, ColourRule};

/// YCbCr triple each class is painted with.
pub fn paint(class: ColourClass) -> (u8, u8, u8) {
    match class {
        ColourClass::FieldGreen => (110, 90, 90),
        ColourClass::BallOrange => (110, 90, 190),
        ColourClass::GoalYellow => (182, 50, 142),
        ColourClass::LineWhite => (230, 126, 126),
        ColourClass::Unclassified => (40, 126, 126),
    }
}

/// A second unclassified tone used for robot bodies, so obstacles are
/// distinguishable from the background by eye but not by the classifier.
pub fn robot_grey() -> (u8, u8, u8) {
    (78, 126, 126)
}

/// The default field rule set. Ranges are pairwise disjoint.
pub fn field_rules() -> Vec<ColourRule> {
    vec![
        ColourRule::new(ColourClass::FieldGreen, [60, 160], [72, 108], [72, 108]),
        ColourRule::new(ColourClass::BallOrange, [60, 160], [72, 108], [168, 212]),
        ColourRule::new(ColourClass::GoalYellow, [140, 220], [32, 68], [120, 164]),
        ColourRule::new(ColourClass::LineWhite, [208, 252], [108, 144], [108, 144]),
    ]
}
