//! The seven processing stages and their dependency graph.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the seven processing stages, in fixed pipeline order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    GreenHorizon,
    ScanlineClassifier,
    TransitionFilter,
    BallDetection,
    GoalDetection,
    ObstacleDetection,
    LineDetection,
}

impl Stage {
    /// Execution order used by the controller.
    pub const ALL: [Stage; 7] = [
        Stage::GreenHorizon,
        Stage::ScanlineClassifier,
        Stage::TransitionFilter,
        Stage::BallDetection,
        Stage::GoalDetection,
        Stage::ObstacleDetection,
        Stage::LineDetection,
    ];

    /// Direct prerequisites. The transition filter feeds the ball, goal and
    /// line detectors; obstacle detection works straight off the horizon.
    pub fn prerequisites(self) -> &'static [Stage] {
        match self {
            Stage::GreenHorizon => &[],
            Stage::ScanlineClassifier => &[Stage::GreenHorizon],
            Stage::TransitionFilter => &[Stage::ScanlineClassifier],
            Stage::BallDetection | Stage::GoalDetection | Stage::LineDetection => {
                &[Stage::TransitionFilter]
            }
            Stage::ObstacleDetection => &[Stage::GreenHorizon],
        }
    }

    /// All stages that transitively depend on `self`.
    pub fn transitive_dependents(self) -> Vec<Stage> {
        let mut out = Vec::new();
        for stage in Stage::ALL {
            if stage != self && stage.depends_on(self) {
                out.push(stage);
            }
        }
        out
    }

    /// True when `self` transitively requires `other`.
    pub fn depends_on(self, other: Stage) -> bool {
        self.prerequisites()
            .iter()
            .any(|&p| p == other || p.depends_on(other))
    }

    /// Stable identifier used on the control surface and in config files.
    pub fn identifier(self) -> &'static str {
        match self {
            Stage::GreenHorizon => "green-horizon",
            Stage::ScanlineClassifier => "scanline-classifier",
            Stage::TransitionFilter => "transition-filter",
            Stage::BallDetection => "ball-detection",
            Stage::GoalDetection => "goal-detection",
            Stage::ObstacleDetection => "obstacle-detection",
            Stage::LineDetection => "line-detection",
        }
    }

    pub fn index(self) -> usize {
        Stage::ALL.iter().position(|&s| s == self).unwrap()
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.identifier())
    }
}

/// Returned when a control-surface string names no stage.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown stage identifier `{0}`")]
pub struct UnknownStage(pub String);

impl FromStr for Stage {
    type Err = UnknownStage;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Stage::ALL
            .into_iter()
            .find(|stage| stage.identifier() == s)
            .ok_or_else(|| UnknownStage(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifiers_round_trip() {
        for stage in Stage::ALL {
            assert_eq!(stage.identifier().parse::<Stage>().unwrap(), stage);
        }
        assert!("ball".parse::<Stage>().is_err());
    }

    #[test]
    fn prerequisites_precede_dependents_in_order() {
        for (i, stage) in Stage::ALL.iter().enumerate() {
            for prereq in stage.prerequisites() {
                assert!(prereq.index() < i, "{prereq} must run before {stage}");
            }
        }
    }

    #[test]
    fn green_horizon_failure_takes_down_everything() {
        let deps = Stage::GreenHorizon.transitive_dependents();
        assert_eq!(deps.len(), 6);
    }

    #[test]
    fn obstacle_detection_is_independent_of_transitions() {
        assert!(!Stage::ObstacleDetection.depends_on(Stage::TransitionFilter));
        assert!(Stage::ObstacleDetection.depends_on(Stage::GreenHorizon));
    }
}
