//! The pipeline config document: a versioned JSON file carrying the scan,
//! detector and controller settings, the LUT path and the seed.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use fieldvision_core::{
    ColourLut, GoalParams, Mode, ObstacleParams, PipelineParams, RansacParams, ScanConfig, Stage,
    StagePlan,
};

use crate::{CliError, CliResult};

pub const CONFIG_VERSION: u32 = 1;

/// On-disk schema. Unknown fields are rejected so typos surface as errors
/// naming the field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineConfig {
    pub version: u32,
    #[serde(default)]
    pub mode: Mode,
    /// Stage-enable flags keyed by stage identifier; stages not listed are
    /// enabled.
    #[serde(default)]
    pub stages: BTreeMap<String, bool>,
    #[serde(default)]
    pub scan: ScanConfig,
    #[serde(default)]
    pub goal_ransac: RansacParams,
    #[serde(default)]
    pub line_ransac: RansacParams,
    #[serde(default)]
    pub obstacle: ObstacleParams,
    #[serde(default)]
    pub goal: GoalParams,
    /// Path to a `VLUT` file; the bundled default field rules when absent.
    #[serde(default)]
    pub lut: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            version: CONFIG_VERSION,
            mode: Mode::default(),
            stages: BTreeMap::new(),
            scan: ScanConfig::default(),
            goal_ransac: RansacParams::default(),
            line_ransac: RansacParams::default(),
            obstacle: ObstacleParams::default(),
            goal: GoalParams::default(),
            lut: None,
            seed: 0,
        }
    }
}

impl PipelineConfig {
    pub fn load(path: &Path) -> CliResult<PipelineConfig> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read `{}`: {e}", path.display())))?;
        let config: PipelineConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.version != CONFIG_VERSION {
            return Err(CliError::Config(format!(
                "field `version`: expected {CONFIG_VERSION}, found {}",
                self.version
            )));
        }
        for name in self.stages.keys() {
            name.parse::<Stage>()
                .map_err(|e| CliError::Config(format!("field `stages`: {e}")))?;
        }
        self.params()
            .validate()
            .map_err(|e| CliError::Config(format!("field `{e}`")))?;
        self.plan()?;
        Ok(())
    }

    /// The controller plan encoded by mode + flags.
    pub fn plan(&self) -> CliResult<StagePlan> {
        let mut flags = [true; 7];
        for (name, &enabled) in &self.stages {
            let stage: Stage = name
                .parse()
                .map_err(|e| CliError::Config(format!("field `stages`: {e}")))?;
            flags[stage.index()] = enabled;
        }
        match self.mode {
            Mode::Rigid => Ok(StagePlan::rigid()),
            Mode::Selective => StagePlan::selective(flags)
                .map_err(|e| CliError::Config(format!("field `stages`: {e}"))),
        }
    }

    pub fn params(&self) -> PipelineParams {
        PipelineParams {
            scan: self.scan,
            goal_ransac: self.goal_ransac,
            line_ransac: self.line_ransac,
            obstacle: self.obstacle,
            goal: self.goal,
            seed: self.seed,
        }
    }

    /// Load the configured LUT, or build the bundled default rules.
    pub fn load_lut(&self, config_dir: Option<&Path>) -> CliResult<Arc<ColourLut>> {
        match &self.lut {
            None => Ok(Arc::new(
                ColourLut::build(&fieldvision_synth::palette::field_rules())
                    .expect("default rules are valid"),
            )),
            Some(path) => {
                let resolved = match config_dir {
                    Some(dir) if path.is_relative() => dir.join(path),
                    _ => path.clone(),
                };
                let bytes = fs::read(&resolved).map_err(|e| {
                    CliError::Config(format!("field `lut`: cannot read `{}`: {e}", resolved.display()))
                })?;
                ColourLut::from_bytes(&bytes)
                    .map(Arc::new)
                    .map_err(|e| CliError::Config(format!("field `lut`: {e}")))
            }
        }
    }

    /// Stable fingerprint over the semantic fields: the SHA-256 of the
    /// canonical JSON encoding, truncated for readability. An explicit
    /// `true` stage flag means the same as an absent one and hashes the
    /// same.
    pub fn fingerprint(&self) -> String {
        let mut canonical = self.clone();
        canonical.stages.retain(|_, enabled| !*enabled);
        let encoded = serde_json::to_string(&canonical).expect("config serializes");
        let digest = Sha256::digest(encoded.as_bytes());
        let mut out = String::with_capacity(16);
        for byte in digest.iter().take(8) {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }
}
