//! `build-lut`: compile colour range rules into a binary lookup table.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use fieldvision_core::{ColourLut, ColourRule};
use fieldvision_synth::palette;

use crate::{CliError, CliResult};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RulesFile {
    version: u32,
    rules: Vec<ColourRule>,
}

/// Build and write a `VLUT` file. With no rules file the bundled default
/// field rules are compiled.
pub fn build_lut(rules_path: Option<&Path>, output: &Path) -> CliResult<usize> {
    let rules = match rules_path {
        None => palette::field_rules(),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::Config(format!("cannot read rules `{}`: {e}", path.display()))
            })?;
            let file: RulesFile =
                serde_json::from_str(&text).map_err(|e| CliError::Config(e.to_string()))?;
            if file.version != 1 {
                return Err(CliError::Config(format!(
                    "field `version`: expected 1, found {}",
                    file.version
                )));
            }
            file.rules
        }
    };
    let count = rules.len();
    let lut = ColourLut::build(&rules).map_err(|e| CliError::Config(e.to_string()))?;
    if let Some(parent) = output.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| CliError::Runtime(format!("cannot create output dir: {e}")))?;
        }
    }
    fs::write(output, lut.to_bytes())
        .map_err(|e| CliError::Runtime(format!("cannot write `{}`: {e}", output.display())))?;
    Ok(count)
}
