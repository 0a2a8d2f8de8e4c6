//! `gen`: render a preset or a custom spec file into a stream directory.

use std::fs;
use std::path::{Path, PathBuf};

use fieldvision_synth::presets::{default_frame_count, preset_specs, PRESET_NAMES};
use fieldvision_synth::{emit_stream, EmitOptions, SceneSpec};

use crate::{CliError, CliResult};

pub struct GenArgs<'a> {
    /// A preset name or a path to a JSON file holding an array of scene
    /// specs.
    pub source: &'a str,
    pub output: PathBuf,
    pub frames: Option<usize>,
    /// Force the per-pixel noise probability to zero.
    pub noise_free: bool,
    /// Write the kinematics sidecar for specs that define one.
    pub kinematics: bool,
    pub fps: f64,
    pub name: Option<String>,
    pub seed: u64,
}

pub fn gen(args: &GenArgs) -> CliResult<PathBuf> {
    let (specs, default_name) = if PRESET_NAMES.contains(&args.source) {
        let frames = args
            .frames
            .or_else(|| default_frame_count(args.source))
            .unwrap();
        let noise = args.noise_free.then_some(0.0);
        let specs = preset_specs(args.source, frames, noise, args.seed)
            .expect("preset name checked above");
        (specs, args.source.to_string())
    } else {
        let path = Path::new(args.source);
        let text = fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!(
                "`{}` is neither a preset ({}) nor a readable spec file: {e}",
                args.source,
                PRESET_NAMES.join(", ")
            ))
        })?;
        let mut specs: Vec<SceneSpec> =
            serde_json::from_str(&text).map_err(|e| CliError::Config(e.to_string()))?;
        if let Some(frames) = args.frames {
            if frames > specs.len() {
                return Err(CliError::Config(format!(
                    "--frames {frames} exceeds the {} specs in `{}`",
                    specs.len(),
                    args.source
                )));
            }
            specs.truncate(frames);
        }
        if args.noise_free {
            for spec in &mut specs {
                spec.noise.flip_probability = 0.0;
            }
        }
        let stem = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "custom".to_string());
        (specs, stem)
    };

    let options = EmitOptions {
        name: args.name.clone().unwrap_or(default_name),
        fps: args.fps,
        kinematics: args.kinematics,
    };
    emit_stream(&specs, &args.output, &options)
        .map_err(|e| CliError::Runtime(format!("stream emission failed: {e}")))
}
