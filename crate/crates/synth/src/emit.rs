//! Stream emission: render a spec sequence into the on-disk layout the
//! replay backends consume, plus a `truth.jsonl` ground-truth sidecar.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use fieldvision_core::{KinematicsSnapshot, Line2};
use fieldvision_platform::stream::StreamWriter;

use crate::render::render_scene;
use crate::{SceneSpec, SpecError};

pub const TRUTH_NAME: &str = "truth.jsonl";

#[derive(Debug, Clone, PartialEq)]
pub struct EmitOptions {
    pub name: String,
    pub fps: f64,
    /// Write the kinematics sidecar for specs that define a kinematic
    /// horizon.
    pub kinematics: bool,
}

impl Default for EmitOptions {
    fn default() -> Self {
        EmitOptions {
            name: "synthetic".to_string(),
            fps: 30.0,
            kinematics: true,
        }
    }
}

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("frame {index}: {source}")]
    Spec {
        index: usize,
        #[source]
        source: SpecError,
    },
    #[error("specs disagree on frame dimensions at frame {index}")]
    MixedDimensions { index: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Render every spec in order and write the stream directory.
pub fn emit_stream(
    specs: &[SceneSpec],
    output: impl AsRef<Path>,
    options: &EmitOptions,
) -> Result<PathBuf, EmitError> {
    let (width, height) = specs
        .first()
        .map(|s| (s.width, s.height))
        .unwrap_or((640, 480));
    let mut writer = StreamWriter::create(
        output.as_ref(),
        &options.name,
        width,
        height,
        options.fps,
    )?;
    let mut truth_rows = Vec::with_capacity(specs.len());

    for (index, spec) in specs.iter().enumerate() {
        if (spec.width, spec.height) != (width, height) {
            return Err(EmitError::MixedDimensions { index });
        }
        let (frame, truth) =
            render_scene(spec, index as u64).map_err(|source| EmitError::Spec { index, source })?;
        let snapshot = if options.kinematics {
            spec.kinematic_horizon.and_then(|(a, b, c)| {
                Some(KinematicsSnapshot {
                    horizon: Line2::new(a, b, c)?,
                    camera_pitch: 0.3,
                    camera_height: 0.45,
                    valid: true,
                })
            })
        } else {
            None
        };
        writer.push_frame(frame.raw(), snapshot.as_ref())?;
        truth_rows.push(truth);
    }

    let dir = writer.finish()?;
    let mut truth_file = fs::File::create(dir.join(TRUTH_NAME))?;
    for row in &truth_rows {
        serde_json::to_writer(&mut truth_file, row).map_err(io::Error::from)?;
        truth_file.write_all(b"\n")?;
    }
    Ok(dir)
}
