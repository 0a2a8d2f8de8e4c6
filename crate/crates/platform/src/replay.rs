//! Replay backends: frame sources reading pre-recorded streams from disk.
//!
//! Two flavours exist. [`ReplayBackend`] uses the kinematics sidecar when a
//! stream carries one; [`HeadlessBackend`] models a platform without
//! kinematics, where every snapshot is invalid and consumers fall back to
//! the hard-coded top-of-frame horizon.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use thiserror::Error;

use fieldvision_core::{
    ColourLut, Frame, FrameSource, KinematicsSnapshot, SourceError,
};

use crate::stream::{
    decode_ppm, parse_ppm_header, KinematicsRecord, StreamManifest, KINEMATICS_NAME,
    MANIFEST_NAME,
};

/// Stream validation failures at open time.
#[derive(Debug, Error)]
pub enum StreamOpenError {
    #[error("stream directory `{0}` does not exist")]
    MissingDirectory(PathBuf),
    #[error("missing manifest `{0}`")]
    MissingManifest(PathBuf),
    #[error("cannot parse manifest `{path}`: {message}")]
    ManifestParse { path: PathBuf, message: String },
    #[error("manifest lists missing frame file `{name}`")]
    MissingFrame { name: String },
    #[error("cannot read frame `{name}`: {message}")]
    FrameRead { name: String, message: String },
    #[error("frame `{name}` is malformed: {message}")]
    FrameFormat { name: String, message: String },
    #[error("frame `{name}` is {got_width}x{got_height}, stream is {width}x{height}")]
    DimensionMismatch {
        name: String,
        width: u32,
        height: u32,
        got_width: u32,
        got_height: u32,
    },
    #[error("kinematics sidecar line {line}: {message}")]
    KinematicsParse { line: usize, message: String },
    #[error("kinematics sidecar has {got} records for {expected} frames")]
    KinematicsCount { expected: usize, got: usize },
}

/// Options shared by the replay backends.
#[derive(Clone)]
pub struct ReplayOptions {
    /// The colour lookup table the data wrapper serves to the pipeline.
    pub lut: Arc<ColourLut>,
}

#[derive(Debug)]
struct StreamReader {
    dir: PathBuf,
    manifest: StreamManifest,
    snapshots: Option<Vec<KinematicsSnapshot>>,
    cursor: usize,
    lut: Arc<ColourLut>,
}

impl StreamReader {
    fn open(
        path: &Path,
        options: &ReplayOptions,
        load_kinematics: bool,
    ) -> Result<StreamReader, StreamOpenError> {
        if !path.is_dir() {
            return Err(StreamOpenError::MissingDirectory(path.to_path_buf()));
        }
        let manifest_path = path.join(MANIFEST_NAME);
        let manifest_text = fs::read_to_string(&manifest_path)
            .map_err(|_| StreamOpenError::MissingManifest(manifest_path.clone()))?;
        let manifest: StreamManifest =
            serde_json::from_str(&manifest_text).map_err(|e| StreamOpenError::ManifestParse {
                path: manifest_path,
                message: e.to_string(),
            })?;

        // Validate every listed frame up front: existence and header.
        for name in &manifest.frames {
            let frame_path = path.join(name);
            if !frame_path.is_file() {
                return Err(StreamOpenError::MissingFrame { name: name.clone() });
            }
            let mut head = [0u8; 64];
            let mut file = fs::File::open(&frame_path).map_err(|e| StreamOpenError::FrameRead {
                name: name.clone(),
                message: e.to_string(),
            })?;
            let read = file.read(&mut head).map_err(|e| StreamOpenError::FrameRead {
                name: name.clone(),
                message: e.to_string(),
            })?;
            let (w, h, _) = parse_ppm_header(&head[..read]).map_err(|e| {
                StreamOpenError::FrameFormat {
                    name: name.clone(),
                    message: e.to_string(),
                }
            })?;
            if (w, h) != (manifest.width, manifest.height) {
                return Err(StreamOpenError::DimensionMismatch {
                    name: name.clone(),
                    width: manifest.width,
                    height: manifest.height,
                    got_width: w,
                    got_height: h,
                });
            }
        }

        let sidecar_path = path.join(KINEMATICS_NAME);
        let snapshots = if load_kinematics && sidecar_path.is_file() {
            let text = fs::read_to_string(&sidecar_path).map_err(|e| {
                StreamOpenError::KinematicsParse {
                    line: 0,
                    message: e.to_string(),
                }
            })?;
            let mut rows = Vec::new();
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let record: KinematicsRecord = serde_json::from_str(line).map_err(|e| {
                    StreamOpenError::KinematicsParse {
                        line: i + 1,
                        message: e.to_string(),
                    }
                })?;
                if record.seq != rows.len() as u64 {
                    return Err(StreamOpenError::KinematicsParse {
                        line: i + 1,
                        message: format!("expected seq {}, found {}", rows.len(), record.seq),
                    });
                }
                let snapshot =
                    record
                        .to_snapshot()
                        .ok_or_else(|| StreamOpenError::KinematicsParse {
                            line: i + 1,
                            message: "degenerate horizon coefficients".to_string(),
                        })?;
                rows.push(snapshot);
            }
            if rows.len() != manifest.frames.len() {
                return Err(StreamOpenError::KinematicsCount {
                    expected: manifest.frames.len(),
                    got: rows.len(),
                });
            }
            Some(rows)
        } else {
            None
        };

        Ok(StreamReader {
            dir: path.to_path_buf(),
            manifest,
            snapshots,
            cursor: 0,
            lut: options.lut.clone(),
        })
    }

    fn next(&mut self) -> Result<Option<(Frame, KinematicsSnapshot)>, SourceError> {
        if self.cursor >= self.manifest.frames.len() {
            return Ok(None);
        }
        let index = self.cursor;
        let name = &self.manifest.frames[index];
        let bytes = fs::read(self.dir.join(name)).map_err(|e| SourceError::FrameRead {
            name: name.clone(),
            message: e.to_string(),
        })?;
        let (w, h, pixels) = decode_ppm(&bytes).map_err(|e| SourceError::FrameFormat {
            name: name.clone(),
            message: e.to_string(),
        })?;
        let frame = Frame::new(
            w,
            h,
            pixels,
            index as u64,
            self.manifest.timestamp_us(index as u64),
        )
        .map_err(|e| SourceError::FrameData {
            name: name.clone(),
            source: e,
        })?;
        let snapshot = match &self.snapshots {
            Some(rows) => rows[index],
            None => KinematicsSnapshot::invalid(),
        };
        self.cursor += 1;
        Ok(Some((frame, snapshot)))
    }
}

/// Replays a recorded stream, serving the sidecar kinematics when the
/// stream has them and invalid snapshots otherwise.
#[derive(Debug)]
pub struct ReplayBackend {
    reader: StreamReader,
}

impl ReplayBackend {
    pub fn open(path: impl AsRef<Path>, options: ReplayOptions) -> Result<Self, StreamOpenError> {
        Ok(ReplayBackend {
            reader: StreamReader::open(path.as_ref(), &options, true)?,
        })
    }

    pub fn frame_count(&self) -> usize {
        self.reader.manifest.frames.len()
    }

    pub fn manifest(&self) -> &StreamManifest {
        &self.reader.manifest
    }

    pub fn has_kinematics(&self) -> bool {
        self.reader.snapshots.is_some()
    }
}

impl FrameSource for ReplayBackend {
    fn next_frame(&mut self) -> Result<Option<(Frame, KinematicsSnapshot)>, SourceError> {
        self.reader.next()
    }

    fn lut(&self) -> Arc<ColourLut> {
        self.reader.lut.clone()
    }
}

/// Replays a recorded stream as a sensorless platform would see it: any
/// kinematics sidecar is ignored and every snapshot is invalid, so the
/// pipeline scans from the top of the frame.
#[derive(Debug)]
pub struct HeadlessBackend {
    reader: StreamReader,
}

impl HeadlessBackend {
    pub fn open(path: impl AsRef<Path>, options: ReplayOptions) -> Result<Self, StreamOpenError> {
        Ok(HeadlessBackend {
            reader: StreamReader::open(path.as_ref(), &options, false)?,
        })
    }

    pub fn frame_count(&self) -> usize {
        self.reader.manifest.frames.len()
    }

    pub fn manifest(&self) -> &StreamManifest {
        &self.reader.manifest
    }
}

impl FrameSource for HeadlessBackend {
    fn next_frame(&mut self) -> Result<Option<(Frame, KinematicsSnapshot)>, SourceError> {
        // The stub behaviour: frames replay as recorded, kinematics do not
        // exist on this platform.
        self.reader
            .next()
            .map(|item| item.map(|(frame, _)| (frame, KinematicsSnapshot::invalid())))
    }

    fn lut(&self) -> Arc<ColourLut> {
        self.reader.lut.clone()
    }
}
