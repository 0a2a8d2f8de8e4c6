//! On-disk stream layout.
//!
//! A stream is a directory holding a `stream.json` manifest, one binary PPM
//! (P6, maxval 255) per frame with YCbCr triples stored in the RGB slots,
//! and an optional `kinematics.jsonl` sidecar with one record per frame.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use fieldvision_core::{Frame, FrameError, KinematicsSnapshot, Line2};

pub const MANIFEST_NAME: &str = "stream.json";
pub const KINEMATICS_NAME: &str = "kinematics.jsonl";

/// `stream.json` schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StreamManifest {
    pub name: String,
    pub width: u32,
    pub height: u32,
    pub fps: f64,
    pub frames: Vec<String>,
}

impl StreamManifest {
    /// Microsecond timestamp of frame `index` at this manifest's rate.
    pub fn timestamp_us(&self, index: u64) -> u64 {
        if self.fps > 0.0 {
            ((index as f64) * 1_000_000.0 / self.fps).round() as u64
        } else {
            0
        }
    }
}

/// One `kinematics.jsonl` row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KinematicsRecord {
    pub seq: u64,
    /// Horizon line coefficients `[a, b, c]` in screen coordinates.
    pub horizon: [f64; 3],
    pub pitch: f64,
    pub height: f64,
    pub valid: bool,
}

impl KinematicsRecord {
    pub fn to_snapshot(&self) -> Option<KinematicsSnapshot> {
        let horizon = Line2::new(self.horizon[0], self.horizon[1], self.horizon[2])?;
        Some(KinematicsSnapshot {
            horizon,
            camera_pitch: self.pitch,
            camera_height: self.height,
            valid: self.valid,
        })
    }

    pub fn from_snapshot(seq: u64, snapshot: &KinematicsSnapshot) -> KinematicsRecord {
        KinematicsRecord {
            seq,
            horizon: [snapshot.horizon.a, snapshot.horizon.b, snapshot.horizon.c],
            pitch: snapshot.camera_pitch,
            height: snapshot.camera_height,
            valid: snapshot.valid,
        }
    }
}

/// PPM decode failures, with enough context to name the file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PpmError {
    #[error("not a binary PPM (missing P6 magic)")]
    BadMagic,
    #[error("malformed header")]
    BadHeader,
    #[error("unsupported maxval {0}, expected 255")]
    BadMaxval(u32),
    #[error("pixel payload is {got} bytes, expected {expected}")]
    Truncated { expected: usize, got: usize },
}

/// Parse a P6 header. Returns (width, height, payload offset); the payload
/// itself may extend beyond `bytes`.
pub fn parse_ppm_header(bytes: &[u8]) -> Result<(u32, u32, usize), PpmError> {
    if bytes.len() < 2 || &bytes[0..2] != b"P6" {
        return Err(PpmError::BadMagic);
    }
    let mut pos = 2usize;
    let mut fields = [0u32; 3];
    for field in fields.iter_mut() {
        // Skip whitespace and `#` comments between header tokens.
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while !matches!(bytes.get(pos), None | Some(b'\n')) {
                        pos += 1;
                    }
                }
                _ => break,
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        if pos == start {
            return Err(PpmError::BadHeader);
        }
        let text = std::str::from_utf8(&bytes[start..pos]).map_err(|_| PpmError::BadHeader)?;
        *field = text.parse().map_err(|_| PpmError::BadHeader)?;
    }
    // Exactly one whitespace byte separates the header from the payload.
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(PpmError::BadHeader);
    }
    pos += 1;
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(PpmError::BadMaxval(maxval));
    }
    Ok((width, height, pos))
}

/// Parse a binary PPM held in memory. Returns (width, height, pixels).
pub fn decode_ppm(bytes: &[u8]) -> Result<(u32, u32, Vec<u8>), PpmError> {
    let (width, height, offset) = parse_ppm_header(bytes)?;
    let expected = width as usize * height as usize * 3;
    let payload = &bytes[offset..];
    if payload.len() != expected {
        return Err(PpmError::Truncated {
            expected,
            got: payload.len(),
        });
    }
    Ok((width, height, payload.to_vec()))
}

/// Encode a binary PPM.
pub fn encode_ppm(width: u32, height: u32, pixels: &[u8]) -> Vec<u8> {
    let header = format!("P6\n{width} {height}\n255\n");
    let mut out = Vec::with_capacity(header.len() + pixels.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(pixels);
    out
}

/// Writes the stream layout that the replay backends consume.
pub struct StreamWriter {
    dir: PathBuf,
    manifest: StreamManifest,
    kinematics: Vec<KinematicsRecord>,
    next_index: u64,
}

impl StreamWriter {
    /// Create the stream directory (and parents) and an empty manifest.
    pub fn create(
        dir: impl Into<PathBuf>,
        name: &str,
        width: u32,
        height: u32,
        fps: f64,
    ) -> io::Result<StreamWriter> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(StreamWriter {
            dir,
            manifest: StreamManifest {
                name: name.to_string(),
                width,
                height,
                fps,
                frames: Vec::new(),
            },
            kinematics: Vec::new(),
            next_index: 0,
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Append one frame; `kinematics` rows are recorded when given and the
    /// sidecar is written only if at least one frame had them.
    pub fn push_frame(
        &mut self,
        pixels: &[u8],
        kinematics: Option<&KinematicsSnapshot>,
    ) -> io::Result<()> {
        let index = self.next_index;
        let filename = format!("frame_{index:06}.ppm");
        let bytes = encode_ppm(self.manifest.width, self.manifest.height, pixels);
        fs::write(self.dir.join(&filename), bytes)?;
        self.manifest.frames.push(filename);
        if let Some(snapshot) = kinematics {
            self.kinematics
                .push(KinematicsRecord::from_snapshot(index, snapshot));
        }
        self.next_index += 1;
        Ok(())
    }

    /// Write the manifest (and sidecar when present) and close the stream.
    pub fn finish(self) -> io::Result<PathBuf> {
        let manifest_json = serde_json::to_string_pretty(&self.manifest)?;
        fs::write(self.dir.join(MANIFEST_NAME), manifest_json)?;
        if !self.kinematics.is_empty() {
            let mut file = fs::File::create(self.dir.join(KINEMATICS_NAME))?;
            for record in &self.kinematics {
                serde_json::to_writer(&mut file, record)?;
                file.write_all(b"\n")?;
            }
        }
        Ok(self.dir)
    }
}

/// Build a [`Frame`] from decoded PPM data plus stream metadata.
pub fn frame_from_ppm(
    width: u32,
    height: u32,
    pixels: Vec<u8>,
    sequence_index: u64,
    timestamp_us: u64,
) -> Result<Frame, FrameError> {
    Frame::new(width, height, pixels, sequence_index, timestamp_us)
}
