//! Frames and the per-frame kinematics snapshot.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Line2;

/// A timestamped YCbCr raster, the sole sensory input of the pipeline.
///
/// Pixels are stored row-major as interleaved `(luma, cb, cr)` bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    width: u32,
    height: u32,
    pixels: Vec<u8>,
    pub sequence_index: u64,
    /// Microseconds since stream start.
    pub timestamp_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("frame dimensions {width}x{height} are below the 2x2 minimum")]
    TooSmall { width: u32, height: u32 },
    #[error("pixel buffer holds {got} bytes, expected {expected} for {width}x{height}")]
    WrongPixelCount {
        width: u32,
        height: u32,
        expected: usize,
        got: usize,
    },
}

impl Frame {
    pub fn new(
        width: u32,
        height: u32,
        pixels: Vec<u8>,
        sequence_index: u64,
        timestamp_us: u64,
    ) -> Result<Frame, FrameError> {
        if width < 2 || height < 2 {
            return Err(FrameError::TooSmall { width, height });
        }
        let expected = width as usize * height as usize * 3;
        if pixels.len() != expected {
            return Err(FrameError::WrongPixelCount {
                width,
                height,
                expected,
                got: pixels.len(),
            });
        }
        Ok(Frame {
            width,
            height,
            pixels,
            sequence_index,
            timestamp_us,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// The `(luma, cb, cr)` triple at a pixel. Panics out of bounds.
    #[inline]
    pub fn pixel(&self, x: u32, y: u32) -> (u8, u8, u8) {
        debug_assert!(x < self.width && y < self.height);
        let i = (y as usize * self.width as usize + x as usize) * 3;
        (self.pixels[i], self.pixels[i + 1], self.pixels[i + 2])
    }

    /// Raw interleaved pixel bytes, row-major.
    pub fn raw(&self) -> &[u8] {
        &self.pixels
    }

    pub fn contains(&self, x: i32, y: i32) -> bool {
        x >= 0 && y >= 0 && (x as u32) < self.width && (y as u32) < self.height
    }
}

/// Camera pose data captured together with a frame.
///
/// When `valid` is false consumers must substitute the hard-coded
/// top-of-frame horizon; that is the headless-platform stub behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KinematicsSnapshot {
    /// The true horizon in screen coordinates, from the head-pose chain.
    pub horizon: Line2,
    /// Camera pitch in radians, downward positive.
    pub camera_pitch: f64,
    /// Camera height above ground in metres.
    pub camera_height: f64,
    pub valid: bool,
}

impl KinematicsSnapshot {
    /// The stub snapshot: no kinematics available, horizon at the top edge.
    pub fn invalid() -> KinematicsSnapshot {
        KinematicsSnapshot {
            horizon: Line2::new(0.0, 1.0, 0.0).unwrap(),
            camera_pitch: 0.0,
            camera_height: 0.0,
            valid: false,
        }
    }
}
