//! The data-wrapper contract: where frames, kinematics and the active LUT
//! come from.
//!
//! Everything platform- or storage-specific lives behind [`FrameSource`];
//! the pipeline itself never sees file paths, stream formats or sensors.

use std::sync::Arc;

use thiserror::Error;

use crate::colour::ColourLut;
use crate::frame::{Frame, FrameError, KinematicsSnapshot};

/// Errors surfaced by a frame source. End-of-stream is not an error; see
/// [`FrameSource::next_frame`].
#[derive(Debug, Error)]
pub enum SourceError {
    #[error("failed to read frame `{name}`: {message}")]
    FrameRead { name: String, message: String },
    #[error("malformed frame `{name}`: {message}")]
    FrameFormat { name: String, message: String },
    #[error("invalid frame data in `{name}`: {source}")]
    FrameData {
        name: String,
        #[source]
        source: FrameError,
    },
}

/// Supplies frames in order, each paired with the kinematics snapshot
/// captured at the same time, plus the active colour lookup table.
///
/// The snapshot returned for frame `k` is an owned copy and stays immutable
/// for the whole of frame `k`'s processing, insulating the pipeline from
/// external data changing underneath it.
pub trait FrameSource {
    /// The next frame and its frozen snapshot, or `Ok(None)` at end of
    /// stream. Sequence indices strictly increase.
    fn next_frame(&mut self) -> Result<Option<(Frame, KinematicsSnapshot)>, SourceError>;

    /// The colour lookup table active for this source.
    fn lut(&self) -> Arc<ColourLut>;
}
