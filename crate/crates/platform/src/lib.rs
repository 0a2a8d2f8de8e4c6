//! The platform boundary of the vision pipeline.
//!
//! Everything that knows about frame storage, file formats or how the
//! pipeline is invoked lives here, behind two narrow surfaces: frame
//! sources implementing the core data-wrapper contract, and the
//! [`control::ControlWrapper`] through which external code drives the
//! pipeline. Porting to a new platform touches this crate only.

pub mod control;
pub mod replay;
pub mod stream;

pub use control::ControlWrapper;
pub use replay::{HeadlessBackend, ReplayBackend, ReplayOptions, StreamOpenError};
pub use stream::{KinematicsRecord, StreamManifest, StreamWriter};
