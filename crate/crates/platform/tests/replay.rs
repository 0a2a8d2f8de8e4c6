//! Stream layout and replay backend behaviour.

use std::fs;
use std::sync::Arc;

use fieldvision_core::{
    ColourClass, ColourLut, ColourRule, FrameSource, KinematicsSnapshot, Line2, Mode,
    PipelineParams, Stage, StagePlan,
};
use fieldvision_platform::replay::{
    HeadlessBackend, ReplayBackend, ReplayOptions, StreamOpenError,
};
use fieldvision_platform::stream::StreamWriter;
use fieldvision_platform::ControlWrapper;

fn lut() -> Arc<ColourLut> {
    Arc::new(
        ColourLut::build(&[ColourRule::new(
            ColourClass::FieldGreen,
            [60, 160],
            [72, 108],
            [72, 108],
        )])
        .unwrap(),
    )
}

fn options() -> ReplayOptions {
    ReplayOptions { lut: lut() }
}

const GREEN: [u8; 3] = [110, 90, 90];
const GREY: [u8; 3] = [40, 126, 126];

/// A field frame: grey above `horizon_row`, green below.
fn field_pixels(width: u32, height: u32, horizon_row: u32) -> Vec<u8> {
    let mut pixels = Vec::with_capacity((width * height * 3) as usize);
    for y in 0..height {
        for x in 0..width {
            let _ = x;
            pixels.extend_from_slice(if y >= horizon_row { &GREEN } else { &GREY });
        }
    }
    pixels
}

fn write_stream(dir: &std::path::Path, frames: usize, with_kinematics: bool) {
    let mut writer = StreamWriter::create(dir, "test", 32, 32, 30.0).unwrap();
    let snapshot = KinematicsSnapshot {
        horizon: Line2::new(0.0, 1.0, -6.0).unwrap(),
        camera_pitch: 0.2,
        camera_height: 0.45,
        valid: true,
    };
    for _ in 0..frames {
        let pixels = field_pixels(32, 32, 12);
        writer
            .push_frame(&pixels, with_kinematics.then_some(&snapshot))
            .unwrap();
    }
    writer.finish().unwrap();
}

#[test]
fn empty_stream_hits_end_of_stream_immediately() {
    let dir = tempfile::tempdir().unwrap();
    write_stream(dir.path(), 0, false);
    let mut backend = ReplayBackend::open(dir.path(), options()).unwrap();
    assert_eq!(backend.frame_count(), 0);
    assert!(backend.next_frame().unwrap().is_none());
}

#[test]
fn three_frames_then_end_of_stream() {
    let dir = tempfile::tempdir().unwrap();
    write_stream(dir.path(), 3, false);
    let mut backend = ReplayBackend::open(dir.path(), options()).unwrap();
    let mut sequences = Vec::new();
    while let Some((frame, _)) = backend.next_frame().unwrap() {
        sequences.push(frame.sequence_index);
        let expected_ts = (frame.sequence_index as f64 * 1_000_000.0 / 30.0).round() as u64;
        assert_eq!(frame.timestamp_us, expected_ts);
    }
    assert_eq!(sequences, vec![0, 1, 2]);
    assert!(backend.next_frame().unwrap().is_none());
}

#[test]
fn no_sidecar_means_invalid_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    write_stream(dir.path(), 2, false);
    let mut backend = ReplayBackend::open(dir.path(), options()).unwrap();
    assert!(!backend.has_kinematics());
    while let Some((_, snapshot)) = backend.next_frame().unwrap() {
        assert!(!snapshot.valid);
    }
}

#[test]
fn sidecar_snapshots_are_served_per_frame() {
    let dir = tempfile::tempdir().unwrap();
    write_stream(dir.path(), 2, true);
    let mut backend = ReplayBackend::open(dir.path(), options()).unwrap();
    assert!(backend.has_kinematics());
    let (_, snapshot) = backend.next_frame().unwrap().unwrap();
    assert!(snapshot.valid);
    assert!((snapshot.horizon.y_at(0.0).unwrap() - 6.0).abs() < 1e-9);
}

#[test]
fn headless_backend_ignores_the_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    write_stream(dir.path(), 2, true);
    let mut backend = HeadlessBackend::open(dir.path(), options()).unwrap();
    while let Some((_, snapshot)) = backend.next_frame().unwrap() {
        assert!(!snapshot.valid);
    }
}

#[test]
fn manifest_frame_count_is_reported_at_open() {
    // A five-minute stream listing thousands of frames: the backend knows
    // the count before reading any pixel data. The manifest may reference
    // the same file many times.
    let dir = tempfile::tempdir().unwrap();
    write_stream(dir.path(), 1, false);
    let manifest_path = dir.path().join("stream.json");
    let mut manifest: fieldvision_platform::stream::StreamManifest =
        serde_json::from_str(&fs::read_to_string(&manifest_path).unwrap()).unwrap();
    manifest.frames = vec!["frame_000000.ppm".to_string(); 9000];
    fs::write(&manifest_path, serde_json::to_string(&manifest).unwrap()).unwrap();
    let backend = ReplayBackend::open(dir.path(), options()).unwrap();
    assert_eq!(backend.frame_count(), 9000);
}

#[test]
fn missing_manifest_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let err = ReplayBackend::open(dir.path().join("nope"), options()).unwrap_err();
    assert!(matches!(err, StreamOpenError::MissingDirectory(_)));
    fs::create_dir_all(dir.path().join("empty")).unwrap();
    let err = ReplayBackend::open(dir.path().join("empty"), options()).unwrap_err();
    assert!(matches!(err, StreamOpenError::MissingManifest(_)));
}

#[test]
fn manifest_referencing_absent_frame_names_the_file() {
    let dir = tempfile::tempdir().unwrap();
    write_stream(dir.path(), 2, false);
    fs::remove_file(dir.path().join("frame_000001.ppm")).unwrap();
    let err = ReplayBackend::open(dir.path(), options()).unwrap_err();
    match err {
        StreamOpenError::MissingFrame { name } => assert_eq!(name, "frame_000001.ppm"),
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn mixed_frame_dimensions_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    write_stream(dir.path(), 2, false);
    // Overwrite the second frame with a smaller image.
    let rogue = fieldvision_platform::stream::encode_ppm(16, 16, &field_pixels(16, 16, 4));
    fs::write(dir.path().join("frame_000001.ppm"), rogue).unwrap();
    let err = ReplayBackend::open(dir.path(), options()).unwrap_err();
    assert!(matches!(
        err,
        StreamOpenError::DimensionMismatch {
            got_width: 16,
            got_height: 16,
            ..
        }
    ));
}

#[test]
fn sidecar_count_mismatch_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    write_stream(dir.path(), 3, true);
    let sidecar = dir.path().join("kinematics.jsonl");
    let text = fs::read_to_string(&sidecar).unwrap();
    let first_line = text.lines().next().unwrap().to_string();
    fs::write(&sidecar, first_line + "\n").unwrap();
    let err = ReplayBackend::open(dir.path(), options()).unwrap_err();
    assert!(matches!(
        err,
        StreamOpenError::KinematicsCount {
            expected: 3,
            got: 1
        }
    ));
}

#[test]
fn returned_frames_are_frozen_copies() {
    let dir = tempfile::tempdir().unwrap();
    write_stream(dir.path(), 2, false);
    let mut backend = ReplayBackend::open(dir.path(), options()).unwrap();
    let (frame, _) = backend.next_frame().unwrap().unwrap();
    let before = frame.raw().to_vec();
    // Clobber the not-yet-read second frame and the already-read first one.
    let blank = fieldvision_platform::stream::encode_ppm(32, 32, &vec![0u8; 32 * 32 * 3]);
    fs::write(dir.path().join("frame_000000.ppm"), &blank).unwrap();
    assert_eq!(frame.raw(), &before[..]);
}

#[test]
fn control_wrapper_runs_streams_and_toggles_stages() {
    let dir = tempfile::tempdir().unwrap();
    write_stream(dir.path(), 3, false);
    let backend = ReplayBackend::open(dir.path(), options()).unwrap();
    let mut wrapper = ControlWrapper::new(
        backend,
        StagePlan::all_enabled(Mode::Selective),
        PipelineParams::default(),
    )
    .unwrap();

    // Disable goal detection before the first frame: suppressed, not empty.
    wrapper
        .set_stage_enabled(Stage::GoalDetection, false)
        .unwrap();
    let report = wrapper.run_frame().unwrap().unwrap();
    assert!(report.detections.goalposts.is_suppressed());
    assert!(!report.detections.balls.is_suppressed());

    // Disable then re-enable before the next frame: last write wins.
    wrapper
        .set_stage_enabled(Stage::LineDetection, false)
        .unwrap();
    wrapper
        .set_stage_enabled(Stage::LineDetection, true)
        .unwrap();
    let report = wrapper.run_frame().unwrap().unwrap();
    assert!(!report.detections.field_lines.is_suppressed());

    // Prerequisite violations are rejected at the call.
    let err = wrapper
        .set_stage_enabled(Stage::ScanlineClassifier, false)
        .unwrap_err();
    assert!(matches!(
        err,
        fieldvision_core::PlanError::MissingPrerequisite { .. }
    ));

    // One frame left, then end of stream.
    assert!(wrapper.run_frame().unwrap().is_some());
    assert!(wrapper.run_frame().unwrap().is_none());
    assert!(wrapper.last_detections().is_some());
}

#[test]
fn two_backends_fed_identical_frames_agree_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    write_stream(dir.path(), 3, false);

    let run = |headless: bool| -> Vec<String> {
        let mut reports = Vec::new();
        let params = PipelineParams::default();
        let plan = StagePlan::all_enabled(Mode::Selective);
        if headless {
            let backend = HeadlessBackend::open(dir.path(), options()).unwrap();
            let mut wrapper = ControlWrapper::new(backend, plan, params).unwrap();
            wrapper
                .run_stream(|r| reports.push(serde_json::to_string(&r.detections).unwrap()))
                .unwrap();
        } else {
            let backend = ReplayBackend::open(dir.path(), options()).unwrap();
            let mut wrapper = ControlWrapper::new(backend, plan, params).unwrap();
            wrapper
                .run_stream(|r| reports.push(serde_json::to_string(&r.detections).unwrap()))
                .unwrap();
        }
        reports
    };

    assert_eq!(run(false), run(true));
}
