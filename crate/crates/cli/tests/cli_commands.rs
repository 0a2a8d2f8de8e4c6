//! Command-level behaviour: custom spec generation, run output records,
//! LUT files, distance estimates, repeated bench stability.

use std::fs;

use fieldvision_cli::commands::bench::{bench, BenchArgs};
use fieldvision_cli::commands::build_lut::build_lut;
use fieldvision_cli::commands::gen::{gen, GenArgs};
use fieldvision_cli::commands::load_detections;
use fieldvision_cli::commands::run::{run, BackendKind, RunArgs};
use fieldvision_core::{Stage, StageStatus};
use fieldvision_synth::{NoiseModel, SceneSpec};

fn ball_spec(cx: i32) -> SceneSpec {
    SceneSpec {
        width: 320,
        height: 240,
        horizon: vec![(0, 70), (319, 76)],
        kinematic_horizon: Some((0.0, 1.0, -60.0)),
        ball: Some(fieldvision_synth::BallSpec {
            centre: (cx, 160),
            radius: 16,
            occlusion: 0.0,
            occlusion_from: fieldvision_synth::OcclusionSide::Left,
        }),
        goalposts: Vec::new(),
        obstacles: Vec::new(),
        lines: Vec::new(),
        clutter: Vec::new(),
        noise: NoiseModel::default(),
        seed: 0,
    }
}

#[test]
fn custom_spec_file_generates_a_stream_per_spec() {
    let dir = tempfile::tempdir().unwrap();
    let specs: Vec<SceneSpec> = (0..4).map(|i| ball_spec(100 + i * 20)).collect();
    let spec_path = dir.path().join("scene.json");
    fs::write(&spec_path, serde_json::to_string(&specs).unwrap()).unwrap();

    let stream = gen(&GenArgs {
        source: spec_path.to_str().unwrap(),
        output: dir.path().join("custom"),
        frames: None,
        noise_free: false,
        kinematics: true,
        fps: 30.0,
        name: None,
        seed: 0,
    })
    .unwrap();

    let manifest: fieldvision_platform::stream::StreamManifest =
        serde_json::from_str(&fs::read_to_string(stream.join("stream.json")).unwrap()).unwrap();
    assert_eq!(manifest.frames.len(), 4);
    assert_eq!(manifest.name, "scene");
    assert_eq!(manifest.fps, 30.0);
    assert!(stream.join("truth.jsonl").is_file());
}

#[test]
fn run_emits_one_complete_record_per_frame() {
    let dir = tempfile::tempdir().unwrap();
    let specs: Vec<SceneSpec> = (0..10).map(|i| ball_spec(80 + i * 12)).collect();
    let spec_path = dir.path().join("scene.json");
    fs::write(&spec_path, serde_json::to_string(&specs).unwrap()).unwrap();
    let stream = gen(&GenArgs {
        source: spec_path.to_str().unwrap(),
        output: dir.path().join("s"),
        frames: None,
        noise_free: false,
        kinematics: true,
        fps: 30.0,
        name: None,
        seed: 0,
    })
    .unwrap();

    let outcome = run(&RunArgs {
        stream,
        config: None,
        output: dir.path().join("out"),
        backend: BackendKind::Replay,
        seed: None,
        ball_radius_m: Some(0.065),
        focal_px: Some(420.0),
    })
    .unwrap();
    assert_eq!(outcome.summary.frames, 10);

    let records = load_detections(&outcome.detections_path).unwrap();
    assert_eq!(records.len(), 10);
    for (i, record) in records.iter().enumerate() {
        assert_eq!(record.seq, i as u64);
        // Status ledger complete: every stage accounted for.
        assert_eq!(record.stages.len(), Stage::ALL.len());
        assert!(record
            .stages
            .values()
            .all(|s| *s != StageStatus::NotRun));
        // Pinhole distances accompany each found ball.
        let distances = record.ball_distances_m.as_ref().unwrap();
        let balls = record.detections.balls.items().unwrap();
        assert_eq!(distances.len(), balls.len());
        for (d, ball) in distances.iter().zip(balls) {
            assert!((d - 420.0 * 0.065 / ball.radius).abs() < 1e-12);
        }
    }
}

#[test]
fn default_build_lut_writes_the_documented_format() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("field.vlut");
    let rules = build_lut(None, &out).unwrap();
    assert_eq!(rules, 4);
    let bytes = fs::read(&out).unwrap();
    assert_eq!(&bytes[0..6], b"VLUT\x01\x06");
    assert_eq!(bytes.len(), 6 + 262_144);

    // An empty rule list yields an all-unclassified table.
    let rules_path = dir.path().join("empty.json");
    fs::write(&rules_path, r#"{"version":1,"rules":[]}"#).unwrap();
    let empty_out = dir.path().join("empty.vlut");
    assert_eq!(build_lut(Some(&rules_path), &empty_out).unwrap(), 0);
    let bytes = fs::read(&empty_out).unwrap();
    assert!(bytes[6..].iter().all(|&b| b == 0));
}

#[test]
fn repeated_bench_invocations_reproduce_detections_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let specs: Vec<SceneSpec> = (0..12).map(|i| ball_spec(80 + i * 10)).collect();
    let spec_path = dir.path().join("scene.json");
    fs::write(&spec_path, serde_json::to_string(&specs).unwrap()).unwrap();
    let stream = gen(&GenArgs {
        source: spec_path.to_str().unwrap(),
        output: dir.path().join("s"),
        frames: None,
        noise_free: false,
        kinematics: true,
        fps: 30.0,
        name: None,
        seed: 0,
    })
    .unwrap();

    let bench_once = |out: &str| {
        bench(&BenchArgs {
            streams: vec![stream.clone()],
            config: None,
            output: dir.path().join(out),
            repetitions: 2,
            seed: None,
        })
        .unwrap()
        .report
    };
    let a = bench_once("a");
    let b = bench_once("b");
    // Timings move around; the structure and the detections do not.
    assert_eq!(a.streams.len(), b.streams.len());
    for (ra, rb) in a.streams.iter().zip(&b.streams) {
        assert_eq!(ra.name, rb.name);
        assert_eq!(ra.frames, rb.frames);
        assert_eq!(ra.detections_sha, rb.detections_sha);
    }
    assert_eq!(a.config_fingerprint, b.config_fingerprint);
}
