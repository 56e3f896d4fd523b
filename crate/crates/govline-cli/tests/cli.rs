//! End-to-end contract tests for the `govline` binary: exit codes for
//! `check`, CSV shape for `sweep`, and the `selftest` battery behavior.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use govline::manipulators::{build_verne, GeometryVerne, Pose};
use govline::singularity::{oracle, Verdict};
use govline::Tolerances;

fn govline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_govline"))
        .args(args)
        .output()
        .expect("spawn govline")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn write_config(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn preset_config(name: &str) -> (tempfile::TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = write_config(&dir, "m.json", &format!("{{\"preset\": \"{name}\"}}"));
    let path = path.to_str().unwrap().to_owned();
    (dir, path)
}

#[test]
fn check_reports_a_regular_home_pose() {
    let (_dir, cfg) = preset_config("delta-sym");
    let out = govline(&["check", "--config", &cfg]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("machine: delta"));
    assert!(text.contains("verdict: non-singular"));
    assert!(text.contains("cond.delta: "));
    assert!(text.contains("case: -"));
}

#[test]
fn check_flags_the_flat_upu_pose_singular() {
    let (_dir, cfg) = preset_config("3upu-flat");
    let out = govline(&["check", "--config", &cfg]);
    assert_eq!(code(&out), 10, "stdout: {}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("verdict: singular"));
    // The coplanar pose has a definite classification, not a bare verdict.
    assert!(!text.contains("case: -"), "expected a case label:\n{text}");
}

/// Walks the Verne singularity crossing on the machine axis down to a pose
/// whose oracle verdict is near-singular, then expects exit code 11 there.
#[test]
fn check_distinguishes_near_singular_poses() {
    let tol = Tolerances::default();
    let geom = GeometryVerne::symmetric(0.7, 0.9, 0.05);
    let det = |z: f64| {
        let b = build_verne(&geom, &Pose::at(0.0, 0.0, z), &tol).unwrap();
        oracle(&b.system, &tol)
    };
    let (mut lo, mut hi) = (0.9, 1.0);
    assert!(det(lo).det < 0.0 && det(hi).det > 0.0, "crossing moved");
    let mut probe = None;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let o = det(mid);
        if o.verdict == Verdict::NearSingular {
            probe = Some(mid);
            break;
        }
        if o.det < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let z = probe.expect("bisection crosses the near-singular band");

    let (_dir, cfg) = preset_config("verne-sym");
    let out = govline(&["check", "--config", &cfg, "--pose", &format!("z={z}")]);
    assert_eq!(code(&out), 11, "stdout: {}", stdout(&out));
    assert!(stdout(&out).contains("verdict: near-singular"));
}

#[test]
fn check_rejects_unreachable_poses() {
    let (_dir, cfg) = preset_config("delta-sym");
    let out = govline(&["check", "--config", &cfg, "--pose", "x=2"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("pose"), "stderr: {}", stderr(&out));
}

#[test]
fn check_rejects_unknown_pose_keys() {
    let (_dir, cfg) = preset_config("delta-sym");
    let out = govline(&["check", "--config", &cfg, "--pose", "q=1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("\"q\""));

    let out = govline(&["check", "--config", &cfg, "--pose", "nonsense"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn check_rejects_broken_configs() {
    let dir = tempfile::tempdir().unwrap();

    let cfg = write_config(&dir, "notjson.json", "not json");
    let out = govline(&["check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("invalid config"));

    let cfg = write_config(&dir, "preset.json", "{\"preset\": \"no-such\"}");
    let out = govline(&["check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown preset"));

    let cfg = write_config(
        &dir,
        "both.json",
        "{\"preset\": \"delta-sym\", \"manipulator\": \"delta\", \"geometry\": {}}",
    );
    let out = govline(&["check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    let out = govline(&["check", "--config", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn check_rejects_an_unusable_tolerance_set() {
    let (_dir, cfg) = preset_config("delta-sym");
    let out = govline(&["check", "--config", &cfg, "--epsilon", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("epsilon"));

    let out = govline(&["check", "--config", &cfg, "--threshold", "-1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn pose_overrides_reach_the_evaluation() {
    let (_dir, cfg) = preset_config("delta-sym");
    let home = stdout(&govline(&["check", "--config", &cfg]));
    let moved = stdout(&govline(&["check", "--config", &cfg, "--pose", "x=0.1"]));
    let det_of = |text: &str| {
        text.lines()
            .find(|l| l.starts_with("oracle_det: "))
            .unwrap()
            .to_owned()
    };
    assert_ne!(det_of(&home), det_of(&moved));
}

#[test]
fn threshold_widens_the_singular_band() {
    let (_dir, cfg) = preset_config("verne-sym");
    assert_eq!(code(&govline(&["check", "--config", &cfg])), 0);
    // The home pose's normalized minimum singular value is ~0.038, so a
    // threshold above that must reclassify it as singular.
    let out = govline(&["check", "--config", &cfg, "--threshold", "0.05"]);
    assert_eq!(code(&out), 10);
    assert!(stdout(&out).contains("verdict: singular"));
}

#[test]
fn selftest_passes_with_stock_tolerances() {
    let out = govline(&["selftest"]);
    assert_eq!(code(&out), 0, "stdout: {}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(text.matches(": PASS").count(), 4, "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn selftest_diagnoses_a_zero_epsilon() {
    let out = govline(&["selftest", "--epsilon", "0"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("tolerances: FAIL"));
    assert!(text.contains("epsilon"), "{text}");
}

/// `key: value` lines of a check report.
fn report_fields(text: &str) -> HashMap<String, String> {
    text.lines()
        .filter_map(|l| l.split_once(": "))
        .map(|(k, v)| (k.to_owned(), v.to_owned()))
        .collect()
}

#[test]
fn a_single_cell_sweep_matches_check() {
    let (_dir, cfg) = preset_config("delta-sym");
    let check = stdout(&govline(&["check", "--config", &cfg, "--pose", "x=0.05"]));
    let fields = report_fields(&check);

    let sweep = stdout(&govline(&["sweep", "--config", &cfg, "--grid", "x=0.05:0.05:1"]));
    let mut lines = sweep.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(lines.next(), None, "a 1-point grid sweeps one row");

    for (name, value) in header.iter().zip(&row) {
        match *name {
            "verdict" => assert_eq!(value, &fields["verdict"]),
            "case" => {
                let check_case = if fields["case"] == "-" { "" } else { &fields["case"] };
                assert_eq!(value, &check_case);
            }
            "pose.x" => assert_eq!(*value, format!("{:.16e}", 0.05)),
            "pose.y" | "pose.z" => {}
            other => assert_eq!(value, &fields[other], "column {other}"),
        }
    }
}

#[test]
fn sweep_writes_the_same_bytes_to_a_file() {
    let (dir, cfg) = preset_config("delta-sym");
    let grid = ["--grid", "x=-0.1:0.1:3", "--grid", "z=-0.5:-0.4:2"];
    let piped = govline(&[&["sweep", "--config", &cfg], &grid[..]].concat());
    let out_path = dir.path().join("rows.csv");
    let filed = govline(
        &[
            &["sweep", "--config", &cfg],
            &grid[..],
            &["--out", out_path.to_str().unwrap()],
        ]
        .concat(),
    );
    assert_eq!(code(&piped), 0);
    assert_eq!(code(&filed), 0);
    assert!(filed.stdout.is_empty());
    assert_eq!(std::fs::read(&out_path).unwrap(), piped.stdout);
}

#[test]
fn sweep_orders_rows_with_the_first_axis_slowest() {
    let (_dir, cfg) = preset_config("delta-sym");
    let out = stdout(&govline(&[
        "sweep", "--config", &cfg, "--grid", "x=-0.1:0.1:3", "--grid", "z=-0.5:-0.4:2",
    ]));
    let xs: Vec<f64> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(xs.len(), 6);
    assert_eq!(xs[0], xs[1]);
    assert_eq!(xs[2], xs[3]);
    assert_eq!(xs[4], xs[5]);
    assert!(xs[0] < xs[2] && xs[2] < xs[4], "x blocks ascend: {xs:?}");
}

#[test]
fn sweep_marks_unreachable_rows_and_keeps_going() {
    let (_dir, cfg) = preset_config("delta-sym");
    let out = govline(&["sweep", "--config", &cfg, "--grid", "x=0:2:5"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 5);
    let unreachable: Vec<&&str> = rows.iter().filter(|r| r.contains(",unreachable,")).collect();
    assert!(!unreachable.is_empty());
    assert!(unreachable.len() < rows.len(), "the origin is reachable");
    for row in unreachable {
        // Pose columns are filled, value columns are empty, case is empty.
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 10);
        assert!(fields[..3].iter().all(|f| !f.is_empty()));
        assert!(fields[3..8].iter().all(|f| f.is_empty()), "{row}");
        assert_eq!(fields[8], "unreachable");
        assert!(fields[9].is_empty());
    }
}

#[test]
fn sweep_rejects_bad_grid_axes() {
    let (_dir, cfg) = preset_config("delta-sym");
    for bad in [
        "x=1:2",
        "q=0:1:4",
        "x=0:one:4",
        "x=0:1:0",
    ] {
        let out = govline(&["sweep", "--config", &cfg, "--grid", bad]);
        assert_eq!(code(&out), 2, "grid {bad:?} should be rejected");
    }
    let out = govline(&[
        "sweep", "--config", &cfg, "--grid", "x=0:0.1:2", "--grid", "x=0:0.1:2",
    ]);
    assert_eq!(code(&out), 2, "duplicate axes should be rejected");
    let out = govline(&["sweep", "--config", &cfg]);
    assert_eq!(code(&out), 2, "a sweep without axes should be rejected");
}

#[test]
fn csv_headers_are_stable_per_machine() {
    let cases = [
        (
            "delta-sym",
            "z=-0.42:-0.42:1",
            "pose.x,pose.y,pose.z,oracle_det,min_sv,cond.delta,cond.class1,cond.class3,verdict,case",
        ),
        (
            "3upu-sym",
            "z=0.8:0.8:1",
            "pose.x,pose.y,pose.z,oracle_det,min_sv,cond.actuation,cond.constraint,cond.class1,verdict,case",
        ),
        (
            "smg-sym",
            "r1=0.25:0.25:1",
            "pose.r1,pose.p11,pose.p12,pose.r2,pose.p21,pose.p22,oracle_det,min_sv,cond.class2,verdict,case",
        ),
        (
            "verne-sym",
            "z=0:0:1",
            "pose.x,pose.y,pose.z,oracle_det,min_sv,cond.class3,verdict,case",
        ),
    ];
    for (preset, grid, header) in cases {
        let (_dir, cfg) = preset_config(preset);
        let out = govline(&["sweep", "--config", &cfg, "--grid", grid]);
        assert_eq!(code(&out), 0, "{preset}: {}", stderr(&out));
        let text = stdout(&out);
        assert_eq!(text.lines().next(), Some(header), "{preset}");
    }
}

#[test]
fn explicit_geometry_configs_load() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        "upu.json",
        r##"{
            "manipulator": "3upu",
            "geometry": {
                "symmetric": {
                    "base_radius": 0.5, "platform_radius": 0.25,
                    "min_length": 0.3, "max_length": 1.5
                }
            },
            "home": {"z": 0.8}
        }"##,
    );
    let out = govline(&["check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("machine: 3upu"));

    let cfg = write_config(
        &dir,
        "badhome.json",
        "{\"preset\": \"delta-sym\", \"home\": {\"w\": 1}}",
    );
    let out = govline(&["check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("home key"));
}
