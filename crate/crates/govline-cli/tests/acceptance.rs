//! Acceptance checks that need the compiled binary: the Verne preset sweep
//! must straddle its singularity surface, and sweep output must not depend
//! on the worker count.
//!
//! Both tests locate a singularity crossing with the library first and then
//! aim a grid point at it, reproducing the binary's grid-value arithmetic
//! exactly so the hit is guaranteed rather than lucky.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::Instant;

use govline::manipulators::{build_delta, build_verne, GeometryDelta, GeometryVerne, Pose};
use govline::singularity::{oracle, Verdict};
use govline::Tolerances;

fn govline(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_govline"))
        .args(args)
        .output()
        .expect("spawn govline")
}

fn preset_config(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    let path = dir.path().join("m.json");
    std::fs::write(&path, format!("{{\"preset\": \"{name}\"}}")).unwrap();
    path
}

/// The binary's grid-value formula, expression for expression.
fn grid_value(min: f64, max: f64, n: usize, i: usize) -> f64 {
    min + (max - min) * (i as f64) / ((n - 1) as f64)
}

/// Bisects `det(z) = 0` to full float precision and returns the endpoint
/// whose verdict is singular or near-singular.
fn bisect_z(mut lo: f64, mut hi: f64, eval: &dyn Fn(f64) -> (f64, Verdict)) -> f64 {
    let (dlo, _) = eval(lo);
    let (dhi, _) = eval(hi);
    assert!(
        dlo * dhi < 0.0,
        "no sign change on [{lo}, {hi}]: {dlo:e} vs {dhi:e}"
    );
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo.min(hi) || mid >= lo.max(hi) {
            break;
        }
        let (d, _) = eval(mid);
        if d * dlo > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = if eval(lo).1 != Verdict::NonSingular { lo } else { hi };
    assert_ne!(eval(root).1, Verdict::NonSingular, "bisection limit not singular");
    root
}

fn column(header: &str, name: &str) -> usize {
    header.split(',').position(|c| c == name).unwrap()
}

/// Criterion 5, sweep half: a Verne preset sweep whose grid straddles the
/// machine-axis singularity crossing reports both verdict kinds.
#[test]
fn criterion_5_verne_sweep_spans_both_verdicts() {
    let t0 = Instant::now();
    let tol = Tolerances::default();
    let geom = GeometryVerne::symmetric(0.7, 0.9, 0.05);
    let eval = |z: f64| {
        let b = build_verne(&geom, &Pose::at(0.0, 0.0, z), &tol).unwrap();
        let o = oracle(&b.system, &tol);
        (o.det, o.verdict)
    };
    let root = bisect_z(0.9, 1.0, &eval);

    // 21 z samples, the middle one aimed at the root.
    let h = 0.0078125;
    let (z_min, z_max) = (root - 10.0 * h, root + 10.0 * h);
    let z_mid = grid_value(z_min, z_max, 21, 10);
    assert_ne!(eval(z_mid).1, Verdict::NonSingular, "mid grid point missed the root");

    let dir = tempfile::tempdir().unwrap();
    let cfg = preset_config(&dir, "verne-sym");
    let out = govline(&[
        "sweep",
        "--config",
        cfg.to_str().unwrap(),
        "--grid",
        &format!("z={z_min}:{z_max}:21"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let verdict_col = column(text.lines().next().unwrap(), "verdict");

    let mut crossing = 0;
    let mut regular = 0;
    for row in text.lines().skip(1) {
        match row.split(',').nth(verdict_col).unwrap() {
            "singular" | "near-singular" => crossing += 1,
            "non-singular" => regular += 1,
            other => panic!("unexpected verdict {other:?} in {row}"),
        }
    }
    assert_eq!(crossing + regular, 21);
    assert!(crossing >= 1, "no row on the singular surface");
    assert!(regular >= 1, "no regular row");
    println!(
        "criterion 5 (sweep): PASS: verne rows {crossing} singular/near + {regular} regular around z = {root:.12} in {:.2?}",
        t0.elapsed()
    );
}

/// Criterion 8: byte-identical sweep output across worker counts 1, 4, 8 on
/// a 21x21x21 Delta grid that crosses the preset's singularity surface.
#[test]
fn criterion_8_sweep_is_deterministic_across_jobs() {
    let t0 = Instant::now();
    let tol = Tolerances::default();
    // The delta-sym preset geometry.
    let geom = GeometryDelta::tilted(0.5, 0.15, 0.08, 0.65, core::f64::consts::FRAC_PI_6);

    let h = 0.0078125;
    let (x_min, x_max) = (0.05 - 10.0 * h, 0.05 + 10.0 * h);
    let (y_min, y_max) = (0.03 - 10.0 * h, 0.03 + 10.0 * h);
    let x_mid = grid_value(x_min, x_max, 21, 10);
    let y_mid = grid_value(y_min, y_max, 21, 10);

    let eval = |z: f64| {
        let b = build_delta(&geom, &Pose::at(x_mid, y_mid, z), &tol).unwrap();
        let o = oracle(&b.six_force, &tol);
        (o.det, o.verdict)
    };
    let root = bisect_z(-1.275, -1.25, &eval);
    let (z_min, z_max) = (root - 10.0 * h, root + 10.0 * h);
    let z_mid = grid_value(z_min, z_max, 21, 10);
    assert_ne!(eval(z_mid).1, Verdict::NonSingular, "mid grid point missed the root");

    let dir = tempfile::tempdir().unwrap();
    let cfg = preset_config(&dir, "delta-sym");
    let grid = [
        format!("x={x_min}:{x_max}:21"),
        format!("y={y_min}:{y_max}:21"),
        format!("z={z_min}:{z_max}:21"),
    ];
    let sweep = |jobs: &str| {
        let out = govline(&[
            "sweep",
            "--config",
            cfg.to_str().unwrap(),
            "--grid",
            &grid[0],
            "--grid",
            &grid[1],
            "--grid",
            &grid[2],
            "--jobs",
            jobs,
        ]);
        assert_eq!(out.status.code(), Some(0));
        out.stdout
    };

    let one = sweep("1");
    let four = sweep("4");
    let eight = sweep("8");
    assert_eq!(one, four, "1 vs 4 workers");
    assert_eq!(one, eight, "1 vs 8 workers");

    let text = String::from_utf8(one).unwrap();
    let verdict_col = column(text.lines().next().unwrap(), "verdict");
    assert_eq!(text.lines().count(), 1 + 21 * 21 * 21);
    let verdicts: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|row| row.split(',').nth(verdict_col).unwrap())
        .collect();
    let crossing = verdicts
        .iter()
        .filter(|v| **v == "singular" || **v == "near-singular")
        .count();
    let regular = verdicts.iter().filter(|v| **v == "non-singular").count();
    assert!(crossing >= 1, "grid missed the singularity surface");
    assert!(regular > 9000, "the box should be mostly regular");

    let dt = t0.elapsed();
    assert!(dt.as_secs_f64() < 60.0, "criterion 8 budget: {dt:.2?}");
    println!(
        "criterion 8: PASS: three 9261-row sweeps byte-identical, {crossing} rows on the surface, in {dt:.2?}"
    );
}
