//! Built-in numeric batteries: quick distrust-your-build checks that the
//! compiled tables and builders still satisfy their defining identities.

use govline::bracket::{syzygy_residual, syzygy_scale};
use govline::gca::{
    matrix_det, superbracket_with_table, SixLinePoints, SuperbracketMonomial, SUPERBRACKET_TABLE,
};
use govline::manipulators::{
    build_3upu, build_delta, build_smg, build_verne, Geometry3Upu, GeometryDelta, GeometryVerne,
    Pose, SmgJointGeometry,
};
use govline::nalgebra::{Vector3, Vector4};
use govline::projective::HomogPoint;
use govline::screws::{normalized_pairing, RowSource, Screw};
use govline::Tolerances;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eval::smg_joints;

fn rand_vec(rng: &mut ChaCha8Rng) -> Vector3<f64> {
    Vector3::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    )
}

fn rand_point(rng: &mut ChaCha8Rng) -> HomogPoint {
    if rng.gen_bool(0.8) {
        HomogPoint::from_affine(rand_vec(rng))
    } else {
        let d = rand_vec(rng);
        HomogPoint::raw(Vector4::new(d.x, d.y, d.z, 0.0))
    }
}

/// The tolerance set must describe usable bands before any numeric battery
/// (or any analysis command) can mean anything.
pub fn tolerance_battery(tol: &Tolerances) -> Result<String, String> {
    let epsilon_usable = tol.epsilon.is_finite() && tol.epsilon > 0.0;
    if !epsilon_usable {
        return Err(format!(
            "epsilon = {:e} disables roundoff absorption; every exact-zero test needs epsilon > 0",
            tol.epsilon
        ));
    }
    let rtol_usable = tol.rank_rtol.is_finite() && tol.rank_rtol > 0.0;
    if !rtol_usable {
        return Err(format!("rank_rtol = {:e} must be positive", tol.rank_rtol));
    }
    if !(tol.singular > 0.0 && tol.singular <= tol.near_singular) {
        return Err(format!(
            "verdict bands need 0 < singular ({:e}) <= near_singular ({:e})",
            tol.singular, tol.near_singular
        ));
    }
    Ok(format!(
        "epsilon {:e}, singular band {:e}/{:e}",
        tol.epsilon, tol.singular, tol.near_singular
    ))
}

/// The monomial table must reproduce the line-matrix determinant with a
/// single unit ratio. Parameterized over the table so a corrupted copy can
/// be shown to fail.
pub fn proportionality_battery(
    table: &[SuperbracketMonomial],
    tol: &Tolerances,
) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut max_dev: f64 = 0.0;
    let mut checked = 0usize;
    while checked < 200 {
        let pairs = core::array::from_fn(|_| (rand_point(&mut rng), rand_point(&mut rng)));
        let Ok(pts) = SixLinePoints::new(pairs, tol) else {
            continue;
        };
        let det = matrix_det(&pts.line_matrix());
        if det.abs() < 1e-6 {
            continue;
        }
        let ratio = superbracket_with_table(&pts, table) / det;
        let dev = (ratio - 1.0).abs();
        max_dev = max_dev.max(dev);
        if dev > 1e-9 {
            return Err(format!(
                "sample {checked}: superbracket/det = {ratio:.17e}, expected 1"
            ));
        }
        checked += 1;
    }
    Ok(format!("ratio 1 to {max_dev:.2e} over 200 line sets"))
}

fn syzygy_battery() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst: f64 = 0.0;
    for k in 0..500 {
        let e: [HomogPoint; 4] = core::array::from_fn(|_| rand_point(&mut rng));
        let f: [HomogPoint; 4] = core::array::from_fn(|_| rand_point(&mut rng));
        let res = syzygy_residual(&e, &f).abs();
        let scale = syzygy_scale(&e, &f).max(1e-12);
        worst = worst.max(res / scale);
        if res > 1e-9 * scale {
            return Err(format!(
                "sample {k}: exchange residual {res:e} at scale {scale:e}"
            ));
        }
    }
    Ok(format!("residual <= {worst:.2e} relative over 500 sets"))
}

fn pairing_contract(
    rows: &[Screw; 6],
    sources: &[RowSource; 6],
    twists_of_chain: &dyn Fn(usize) -> Vec<Screw>,
    label: &str,
) -> Result<(), String> {
    for (rk, (row, src)) in rows.iter().zip(sources.iter()).enumerate() {
        let RowSource::ActuationForce { chain, actuated_twist } = *src else {
            continue;
        };
        for (idx, tw) in twists_of_chain(chain).iter().enumerate() {
            let p = normalized_pairing(tw, row).abs();
            if idx == actuated_twist && p <= 1e-3 {
                return Err(format!("{label} row {rk}: actuated pairing {p:e}"));
            }
            if idx != actuated_twist && p > 1e-10 {
                return Err(format!("{label} row {rk} vs twist {idx}: pairing {p:e}"));
            }
        }
    }
    Ok(())
}

fn reciprocity_battery(tol: &Tolerances) -> Result<String, String> {
    let upu = build_3upu(
        &Geometry3Upu::symmetric(0.5, 0.25, 0.05, 10.0),
        &Pose::at(0.05, -0.1, 0.8),
        tol,
    )
    .map_err(|e| format!("3upu reference build: {e}"))?;
    pairing_contract(
        &upu.system.rows,
        &upu.system.sources,
        &|chain| upu.leg_twists[chain].to_vec(),
        "3upu",
    )?;

    let delta = build_delta(
        &GeometryDelta::symmetric(0.5, 0.15, 0.08, 0.65),
        &Pose::at(0.05, 0.08, -0.42),
        tol,
    )
    .map_err(|e| format!("delta reference build: {e}"))?;
    pairing_contract(
        &delta.six_force.rows,
        &delta.six_force.sources,
        &|chain| delta.rod_twists[chain].to_vec(),
        "delta",
    )?;

    let smg_geom = SmgJointGeometry::symmetric(0.4, 0.2, 0.35)
        .configured(&smg_joints(&[0.25, 0.5, -0.3, -0.35, 0.7, -0.1]), tol)
        .map_err(|e| format!("smg reference configuration: {e}"))?;
    let smg = build_smg(&smg_geom, tol).map_err(|e| format!("smg reference build: {e}"))?;
    pairing_contract(
        &smg.system.rows,
        &smg.system.sources,
        &|chain| smg.chain_twists[chain].to_vec(),
        "smg",
    )?;

    let verne = build_verne(
        &GeometryVerne::symmetric(0.7, 0.9, 0.05),
        &Pose::at(0.02, -0.04, 0.05),
        tol,
    )
    .map_err(|e| format!("verne reference build: {e}"))?;
    for (k, row) in verne.system.rows.iter().enumerate() {
        let (pa, pb) = verne.points.pairs[k];
        let (a, b) = (pa.affine(), pb.affine());
        for axis in [Vector3::x(), Vector3::y(), Vector3::z()] {
            for anchor in [a, b] {
                let p = normalized_pairing(&Screw::twist_revolute(axis, anchor), row).abs();
                if p > 1e-10 {
                    return Err(format!("verne rod {k}: endpoint rotation pairing {p:e}"));
                }
            }
        }
        let ext = Screw::twist_prismatic((b - a).normalize());
        if normalized_pairing(&ext, row).abs() <= 1e-3 {
            return Err(format!("verne rod {k}: extension barely pairs"));
        }
    }

    Ok("all four builders at reference poses".into())
}

/// Runs every battery, prints one line each, and returns the process exit
/// code.
pub fn run(tol: &Tolerances) -> i32 {
    let mut failed = false;
    let mut report = |name: &str, outcome: Result<String, String>| match outcome {
        Ok(detail) => println!("selftest {name}: PASS ({detail})"),
        Err(reason) => {
            failed = true;
            println!("selftest {name}: FAIL ({reason})");
        }
    };
    let gate = tolerance_battery(tol);
    let usable = gate.is_ok();
    report("tolerances", gate);
    if usable {
        report(
            "superbracket-proportionality",
            proportionality_battery(&SUPERBRACKET_TABLE, tol),
        );
        report("bracket-syzygy", syzygy_battery());
        report("reciprocity", reciprocity_battery(tol));
    } else {
        // Builders and bands behave arbitrarily under a broken tolerance
        // set, so running the remaining batteries would only add noise.
        for name in ["superbracket-proportionality", "bracket-syzygy", "reciprocity"] {
            report(name, Err("not run; fix the tolerance set first".into()));
        }
    }
    if failed {
        1
    } else {
        0
    }
}
