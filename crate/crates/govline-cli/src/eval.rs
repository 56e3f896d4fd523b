//! Per-pose evaluation: build the governing system, run the numeric
//! oracle, compute the architecture's condition values, and classify.

use govline::manipulators::{
    build_3upu, build_delta, build_smg, build_verne, Pose, SmgChainJoints,
};
use govline::singularity::{
    class1_condition, class2_condition, class3_condition, classify_case, delta_condition, oracle,
    CaseLabel, CaseQuery, Verdict,
};
use govline::Tolerances;

use crate::config::{Kind, Machine};

/// One analyzed pose.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub oracle_det: f64,
    pub min_sv: f64,
    /// `(name, value)` pairs, fixed per machine kind (see
    /// [`condition_names`]).
    pub conditions: Vec<(&'static str, f64)>,
    pub verdict: Verdict,
    pub case: Option<CaseLabel>,
}

/// A pose either evaluates or is rejected by the builder (out of stroke,
/// branch point, joint degeneracy); rejection is a per-row outcome for
/// sweeps, not an abort.
#[derive(Clone, Debug)]
pub enum PoseOutcome {
    Evaluated(Evaluation),
    Unreachable(String),
}

/// Condition column names per machine kind, in CSV order.
pub fn condition_names(kind: &Kind) -> &'static [&'static str] {
    match kind {
        Kind::Upu(_) => &["actuation", "constraint", "class1"],
        Kind::Delta(_) => &["delta", "class1", "class3"],
        Kind::Smg(_) => &["class2"],
        Kind::Verne(_) => &["class3"],
    }
}

pub fn smg_joints(values: &[f64]) -> [SmgChainJoints; 2] {
    [
        SmgChainJoints {
            revolute: values[0],
            parallelogram: [values[1], values[2]],
        },
        SmgChainJoints {
            revolute: values[3],
            parallelogram: [values[4], values[5]],
        },
    ]
}

/// Evaluates one pose; `values` is aligned with `machine.pose_keys()`.
pub fn evaluate(machine: &Machine, values: &[f64], tol: &Tolerances) -> PoseOutcome {
    match &machine.kind {
        Kind::Upu(geom) => {
            let pose = Pose::at(values[0], values[1], values[2]);
            let b = match build_3upu(geom, &pose, tol) {
                Ok(b) => b,
                Err(e) => return PoseOutcome::Unreachable(e.to_string()),
            };
            let o = oracle(&b.system, tol);
            let c = class1_condition(&b.leg_dirs, &b.constraint_normals);
            let case = classify_case(
                &CaseQuery::ThreeForcesThreeMoments {
                    s: b.leg_dirs,
                    n: b.constraint_normals,
                },
                o.verdict != Verdict::NonSingular,
                tol,
            )
            .ok();
            PoseOutcome::Evaluated(Evaluation {
                oracle_det: o.det,
                min_sv: o.min_singular_value,
                conditions: vec![
                    ("actuation", c.actuation),
                    ("constraint", c.constraint),
                    ("class1", c.product_form),
                ],
                verdict: o.verdict,
                case,
            })
        }
        Kind::Delta(geom) => {
            let pose = Pose::at(values[0], values[1], values[2]);
            let b = match build_delta(geom, &pose, tol) {
                Ok(b) => b,
                Err(e) => return PoseOutcome::Unreachable(e.to_string()),
            };
            let o = oracle(&b.six_force, tol);
            let s = b.rod_dirs.map(|v| v.normalize());
            let n = b.parallelogram_normals.map(|v| v.normalize());
            let c = class1_condition(&s, &n);
            let v3 = class3_condition(&b.points, tol).map_or(f64::NAN, |v| v);
            let case = classify_case(
                &CaseQuery::SixForces {
                    points: b.points,
                },
                o.verdict != Verdict::NonSingular,
                tol,
            )
            .ok();
            PoseOutcome::Evaluated(Evaluation {
                oracle_det: o.det,
                min_sv: o.min_singular_value,
                conditions: vec![
                    ("delta", delta_condition(&s, &n)),
                    ("class1", c.product_form),
                    ("class3", v3),
                ],
                verdict: o.verdict,
                case,
            })
        }
        Kind::Smg(geom) => {
            let configured = match geom.configured(&smg_joints(values), tol) {
                Ok(g) => g,
                Err(e) => return PoseOutcome::Unreachable(e.to_string()),
            };
            let b = match build_smg(&configured, tol) {
                Ok(b) => b,
                Err(e) => return PoseOutcome::Unreachable(e.to_string()),
            };
            let o = oracle(&b.system, tol);
            let case = classify_case(
                &CaseQuery::FourForcesTwoMoments {
                    m: b.m,
                    n: b.constraint_dirs,
                },
                o.verdict != Verdict::NonSingular,
                tol,
            )
            .ok();
            PoseOutcome::Evaluated(Evaluation {
                oracle_det: o.det,
                min_sv: o.min_singular_value,
                conditions: vec![("class2", class2_condition(&b.m[0], &b.m[1], &b.m[2]))],
                verdict: o.verdict,
                case,
            })
        }
        Kind::Verne(geom) => {
            let pose = Pose::at(values[0], values[1], values[2]);
            let b = match build_verne(geom, &pose, tol) {
                Ok(b) => b,
                Err(e) => return PoseOutcome::Unreachable(e.to_string()),
            };
            let o = oracle(&b.system, tol);
            let v3 = class3_condition(&b.points, tol).map_or(f64::NAN, |v| v);
            let case = classify_case(
                &CaseQuery::SixForces {
                    points: b.points,
                },
                o.verdict != Verdict::NonSingular,
                tol,
            )
            .ok();
            PoseOutcome::Evaluated(Evaluation {
                oracle_det: o.det,
                min_sv: o.min_singular_value,
                conditions: vec![("class3", v3)],
                verdict: o.verdict,
                case,
            })
        }
    }
}
