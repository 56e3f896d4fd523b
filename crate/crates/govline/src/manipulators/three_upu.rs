//! Translational 3-UPU builder.
//!
//! Three UPU legs connect base attachment points to platform attachment
//! points; the prismatic joint of each leg is actuated. Each leg transmits
//! one actuation force along itself and one constraint moment normal to its
//! two universal-joint axes, so the governing system is three zero-pitch
//! rows plus three infinite-pitch rows.

use nalgebra::Vector3;

use super::{ManipulatorError, Pose};
use crate::gca::SixLinePoints;
use crate::projective::{infinity_points_of_moment_pair, HomogPoint};
use crate::screws::{GoverningSystem, RowSource, Screw};
use crate::Tolerances;

/// One UPU leg: base attachment, platform attachment offset (platform
/// frame), the base-fixed first universal-joint axis, and stroke limits on
/// the leg length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UpuLeg {
    pub base: Vector3<f64>,
    pub platform_offset: Vector3<f64>,
    /// First U-joint axis, fixed in the base. Unit length.
    pub axis: Vector3<f64>,
    pub min_length: f64,
    pub max_length: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geometry3Upu {
    pub legs: [UpuLeg; 3],
}

impl Geometry3Upu {
    /// Equilateral base and platform triangles of the given circumradii,
    /// first U-joint axes tangent to the base circle, legs numbered
    /// counterclockwise starting at +y.
    pub fn symmetric(
        base_radius: f64,
        platform_radius: f64,
        min_length: f64,
        max_length: f64,
    ) -> Self {
        let mut legs = [UpuLeg {
            base: Vector3::zeros(),
            platform_offset: Vector3::zeros(),
            axis: Vector3::x(),
            min_length,
            max_length,
        }; 3];
        for (i, leg) in legs.iter_mut().enumerate() {
            let ang = core::f64::consts::FRAC_PI_2 + 2.0 * core::f64::consts::FRAC_PI_3 * i as f64;
            let (sin, cos) = crate::fmath::sin_cos(ang);
            leg.base = base_radius * Vector3::new(cos, sin, 0.0);
            leg.platform_offset = platform_radius * Vector3::new(cos, sin, 0.0);
            leg.axis = Vector3::new(-sin, cos, 0.0);
        }
        Geometry3Upu { legs }
    }

    /// Validates attachment triangles and axis vectors.
    pub fn validate(&self, tol: &Tolerances) -> Result<(), ManipulatorError> {
        let b: [Vector3<f64>; 3] = [self.legs[0].base, self.legs[1].base, self.legs[2].base];
        let p: [Vector3<f64>; 3] = [
            self.legs[0].platform_offset,
            self.legs[1].platform_offset,
            self.legs[2].platform_offset,
        ];
        for tri in [&b, &p] {
            let area = (tri[1] - tri[0]).cross(&(tri[2] - tri[0])).norm();
            let scale = (tri[1] - tri[0]).norm() * (tri[2] - tri[0]).norm();
            if tol.is_zero(area, scale) {
                return Err(ManipulatorError::InvalidGeometry);
            }
        }
        for leg in &self.legs {
            if tol.is_zero(leg.axis.norm(), 1.0)
                || leg.min_length < 0.0
                || leg.max_length <= leg.min_length
            {
                return Err(ManipulatorError::InvalidGeometry);
            }
        }
        Ok(())
    }
}

/// Everything the singularity analysis needs at one 3-UPU pose.
#[derive(Clone, Debug)]
pub struct Build3Upu {
    /// Rows `[F1 F2 F3 M1 M2 M3]`.
    pub system: GoverningSystem,
    /// Six-line point pairs: three (base point, leg-direction infinity
    /// point) pairs for the forces, plus the pairwise infinity points of
    /// the moment directions. `None` when the moment lines at infinity
    /// fail to span (constraint normals pairwise parallel or coplanar),
    /// which is a singularity by itself.
    pub points: Option<SixLinePoints>,
    /// Per leg: revolute (first U axis at base), revolute (second U axis
    /// at base), actuated prismatic along the leg, then the platform-side
    /// revolutes in reverse axis order.
    pub leg_twists: [[Screw; 5]; 3],
    /// Unit leg directions s_i.
    pub leg_dirs: [Vector3<f64>; 3],
    /// Unit constraint-moment directions n_i.
    pub constraint_normals: [Vector3<f64>; 3],
    pub leg_lengths: [f64; 3],
}

/// Index of the actuated prismatic twist within each leg's twist list.
pub const UPU_ACTUATED: usize = 2;

/// Builds the governing system of the translational 3-UPU at a pose.
pub fn build_3upu(
    geom: &Geometry3Upu,
    pose: &Pose,
    tol: &Tolerances,
) -> Result<Build3Upu, ManipulatorError> {
    geom.validate(tol)?;

    let mut dirs = [Vector3::zeros(); 3];
    let mut normals = [Vector3::zeros(); 3];
    let mut lengths = [0.0; 3];
    let mut rows = [Screw::wrench_moment(Vector3::z()); 6];
    let mut twists = [[Screw::twist_prismatic(Vector3::z()); 5]; 3];

    for (i, leg) in geom.legs.iter().enumerate() {
        let platform_point = pose.position + leg.platform_offset;
        let leg_vec = platform_point - leg.base;
        let len = leg_vec.norm();
        if len < leg.min_length || len > leg.max_length || tol.is_zero(len, 1.0) {
            return Err(ManipulatorError::Unreachable);
        }
        let s = leg_vec / len;
        let z1 = leg.axis.normalize();
        // Second U-joint axis: perpendicular to both the fixed axis and the
        // leg. It vanishes exactly when the joint is gimbal-locked.
        let z2_raw = z1.cross(&s);
        if tol.is_zero(z2_raw.norm(), 1.0) {
            return Err(ManipulatorError::DegenerateConstraint);
        }
        let z2 = z2_raw.normalize();
        let n = z1.cross(&z2);

        dirs[i] = s;
        normals[i] = n;
        lengths[i] = len;
        rows[i] = Screw::wrench_force(s, leg.base);
        rows[3 + i] = Screw::wrench_moment(n);
        twists[i] = [
            Screw::twist_revolute(z1, leg.base),
            Screw::twist_revolute(z2, leg.base),
            Screw::twist_prismatic(s),
            Screw::twist_revolute(z2, platform_point),
            Screw::twist_revolute(z1, platform_point),
        ];
    }

    let sources = [
        RowSource::ActuationForce { chain: 0, actuated_twist: UPU_ACTUATED },
        RowSource::ActuationForce { chain: 1, actuated_twist: UPU_ACTUATED },
        RowSource::ActuationForce { chain: 2, actuated_twist: UPU_ACTUATED },
        RowSource::ConstraintMoment { chain: 0 },
        RowSource::ConstraintMoment { chain: 1 },
        RowSource::ConstraintMoment { chain: 2 },
    ];
    let system =
        GoverningSystem::new(rows, sources, tol).expect("rows are pure forces and moments");

    let points = six_line_points(geom, pose, &dirs, &normals, tol);

    Ok(Build3Upu {
        system,
        points,
        leg_twists: twists,
        leg_dirs: dirs,
        constraint_normals: normals,
        leg_lengths: lengths,
    })
}

fn six_line_points(
    geom: &Geometry3Upu,
    _pose: &Pose,
    dirs: &[Vector3<f64>; 3],
    normals: &[Vector3<f64>; 3],
    tol: &Tolerances,
) -> Option<SixLinePoints> {
    let inf = infinity_points_of_moment_pair(normals[0], normals[1], normals[2], tol).ok()?;
    let (g, h, i) = (inf.g?, inf.h?, inf.i?);
    let mut pairs = [(HomogPoint::from_affine(Vector3::zeros()), g); 6];
    for k in 0..3 {
        pairs[k] = (
            HomogPoint::from_affine(geom.legs[k].base),
            HomogPoint::at_infinity(dirs[k], tol).ok()?,
        );
    }
    pairs[3] = (g, h);
    pairs[4] = (g, i);
    pairs[5] = (h, i);
    SixLinePoints::new(pairs, tol).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca::superbracket;
    use crate::screws::{normalized_pairing, reciprocal_system, PitchClass};
    use crate::singularity::{class1_condition, oracle, Verdict};
    use approx::assert_relative_eq;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn symmetric_geometry(rb: f64, rp: f64) -> Geometry3Upu {
        Geometry3Upu::symmetric(rb, rp, 0.05, 10.0)
    }

    #[test]
    fn home_pose_is_nonsingular() {
        let geom = symmetric_geometry(0.5, 0.25);
        let b = build_3upu(&geom, &Pose::at(0.0, 0.0, 0.8), &tol()).unwrap();
        let v = oracle(&b.system, &tol());
        assert_eq!(v.verdict, Verdict::NonSingular);
        let c = class1_condition(&b.leg_dirs, &b.constraint_normals);
        assert!(c.actuation.abs() > 1e-3);
        assert!(c.constraint.abs() > 1e-3);
        assert!(b.points.is_some());
    }

    #[test]
    fn flattened_pose_makes_leg_directions_coplanar() {
        let geom = symmetric_geometry(0.5, 0.25);
        // Platform center in the base plane: all legs lie in z = 0.
        let b = build_3upu(&geom, &Pose::at(0.07, -0.04, 0.0), &tol()).unwrap();
        let c = class1_condition(&b.leg_dirs, &b.constraint_normals);
        assert_relative_eq!(c.actuation, 0.0, epsilon = 1e-14);
        let v = oracle(&b.system, &tol());
        assert_eq!(v.verdict, Verdict::Singular);
    }

    #[test]
    fn equal_first_axes_kill_the_constraint_everywhere() {
        // All first U axes parallel: every n_i is then perpendicular to
        // that shared axis, so the three constraint normals stay coplanar
        // at every pose and the triple product is identically zero.
        let mut geom = symmetric_geometry(0.5, 0.25);
        for leg in &mut geom.legs {
            leg.axis = Vector3::x();
        }
        for pose in [
            Pose::at(0.0, 0.0, 0.8),
            Pose::at(0.1, -0.2, 0.6),
            Pose::at(-0.3, 0.05, 1.1),
        ] {
            let b = build_3upu(&geom, &pose, &tol()).unwrap();
            let c = class1_condition(&b.leg_dirs, &b.constraint_normals);
            assert_relative_eq!(c.constraint, 0.0, epsilon = 1e-14);
            assert_eq!(oracle(&b.system, &tol()).verdict, Verdict::Singular);
            // The moment lines at infinity all pass through the same pair
            // of points, so no spanning six-line point set exists.
            assert!(b.points.is_none());
        }
    }

    #[test]
    fn out_of_stroke_pose_is_unreachable() {
        let geom = symmetric_geometry(0.5, 0.25);
        let r = build_3upu(&geom, &Pose::at(0.0, 0.0, 25.0), &tol());
        assert_eq!(r.err(), Some(ManipulatorError::Unreachable));
    }

    #[test]
    fn gimbal_locked_axis_degenerates_the_constraint() {
        let mut geom = symmetric_geometry(0.5, 0.25);
        // Point the first axis of leg 0 along the leg itself at this pose.
        let pose = Pose::at(0.0, 0.0, 0.8);
        let dir = pose.position + geom.legs[0].platform_offset - geom.legs[0].base;
        geom.legs[0].axis = dir.normalize();
        let r = build_3upu(&geom, &pose, &tol());
        assert_eq!(r.err(), Some(ManipulatorError::DegenerateConstraint));
    }

    #[test]
    fn rows_have_the_advertised_pitch_layout() {
        let geom = symmetric_geometry(0.5, 0.25);
        let b = build_3upu(&geom, &Pose::at(0.1, 0.05, 0.9), &tol()).unwrap();
        for i in 0..3 {
            assert_eq!(b.system.rows[i].pitch_class(&tol()), PitchClass::Zero);
            assert_eq!(b.system.rows[3 + i].pitch_class(&tol()), PitchClass::Infinite);
        }
    }

    #[test]
    fn governing_rows_are_reciprocal_to_the_right_twists() {
        let geom = symmetric_geometry(0.5, 0.25);
        let b = build_3upu(&geom, &Pose::at(0.12, -0.08, 0.7), &tol()).unwrap();
        for leg in 0..3 {
            let force = &b.system.rows[leg];
            let moment = &b.system.rows[3 + leg];
            for (k, tw) in b.leg_twists[leg].iter().enumerate() {
                let fp = normalized_pairing(tw, force).abs();
                if k == UPU_ACTUATED {
                    assert!(fp > 1e-3, "actuated pairing must not vanish");
                } else {
                    assert!(fp <= 1e-10, "passive pairing leg {leg} twist {k}: {fp}");
                }
                assert!(normalized_pairing(tw, moment).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn each_leg_reciprocal_system_is_its_constraint_moment() {
        let geom = symmetric_geometry(0.5, 0.25);
        let b = build_3upu(&geom, &Pose::at(-0.05, 0.1, 0.85), &tol()).unwrap();
        for leg in 0..3 {
            let sys = reciprocal_system(&b.leg_twists[leg], &tol());
            assert_eq!(sys.len(), 1);
            let n = sys[0].dual.normalize();
            let dot = n.dot(&b.constraint_normals[leg]).abs();
            assert_relative_eq!(dot, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn moment_rows_span_rank_three_away_from_singularity() {
        let geom = symmetric_geometry(0.5, 0.25);
        let b = build_3upu(&geom, &Pose::at(0.0, 0.0, 0.8), &tol()).unwrap();
        let n = &b.constraint_normals;
        let triple = n[0].cross(&n[1]).dot(&n[2]);
        assert!(triple.abs() > 1e-6);
        let lines = b.points.unwrap();
        let sb = superbracket(&lines);
        assert!(sb.abs() > 1e-12);
    }
}
