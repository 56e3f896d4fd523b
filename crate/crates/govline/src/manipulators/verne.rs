//! Verne parallel-module builder.
//!
//! The machine's parallel module is driven by six rods grouped into three
//! legs. Legs II and III are spatial parallelograms; leg I's rods may be
//! skew to each other. The rods are supplied directly as point pairs
//! (slider side, platform side) because the platform's coupled rotation is
//! resolved by an external kinematic model; a pose here is a rigid
//! translation applied to the platform-side points, which preserves the
//! parallelogram closures exactly.

use nalgebra::Vector3;

use super::{ManipulatorError, Pose};
use crate::gca::SixLinePoints;
use crate::projective::HomogPoint;
use crate::screws::{GoverningSystem, RowSource, Screw};
use crate::Tolerances;

/// Six rods as (slider point, platform point) pairs, leg by leg:
/// `rods[0..2]` form leg I, `rods[2..4]` leg II, `rods[4..6]` leg III.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeometryVerne {
    pub rods: [(Vector3<f64>, Vector3<f64>); 6],
}

impl GeometryVerne {
    /// A roughly symmetric reference module: legs spread along x, platform
    /// hanging `drop` below the slider plane, leg I skewed by `skew` so its
    /// rods are not a parallelogram. The parallelogram rod vectors are
    /// tilted and the anchor stations staggered; a mirror-symmetric layout
    /// with coplanar anchors is rank deficient at every pose.
    pub fn symmetric(spread: f64, drop: f64, skew: f64) -> Self {
        // One shared rod vector per parallelogram leg keeps the closure
        // exact regardless of where the two anchors sit.
        let rod2 = Vector3::new(0.12 * spread, 0.08, -drop);
        let rod3 = Vector3::new(-0.35 * spread, -0.06, -0.93 * drop);
        let para = |anchor: Vector3<f64>, rod: Vector3<f64>| (anchor, anchor + rod);
        GeometryVerne {
            rods: [
                (
                    Vector3::new(-spread, 0.12, 0.0),
                    Vector3::new(-spread * 0.6 + skew, 0.072, -drop),
                ),
                (
                    Vector3::new(-spread, -0.12, 0.0),
                    Vector3::new(-spread * 0.6 - skew, -0.072, -drop),
                ),
                para(Vector3::new(0.05 * spread, 0.15, 0.02), rod2),
                para(Vector3::new(0.02 * spread, -0.13, 0.0), rod2),
                para(Vector3::new(spread, 0.12, -0.03), rod3),
                para(Vector3::new(0.97 * spread, -0.1, 0.01), rod3),
            ],
        }
    }

    /// Checks rod nondegeneracy and the leg II / III parallelogram
    /// closures (equal rod vectors within each of those legs).
    pub fn validate(&self, tol: &Tolerances) -> Result<(), ManipulatorError> {
        for (a, b) in &self.rods {
            if tol.is_zero((b - a).norm(), a.norm().max(b.norm())) {
                return Err(ManipulatorError::InvalidGeometry);
            }
        }
        for leg in [1usize, 2] {
            let r1 = self.rods[2 * leg].1 - self.rods[2 * leg].0;
            let r2 = self.rods[2 * leg + 1].1 - self.rods[2 * leg + 1].0;
            if !tol.is_zero((r1 - r2).norm(), r1.norm().max(r2.norm())) {
                return Err(ManipulatorError::InvalidGeometry);
            }
        }
        Ok(())
    }
}

/// Governing lines of the Verne parallel module at one platform offset.
#[derive(Clone, Debug)]
pub struct BuildVerne {
    /// Rows `[F11 F12 F21 F22 F31 F32]` along the rods.
    pub system: GoverningSystem,
    /// Rod endpoint pairs (slider end, platform end) in row order.
    pub points: SixLinePoints,
}

/// Builds the six-force governing system, translating the platform-side
/// points by `pose.position`.
pub fn build_verne(
    geom: &GeometryVerne,
    pose: &Pose,
    tol: &Tolerances,
) -> Result<BuildVerne, ManipulatorError> {
    geom.validate(tol)?;

    let mut rows = [Screw::wrench_force(Vector3::z(), Vector3::zeros()); 6];
    let mut pairs = [(
        HomogPoint::from_affine(Vector3::zeros()),
        HomogPoint::from_affine(Vector3::zeros()),
    ); 6];
    let mut sources = [RowSource::ConstraintMoment { chain: 0 }; 6];

    for (k, (a, b0)) in geom.rods.iter().enumerate() {
        let b = b0 + pose.position;
        let rod = b - a;
        // Translation shifts both rods of a leg identically, so closure
        // survives any pose; only a rod collapsing onto zero length can
        // fail here.
        if tol.is_zero(rod.norm(), a.norm().max(b.norm())) {
            return Err(ManipulatorError::Unreachable);
        }
        rows[k] = Screw::wrench_force(rod, *a);
        pairs[k] = (HomogPoint::from_affine(*a), HomogPoint::from_affine(b));
        sources[k] = RowSource::ActuationForce { chain: k, actuated_twist: 0 };
    }

    let points = SixLinePoints::new(pairs, tol).map_err(|_| ManipulatorError::Unreachable)?;
    let system = GoverningSystem::new(rows, sources, tol).expect("rod rows are pure forces");

    Ok(BuildVerne { system, points })
}
