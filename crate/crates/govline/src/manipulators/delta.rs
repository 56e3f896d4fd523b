//! Linear Delta builder.
//!
//! Three sliders run along fixed guide rails; each slider carries a
//! parallelogram of two parallel rods that connects it to the translating
//! platform. The governing system consists of the six zero-pitch forces
//! along the rods. Because each leg's rod pair is parallel, the same system
//! can be rewritten as three forces plus three parallelogram-normal
//! moments, and both representations are emitted.

use nalgebra::Vector3;

use super::{ManipulatorError, Pose};
use crate::fmath;
use crate::gca::SixLinePoints;
use crate::projective::HomogPoint;
use crate::screws::{basis_exchange, GoverningSystem, RowSource, Screw};
use crate::Tolerances;

/// Which root of the per-leg slider quadratic to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IkBranch {
    Plus,
    Minus,
}

/// One Delta leg: a guide line, the two rod attachment offsets on the
/// slider, and the matching offsets on the platform.
///
/// The parallelogram invariant is structural: `platform_offsets[j] -
/// slider_offsets[j]` must be the same vector for both rods, so the two
/// rods of a leg stay translates of each other at every pose.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaLeg {
    pub anchor: Vector3<f64>,
    /// Guide direction. Unit length.
    pub guide: Vector3<f64>,
    pub slider_offsets: [Vector3<f64>; 2],
    pub platform_offsets: [Vector3<f64>; 2],
    pub branch: IkBranch,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeometryDelta {
    pub legs: [DeltaLeg; 3],
    pub rod_length: f64,
}

impl GeometryDelta {
    /// Symmetric desk-scale machine: vertical rails on a circle of radius
    /// `rail_radius`, rod pairs separated by `rod_spread`, platform
    /// attachment circle of radius `platform_radius`.
    pub fn symmetric(
        rail_radius: f64,
        platform_radius: f64,
        rod_spread: f64,
        rod_length: f64,
    ) -> Self {
        let mut legs = [DeltaLeg {
            anchor: Vector3::zeros(),
            guide: Vector3::z(),
            slider_offsets: [Vector3::zeros(); 2],
            platform_offsets: [Vector3::zeros(); 2],
            branch: IkBranch::Minus,
        }; 3];
        for (i, leg) in legs.iter_mut().enumerate() {
            let ang = core::f64::consts::FRAC_PI_2 + 2.0 * core::f64::consts::FRAC_PI_3 * i as f64;
            let (sin, cos) = fmath::sin_cos(ang);
            let radial = Vector3::new(cos, sin, 0.0);
            let tangent = Vector3::new(-sin, cos, 0.0);
            leg.anchor = rail_radius * radial;
            let half = 0.5 * rod_spread * tangent;
            leg.slider_offsets = [half, -half];
            leg.platform_offsets = [platform_radius * radial + half, platform_radius * radial - half];
        }
        GeometryDelta { legs, rod_length }
    }

    /// Like [`GeometryDelta::symmetric`], but the rails lean inward by
    /// `tilt` radians, converging below the base plane.
    ///
    /// Vertical rails with tangential rod spread keep the parallelogram
    /// normals away from coplanarity everywhere the rods can reach, so that
    /// layout has no interior parallel singularity. Leaning the rails makes
    /// the effective rail radius shrink as the sliders descend, and the
    /// normal-coplanarity surface comes back inside the workspace at depth.
    pub fn tilted(
        rail_radius: f64,
        platform_radius: f64,
        rod_spread: f64,
        rod_length: f64,
        tilt: f64,
    ) -> Self {
        let mut geom = Self::symmetric(rail_radius, platform_radius, rod_spread, rod_length);
        let (sin, cos) = fmath::sin_cos(tilt);
        for leg in &mut geom.legs {
            let radial = leg.anchor / rail_radius;
            leg.guide = -sin * radial - cos * Vector3::z();
        }
        geom
    }

    pub fn validate(&self, tol: &Tolerances) -> Result<(), ManipulatorError> {
        if self.rod_length <= 0.0 {
            return Err(ManipulatorError::InvalidGeometry);
        }
        for leg in &self.legs {
            if tol.is_zero(leg.guide.norm(), 1.0) {
                return Err(ManipulatorError::InvalidGeometry);
            }
            let closure = (leg.platform_offsets[0] - leg.slider_offsets[0])
                - (leg.platform_offsets[1] - leg.slider_offsets[1]);
            if !tol.is_zero(closure.norm(), offset_scale(leg)) {
                return Err(ManipulatorError::InvalidGeometry);
            }
            let spread = leg.slider_offsets[0] - leg.slider_offsets[1];
            if tol.is_zero(spread.norm(), offset_scale(leg)) {
                return Err(ManipulatorError::InvalidGeometry);
            }
        }
        Ok(())
    }
}

fn offset_scale(leg: &DeltaLeg) -> f64 {
    leg.slider_offsets
        .iter()
        .chain(leg.platform_offsets.iter())
        .map(|v| v.norm())
        .fold(1.0, f64::max)
}

/// Everything the singularity analysis needs at one Delta pose.
#[derive(Clone, Debug)]
pub struct BuildDelta {
    /// Rows `[F11 F12 F21 F22 F31 F32]`, chains numbered by rod (2i + j).
    pub six_force: GoverningSystem,
    /// Rows `[F11 F21 F31 Me1 Me2 Me3]` where `Me_i = F_i1 - F_i2`.
    pub exchanged: GoverningSystem,
    /// Rod endpoint pairs (slider end, platform end), one per rod in row
    /// order.
    pub points: SixLinePoints,
    /// Per rod: actuated prismatic along the guide, then three revolutes
    /// at the slider-side ball joint and three at the platform-side one.
    pub rod_twists: [[Screw; 7]; 6],
    /// Unit rod direction per leg (shared by the leg's rod pair).
    pub rod_dirs: [Vector3<f64>; 3],
    /// Unit parallelogram-plane normal per leg.
    pub parallelogram_normals: [Vector3<f64>; 3],
    /// Slider coordinate along each guide.
    pub slider_travel: [f64; 3],
}

/// Index of the actuated prismatic twist within each rod's twist list.
pub const DELTA_ACTUATED: usize = 0;

/// Builds both governing representations of the linear Delta at a pose.
pub fn build_delta(
    geom: &GeometryDelta,
    pose: &Pose,
    tol: &Tolerances,
) -> Result<BuildDelta, ManipulatorError> {
    geom.validate(tol)?;
    let length = geom.rod_length;

    let mut rows = [Screw::wrench_force(Vector3::z(), Vector3::zeros()); 6];
    let mut pairs = [(
        HomogPoint::from_affine(Vector3::zeros()),
        HomogPoint::from_affine(Vector3::zeros()),
    ); 6];
    let mut twists = [[Screw::twist_prismatic(Vector3::z()); 7]; 6];
    let mut dirs = [Vector3::zeros(); 3];
    let mut normals = [Vector3::zeros(); 3];
    let mut travel = [0.0; 3];

    for (i, leg) in geom.legs.iter().enumerate() {
        let guide = leg.guide.normalize();
        // Both rods share the leg vector w - q*guide, with w measured from
        // the anchor to the platform point that closes the parallelogram.
        let w = pose.position + leg.platform_offsets[0] - leg.slider_offsets[0] - leg.anchor;
        let along = guide.dot(&w);
        let disc = along * along - w.norm_squared() + length * length;
        let scale = length * length;
        if disc < 0.0 && !tol.is_zero(disc, scale) {
            return Err(ManipulatorError::Unreachable);
        }
        if tol.is_zero(disc, scale) {
            return Err(ManipulatorError::IkDegenerate);
        }
        let root = fmath::sqrt(disc);
        let q = match leg.branch {
            IkBranch::Plus => along + root,
            IkBranch::Minus => along - root,
        };
        let rod = w - q * guide;
        let s = rod / length;

        let slider_point = leg.anchor + q * guide;
        dirs[i] = s;
        travel[i] = q;
        normals[i] = (leg.slider_offsets[0] - leg.slider_offsets[1])
            .cross(&s)
            .normalize();

        for j in 0..2 {
            let a = slider_point + leg.slider_offsets[j];
            let b = pose.position + leg.platform_offsets[j];
            let k = 2 * i + j;
            rows[k] = Screw::wrench_force(s, a);
            pairs[k] = (HomogPoint::from_affine(a), HomogPoint::from_affine(b));
            twists[k] = [
                Screw::twist_prismatic(guide),
                Screw::twist_revolute(Vector3::x(), a),
                Screw::twist_revolute(Vector3::y(), a),
                Screw::twist_revolute(Vector3::z(), a),
                Screw::twist_revolute(Vector3::x(), b),
                Screw::twist_revolute(Vector3::y(), b),
                Screw::twist_revolute(Vector3::z(), b),
            ];
        }
    }

    let mut sources = [RowSource::ConstraintMoment { chain: 0 }; 6];
    for (k, src) in sources.iter_mut().enumerate() {
        *src = RowSource::ActuationForce { chain: k, actuated_twist: DELTA_ACTUATED };
    }
    let six_force =
        GoverningSystem::new(rows, sources, tol).expect("rod rows are pure forces");

    // Per-leg exchange {F_i1, F_i2} -> {F_i1, F_i1 - F_i2}. The mixed rows
    // are genuine combinations, so the moment rows of this representation
    // carry no per-rod reciprocity claim.
    let mut ex_rows = rows;
    for i in 0..3 {
        let mixed = basis_exchange(
            &[rows[2 * i], rows[2 * i + 1]],
            &[1.0, 0.0, 1.0, -1.0],
            tol,
        )
        .expect("exchange matrix is unimodular");
        ex_rows[i] = mixed[0];
        ex_rows[3 + i] = mixed[1];
    }
    let ex_sources = [
        RowSource::ActuationForce { chain: 0, actuated_twist: DELTA_ACTUATED },
        RowSource::ActuationForce { chain: 2, actuated_twist: DELTA_ACTUATED },
        RowSource::ActuationForce { chain: 4, actuated_twist: DELTA_ACTUATED },
        RowSource::ConstraintMoment { chain: 0 },
        RowSource::ConstraintMoment { chain: 1 },
        RowSource::ConstraintMoment { chain: 2 },
    ];
    let exchanged = GoverningSystem::new(ex_rows, ex_sources, tol)
        .expect("exchanged rows are forces and moments");

    let points = SixLinePoints::new(pairs, tol).map_err(|_| ManipulatorError::InvalidGeometry)?;

    Ok(BuildDelta {
        six_force,
        exchanged,
        points,
        rod_twists: twists,
        rod_dirs: dirs,
        parallelogram_normals: normals,
        slider_travel: travel,
    })
}
