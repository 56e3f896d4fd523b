//! Governing-system builders for the four supported architectures.
//!
//! Each builder is a pure function of (geometry, pose). It emits the six
//! governing wrench rows with provenance, the twelve points that bind those
//! rows to lines for the superbracket, and the per-chain joint twists that
//! the reciprocity contract is tested against.
//!
//! The pose conventions differ by architecture and are deliberate:
//! the 3-UPU and the linear Delta are translational, so only the platform
//! position is consumed; the Schoenflies generator is configuration-driven
//! (its inverse kinematics is out of scope) and is posed through joint
//! values; the Verne module is line-driven, its rods being supplied
//! directly because the coupled platform rotation comes from an external
//! model.

mod delta;
mod smg;
mod three_upu;
mod verne;

pub use delta::{build_delta, BuildDelta, DeltaLeg, GeometryDelta, IkBranch, DELTA_ACTUATED};
pub use smg::{
    build_smg, BuildSmg, GeometrySmg, SmgChain, SmgChainJoints, SmgJointChain, SmgJointGeometry,
    SMG_ACTUATED,
};
pub use three_upu::{build_3upu, Build3Upu, Geometry3Upu, UpuLeg, UPU_ACTUATED};
pub use verne::{build_verne, BuildVerne, GeometryVerne};

use nalgebra::Vector3;

/// Errors shared by the builders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManipulatorError {
    /// The pose is outside the reachable workspace.
    Unreachable,
    /// The inverse kinematics is at a branch point (tangent solution).
    IkDegenerate,
    /// A constraint moment degenerates (for the 3-UPU: a universal joint
    /// axis has become parallel to its leg).
    DegenerateConstraint,
    /// The geometry violates a structural invariant of the architecture.
    InvalidGeometry,
}

impl core::fmt::Display for ManipulatorError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ManipulatorError::Unreachable => write!(f, "pose outside the reachable workspace"),
            ManipulatorError::IkDegenerate => {
                write!(f, "inverse kinematics at a degenerate branch point")
            }
            ManipulatorError::DegenerateConstraint => {
                write!(f, "constraint moment degenerates at this pose")
            }
            ManipulatorError::InvalidGeometry => {
                write!(f, "geometry violates an architecture invariant")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ManipulatorError {}

/// Platform pose. Translational architectures (3-UPU, Delta) consume only
/// `position` and hold the orientation at identity; the Schoenflies
/// generator's single rotation enters through its joint values instead.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pose {
    pub position: Vector3<f64>,
}

impl Pose {
    pub fn at(x: f64, y: f64, z: f64) -> Self {
        Pose {
            position: Vector3::new(x, y, z),
        }
    }
}
