//! Schoenflies-motion-generator builder.
//!
//! Two identical chains drive the platform, each one a base revolute
//! followed by two coplanar parallelogram joints and a wrist revolute, all
//! revolute axes parallel. Each chain carries two actuators (the base
//! revolute and the first parallelogram), so per chain the governing rows
//! are two actuation forces through the wrist and one constraint moment
//! along the parallelogram normal.
//!
//! The chain is configuration-driven: inverse kinematics is out of scope,
//! so a configuration is either supplied directly ([`SmgChain`]) or built
//! from joint values ([`SmgJointGeometry::configured`]).

use nalgebra::Vector3;

use super::ManipulatorError;
use crate::fmath;
use crate::gca::SixLinePoints;
use crate::projective::HomogPoint;
use crate::screws::{GoverningSystem, RowSource, Screw};
use crate::Tolerances;

/// One configured chain.
///
/// `s` is the revolute axis direction, `r1`/`r2` the base and wrist points
/// on that axis pair, `t1`/`t2` the parallelogram link directions and `u`
/// the common normal of the two parallelogram planes. Structural
/// invariants: `u` is a unit vector perpendicular to `t1`, `t2` and `s`
/// (the last follows from the chain layout: the parallelograms translate
/// the platform in the plane normal to `u`, and the revolute axes lie in
/// that plane).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmgChain {
    pub s: Vector3<f64>,
    pub r1: Vector3<f64>,
    pub r2: Vector3<f64>,
    pub t1: Vector3<f64>,
    pub t2: Vector3<f64>,
    pub u: Vector3<f64>,
}

impl SmgChain {
    pub fn validate(&self, tol: &Tolerances) -> Result<(), ManipulatorError> {
        for v in [&self.s, &self.t1, &self.t2, &self.u] {
            if tol.is_zero(v.norm(), 1.0) {
                return Err(ManipulatorError::InvalidGeometry);
            }
        }
        let u = self.u.normalize();
        for v in [&self.t1, &self.t2, &self.s] {
            // Orthogonality is checked against a loosened cutoff so that
            // configurations built from joint values (exact up to roundoff)
            // pass while genuinely skewed inputs are rejected.
            if u.dot(&v.normalize()).abs() > 1e-9 {
                return Err(ManipulatorError::InvalidGeometry);
            }
        }
        Ok(())
    }
}

/// A configured two-chain machine plus the chain choice that fixes the
/// direction of the third reference plane (see [`BuildSmg::m`]).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeometrySmg {
    pub chains: [SmgChain; 2],
    /// Which chain's revolute axis spans the third plane together with the
    /// two wrist points. The singular zero set is expected to be
    /// independent of this choice; it is exposed so that the property can
    /// be tested rather than assumed.
    pub m3_chain: usize,
}

/// Joint values for one chain: base revolute angle, then the two
/// parallelogram angles measured from the in-plane reference direction
/// `s x u` toward `s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmgChainJoints {
    pub revolute: f64,
    pub parallelogram: [f64; 2],
}

/// Chain constants for joint-driven configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmgJointChain {
    /// Revolute axis direction (unit).
    pub axis: Vector3<f64>,
    /// Base point of the chain on the first revolute axis.
    pub r1: Vector3<f64>,
    /// Parallelogram normal at zero revolute angle; unit, perpendicular to
    /// `axis`.
    pub u0: Vector3<f64>,
    /// Offset along the axis from base to wrist.
    pub riser: f64,
    /// Link lengths of the two parallelograms.
    pub lengths: [f64; 2],
}

/// Joint-driven description of the whole machine.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmgJointGeometry {
    pub chains: [SmgJointChain; 2],
    pub m3_chain: usize,
}

impl SmgJointGeometry {
    /// Desk-scale symmetric machine: both revolute axes vertical, bases on
    /// the x axis, parallelogram normals facing +y at zero angle.
    pub fn symmetric(base_half_spacing: f64, riser: f64, link_length: f64) -> Self {
        let chain = |x: f64| SmgJointChain {
            axis: Vector3::z(),
            r1: Vector3::new(x, 0.0, 0.0),
            u0: Vector3::y(),
            riser,
            lengths: [link_length, link_length],
        };
        SmgJointGeometry {
            chains: [chain(-base_half_spacing), chain(base_half_spacing)],
            m3_chain: 0,
        }
    }

    /// Builds the configured chains at the given joint values.
    pub fn configured(
        &self,
        joints: &[SmgChainJoints; 2],
        tol: &Tolerances,
    ) -> Result<GeometrySmg, ManipulatorError> {
        let mut chains = [SmgChain {
            s: Vector3::z(),
            r1: Vector3::zeros(),
            r2: Vector3::zeros(),
            t1: Vector3::x(),
            t2: Vector3::x(),
            u: Vector3::y(),
        }; 2];
        for (k, (base, q)) in self.chains.iter().zip(joints.iter()).enumerate() {
            if tol.is_zero(base.axis.norm(), 1.0)
                || tol.is_zero(base.u0.norm(), 1.0)
                || base.lengths[0] <= 0.0
                || base.lengths[1] <= 0.0
            {
                return Err(ManipulatorError::InvalidGeometry);
            }
            let a = base.axis.normalize();
            let u0 = base.u0.normalize();
            if a.dot(&u0).abs() > 1e-9 {
                return Err(ManipulatorError::InvalidGeometry);
            }
            let (sin_r, cos_r) = fmath::sin_cos(q.revolute);
            // u0 is perpendicular to the rotation axis, so Rodrigues'
            // formula loses its axial term.
            let u = u0 * cos_r + a.cross(&u0) * sin_r;
            let w = a.cross(&u);
            let link = |angle: f64| {
                let (sin, cos) = fmath::sin_cos(angle);
                w * cos + a * sin
            };
            let t1 = link(q.parallelogram[0]);
            let t2 = link(q.parallelogram[1]);
            let r2 = base.r1 + base.riser * a + base.lengths[0] * t1 + base.lengths[1] * t2;
            chains[k] = SmgChain { s: a, r1: base.r1, r2, t1, t2, u };
        }
        Ok(GeometrySmg { chains, m3_chain: self.m3_chain })
    }
}

/// Everything the singularity analysis needs for one SMG configuration.
#[derive(Clone, Debug)]
pub struct BuildSmg {
    /// Rows `[F11 F12 F21 F22 M1 M2]`.
    pub system: GoverningSystem,
    /// The three reference-plane normals, unnormalized: `m[0]`, `m[1]` span
    /// the two wrench-pair planes through the wrists, `m[2]` is normal to
    /// the plane of the two wrist points and the chosen revolute axis.
    pub m: [Vector3<f64>; 3],
    /// Unit constraint-moment directions (the parallelogram normals).
    pub constraint_dirs: [Vector3<f64>; 2],
    /// Wrist points r2 per chain.
    pub wrist_points: [Vector3<f64>; 2],
    /// Per chain: base revolute, the two parallelogram translations, wrist
    /// revolute. The base revolute actuates row Fi1, the first
    /// parallelogram actuates row Fi2.
    pub chain_twists: [[Screw; 4]; 2],
}

impl BuildSmg {
    /// The twelve-slot point set of the four-force/two-moment structure:
    /// line pairs (a,b), (c,b), (d,e), (f,e), (g,h), (i,h) where b and e
    /// are the wrists, the force pairs share them, and the moment lines at
    /// infinity share the direction common to both constraint planes.
    /// `None` when the two constraint directions are parallel.
    pub fn class2_points(&self, tol: &Tolerances) -> Option<SixLinePoints> {
        let [u1, u2] = self.constraint_dirs;
        let h_dir = u1.cross(&u2);
        if tol.is_zero(h_dir.norm(), 1.0) {
            return None;
        }
        let h_unit = h_dir.normalize();
        let b = self.wrist_points[0];
        let e = self.wrist_points[1];
        let t12 = self.system.rows[1].primal;
        let t22 = self.system.rows[3].primal;
        let fin = HomogPoint::from_affine;
        let inf = |v: Vector3<f64>| HomogPoint::at_infinity(v, tol).ok();
        let pairs = [
            (fin(b + u1), fin(b)),
            (fin(b + t12), fin(b)),
            (fin(e + u2), fin(e)),
            (fin(e + t22), fin(e)),
            (inf(u1.cross(&h_unit))?, inf(h_dir)?),
            (inf(u2.cross(&h_unit))?, inf(h_dir)?),
        ];
        SixLinePoints::new(pairs, tol).ok()
    }
}

/// Row index of the actuated twist for each force row of a chain.
pub const SMG_ACTUATED: [usize; 2] = [0, 1];

/// Builds the governing system of a configured SMG.
pub fn build_smg(geom: &GeometrySmg, tol: &Tolerances) -> Result<BuildSmg, ManipulatorError> {
    if geom.m3_chain > 1 {
        return Err(ManipulatorError::InvalidGeometry);
    }
    for chain in &geom.chains {
        chain.validate(tol)?;
    }

    let mut rows = [Screw::wrench_moment(Vector3::z()); 6];
    let mut twists = [[Screw::twist_prismatic(Vector3::z()); 4]; 2];
    let mut us = [Vector3::zeros(); 2];
    let mut wrists = [Vector3::zeros(); 2];

    for (i, chain) in geom.chains.iter().enumerate() {
        let s = chain.s.normalize();
        let u = chain.u.normalize();
        let t1 = chain.t1.normalize();
        let t2 = chain.t2.normalize();
        us[i] = u;
        wrists[i] = chain.r2;
        rows[2 * i] = Screw::wrench_force(u, chain.r2);
        rows[2 * i + 1] = Screw::wrench_force(t2, chain.r2);
        rows[4 + i] = Screw::wrench_moment(u);
        twists[i] = [
            Screw::twist_revolute(s, chain.r1),
            Screw::twist_prismatic(t1.cross(&u)),
            Screw::twist_prismatic(t2.cross(&u)),
            Screw::twist_revolute(s, chain.r2),
        ];
    }

    let sources = [
        RowSource::ActuationForce { chain: 0, actuated_twist: SMG_ACTUATED[0] },
        RowSource::ActuationForce { chain: 0, actuated_twist: SMG_ACTUATED[1] },
        RowSource::ActuationForce { chain: 1, actuated_twist: SMG_ACTUATED[0] },
        RowSource::ActuationForce { chain: 1, actuated_twist: SMG_ACTUATED[1] },
        RowSource::ConstraintMoment { chain: 0 },
        RowSource::ConstraintMoment { chain: 1 },
    ];
    let system =
        GoverningSystem::new(rows, sources, tol).expect("rows are pure forces and moments");

    let m1 = us[0].cross(&rows[1].primal);
    let m2 = us[1].cross(&rows[3].primal);
    let m3 = (wrists[1] - wrists[0]).cross(&geom.chains[geom.m3_chain].s.normalize());

    Ok(BuildSmg {
        system,
        m: [m1, m2, m3],
        constraint_dirs: us,
        wrist_points: wrists,
        chain_twists: twists,
    })
}
