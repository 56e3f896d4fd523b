//! JSON machine configuration.
//!
//! A config file names either a built-in preset or an explicit geometry:
//!
//! ```json
//! { "preset": "delta-sym" }
//! { "manipulator": "3upu", "geometry": { "symmetric": { ... } } }
//! ```
//!
//! An optional `"home"` object overrides individual pose parameters used as
//! defaults by `check` and as the pinned values of unswept axes by `sweep`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use govline::manipulators::{
    DeltaLeg, Geometry3Upu, GeometryDelta, GeometryVerne, IkBranch, SmgJointChain,
    SmgJointGeometry, UpuLeg,
};
use govline::nalgebra::Vector3;
use govline::Tolerances;
use serde::Deserialize;

pub const PRESETS: [&str; 5] = ["3upu-sym", "3upu-flat", "delta-sym", "smg-sym", "verne-sym"];

/// A loaded machine: the geometry plus the default pose parameter values,
/// aligned with [`Machine::pose_keys`].
#[derive(Clone, Debug)]
pub struct Machine {
    pub kind: Kind,
    pub home: Vec<f64>,
}

#[derive(Clone, Debug)]
pub enum Kind {
    Upu(Geometry3Upu),
    Delta(GeometryDelta),
    Smg(SmgJointGeometry),
    Verne(GeometryVerne),
}

impl Machine {
    pub fn name(&self) -> &'static str {
        match self.kind {
            Kind::Upu(_) => "3upu",
            Kind::Delta(_) => "delta",
            Kind::Smg(_) => "smg",
            Kind::Verne(_) => "verne",
        }
    }

    /// Pose parameter names, in column order. Platform machines move in
    /// Cartesian position; the SMG is joint-driven (base revolute and two
    /// parallelogram angles per chain).
    pub fn pose_keys(&self) -> &'static [&'static str] {
        match self.kind {
            Kind::Smg(_) => &["r1", "p11", "p12", "r2", "p21", "p22"],
            _ => &["x", "y", "z"],
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileSchema {
    preset: Option<String>,
    manipulator: Option<String>,
    geometry: Option<serde_json::Value>,
    home: Option<BTreeMap<String, f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UpuSymmetric {
    base_radius: f64,
    platform_radius: f64,
    min_length: f64,
    max_length: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UpuLegCfg {
    base: [f64; 3],
    platform_offset: [f64; 3],
    axis: [f64; 3],
    min_length: f64,
    max_length: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UpuGeometry {
    symmetric: Option<UpuSymmetric>,
    legs: Option<[UpuLegCfg; 3]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeltaSymmetric {
    rail_radius: f64,
    platform_radius: f64,
    rod_spread: f64,
    rod_length: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeltaLegCfg {
    anchor: [f64; 3],
    guide: [f64; 3],
    slider_offsets: [[f64; 3]; 2],
    platform_offsets: [[f64; 3]; 2],
    branch: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DeltaGeometry {
    symmetric: Option<DeltaSymmetric>,
    legs: Option<[DeltaLegCfg; 3]>,
    rod_length: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SmgSymmetric {
    base_half_spacing: f64,
    riser: f64,
    link_length: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SmgChainCfg {
    axis: [f64; 3],
    r1: [f64; 3],
    u0: [f64; 3],
    riser: f64,
    lengths: [f64; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SmgGeometry {
    symmetric: Option<SmgSymmetric>,
    chains: Option<[SmgChainCfg; 2]>,
    #[serde(default)]
    m3_chain: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerneSymmetric {
    spread: f64,
    drop: f64,
    skew: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerneRodCfg {
    base: [f64; 3],
    platform: [f64; 3],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerneGeometry {
    symmetric: Option<VerneSymmetric>,
    rods: Option<[VerneRodCfg; 6]>,
}

fn vec3(v: [f64; 3]) -> Vector3<f64> {
    Vector3::new(v[0], v[1], v[2])
}

/// Built-in machines. The `-sym` presets are working desk-scale geometries;
/// `3upu-flat` additionally admits the coplanar home pose `(0, 0, 0)`,
/// which is a constructed actuation singularity.
pub fn preset(name: &str) -> Result<Machine, String> {
    let m = match name {
        "3upu-sym" => Machine {
            kind: Kind::Upu(Geometry3Upu::symmetric(0.5, 0.25, 0.3, 1.5)),
            home: vec![0.0, 0.0, 0.8],
        },
        "3upu-flat" => Machine {
            kind: Kind::Upu(Geometry3Upu::symmetric(0.5, 0.25, 0.05, 1.5)),
            home: vec![0.0, 0.0, 0.0],
        },
        // Rails lean inward by 30 degrees so the parallelogram-normal
        // singularity surface sits inside the workspace (near z = -1.25 on
        // the machine axis) instead of beyond the rod reach; the home pose
        // stays comfortably regular.
        "delta-sym" => Machine {
            kind: Kind::Delta(GeometryDelta::tilted(
                0.5,
                0.15,
                0.08,
                0.65,
                core::f64::consts::FRAC_PI_6,
            )),
            home: vec![0.0, 0.0, -0.42],
        },
        "smg-sym" => Machine {
            kind: Kind::Smg(SmgJointGeometry::symmetric(0.4, 0.2, 0.35)),
            home: vec![0.25, 0.5, -0.3, -0.35, 0.7, -0.1],
        },
        "verne-sym" => Machine {
            kind: Kind::Verne(GeometryVerne::symmetric(0.7, 0.9, 0.05)),
            home: vec![0.0, 0.0, 0.0],
        },
        other => {
            let mut msg = format!("unknown preset {other:?}; available:");
            for p in PRESETS {
                let _ = write!(msg, " {p}");
            }
            return Err(msg);
        }
    };
    Ok(m)
}

pub fn load(path: &Path, tol: &Tolerances) -> Result<Machine, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file: FileSchema = serde_json::from_str(&text)
        .map_err(|e| format!("{}: invalid config: {e}", path.display()))?;

    let mut machine = match (&file.preset, &file.manipulator, &file.geometry) {
        (Some(name), None, None) => preset(name)?,
        (None, Some(kind), Some(geometry)) => explicit(kind, geometry.clone())?,
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            return Err("config must give either \"preset\" or \"manipulator\"+\"geometry\", not both".into());
        }
        _ => {
            return Err("config needs \"preset\" or \"manipulator\"+\"geometry\"".into());
        }
    };

    if let Some(home) = &file.home {
        let keys = machine.pose_keys();
        for (k, v) in home {
            let Some(slot) = keys.iter().position(|key| key == k) else {
                return Err(format!(
                    "home key {k:?} not a pose parameter of {} (expected one of {})",
                    machine.name(),
                    keys.join(", ")
                ));
            };
            machine.home[slot] = *v;
        }
    }

    validate(&machine, tol)?;
    Ok(machine)
}

fn explicit(kind: &str, geometry: serde_json::Value) -> Result<Machine, String> {
    let bad = |e: serde_json::Error| format!("geometry: {e}");
    let kind = match kind {
        "3upu" => {
            let g: UpuGeometry = serde_json::from_value(geometry).map_err(bad)?;
            Kind::Upu(match (g.symmetric, g.legs) {
                (Some(s), None) => Geometry3Upu::symmetric(
                    s.base_radius,
                    s.platform_radius,
                    s.min_length,
                    s.max_length,
                ),
                (None, Some(legs)) => Geometry3Upu {
                    legs: legs.map(|l| UpuLeg {
                        base: vec3(l.base),
                        platform_offset: vec3(l.platform_offset),
                        axis: vec3(l.axis),
                        min_length: l.min_length,
                        max_length: l.max_length,
                    }),
                },
                _ => return Err("3upu geometry needs exactly one of \"symmetric\" or \"legs\"".into()),
            })
        }
        "delta" => {
            let g: DeltaGeometry = serde_json::from_value(geometry).map_err(bad)?;
            Kind::Delta(match (g.symmetric, g.legs) {
                (Some(s), None) => GeometryDelta::symmetric(
                    s.rail_radius,
                    s.platform_radius,
                    s.rod_spread,
                    s.rod_length,
                ),
                (None, Some(legs)) => {
                    let rod_length = g
                        .rod_length
                        .ok_or("delta geometry with \"legs\" also needs \"rod_length\"")?;
                    let mut parsed = Vec::new();
                    for l in legs {
                        parsed.push(DeltaLeg {
                            anchor: vec3(l.anchor),
                            guide: vec3(l.guide),
                            slider_offsets: [vec3(l.slider_offsets[0]), vec3(l.slider_offsets[1])],
                            platform_offsets: [
                                vec3(l.platform_offsets[0]),
                                vec3(l.platform_offsets[1]),
                            ],
                            branch: match l.branch.as_str() {
                                "plus" => IkBranch::Plus,
                                "minus" => IkBranch::Minus,
                                other => {
                                    return Err(format!(
                                        "leg branch must be \"plus\" or \"minus\", got {other:?}"
                                    ))
                                }
                            },
                        });
                    }
                    GeometryDelta {
                        legs: [parsed[0], parsed[1], parsed[2]],
                        rod_length,
                    }
                }
                _ => return Err("delta geometry needs exactly one of \"symmetric\" or \"legs\"".into()),
            })
        }
        "smg" => {
            let g: SmgGeometry = serde_json::from_value(geometry).map_err(bad)?;
            Kind::Smg(match (g.symmetric, g.chains) {
                (Some(s), None) => {
                    SmgJointGeometry::symmetric(s.base_half_spacing, s.riser, s.link_length)
                }
                (None, Some(chains)) => SmgJointGeometry {
                    chains: chains.map(|c| SmgJointChain {
                        axis: vec3(c.axis),
                        r1: vec3(c.r1),
                        u0: vec3(c.u0),
                        riser: c.riser,
                        lengths: c.lengths,
                    }),
                    m3_chain: g.m3_chain,
                },
                _ => return Err("smg geometry needs exactly one of \"symmetric\" or \"chains\"".into()),
            })
        }
        "verne" => {
            let g: VerneGeometry = serde_json::from_value(geometry).map_err(bad)?;
            Kind::Verne(match (g.symmetric, g.rods) {
                (Some(s), None) => GeometryVerne::symmetric(s.spread, s.drop, s.skew),
                (None, Some(rods)) => GeometryVerne {
                    rods: rods.map(|r| (vec3(r.base), vec3(r.platform))),
                },
                _ => return Err("verne geometry needs exactly one of \"symmetric\" or \"rods\"".into()),
            })
        }
        other => {
            return Err(format!(
                "unknown manipulator {other:?} (expected 3upu, delta, smg, or verne)"
            ))
        }
    };
    let home = match kind {
        Kind::Smg(_) => vec![0.0; 6],
        _ => vec![0.0; 3],
    };
    Ok(Machine { kind, home })
}

fn validate(machine: &Machine, tol: &Tolerances) -> Result<(), String> {
    let err = |e: govline::manipulators::ManipulatorError| format!("invalid geometry: {e}");
    match &machine.kind {
        Kind::Upu(g) => g.validate(tol).map_err(err),
        Kind::Delta(g) => g.validate(tol).map_err(err),
        Kind::Verne(g) => g.validate(tol).map_err(err),
        // Joint-driven chains are checked by configuring them; home joint
        // values are as good a probe as any.
        Kind::Smg(g) => {
            let joints = super::eval::smg_joints(&machine.home);
            g.configured(&joints, tol).map(|_| ()).map_err(err)
        }
    }
}
