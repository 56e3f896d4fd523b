//! Finite and infinite points, lines, and planes of projective three-space.
//!
//! Points carry homogeneous coordinates `(x, y, z, w)`: finite points have
//! `w != 0` (canonical form `w = 1`), points at infinity have `w = 0` and a
//! unit direction part. Lines are stored in Plucker form `(direction, moment)`
//! and planes as homogeneous 4-coordinates together with their three defining
//! points. Parallel lines meet at the point at infinity of their common
//! direction; parallel planes meet in a line at infinity; this module makes
//! those ideal elements first-class values so downstream code never branches
//! on finiteness.

use nalgebra::{Vector3, Vector4};

use crate::{fmath, Tolerances};

/// Degeneracies reported by the projective constructors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectiveError {
    /// A direction or normal vector was (numerically) zero.
    InvalidDirection,
    /// The two points given to a line constructor coincide projectively.
    DegenerateLine,
    /// Both line points are at infinity; such a line is built from its plane
    /// normal instead (see [`PlueckerLine::at_infinity`]).
    BothAtInfinity,
    /// The three points given to a plane constructor are collinear.
    DegeneratePlane,
    /// All three pairwise cross products of the moment directions vanish.
    AllMomentsParallel,
}

impl core::fmt::Display for ProjectiveError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ProjectiveError::InvalidDirection => write!(f, "zero direction vector"),
            ProjectiveError::DegenerateLine => write!(f, "line points coincide"),
            ProjectiveError::BothAtInfinity => {
                write!(f, "both line points are at infinity")
            }
            ProjectiveError::DegeneratePlane => write!(f, "plane points are collinear"),
            ProjectiveError::AllMomentsParallel => {
                write!(f, "all moment directions are parallel")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ProjectiveError {}

/// Homogeneous point of P^3.
///
/// Constructors produce one of the two canonical weight states: `w = 1`
/// (finite) or `w = 0` with a unit direction part (at infinity). Raw
/// coordinates from other sources can be wrapped with [`HomogPoint::raw`] and
/// brought to canonical form with [`HomogPoint::canonicalized`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HomogPoint {
    pub coords: Vector4<f64>,
}

impl HomogPoint {
    /// Finite point `(p, 1)`.
    pub fn from_affine(p: Vector3<f64>) -> Self {
        HomogPoint {
            coords: Vector4::new(p.x, p.y, p.z, 1.0),
        }
    }

    /// Point at infinity `(dir / |dir|, 0)`.
    pub fn at_infinity(dir: Vector3<f64>, tol: &Tolerances) -> Result<Self, ProjectiveError> {
        let norm = dir.norm();
        if tol.is_zero(norm, 1.0) {
            return Err(ProjectiveError::InvalidDirection);
        }
        let d = dir / norm;
        Ok(HomogPoint {
            coords: Vector4::new(d.x, d.y, d.z, 0.0),
        })
    }

    /// Wraps homogeneous coordinates as given, without normalization.
    pub fn raw(coords: Vector4<f64>) -> Self {
        HomogPoint { coords }
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords.w == 0.0
    }

    /// Affine position of a finite point (`xyz / w`).
    pub fn affine(&self) -> Vector3<f64> {
        self.coords.xyz() / self.coords.w
    }

    /// Direction part (`xyz`), meaningful for points at infinity.
    pub fn direction(&self) -> Vector3<f64> {
        self.coords.xyz()
    }

    /// Canonical representative: finite points are scaled to `w = 1`;
    /// points at infinity get a unit direction whose first nonzero
    /// coordinate is positive (the leftover sign freedom of `w = 0`).
    pub fn canonicalized(&self) -> Self {
        if self.is_at_infinity() {
            let d = self.coords.xyz();
            let scaled = d / d.norm();
            let signed = orient_first_nonzero(Vector4::new(scaled.x, scaled.y, scaled.z, 0.0));
            HomogPoint { coords: signed }
        } else {
            HomogPoint {
                coords: self.coords / self.coords.w,
            }
        }
    }

    /// Equality up to the homogeneous scale factor.
    pub fn projectively_eq(&self, other: &Self, tol: &Tolerances) -> bool {
        if self.is_at_infinity() != other.is_at_infinity() {
            return false;
        }
        let a = self.canonicalized().coords;
        let b = other.canonicalized().coords;
        let scale = a.norm().max(b.norm());
        tol.is_zero((a - b).norm(), scale)
    }
}

/// Flips the sign of the whole tuple so its first nonzero entry is positive.
fn orient_first_nonzero(v: Vector4<f64>) -> Vector4<f64> {
    for i in 0..4 {
        if v[i] != 0.0 {
            return if v[i] < 0.0 { -v } else { v };
        }
    }
    v
}

/// Line of P^3 in Plucker coordinates `(direction, moment)`.
///
/// Finite lines satisfy `direction . moment = 0` and carry a unit direction;
/// a line at infinity has zero direction and a unit moment (the normal of
/// the pencil of parallel planes it belongs to).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlueckerLine {
    pub direction: Vector3<f64>,
    pub moment: Vector3<f64>,
}

impl PlueckerLine {
    /// Line through two points, at most one of them at infinity.
    ///
    /// For finite `a` and infinite `b` the direction is `b`'s direction and
    /// the moment is `a x direction`; for two finite points the direction is
    /// the normalized difference `b - a`. The Plucker condition holds by
    /// construction in every case.
    pub fn through(
        a: &HomogPoint,
        b: &HomogPoint,
        tol: &Tolerances,
    ) -> Result<Self, ProjectiveError> {
        match (a.is_at_infinity(), b.is_at_infinity()) {
            (true, true) => Err(ProjectiveError::BothAtInfinity),
            (false, true) => Self::from_anchor_direction(a.affine(), b.direction(), tol),
            (true, false) => Self::from_anchor_direction(b.affine(), a.direction(), tol),
            (false, false) => {
                let pa = a.affine();
                let pb = b.affine();
                let scale = pa.norm().max(pb.norm());
                let d = pb - pa;
                if tol.is_zero(d.norm(), scale) {
                    return Err(ProjectiveError::DegenerateLine);
                }
                Self::from_anchor_direction(pa, d, tol)
            }
        }
    }

    /// Line through the affine point `anchor` with the given direction.
    pub fn from_anchor_direction(
        anchor: Vector3<f64>,
        dir: Vector3<f64>,
        tol: &Tolerances,
    ) -> Result<Self, ProjectiveError> {
        let norm = dir.norm();
        if tol.is_zero(norm, 1.0) {
            return Err(ProjectiveError::DegenerateLine);
        }
        let direction = dir / norm;
        Ok(PlueckerLine {
            direction,
            moment: anchor.cross(&direction),
        })
    }

    /// Line at infinity of the planes with normal `n`.
    pub fn at_infinity(n: Vector3<f64>, tol: &Tolerances) -> Result<Self, ProjectiveError> {
        let norm = n.norm();
        if tol.is_zero(norm, 1.0) {
            return Err(ProjectiveError::InvalidDirection);
        }
        Ok(PlueckerLine {
            direction: Vector3::zeros(),
            moment: n / norm,
        })
    }

    pub fn is_at_infinity(&self) -> bool {
        self.direction == Vector3::zeros()
    }

    /// `direction . moment`; zero for any valid line.
    pub fn plucker_residual(&self) -> f64 {
        self.direction.dot(&self.moment)
    }

    /// The six Plucker coordinates as `(direction, moment)` stacked.
    pub fn coords(&self) -> nalgebra::Vector6<f64> {
        nalgebra::Vector6::new(
            self.direction.x,
            self.direction.y,
            self.direction.z,
            self.moment.x,
            self.moment.y,
            self.moment.z,
        )
    }

    /// The ideal point where every line parallel to this one crosses the
    /// plane at infinity.
    pub fn infinity_point(&self, tol: &Tolerances) -> Result<HomogPoint, ProjectiveError> {
        HomogPoint::at_infinity(self.direction, tol)
    }

    /// Canonical representative: unit direction (or unit moment for a line
    /// at infinity) with the first nonzero of the six coordinates positive.
    pub fn canonicalized(&self) -> Self {
        let norm = if self.is_at_infinity() {
            self.moment.norm()
        } else {
            self.direction.norm()
        };
        let mut d = self.direction / norm;
        let mut m = self.moment / norm;
        let lead = d
            .iter()
            .chain(m.iter())
            .copied()
            .find(|&c| c != 0.0)
            .unwrap_or(1.0);
        if lead < 0.0 {
            d = -d;
            m = -m;
        }
        PlueckerLine {
            direction: d,
            moment: m,
        }
    }

    /// Equality up to overall scale.
    pub fn projectively_eq(&self, other: &Self, tol: &Tolerances) -> bool {
        if self.is_at_infinity() != other.is_at_infinity() {
            return false;
        }
        let a = self.canonicalized();
        let b = other.canonicalized();
        let diff = fmath::sqrt(
            (a.direction - b.direction).norm_squared() + (a.moment - b.moment).norm_squared(),
        );
        let scale = a.coords().norm().max(b.coords().norm());
        tol.is_zero(diff, scale)
    }
}

/// Plane of P^3 as homogeneous coordinates plus its three defining points.
///
/// The coordinate vector `pi` satisfies `pi . p = 0` for every point `p` on
/// the plane; the first three entries are an (unnormalized) normal and the
/// fourth is the offset term. The coordinates are the cofactors of the
/// defining points' 4x4 incidence determinant, so the defining points are
/// incident by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneExtensor {
    pub coords: Vector4<f64>,
    pub points: [HomogPoint; 3],
}

impl PlaneExtensor {
    /// Plane through three non-collinear points (any of them may be at
    /// infinity; three points at infinity give the plane at infinity).
    pub fn from_points(
        p1: HomogPoint,
        p2: HomogPoint,
        p3: HomogPoint,
        tol: &Tolerances,
    ) -> Result<Self, ProjectiveError> {
        let coords = incidence_cofactors(&p1, &p2, &p3);
        let scale = p1.coords.norm() * p2.coords.norm() * p3.coords.norm();
        if tol.is_zero(coords.norm(), scale) {
            return Err(ProjectiveError::DegeneratePlane);
        }
        Ok(PlaneExtensor {
            coords,
            points: [p1, p2, p3],
        })
    }

    /// Plane with unit normal `n` through the affine point `p0`.
    ///
    /// Spans the defining-point slots with `p0` and two points offset along
    /// an orthonormal completion of `n`.
    pub fn from_normal_point(
        n: Vector3<f64>,
        p0: Vector3<f64>,
        tol: &Tolerances,
    ) -> Result<Self, ProjectiveError> {
        let norm = n.norm();
        if tol.is_zero(norm, 1.0) {
            return Err(ProjectiveError::DegeneratePlane);
        }
        let n = n / norm;
        let (u, v) = orthonormal_complement(n);
        Self::from_points(
            HomogPoint::from_affine(p0),
            HomogPoint::from_affine(p0 + u),
            HomogPoint::from_affine(p0 + v),
            tol,
        )
    }

    /// Normal part of the homogeneous coordinates (not normalized).
    pub fn normal(&self) -> Vector3<f64> {
        self.coords.xyz()
    }

    /// Offset part of the homogeneous coordinates.
    pub fn offset(&self) -> f64 {
        self.coords.w
    }

    /// True for the plane at infinity (all defining points at `w = 0`).
    pub fn is_at_infinity(&self, tol: &Tolerances) -> bool {
        tol.is_zero(self.normal().norm(), self.coords.w.abs())
    }

    /// Signed incidence residual `pi . p`.
    pub fn incidence(&self, p: &HomogPoint) -> f64 {
        self.coords.dot(&p.coords)
    }

    /// Incidence test, scale-aware.
    pub fn contains(&self, p: &HomogPoint, tol: &Tolerances) -> bool {
        let scale = self.coords.norm() * p.coords.norm();
        tol.is_zero(self.incidence(p), scale)
    }

    /// Canonical coordinates: unit norm, first nonzero entry positive.
    /// Defining points are kept as constructed.
    pub fn canonicalized(&self) -> Self {
        let scaled = self.coords / self.coords.norm();
        PlaneExtensor {
            coords: orient_first_nonzero(scaled),
            points: self.points,
        }
    }
}

/// Cofactor expansion of `det [x | p1 | p2 | p3]` along the first column:
/// the returned vector `pi` satisfies `pi . x = det` for all `x`, hence
/// `pi . p_i = 0` exactly in exact arithmetic.
pub(crate) fn incidence_cofactors(
    p1: &HomogPoint,
    p2: &HomogPoint,
    p3: &HomogPoint,
) -> Vector4<f64> {
    let a = p1.coords;
    let b = p2.coords;
    let c = p3.coords;
    let minor = |i: usize, j: usize, k: usize| -> f64 {
        a[i] * (b[j] * c[k] - b[k] * c[j]) - b[i] * (a[j] * c[k] - a[k] * c[j])
            + c[i] * (a[j] * b[k] - a[k] * b[j])
    };
    Vector4::new(
        minor(1, 2, 3),
        -minor(0, 2, 3),
        minor(0, 1, 3),
        -minor(0, 1, 2),
    )
}

/// Two unit vectors completing `n` (assumed unit) to an orthonormal frame.
fn orthonormal_complement(n: Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let pick = if n.x.abs() <= n.y.abs() && n.x.abs() <= n.z.abs() {
        Vector3::x()
    } else if n.y.abs() <= n.z.abs() {
        Vector3::y()
    } else {
        Vector3::z()
    };
    let u = n.cross(&pick).normalize();
    let v = n.cross(&u);
    (u, v)
}

/// The three infinity points spanned by pairwise cross products of three
/// moment directions: `g = n1 x n2`, `h = n1 x n3`, `i = n2 x n3`.
///
/// A vanishing cross product (parallel torque directions) leaves its slot
/// `None`; the corresponding moment lines coincide at infinity and the
/// governing system is singular outright.
#[derive(Clone, Copy, Debug)]
pub struct MomentInfinityPoints {
    pub g: Option<HomogPoint>,
    pub h: Option<HomogPoint>,
    pub i: Option<HomogPoint>,
}

impl MomentInfinityPoints {
    /// All three points when none is degenerate.
    pub fn all(&self) -> Option<(HomogPoint, HomogPoint, HomogPoint)> {
        match (self.g, self.h, self.i) {
            (Some(g), Some(h), Some(i)) => Some((g, h, i)),
            _ => None,
        }
    }

    pub fn degenerate_count(&self) -> usize {
        [self.g, self.h, self.i]
            .iter()
            .filter(|p| p.is_none())
            .count()
    }
}

/// Builds the infinity points of the three constraint-moment lines from the
/// moment directions `n1, n2, n3`.
pub fn infinity_points_of_moment_pair(
    n1: Vector3<f64>,
    n2: Vector3<f64>,
    n3: Vector3<f64>,
    tol: &Tolerances,
) -> Result<MomentInfinityPoints, ProjectiveError> {
    let cross_point = |u: Vector3<f64>, v: Vector3<f64>| -> Option<HomogPoint> {
        let c = u.cross(&v);
        let scale = u.norm() * v.norm();
        if tol.is_zero(c.norm(), scale) {
            None
        } else {
            Some(HomogPoint {
                coords: Vector4::new(c.x, c.y, c.z, 0.0) / c.norm(),
            })
        }
    };
    let pts = MomentInfinityPoints {
        g: cross_point(n1, n2),
        h: cross_point(n1, n3),
        i: cross_point(n2, n3),
    };
    if pts.degenerate_count() == 3 {
        return Err(ProjectiveError::AllMomentsParallel);
    }
    Ok(pts)
}
