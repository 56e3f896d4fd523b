//! Closed-form singularity conditions, geometric case labels, and the
//! numeric verdict of record.
//!
//! Three families of governing-line layouts are covered, named by the
//! wrenches the legs apply to the platform:
//!
//! * three actuation forces + three constraint moments
//!   ([`class1_condition`]),
//! * two pairs of intersecting actuation forces + two constraint moments
//!   ([`class2_condition`]),
//! * six actuation forces with at least two parallel pairs
//!   ([`class3_condition`]).
//!
//! Each condition is a bracket polynomial whose zero set coincides with the
//! rank deficiency of the 6x6 governing matrix. The [`oracle`] is the
//! verdict of record: condition values explain a singularity, they never
//! overrule the rank computation. [`classify_case`] names the geometric
//! degeneracy behind a singular verdict.

#[cfg(not(feature = "std"))]
use alloc::vec::Vec;

use nalgebra::{Matrix6, Vector3, Vector6};

use crate::bracket::bracket4;
use crate::gca::{
    line_coords, matrix_det, meet_planes_coords, pair_bracket, row_normalized,
    row_normalized_min_sv, SixLinePoints,
};
use crate::manipulators::Pose;
use crate::projective::{incidence_cofactors, HomogPoint, PlaneExtensor};
use crate::screws::GoverningSystem;
use crate::Tolerances;

/// Errors from condition evaluation and case classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularityError {
    /// [`classify_case`] was called on a non-singular verdict.
    NotSingular,
    /// The point set lacks the two parallel line pairs (or holds points at
    /// infinity), so the six-force condition does not apply.
    NotClass3,
}

impl core::fmt::Display for SingularityError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SingularityError::NotSingular => write!(f, "configuration is not singular"),
            SingularityError::NotClass3 => {
                write!(f, "point set is not six finite lines with two parallel pairs")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SingularityError {}

/// Three-way verdict from the minimum singular value of the row-normalized
/// governing matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NonSingular,
    NearSingular,
    Singular,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::NonSingular => "non-singular",
            Verdict::NearSingular => "near-singular",
            Verdict::Singular => "singular",
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Numeric ground truth for one governing system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleVerdict {
    /// Determinant of the row-normalized matrix.
    pub det: f64,
    /// Minimum singular value of the row-normalized matrix; dimensionless.
    pub min_singular_value: f64,
    pub verdict: Verdict,
}

impl OracleVerdict {
    pub fn is_singular(&self) -> bool {
        self.verdict == Verdict::Singular
    }
}

fn verdict_for(min_sv: f64, tol: &Tolerances) -> Verdict {
    if min_sv <= tol.singular {
        Verdict::Singular
    } else if min_sv < tol.near_singular {
        Verdict::NearSingular
    } else {
        Verdict::NonSingular
    }
}

/// Rank check of a governing system: determinant and minimum singular value
/// of the row-normalized 6x6 matrix, banded into a [`Verdict`].
pub fn oracle(system: &GoverningSystem, tol: &Tolerances) -> OracleVerdict {
    oracle_matrix(&system.matrix(), tol)
}

/// [`oracle`] on a bare matrix of Plucker rows.
pub fn oracle_matrix(m: &Matrix6<f64>, tol: &Tolerances) -> OracleVerdict {
    let rn = row_normalized(m);
    let det = matrix_det(&rn);
    let min_sv = row_normalized_min_sv(&rn);
    OracleVerdict {
        det,
        min_singular_value: min_sv,
        verdict: verdict_for(min_sv, tol),
    }
}

/// Factors of the condition for three actuation forces and three constraint
/// moments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Class1Value {
    /// `(s1 x s2) . s3`: zero when the three force directions are coplanar
    /// or two of them are parallel.
    pub actuation: f64,
    /// `(n1 x n2) . n3`: zero when the three moment directions are coplanar
    /// or two of them are parallel.
    pub constraint: f64,
    /// `actuation * constraint^2`, the full bracket value; the governing
    /// lines are dependent exactly when this vanishes.
    pub product_form: f64,
}

/// Condition for three actuation forces along unit directions `s` plus
/// three constraint moments along directions `n`. All six vectors must be
/// nonzero; the factor magnitudes are meaningful when they are unit.
pub fn class1_condition(s: &[Vector3<f64>; 3], n: &[Vector3<f64>; 3]) -> Class1Value {
    let actuation = s[0].cross(&s[1]).dot(&s[2]);
    let constraint = n[0].cross(&n[1]).dot(&n[2]);
    Class1Value {
        actuation,
        constraint,
        product_form: actuation * constraint * constraint,
    }
}

/// Condition for two pairs of intersecting actuation forces plus two
/// constraint moments: the triple product `(m1 x m2) . m3` of the normals
/// of the three finite planes spanned by the governing lines (each force
/// pair spans one plane; the third contains the two pair apexes and the
/// meet direction of the moment lines). Zero exactly when the four planes
/// of the construction share a point or one of them degenerates.
pub fn class2_condition(m1: &Vector3<f64>, m2: &Vector3<f64>, m3: &Vector3<f64>) -> f64 {
    m1.cross(m2).dot(m3)
}

/// Condition for a translational layout of three force directions and
/// three parallelogram normals: the product of the two triple products.
/// Same zero set as [`class1_condition`]'s `product_form` (the squared
/// factor there never changes the sign pattern of zero).
pub fn delta_condition(s: &[Vector3<f64>; 3], n: &[Vector3<f64>; 3]) -> f64 {
    s[0].cross(&s[1]).dot(&s[2]) * n[0].cross(&n[1]).dot(&n[2])
}

/// Plane through three points kept in raw cofactor form. No degeneracy
/// check: the six-force condition needs the raw polynomial even when the
/// defining points are (nearly) collinear, where the meet terms vanish and
/// correctly drive the condition to zero.
fn raw_plane(p1: HomogPoint, p2: HomogPoint, p3: HomogPoint) -> PlaneExtensor {
    PlaneExtensor {
        coords: incidence_cofactors(&p1, &p2, &p3),
        points: [p1, p2, p3],
    }
}

/// Inner quantities of the six-force condition, kept for case labeling.
struct Class3Parts {
    value: f64,
    /// Raw meet line of the two parallelogram planes.
    tu: Vector6<f64>,
    /// Cross product of the two parallelogram directions.
    rod_cross: Vector3<f64>,
    /// Rod vectors of the free pair and the two parallelogram pairs.
    ab: Vector3<f64>,
    cd: Vector3<f64>,
    o: Vector3<f64>,
    p: Vector3<f64>,
    /// Incidence brackets of the meet line with the free pair's lines.
    tuba: f64,
    tudc: f64,
    /// Coordinate norms of the free pair's lines, for incidence scales.
    ba_norm: f64,
    dc_norm: f64,
}

fn class3_parts(pts: &SixLinePoints, tol: &Tolerances) -> Result<Class3Parts, SingularityError> {
    for (x, y) in &pts.pairs {
        if x.is_at_infinity() || y.is_at_infinity() {
            return Err(SingularityError::NotClass3);
        }
    }
    let [a, b, c, d, e, f, g, h, i, j, k, l] = pts.letters();

    let ab = b.affine() - a.affine();
    let cd = d.affine() - c.affine();
    let o = f.affine() - e.affine();
    let hg = h.affine() - g.affine();
    let p = j.affine() - i.affine();
    let lk = l.affine() - k.affine();
    let parallel = |x: &Vector3<f64>, y: &Vector3<f64>| {
        tol.is_zero(x.cross(y).norm(), x.norm() * y.norm())
    };
    if !parallel(&o, &hg) || !parallel(&p, &lk) {
        return Err(SingularityError::NotClass3);
    }

    // Auxiliary points: q shifts e by the second parallelogram direction,
    // r and s shift q by the two free-pair rod vectors. The brackets
    // [feqr] and [feqs] collapse to +-(o x p) . cd and +-(o x p) . ab.
    let qv = e.affine() + p;
    let q = HomogPoint::from_affine(qv);
    let r = HomogPoint::from_affine(qv + cd);
    let s = HomogPoint::from_affine(qv + ab);
    let feqr = bracket4(&f, &e, &q, &r);
    let feqs = bracket4(&f, &e, &q, &s);

    let tu = meet_planes_coords(&raw_plane(i, j, k), &raw_plane(f, e, g));
    let ba = line_coords(&b, &a);
    let dc = line_coords(&d, &c);
    let tuba = pair_bracket(&tu, &ba);
    let tudc = pair_bracket(&tu, &dc);

    Ok(Class3Parts {
        value: feqr * tuba - feqs * tudc,
        tu,
        rod_cross: o.cross(&p),
        ab,
        cd,
        o,
        p,
        tuba,
        tudc,
        ba_norm: ba.norm(),
        dc_norm: dc.norm(),
    })
}

/// Condition for six actuation forces of which the second and third line
/// pairs are parallel: lines `(e,f) || (g,h)` and `(i,j) || (k,l)` in the
/// letter order of [`SixLinePoints`], all twelve points finite.
///
/// The value is a bracket polynomial in the twelve points: the incidence
/// brackets of the first pair's lines with the meet line of the two
/// parallel-pair planes, weighted by the brackets coupling the pair
/// directions. It vanishes exactly when the six lines are linearly
/// dependent.
///
/// The parallel pairs only need parallel directions here, but the value is
/// proportional to [`superbracket`](crate::gca::superbracket) (with a fixed
/// constant) only when each parallel pair closes, i.e. `h - g = f - e` and
/// `l - k = j - i`; the builders that emit such point sets guarantee
/// closure.
pub fn class3_condition(pts: &SixLinePoints, tol: &Tolerances) -> Result<f64, SingularityError> {
    Ok(class3_parts(pts, tol)?.value)
}

/// Geometric degeneracy behind a singular verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseLabel {
    /// Two of the three actuation force directions are parallel.
    TwoActuationParallel,
    /// The three actuation force directions are coplanar.
    ActuationCoplanar,
    /// Two of the three constraint moment directions are parallel.
    TwoConstraintParallel,
    /// The three constraint moment directions are coplanar.
    ConstraintCoplanar,
    /// A constraint moment direction itself vanished (the wrench row
    /// degenerates; typically a joint-axis arrangement issue).
    DegenerateMomentLine,
    /// One of the four construction planes degenerated (a zero plane
    /// normal, or parallel moment directions collapsing the infinity
    /// plane).
    DegeneratePlane,
    /// The four construction planes pass through a common point.
    PlanesConcurrent,
    /// The two parallelogram planes are parallel or coincide (zero meet
    /// direction).
    LegPlanesParallel,
    /// The two parallelogram directions are parallel.
    ParallelogramsParallel,
    /// Each free-pair rod is parallel to one parallelogram direction.
    DoubleParallelism,
    /// Both free-pair lines intersect the meet line of the parallelogram
    /// planes.
    SingularLinearComplex,
    /// One free-pair rod is parallel to a parallelogram direction while
    /// its line is coplanar with the meet line.
    ParallelCoplanarLine,
    /// Residual dependency of the six forces with none of the special
    /// alignments above.
    GeneralLinearComplex,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::TwoActuationParallel => "two-actuation-parallel",
            CaseLabel::ActuationCoplanar => "actuation-coplanar",
            CaseLabel::TwoConstraintParallel => "two-constraint-parallel",
            CaseLabel::ConstraintCoplanar => "constraint-coplanar",
            CaseLabel::DegenerateMomentLine => "degenerate-moment-line",
            CaseLabel::DegeneratePlane => "degenerate-plane",
            CaseLabel::PlanesConcurrent => "planes-concurrent",
            CaseLabel::LegPlanesParallel => "leg-planes-parallel",
            CaseLabel::ParallelogramsParallel => "parallelograms-parallel",
            CaseLabel::DoubleParallelism => "double-parallelism",
            CaseLabel::SingularLinearComplex => "singular-linear-complex",
            CaseLabel::ParallelCoplanarLine => "parallel-coplanar-line",
            CaseLabel::GeneralLinearComplex => "general-linear-complex",
        }
    }
}

impl core::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Input of [`classify_case`], one variant per governing-line layout.
///
/// Queries are built for a single classification call, so the size spread
/// between variants is not worth boxing the line-point arm for.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Copy, Debug)]
pub enum CaseQuery {
    /// Three actuation force directions and three constraint moment
    /// directions. Force directions must be nonzero; moment directions may
    /// degenerate to zero (that is one of the labeled cases).
    ThreeForcesThreeMoments {
        s: [Vector3<f64>; 3],
        n: [Vector3<f64>; 3],
    },
    /// Normals `m` of the three finite construction planes plus the two
    /// constraint moment directions `n`.
    FourForcesTwoMoments {
        m: [Vector3<f64>; 3],
        n: [Vector3<f64>; 2],
    },
    /// The twelve line points of a six-force layout with two parallel
    /// pairs.
    SixForces { points: SixLinePoints },
}

/// Names the geometric degeneracy behind a singular configuration.
///
/// The caller decides singularity (normally from [`oracle`]); a
/// non-singular call is an error. Labels are decided with the global
/// `epsilon` in fixed priority order, so every singular input receives
/// exactly one label:
///
/// * three forces + three moments: a vanished moment direction wins, then
///   the family with the smaller |triple product| is examined, parallel
///   pair before coplanar triple;
/// * four forces + two moments: any vanished plane factor (a zero `m`, or
///   `n1 x n2 = 0`, the factors tested independently) labels a degenerate
///   plane, otherwise the planes are concurrent;
/// * six forces: zero meet direction, then parallel parallelogram
///   directions, then double parallelism, then both free lines meeting the
///   meet line (tested pairwise against it, not for a common triple
///   point), then the parallel-and-coplanar cases, else the residual
///   general dependency.
pub fn classify_case(
    query: &CaseQuery,
    singular: bool,
    tol: &Tolerances,
) -> Result<CaseLabel, SingularityError> {
    if !singular {
        return Err(SingularityError::NotSingular);
    }
    match query {
        CaseQuery::ThreeForcesThreeMoments { s, n } => {
            let nscale = n.iter().map(|v| v.norm()).fold(0.0_f64, f64::max);
            if n.iter().any(|v| tol.is_zero(v.norm(), nscale)) {
                return Ok(CaseLabel::DegenerateMomentLine);
            }
            let su = [s[0].normalize(), s[1].normalize(), s[2].normalize()];
            let nu = [n[0].normalize(), n[1].normalize(), n[2].normalize()];
            let act = su[0].cross(&su[1]).dot(&su[2]).abs();
            let con = nu[0].cross(&nu[1]).dot(&nu[2]).abs();
            let min_pair_cross = |v: &[Vector3<f64>; 3]| {
                v[0].cross(&v[1])
                    .norm()
                    .min(v[0].cross(&v[2]).norm())
                    .min(v[1].cross(&v[2]).norm())
            };
            if act <= con {
                if tol.is_zero(min_pair_cross(&su), 1.0) {
                    Ok(CaseLabel::TwoActuationParallel)
                } else {
                    Ok(CaseLabel::ActuationCoplanar)
                }
            } else if tol.is_zero(min_pair_cross(&nu), 1.0) {
                Ok(CaseLabel::TwoConstraintParallel)
            } else {
                Ok(CaseLabel::ConstraintCoplanar)
            }
        }
        CaseQuery::FourForcesTwoMoments { m, n } => {
            let mscale = m.iter().map(|v| v.norm()).fold(0.0_f64, f64::max);
            let degenerate = m.iter().any(|v| tol.is_zero(v.norm(), mscale))
                || tol.is_zero(n[0].cross(&n[1]).norm(), n[0].norm() * n[1].norm());
            if degenerate {
                Ok(CaseLabel::DegeneratePlane)
            } else {
                Ok(CaseLabel::PlanesConcurrent)
            }
        }
        CaseQuery::SixForces { points } => {
            let parts = class3_parts(points, tol)?;
            let dir = Vector3::new(parts.tu[0], parts.tu[1], parts.tu[2]);
            let tu_norm = parts.tu.norm();
            let parallel = |x: &Vector3<f64>, y: &Vector3<f64>| {
                tol.is_zero(x.cross(y).norm(), x.norm() * y.norm())
            };
            let meets_ba = tol.is_zero(parts.tuba, tu_norm * parts.ba_norm);
            let meets_dc = tol.is_zero(parts.tudc, tu_norm * parts.dc_norm);
            if tol.is_zero(dir.norm(), tu_norm) {
                Ok(CaseLabel::LegPlanesParallel)
            } else if tol.is_zero(parts.rod_cross.norm(), parts.o.norm() * parts.p.norm()) {
                Ok(CaseLabel::ParallelogramsParallel)
            } else if (parallel(&parts.o, &parts.cd) && parallel(&parts.p, &parts.ab))
                || (parallel(&parts.o, &parts.ab) && parallel(&parts.p, &parts.cd))
            {
                Ok(CaseLabel::DoubleParallelism)
            } else if meets_ba && meets_dc {
                Ok(CaseLabel::SingularLinearComplex)
            } else if (parallel(&parts.o, &parts.cd) && meets_dc)
                || (parallel(&parts.p, &parts.cd) && meets_dc)
                || (parallel(&parts.p, &parts.ab) && meets_ba)
                || (parallel(&parts.o, &parts.ab) && meets_ba)
            {
                Ok(CaseLabel::ParallelCoplanarLine)
            } else {
                Ok(CaseLabel::GeneralLinearComplex)
            }
        }
    }
}

/// One pose's full analysis: the numeric verdict, the explanatory
/// condition values, and the case label when singular.
#[derive(Clone, Debug)]
pub struct SingularityReport {
    pub oracle_det: f64,
    pub oracle_min_singular_value: f64,
    /// Named condition values, e.g. `("class1.actuation", v)`.
    pub condition_values: Vec<(&'static str, f64)>,
    /// Always `verdict == Singular`; kept as a field so serialized reports
    /// stay self-contained.
    pub is_singular: bool,
    pub verdict: Verdict,
    pub case_label: Option<CaseLabel>,
    pub pose_echo: Pose,
}

impl SingularityReport {
    /// Assembles a report; `is_singular` is derived from the verdict so the
    /// two can never disagree.
    pub fn new(
        oracle: OracleVerdict,
        condition_values: Vec<(&'static str, f64)>,
        case_label: Option<CaseLabel>,
        pose_echo: Pose,
    ) -> Self {
        SingularityReport {
            oracle_det: oracle.det,
            oracle_min_singular_value: oracle.min_singular_value,
            condition_values,
            is_singular: oracle.is_singular(),
            verdict: oracle.verdict,
            case_label,
            pose_echo,
        }
    }
}
