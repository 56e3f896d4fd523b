//! Join and meet operators on extensors of P^3 and the superbracket of six
//! lines.
//!
//! A step-k extensor is the wedge of k independent points: a point, a line,
//! a plane, or (step 4) a scalar multiple of the whole space. Joins
//! concatenate point lists; meets are evaluated through shuffle sums of
//! 4-point brackets specialized to the three cases the singularity
//! conditions need (plane/plane, plane-pair/plane-pair, plane-pair/line).
//!
//! The superbracket is the determinant-like invariant of six lines given by
//! twelve points, two per line: it expands into 24 monomials, each a signed
//! product of three 4-point brackets partitioning the twelve points, and it
//! vanishes exactly when the six Plucker coordinate vectors are linearly
//! dependent. [`plucker_matrix_det`] and [`row_normalized_min_sv`] provide
//! the independent numeric check for that equivalence.

use nalgebra::{Matrix6, Vector3, Vector6};

use crate::bracket::bracket4;
use crate::projective::{incidence_cofactors, HomogPoint, PlaneExtensor, PlueckerLine};
use crate::Tolerances;

/// Degeneracies reported by extensor construction and meets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GcaError {
    /// Joined steps exceed 4, the rank of the space.
    StepOverflow,
    /// The given points are projectively dependent.
    DependentPoints,
    /// A point pair meant to span a line is projectively coincident.
    DegenerateLine,
    /// Meet of two identical (projectively equal) planes.
    DegenerateMeet,
}

impl core::fmt::Display for GcaError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GcaError::StepOverflow => write!(f, "extensor step exceeds the rank 4"),
            GcaError::DependentPoints => write!(f, "points are projectively dependent"),
            GcaError::DegenerateLine => write!(f, "line point pair is coincident"),
            GcaError::DegenerateMeet => write!(f, "meet of projectively equal planes"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for GcaError {}

/// Decomposable extensor: the join of `step` independent points.
#[derive(Clone, Copy, Debug)]
pub struct Extensor {
    len: usize,
    pts: [HomogPoint; 4],
}

impl Extensor {
    /// Step-1 extensor (a single point).
    pub fn point(p: HomogPoint) -> Self {
        Extensor {
            len: 1,
            pts: [p; 4],
        }
    }

    /// Extensor spanned by 1 to 4 independent points.
    pub fn from_points(points: &[HomogPoint], tol: &Tolerances) -> Result<Self, GcaError> {
        if points.is_empty() || points.len() > 4 {
            return Err(GcaError::StepOverflow);
        }
        if !points_independent(points, tol) {
            return Err(GcaError::DependentPoints);
        }
        let mut pts = [points[0]; 4];
        pts[..points.len()].copy_from_slice(points);
        Ok(Extensor {
            len: points.len(),
            pts,
        })
    }

    pub fn step(&self) -> usize {
        self.len
    }

    pub fn points(&self) -> &[HomogPoint] {
        &self.pts[..self.len]
    }
}

/// Join of two extensors: the concatenated point list when the union is
/// independent, `None` (the zero extensor) when it is dependent.
pub fn join(a: &Extensor, b: &Extensor, tol: &Tolerances) -> Result<Option<Extensor>, GcaError> {
    let total = a.step() + b.step();
    if total > 4 {
        return Err(GcaError::StepOverflow);
    }
    let mut pts = [a.pts[0]; 4];
    pts[..a.step()].copy_from_slice(a.points());
    pts[a.step()..total].copy_from_slice(b.points());
    if points_independent(&pts[..total], tol) {
        Ok(Some(Extensor { len: total, pts }))
    } else {
        Ok(None)
    }
}

/// Independence of up to four homogeneous points, decided on the natural
/// degree-k minor for k points (coordinates, line coordinates, plane
/// cofactors, 4x4 bracket) with a scale proportional to the product of the
/// point norms.
fn points_independent(points: &[HomogPoint], tol: &Tolerances) -> bool {
    let mut scale = 1.0;
    for p in points {
        scale *= p.coords.norm();
    }
    let magnitude = match points {
        [p] => p.coords.norm(),
        [p, q] => line_coords(p, q).norm(),
        [p, q, r] => incidence_cofactors(p, q, r).norm(),
        [p, q, r, s] => bracket4(p, q, r, s).abs(),
        _ => return false,
    };
    !tol.is_zero(magnitude, scale)
}

/// Unnormalized Plucker coordinates `(direction, moment)` of the join of two
/// points `(x1, w1)`, `(x2, w2)`:
///
/// `direction = w1 x2 - w2 x1`, `moment = x1 x x2`.
///
/// The same expression covers every case: two finite points give the usual
/// chord direction and moment, one infinite point contributes its direction
/// directly, and two infinite points give a line at infinity (zero
/// direction, moment normal to both).
pub fn line_coords(a: &HomogPoint, b: &HomogPoint) -> Vector6<f64> {
    let x1 = a.coords.xyz();
    let x2 = b.coords.xyz();
    let d = x2 * a.coords.w - x1 * b.coords.w;
    let m = x1.cross(&x2);
    Vector6::new(d.x, d.y, d.z, m.x, m.y, m.z)
}

fn split(l: &Vector6<f64>) -> (Vector3<f64>, Vector3<f64>) {
    (
        Vector3::new(l[0], l[1], l[2]),
        Vector3::new(l[3], l[4], l[5]),
    )
}

/// Bracket of the four points underlying two line extensors, expressed on
/// their Plucker coordinates:
///
/// `[p q r s] = -(d1 . m2 + m1 . d2)` for `L1 = p v q`, `L2 = r v s`.
///
/// Bilinear in the two coordinate vectors, so it applies equally to meets
/// and other linear combinations of point-pair joins. Zero exactly when the
/// two lines are coplanar (intersecting or parallel).
pub fn pair_bracket(l1: &Vector6<f64>, l2: &Vector6<f64>) -> f64 {
    let (d1, m1) = split(l1);
    let (d2, m2) = split(l2);
    -(d1.dot(&m2) + m1.dot(&d2))
}

/// Twelve points, two per governing line, in the fixed letter order
/// `(a,b),(c,d),(e,f),(g,h),(i,j),(k,l)`.
///
/// Each pair must span a line: two distinct finite points, a finite point
/// plus a direction at infinity, or two independent points at infinity (the
/// pair then describes a line at infinity, the carrier of a pure moment).
#[derive(Clone, Copy, Debug)]
pub struct SixLinePoints {
    pub pairs: [(HomogPoint, HomogPoint); 6],
}

impl SixLinePoints {
    pub fn new(
        pairs: [(HomogPoint, HomogPoint); 6],
        tol: &Tolerances,
    ) -> Result<Self, GcaError> {
        for (p, q) in &pairs {
            let scale = p.coords.norm() * q.coords.norm();
            if tol.is_zero(line_coords(p, q).norm(), scale) {
                return Err(GcaError::DegenerateLine);
            }
        }
        Ok(SixLinePoints { pairs })
    }

    /// The twelve points flattened in letter order `a..l`.
    pub fn letters(&self) -> [HomogPoint; 12] {
        let p = &self.pairs;
        [
            p[0].0, p[0].1, p[1].0, p[1].1, p[2].0, p[2].1, p[3].0, p[3].1, p[4].0, p[4].1,
            p[5].0, p[5].1,
        ]
    }

    /// 6x6 matrix whose rows are the (unnormalized) Plucker coordinates of
    /// the six lines.
    pub fn line_matrix(&self) -> Matrix6<f64> {
        let mut m = Matrix6::zeros();
        for (row, (p, q)) in self.pairs.iter().enumerate() {
            m.set_row(row, &line_coords(p, q).transpose());
        }
        m
    }
}

/// One monomial of the superbracket expansion: a sign and three groups of
/// four indices into the letter array `a..l = 0..11`. The groups partition
/// the twelve letters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuperbracketMonomial {
    pub sign: f64,
    pub groups: [[usize; 4]; 3],
}

const fn m(sign: f64, g0: [usize; 4], g1: [usize; 4], g2: [usize; 4]) -> SuperbracketMonomial {
    SuperbracketMonomial {
        sign,
        groups: [g0, g1, g2],
    }
}

// Letter indices.
const A: usize = 0;
const B: usize = 1;
const C: usize = 2;
const D: usize = 3;
const E: usize = 4;
const F: usize = 5;
const G: usize = 6;
const H: usize = 7;
const I: usize = 8;
const J: usize = 9;
const K: usize = 10;
const L: usize = 11;

/// The 24-monomial expansion of the bracket of six lines `ab, cd, ef, gh,
/// ij, kl`.
///
/// Each monomial is a signed product of three 4-point brackets that
/// partition the twelve points. The table is certified, not assumed: the
/// `superbracket_matches_line_matrix_determinant` tests pin its ratio to the
/// 6x6 Plucker determinant over random inputs, which fails if any sign or
/// index is wrong.
pub const SUPERBRACKET_TABLE: [SuperbracketMonomial; 24] = [
    m(1.0, [A, B, C, D], [E, F, G, I], [H, J, K, L]),
    m(-1.0, [A, B, C, D], [E, F, H, I], [G, J, K, L]),
    m(-1.0, [A, B, C, D], [E, F, G, J], [H, I, K, L]),
    m(1.0, [A, B, C, D], [E, F, H, J], [G, I, K, L]),
    m(-1.0, [A, B, C, E], [D, F, G, H], [I, J, K, L]),
    m(1.0, [A, B, D, E], [C, F, G, H], [I, J, K, L]),
    m(1.0, [A, B, C, F], [D, E, G, H], [I, J, K, L]),
    m(-1.0, [A, B, D, F], [C, E, G, H], [I, J, K, L]),
    m(1.0, [A, B, C, E], [D, G, H, I], [F, J, K, L]),
    m(-1.0, [A, B, D, E], [C, G, H, I], [F, J, K, L]),
    m(-1.0, [A, B, C, F], [D, G, H, I], [E, J, K, L]),
    m(-1.0, [A, B, C, E], [D, G, H, J], [F, I, K, L]),
    m(1.0, [A, B, D, F], [C, G, H, I], [E, J, K, L]),
    m(1.0, [A, B, D, E], [C, G, H, J], [F, I, K, L]),
    m(-1.0, [A, B, D, F], [C, G, H, J], [E, I, K, L]),
    m(1.0, [A, B, C, F], [D, G, H, J], [E, I, K, L]),
    m(-1.0, [A, B, C, G], [D, E, F, I], [H, J, K, L]),
    m(1.0, [A, B, D, G], [C, E, F, I], [H, J, K, L]),
    m(1.0, [A, B, C, H], [D, E, F, I], [G, J, K, L]),
    m(1.0, [A, B, C, G], [D, E, F, J], [H, I, K, L]),
    m(-1.0, [A, B, D, H], [C, E, F, I], [G, J, K, L]),
    m(-1.0, [A, B, D, G], [C, E, F, J], [H, I, K, L]),
    m(-1.0, [A, B, C, H], [D, E, F, J], [G, I, K, L]),
    m(1.0, [A, B, D, H], [C, E, F, J], [G, I, K, L]),
];

/// Superbracket of the six lines spanned by `pts`, via the standard
/// 24-monomial table.
pub fn superbracket(pts: &SixLinePoints) -> f64 {
    superbracket_with_table(pts, &SUPERBRACKET_TABLE)
}

/// Superbracket against a caller-supplied monomial table. Exists so tests
/// and the self-test battery can demonstrate that a corrupted table breaks
/// the determinant proportionality.
pub fn superbracket_with_table(pts: &SixLinePoints, table: &[SuperbracketMonomial]) -> f64 {
    let letters = pts.letters();
    let mut sum = 0.0;
    for mono in table {
        let mut term = mono.sign;
        for group in &mono.groups {
            term *= bracket4(
                &letters[group[0]],
                &letters[group[1]],
                &letters[group[2]],
                &letters[group[3]],
            );
        }
        sum += term;
    }
    sum
}

/// Natural magnitude scale of a superbracket value: every monomial is a
/// product of twelve point coordinates, one per letter, so the product of
/// the twelve coordinate norms bounds each monomial.
pub fn superbracket_scale(pts: &SixLinePoints) -> f64 {
    pts.letters()
        .iter()
        .map(|p| p.coords.norm())
        .product::<f64>()
        * SUPERBRACKET_TABLE.len() as f64
}

/// Meet of two planes `A = a v b v c` and `B = d v e v f` as an
/// (unnormalized) line coordinate vector:
///
/// `A ^ B = [adef] (b v c) - [bdef] (a v c) + [cdef] (a v b)`
///
/// the shuffle sum over which single point of `A` is bracketed with all of
/// `B`. Parallel planes yield zero direction and nonzero moment (a line at
/// infinity); projectively equal planes yield the zero vector.
pub fn meet_planes_coords(a: &PlaneExtensor, b: &PlaneExtensor) -> Vector6<f64> {
    let [pa, pb, pc] = a.points;
    let [pd, pe, pf] = b.points;
    let la = bracket4(&pa, &pd, &pe, &pf);
    let lb = bracket4(&pb, &pd, &pe, &pf);
    let lc = bracket4(&pc, &pd, &pe, &pf);
    line_coords(&pb, &pc) * la - line_coords(&pa, &pc) * lb + line_coords(&pa, &pb) * lc
}

/// Meet of two planes as a canonicalized [`PlueckerLine`] (finite, or at
/// infinity when the planes are parallel).
pub fn meet_planes(
    a: &PlaneExtensor,
    b: &PlaneExtensor,
    tol: &Tolerances,
) -> Result<PlueckerLine, GcaError> {
    let coords = meet_planes_coords(a, b);
    let scale = plane_scale(a) * plane_scale(b);
    if tol.is_zero(coords.norm(), scale) {
        return Err(GcaError::DegenerateMeet);
    }
    let (d, m) = split(&coords);
    let line = if tol.is_zero(d.norm(), coords.norm()) {
        PlueckerLine {
            direction: Vector3::zeros(),
            moment: m,
        }
    } else {
        PlueckerLine {
            direction: d,
            moment: m,
        }
    };
    Ok(line.canonicalized())
}

fn plane_scale(p: &PlaneExtensor) -> f64 {
    p.points.iter().map(|q| q.coords.norm()).product()
}

/// Meet of four planes `(A ^ B) ^ (D ^ E)`: a scalar, zero exactly when the
/// four planes share a common projective point. Evaluated as the bracket of
/// the two intersection lines.
pub fn meet_four_planes(
    a: &PlaneExtensor,
    b: &PlaneExtensor,
    d: &PlaneExtensor,
    e: &PlaneExtensor,
) -> f64 {
    pair_bracket(&meet_planes_coords(a, b), &meet_planes_coords(d, e))
}

/// Meet of two planes with the line `g v h`:
///
/// `(A ^ B) ^ C = [defg][habc] - [defh][gabc]`
///
/// for `A = a v b v c`, `B = d v e v f`, `C = g v h`. Zero exactly when `C`
/// is coplanar with the intersection line of `A` and `B`.
pub fn meet_planes_line(
    a: &PlaneExtensor,
    b: &PlaneExtensor,
    g: &HomogPoint,
    h: &HomogPoint,
) -> f64 {
    let [pa, pb, pc] = a.points;
    let [pd, pe, pf] = b.points;
    bracket4(&pd, &pe, &pf, g) * bracket4(h, &pa, &pb, &pc)
        - bracket4(&pd, &pe, &pf, h) * bracket4(g, &pa, &pb, &pc)
}

/// Determinant of a 6x6 matrix of Plucker rows (raw, unnormalized).
pub fn matrix_det(m: &Matrix6<f64>) -> f64 {
    m.determinant()
}

/// Minimum singular value of the row-normalized matrix: each nonzero row is
/// scaled to unit norm first, so the result is a dimensionless measure of
/// how far the six lines are from linear dependence.
pub fn row_normalized_min_sv(m: &Matrix6<f64>) -> f64 {
    let normalized = row_normalized(m);
    normalized
        .singular_values()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// Copy of `m` with every nonzero row scaled to unit norm.
pub fn row_normalized(m: &Matrix6<f64>) -> Matrix6<f64> {
    let mut out = *m;
    for r in 0..6 {
        let norm = out.row(r).norm();
        if norm > 0.0 {
            let scaled = out.row(r) / norm;
            out.set_row(r, &scaled);
        }
    }
    out
}

/// Determinant of the 6x6 matrix whose rows are the six lines' Plucker
/// coordinates.
pub fn plucker_matrix_det(lines: &[PlueckerLine; 6]) -> f64 {
    matrix_det(&lines_matrix(lines))
}

/// Minimum singular value of the row-normalized Plucker matrix of the six
/// lines.
pub fn plucker_matrix_min_sv(lines: &[PlueckerLine; 6]) -> f64 {
    row_normalized_min_sv(&lines_matrix(lines))
}

fn lines_matrix(lines: &[PlueckerLine; 6]) -> Matrix6<f64> {
    let mut m = Matrix6::zeros();
    for (row, line) in lines.iter().enumerate() {
        m.set_row(row, &line.coords().transpose());
    }
    m
}
