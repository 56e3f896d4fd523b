//! Twists and wrenches as six-coordinate screws, the reciprocity pairing,
//! and reciprocal-system extraction.
//!
//! A screw stores a primal and a dual 3-vector. For a wrench the primal part
//! is the force direction and the dual part the moment; for a twist the
//! primal part is the angular velocity and the dual part the linear
//! velocity. Zero-pitch screws are lines (`primal . dual = 0`), infinite-
//! pitch screws are lines at infinity (`primal = 0`). The pairing
//!
//! `<T, W> = T.primal . W.dual + T.dual . W.primal`
//!
//! is the instantaneous power; it is the single source of truth for
//! reciprocity, so no coordinate reshuffling between "ray" and "axis" order
//! ever happens elsewhere.

#[cfg(not(feature = "std"))]
use alloc::vec::Vec;

use nalgebra::{Matrix6, Vector3, Vector6};

use crate::projective::PlueckerLine;
use crate::Tolerances;

/// Whether a screw describes motion (twist) or load (wrench).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScrewKind {
    Twist,
    Wrench,
}

/// Pitch classification of a screw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PitchClass {
    /// Pure rotation / pure force along a finite line.
    Zero,
    /// Proper helical screw.
    Finite,
    /// Pure translation / pure moment (line at infinity).
    Infinite,
}

/// Errors from pairing and system operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScrewError {
    /// A twist was passed where a wrench was expected, or vice versa.
    KindError,
    /// The mixing matrix of a basis exchange is singular.
    SingularMixing,
    /// A governing row is neither a zero-pitch nor an infinite-pitch wrench.
    InvalidGoverningRow,
}

impl core::fmt::Display for ScrewError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ScrewError::KindError => write!(f, "twist/wrench kind mismatch"),
            ScrewError::SingularMixing => write!(f, "basis-exchange mixing matrix is singular"),
            ScrewError::InvalidGoverningRow => {
                write!(f, "governing row is not a zero- or infinite-pitch wrench")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ScrewError {}

/// Six-coordinate screw.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Screw {
    pub primal: Vector3<f64>,
    pub dual: Vector3<f64>,
    pub kind: ScrewKind,
}

impl Screw {
    pub fn new(kind: ScrewKind, primal: Vector3<f64>, dual: Vector3<f64>) -> Self {
        Screw { primal, dual, kind }
    }

    /// Pure force with unit direction `s` acting through the point `r`.
    pub fn wrench_force(s: Vector3<f64>, r: Vector3<f64>) -> Self {
        let s = s.normalize();
        Screw {
            primal: s,
            dual: r.cross(&s),
            kind: ScrewKind::Wrench,
        }
    }

    /// Pure moment with unit direction `n` (a line at infinity).
    pub fn wrench_moment(n: Vector3<f64>) -> Self {
        Screw {
            primal: Vector3::zeros(),
            dual: n.normalize(),
            kind: ScrewKind::Wrench,
        }
    }

    /// Revolute twist about the axis through `r` with unit direction `s`.
    pub fn twist_revolute(s: Vector3<f64>, r: Vector3<f64>) -> Self {
        let s = s.normalize();
        Screw {
            primal: s,
            dual: r.cross(&s),
            kind: ScrewKind::Twist,
        }
    }

    /// Prismatic (or parallelogram-circular-translation) twist along `v`.
    pub fn twist_prismatic(v: Vector3<f64>) -> Self {
        Screw {
            primal: Vector3::zeros(),
            dual: v.normalize(),
            kind: ScrewKind::Twist,
        }
    }

    /// The six coordinates `(primal, dual)` stacked.
    pub fn coords(&self) -> Vector6<f64> {
        Vector6::new(
            self.primal.x,
            self.primal.y,
            self.primal.z,
            self.dual.x,
            self.dual.y,
            self.dual.z,
        )
    }

    pub fn from_coords(kind: ScrewKind, c: &Vector6<f64>) -> Self {
        Screw {
            primal: Vector3::new(c[0], c[1], c[2]),
            dual: Vector3::new(c[3], c[4], c[5]),
            kind,
        }
    }

    pub fn norm(&self) -> f64 {
        self.coords().norm()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Screw {
            primal: self.primal / n,
            dual: self.dual / n,
            kind: self.kind,
        }
    }

    pub fn pitch_class(&self, tol: &Tolerances) -> PitchClass {
        let p = self.primal.norm();
        let d = self.dual.norm();
        if tol.is_zero(p, d.max(1.0)) {
            return PitchClass::Infinite;
        }
        if tol.is_zero(self.primal.dot(&self.dual), p * d.max(p)) {
            return PitchClass::Zero;
        }
        PitchClass::Finite
    }

    /// The line carrying a zero-pitch screw, or the line at infinity of an
    /// infinite-pitch screw. `None` for a finite-pitch screw.
    pub fn line(&self, tol: &Tolerances) -> Option<PlueckerLine> {
        match self.pitch_class(tol) {
            PitchClass::Zero => {
                let n = self.primal.norm();
                Some(PlueckerLine {
                    direction: self.primal / n,
                    moment: self.dual / n,
                })
            }
            PitchClass::Infinite => {
                let n = self.dual.norm();
                Some(PlueckerLine {
                    direction: Vector3::zeros(),
                    moment: self.dual / n,
                })
            }
            PitchClass::Finite => None,
        }
    }
}

/// Instantaneous power of a twist acting against a wrench.
pub fn reciprocal_product(t: &Screw, w: &Screw) -> Result<f64, ScrewError> {
    if t.kind != ScrewKind::Twist || w.kind != ScrewKind::Wrench {
        return Err(ScrewError::KindError);
    }
    Ok(pairing(t, w))
}

/// The raw Klein-form pairing, kind-agnostic.
pub fn pairing(a: &Screw, b: &Screw) -> f64 {
    a.primal.dot(&b.dual) + a.dual.dot(&b.primal)
}

/// Pairing of normalized screws: dimensionless measure of how far from
/// reciprocal the pair is.
pub fn normalized_pairing(a: &Screw, b: &Screw) -> f64 {
    pairing(a, b) / (a.norm() * b.norm())
}

/// Basis of the wrench system reciprocal to every given twist.
///
/// The pairing of a wrench `w` with twist `t` is linear in `w` with
/// coefficient row `(t.dual, t.primal)`; the reciprocal system is the null
/// space of the stacked rows, extracted with a singular value decomposition.
/// Singular values at or below `tol.rank_rtol` times the largest count as
/// null. Returns `6 - rank(twists)` unit wrenches, canonically oriented.
pub fn reciprocal_system(twists: &[Screw], tol: &Tolerances) -> Vec<Screw> {
    let mut rows = Matrix6::zeros();
    if twists.len() <= 6 {
        for (i, t) in twists.iter().enumerate() {
            rows.set_row(i, &pairing_row(t).transpose());
        }
    } else {
        // Gram route: null(A) = null(A^T A); thresholds apply to the squared
        // spectrum.
        let mut gram = Matrix6::zeros();
        for t in twists {
            let r = pairing_row(t);
            gram += r * r.transpose();
        }
        rows = gram;
    }
    let squared = twists.len() > 6;
    let svd = rows.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let sigma_max = svd.singular_values.max();
    let cutoff = if squared {
        tol.rank_rtol * tol.rank_rtol * sigma_max
    } else {
        tol.rank_rtol * sigma_max
    };
    let mut out = Vec::new();
    for (k, &sigma) in svd.singular_values.iter().enumerate() {
        if sigma <= cutoff || sigma == 0.0 {
            let row = v_t.row(k);
            let mut c = Vector6::new(row[0], row[1], row[2], row[3], row[4], row[5]);
            if let Some(lead) = c.iter().copied().find(|&x| x.abs() > 1e-12) {
                if lead < 0.0 {
                    c = -c;
                }
            }
            out.push(Screw::from_coords(ScrewKind::Wrench, &c));
        }
    }
    out
}

fn pairing_row(t: &Screw) -> Vector6<f64> {
    Vector6::new(
        t.dual.x, t.dual.y, t.dual.z, t.primal.x, t.primal.y, t.primal.z,
    )
}

/// Replaces an n-screw system by an equivalent one: `new_i = sum_j
/// coeffs[i*n + j] * old_j`. `coeffs` is a row-major n x n matrix and must
/// be invertible so the span is preserved.
pub fn basis_exchange(
    system: &[Screw],
    coeffs: &[f64],
    tol: &Tolerances,
) -> Result<Vec<Screw>, ScrewError> {
    let n = system.len();
    assert!((1..=6).contains(&n), "screw systems have 1 to 6 elements");
    assert_eq!(coeffs.len(), n * n, "coeffs must be n x n row-major");
    let kind = system[0].kind;
    if system.iter().any(|s| s.kind != kind) {
        return Err(ScrewError::KindError);
    }
    // Invertibility check on the identity-padded 6x6.
    let mut padded = Matrix6::identity();
    let mut scale = 1.0_f64;
    for i in 0..n {
        let mut row_norm = 0.0;
        for j in 0..n {
            padded[(i, j)] = coeffs[i * n + j];
            row_norm += coeffs[i * n + j] * coeffs[i * n + j];
        }
        padded[(i, i)] = coeffs[i * n + i];
        scale *= crate::fmath::sqrt(row_norm);
    }
    if tol.is_zero(padded.determinant().abs(), scale) {
        return Err(ScrewError::SingularMixing);
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut primal = Vector3::zeros();
        let mut dual = Vector3::zeros();
        for (j, s) in system.iter().enumerate() {
            primal += s.primal * coeffs[i * n + j];
            dual += s.dual * coeffs[i * n + j];
        }
        out.push(Screw::new(kind, primal, dual));
    }
    Ok(out)
}

/// Where a governing row comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowSource {
    /// Actuation force: transmitted by chain `chain` through its actuated
    /// joint; `actuated_twist` indexes that joint in the chain's twist list.
    ActuationForce { chain: usize, actuated_twist: usize },
    /// Constraint moment restricting platform rotation, from chain `chain`.
    ConstraintMoment { chain: usize },
}

/// The six wrench rows of the inverse-Jacobian transpose, with per-row
/// provenance.
#[derive(Clone, Copy, Debug)]
pub struct GoverningSystem {
    pub rows: [Screw; 6],
    pub sources: [RowSource; 6],
}

impl GoverningSystem {
    /// Validates that every row is a wrench of zero or infinite pitch (the
    /// only kinds a governing line can be).
    pub fn new(
        rows: [Screw; 6],
        sources: [RowSource; 6],
        tol: &Tolerances,
    ) -> Result<Self, ScrewError> {
        for r in &rows {
            if r.kind != ScrewKind::Wrench {
                return Err(ScrewError::KindError);
            }
            if r.pitch_class(tol) == PitchClass::Finite {
                return Err(ScrewError::InvalidGoverningRow);
            }
        }
        Ok(GoverningSystem { rows, sources })
    }

    /// 6x6 matrix whose rows are the wrench coordinates.
    pub fn matrix(&self) -> Matrix6<f64> {
        let mut m = Matrix6::zeros();
        for (i, r) in self.rows.iter().enumerate() {
            m.set_row(i, &r.coords().transpose());
        }
        m
    }

    /// The governing lines (finite or at infinity) row by row.
    pub fn lines(&self, tol: &Tolerances) -> [PlueckerLine; 6] {
        let mut out = [PlueckerLine {
            direction: Vector3::zeros(),
            moment: Vector3::z(),
        }; 6];
        for (i, r) in self.rows.iter().enumerate() {
            out[i] = r
                .line(tol)
                .expect("governing rows are zero- or infinite-pitch by construction");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::bracket4;
    use crate::gca::{line_coords, pair_bracket};
    use crate::projective::HomogPoint;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn rv(rng: &mut ChaCha8Rng) -> Vector3<f64> {
        Vector3::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        )
    }

    #[test]
    fn intersecting_forces_are_reciprocal() {
        // Both lines pass through (1, 1, 0).
        let meet = Vector3::new(1.0, 1.0, 0.0);
        let t = Screw::twist_revolute(Vector3::new(0.0, 0.0, 1.0), meet);
        let w = Screw::wrench_force(Vector3::new(1.0, -0.5, 0.3), meet);
        assert_relative_eq!(reciprocal_product(&t, &w).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn moment_pairs_with_rotation_by_axis_dot() {
        let s = Vector3::new(0.0, 1.0, 0.0);
        let t = Screw::twist_revolute(s, Vector3::new(3.0, -2.0, 1.0));
        let w_perp = Screw::wrench_moment(Vector3::new(1.0, 0.0, 0.0));
        assert_relative_eq!(reciprocal_product(&t, &w_perp).unwrap(), 0.0, epsilon = 1e-12);
        let w_par = Screw::wrench_moment(Vector3::new(0.0, 1.0, 0.0));
        assert_relative_eq!(reciprocal_product(&t, &w_par).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn prismatic_twist_works_against_aligned_force() {
        let t = Screw::twist_prismatic(Vector3::z());
        let w = Screw::wrench_force(Vector3::z(), Vector3::new(4.0, -1.0, 0.0));
        assert_relative_eq!(reciprocal_product(&t, &w).unwrap(), 1.0, epsilon = 1e-12);
        let w_perp = Screw::wrench_force(Vector3::x(), Vector3::new(0.0, 2.0, 5.0));
        assert_relative_eq!(reciprocal_product(&t, &w_perp).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let t = Screw::twist_prismatic(Vector3::z());
        let w = Screw::wrench_moment(Vector3::z());
        assert_eq!(reciprocal_product(&w, &t), Err(ScrewError::KindError));
        assert_eq!(reciprocal_product(&t, &t), Err(ScrewError::KindError));
    }

    #[test]
    fn zero_pitch_pairing_matches_line_incidence() {
        // Pairing of two pure forces vanishes exactly when their lines are
        // coplanar; the 4x4 determinant of two points per line is the
        // independent oracle.
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..200 {
            let p = rv(&mut rng);
            let q = rv(&mut rng);
            let r = rv(&mut rng);
            let s = rv(&mut rng);
            if (q - p).norm() < 0.1 || (s - r).norm() < 0.1 {
                continue;
            }
            let w1 = Screw::wrench_force(q - p, p);
            let w2 = Screw::wrench_force(s - r, r);
            let det = bracket4(
                &HomogPoint::from_affine(p),
                &HomogPoint::from_affine(q),
                &HomogPoint::from_affine(r),
                &HomogPoint::from_affine(s),
            );
            // Same incidence quantity up to the two normalizations.
            let expected = -det / ((q - p).norm() * (s - r).norm());
            assert_relative_eq!(pairing(&w1, &w2), expected, epsilon = 1e-10, max_relative = 1e-10);
        }
    }

    #[test]
    fn pairing_and_pair_bracket_are_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..100 {
            let p = rv(&mut rng);
            let q = rv(&mut rng);
            let r = rv(&mut rng);
            let s = rv(&mut rng);
            let l1 = line_coords(&HomogPoint::from_affine(p), &HomogPoint::from_affine(q));
            let l2 = line_coords(&HomogPoint::from_affine(r), &HomogPoint::from_affine(s));
            let s1 = Screw::from_coords(ScrewKind::Wrench, &l1);
            let s2 = Screw::from_coords(ScrewKind::Wrench, &l2);
            assert_relative_eq!(
                pairing(&s1, &s2),
                -pair_bracket(&l1, &l2),
                epsilon = 1e-12,
                max_relative = 1e-12
            );
        }
    }

    fn upu_leg(
        base: Vector3<f64>,
        platform: Vector3<f64>,
        z1: Vector3<f64>,
    ) -> ([Screw; 5], Screw, Screw) {
        let s = (platform - base).normalize();
        let z2 = z1.cross(&s).normalize();
        let twists = [
            Screw::twist_revolute(z1, base),
            Screw::twist_revolute(z2, base),
            Screw::twist_prismatic(s),
            Screw::twist_revolute(z2, platform),
            Screw::twist_revolute(z1, platform),
        ];
        let force = Screw::wrench_force(s, base);
        let moment = Screw::wrench_moment(z1.cross(&z2));
        (twists, force, moment)
    }

    fn span_residual(target: &Screw, basis: &[Screw]) -> f64 {
        // Residual of the normalized target outside the span of the basis.
        let mut rem = target.normalized().coords();
        // Gram-Schmidt against the (orthonormal) basis rows.
        for b in basis {
            let bc = b.normalized().coords();
            rem -= bc * rem.dot(&bc);
        }
        rem.norm()
    }

    #[test]
    fn upu_leg_has_one_constraint_and_gains_force_when_locked() {
        let t = tol();
        let base = Vector3::new(1.0, 0.0, 0.0);
        let plat = Vector3::new(0.8, 0.2, 1.5);
        let z1 = Vector3::new(0.0, 1.0, 0.0);
        let (twists, force, moment) = upu_leg(base, plat, z1);

        let sys = reciprocal_system(&twists, &t);
        assert_eq!(sys.len(), 1);
        assert!(span_residual(&moment, &sys) <= 1e-10);
        assert!(span_residual(&force, &sys) > 1e-3);
        for tw in &twists {
            assert!(normalized_pairing(tw, &sys[0]).abs() <= 1e-10);
        }

        let locked = [twists[0], twists[1], twists[3], twists[4]];
        let sys2 = reciprocal_system(&locked, &t);
        assert_eq!(sys2.len(), 2);
        assert!(span_residual(&moment, &sys2) <= 1e-10);
        assert!(span_residual(&force, &sys2) <= 1e-10);
    }

    #[test]
    fn single_twist_yields_five_system() {
        let t = tol();
        let tw = Screw::twist_revolute(Vector3::new(0.3, 1.0, -0.2), Vector3::new(1.0, 2.0, 3.0));
        let sys = reciprocal_system(&[tw], &t);
        assert_eq!(sys.len(), 5);
        for w in &sys {
            assert!(normalized_pairing(&tw, w).abs() <= 1e-10);
        }
    }

    #[test]
    fn six_independent_twists_yield_empty_system() {
        let t = tol();
        let twists = [
            Screw::twist_revolute(Vector3::x(), Vector3::zeros()),
            Screw::twist_revolute(Vector3::y(), Vector3::zeros()),
            Screw::twist_revolute(Vector3::z(), Vector3::zeros()),
            Screw::twist_prismatic(Vector3::x()),
            Screw::twist_prismatic(Vector3::y()),
            Screw::twist_prismatic(Vector3::z()),
        ];
        assert!(reciprocal_system(&twists, &t).is_empty());
    }

    #[test]
    fn gram_route_handles_more_than_six_twists() {
        let t = tol();
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let mut twists = Vec::new();
        for _ in 0..9 {
            twists.push(Screw::twist_revolute(rv(&mut rng), rv(&mut rng)));
        }
        // Nine generic twists span everything: empty reciprocal system.
        assert!(reciprocal_system(&twists, &t).is_empty());
        // Nine copies of one twist still leave a 5-system.
        let one = Screw::twist_revolute(Vector3::x(), Vector3::zeros());
        let repeated: Vec<Screw> = (0..9).map(|_| one).collect();
        let sys = reciprocal_system(&repeated, &t);
        assert_eq!(sys.len(), 5);
        for w in &sys {
            assert!(normalized_pairing(&one, w).abs() <= 1e-10);
        }
    }

    #[test]
    fn identity_exchange_is_identity() {
        let s1 = Screw::wrench_force(Vector3::x(), Vector3::zeros());
        let s2 = Screw::wrench_force(Vector3::y(), Vector3::new(0.0, 0.0, 1.0));
        let out = basis_exchange(&[s1, s2], &[1.0, 0.0, 0.0, 1.0], &tol()).unwrap();
        assert_eq!(out[0], s1);
        assert_eq!(out[1], s2);
    }

    #[test]
    fn difference_of_parallel_forces_is_a_moment() {
        let s = Vector3::new(0.2, -0.4, 1.0).normalize();
        let r1 = Vector3::new(1.0, 2.0, 0.0);
        let r2 = Vector3::new(-0.5, 1.0, 3.0);
        let f1 = Screw::wrench_force(s, r1);
        let f2 = Screw::wrench_force(s, r2);
        let out = basis_exchange(&[f1, f2], &[1.0, 0.0, 1.0, -1.0], &tol()).unwrap();
        assert_eq!(out[0], f1);
        let m = out[1];
        assert_relative_eq!(m.primal, Vector3::zeros(), epsilon = 1e-15);
        assert_relative_eq!(m.dual, (r1 - r2).cross(&s), epsilon = 1e-12);
        assert_eq!(m.pitch_class(&tol()), PitchClass::Infinite);
    }

    #[test]
    fn singular_mixing_is_rejected() {
        let s1 = Screw::wrench_force(Vector3::x(), Vector3::zeros());
        let s2 = Screw::wrench_force(Vector3::y(), Vector3::zeros());
        let r = basis_exchange(&[s1, s2], &[1.0, 1.0, 0.0, 0.0], &tol());
        assert_eq!(r.err(), Some(ScrewError::SingularMixing));
    }

    #[test]
    fn exchange_preserves_the_span() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let t = tol();
        let system = [
            Screw::wrench_force(rv(&mut rng), rv(&mut rng)),
            Screw::wrench_force(rv(&mut rng), rv(&mut rng)),
            Screw::wrench_force(rv(&mut rng), rv(&mut rng)),
        ];
        let coeffs = [1.0, 2.0, 0.5, 0.0, 1.0, -1.0, 0.3, 0.0, 1.0];
        let out = basis_exchange(&system, &coeffs, &t).unwrap();
        // Orthonormalize the new system, then check each old screw projects
        // onto it with negligible residual.
        let mut ortho: Vec<Screw> = Vec::new();
        for s in &out {
            let mut c = s.coords();
            for b in &ortho {
                let bc = b.coords();
                c -= bc * c.dot(&bc);
            }
            ortho.push(Screw::from_coords(ScrewKind::Wrench, &(c / c.norm())));
        }
        for s in &system {
            assert!(span_residual(s, &ortho) <= 1e-10);
        }
    }

    #[test]
    fn governing_system_validates_row_pitch() {
        let t = tol();
        let force = Screw::wrench_force(Vector3::x(), Vector3::zeros());
        let moment = Screw::wrench_moment(Vector3::z());
        let helical = Screw::new(ScrewKind::Wrench, Vector3::x(), Vector3::x() * 0.5);
        let src = RowSource::ConstraintMoment { chain: 0 };
        let ok = GoverningSystem::new([force; 6], [src; 6], &t);
        assert!(ok.is_ok());
        let bad = GoverningSystem::new(
            [force, force, force, moment, moment, helical],
            [src; 6],
            &t,
        );
        assert_eq!(bad.err(), Some(ScrewError::InvalidGoverningRow));
    }

    #[test]
    fn governing_matrix_rows_are_screw_coords() {
        let t = tol();
        let force = Screw::wrench_force(Vector3::x(), Vector3::new(0.0, 1.0, 0.0));
        let moment = Screw::wrench_moment(Vector3::z());
        let rows = [force, force, force, force, force, moment];
        let src = RowSource::ActuationForce { chain: 0, actuated_twist: 0 };
        let g = GoverningSystem::new(rows, [src; 6], &t).unwrap();
        let m = g.matrix();
        assert_eq!(m[(0, 0)], 1.0);
        assert_eq!(m[(0, 5)], -1.0);
        assert_eq!(m[(5, 5)], 1.0);
        let lines = g.lines(&t);
        assert!(lines[5].is_at_infinity());
    }
}
