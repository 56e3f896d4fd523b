//! Line-geometry singularity analysis for lower-mobility parallel manipulators.
//!
//! The crate models the governing lines of a manipulator (actuation forces and
//! constraint moments) as screws and as decomposable extensors over projective
//! three-space, evaluates closed-form singularity conditions built from bracket
//! polynomials, and cross-checks every verdict against a rank oracle on the
//! 6x6 Plucker matrix of the governing system.
//!
//! Modules build on each other bottom-up:
//!
//! * [`projective`]: homogeneous points, Plucker lines, plane extensors.
//! * [`bracket`]: 4x4 determinant brackets and the Grassmann-Plucker syzygy.
//! * [`gca`]: joins, meets of plane extensors, and the superbracket of six
//!   line-bound point pairs.
//! * [`screws`]: twists, wrenches, reciprocal products and reciprocal systems.
//! * [`manipulators`]: governing-system builders for the four supported
//!   architectures (3-UPU, linear Delta, Schoenflies motion generator, Verne).
//! * [`singularity`]: closed-form condition values, geometric case labels and
//!   the numeric verdict of record.
//!
//! The crate is `no_std`-compatible: disable default features and enable
//! `libm` to build without the standard library (an allocator is required).

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

#[cfg(not(feature = "std"))]
extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("enable either the `std` feature or the `libm` feature");

pub mod bracket;
pub mod gca;
pub mod manipulators;
pub mod projective;
pub mod screws;
pub mod singularity;

pub use nalgebra;

/// Scalar math that lives in `std` but not in `core`.
pub(crate) mod fmath {
    #[cfg(feature = "std")]
    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }

    #[cfg(all(not(feature = "std"), feature = "libm"))]
    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }

    #[cfg(feature = "std")]
    #[inline]
    pub fn sin_cos(x: f64) -> (f64, f64) {
        x.sin_cos()
    }

    #[cfg(all(not(feature = "std"), feature = "libm"))]
    #[inline]
    pub fn sin_cos(x: f64) -> (f64, f64) {
        (libm::sin(x), libm::cos(x))
    }
}

/// Numeric cutoffs shared across the crate.
///
/// All geometric degeneracy tests are scale-aware: a quantity counts as zero
/// when its magnitude is at most `epsilon` times the scale of the inputs it
/// was computed from. The singular-verdict thresholds apply to the minimum
/// singular value of the row-normalized 6x6 Plucker matrix, which is
/// dimensionless.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Relative cutoff for geometric degeneracy (zero vectors, coincident
    /// points, coplanarity tests in case classification).
    pub epsilon: f64,
    /// Singular values below `rank_rtol * sigma_max` count as null directions
    /// in [`screws::reciprocal_system`].
    pub rank_rtol: f64,
    /// Minimum singular value at or below this is a singular verdict.
    pub singular: f64,
    /// Minimum singular value in `(singular, near_singular)` is reported as
    /// near-singular; above it the pose is non-singular.
    pub near_singular: f64,
}

impl Tolerances {
    pub const DEFAULT_EPSILON: f64 = 1e-12;
    pub const DEFAULT_RANK_RTOL: f64 = 1e-10;
    pub const DEFAULT_SINGULAR: f64 = 1e-9;
    pub const DEFAULT_NEAR_SINGULAR: f64 = 1e-6;

    pub const fn new() -> Self {
        Tolerances {
            epsilon: Self::DEFAULT_EPSILON,
            rank_rtol: Self::DEFAULT_RANK_RTOL,
            singular: Self::DEFAULT_SINGULAR,
            near_singular: Self::DEFAULT_NEAR_SINGULAR,
        }
    }

    pub const fn with_epsilon(mut self, epsilon: f64) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub const fn with_singular_threshold(mut self, singular: f64) -> Self {
        self.singular = singular;
        self
    }

    /// Scale-aware zero test: `|value| <= epsilon * scale`, with the scale
    /// floored at 1 so that quantities built near the origin still have a
    /// meaningful cutoff.
    #[inline]
    pub fn is_zero(&self, value: f64, scale: f64) -> bool {
        value.abs() <= self.epsilon * scale.max(1.0)
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_thresholds_are_ordered() {
        let tol = Tolerances::default();
        assert!(tol.epsilon < tol.singular);
        assert!(tol.singular < tol.near_singular);
    }

    #[test]
    fn zero_test_floors_scale_at_one() {
        let tol = Tolerances::default();
        assert!(tol.is_zero(5e-13, 1e-30));
        assert!(!tol.is_zero(5e-12, 0.1));
        assert!(tol.is_zero(5e-10, 1e3));
    }
}
