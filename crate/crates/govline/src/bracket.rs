//! The bracket ring over points of P^3: 4x4 determinant brackets, their
//! antisymmetry, and the Grassmann-Pluecker syzygy relating products of
//! brackets over eight points.

use crate::projective::HomogPoint;

/// A bracket value together with the four points it was evaluated on.
#[derive(Clone, Copy, Debug)]
pub struct Bracket {
    pub value: f64,
    pub args: [HomogPoint; 4],
}

impl Bracket {
    pub fn evaluate(args: [HomogPoint; 4]) -> Self {
        Bracket {
            value: bracket4(&args[0], &args[1], &args[2], &args[3]),
            args,
        }
    }
}

/// Determinant of the 4x4 matrix whose columns are the homogeneous
/// coordinates of the four points.
///
/// Cofactor expansion along the weight row: with `x_k` the spatial part and
/// `w_k` the weight of point `k`,
/// `det = -w1 [x2 x3 x4] + w2 [x1 x3 x4] - w3 [x1 x2 x4] + w4 [x1 x2 x3]`
/// where `[a b c]` is the scalar triple product. Points at infinity
/// (`w = 0`) drop their term, which keeps the mixed finite/infinite brackets
/// of the singularity conditions cheap and branch-free.
pub fn bracket4(p1: &HomogPoint, p2: &HomogPoint, p3: &HomogPoint, p4: &HomogPoint) -> f64 {
    let x1 = p1.coords.xyz();
    let x2 = p2.coords.xyz();
    let x3 = p3.coords.xyz();
    let x4 = p4.coords.xyz();
    let w1 = p1.coords.w;
    let w2 = p2.coords.w;
    let w3 = p3.coords.w;
    let w4 = p4.coords.w;
    -w1 * x2.dot(&x3.cross(&x4)) + w2 * x1.dot(&x3.cross(&x4)) - w3 * x1.dot(&x2.cross(&x4))
        + w4 * x1.dot(&x2.cross(&x3))
}

/// Residual of the Grassmann-Pluecker relation on eight points:
///
/// `[e1 e2 e3 e4][f1 f2 f3 f4]
///    - sum_j [f_j e2 e3 e4][f1 .. f_{j-1} e1 f_{j+1} .. f4]`
///
/// Identically zero in exact arithmetic for every input; the returned value
/// is pure rounding noise, bounded by a small multiple of the term
/// magnitudes.
pub fn syzygy_residual(e: &[HomogPoint; 4], f: &[HomogPoint; 4]) -> f64 {
    let lhs = bracket4(&e[0], &e[1], &e[2], &e[3]) * bracket4(&f[0], &f[1], &f[2], &f[3]);
    let mut rhs = 0.0;
    for j in 0..4 {
        let left = bracket4(&f[j], &e[1], &e[2], &e[3]);
        let mut swapped = *f;
        swapped[j] = e[0];
        let right = bracket4(&swapped[0], &swapped[1], &swapped[2], &swapped[3]);
        rhs += left * right;
    }
    lhs - rhs
}

/// Largest absolute bracket-product term in the syzygy of `e`, `f`; the
/// natural scale against which [`syzygy_residual`] should be compared.
pub fn syzygy_scale(e: &[HomogPoint; 4], f: &[HomogPoint; 4]) -> f64 {
    let mut scale = (bracket4(&e[0], &e[1], &e[2], &e[3]) * bracket4(&f[0], &f[1], &f[2], &f[3]))
        .abs();
    for j in 0..4 {
        let left = bracket4(&f[j], &e[1], &e[2], &e[3]);
        let mut swapped = *f;
        swapped[j] = e[0];
        let right = bracket4(&swapped[0], &swapped[1], &swapped[2], &swapped[3]);
        scale = scale.max((left * right).abs());
    }
    scale
}
