//! Hand-transcribed reference data for the worked examples.
//!
//! Three configurations recur throughout the test suite and the
//! command-line fixture runner:
//!
//! * a right-angled **prism chamber** in hyperbolic 3-space whose
//!   sixth wall is isolated and seeds a circle packing — the quadratic
//!   form couples a hyperbolic-plane pairing block with a Euclidean
//!   3-space, so all six unit wall normals have exact radical
//!   coordinates;
//! * the rank-5 Lorentzian **lattice of the packing group**, given by
//!   an integral form together with the first 31 roots its wall
//!   enumeration accepts and an infinite-order integral symmetry that
//!   permutes mirrors, which certifies that the enumeration never
//!   closes up;
//! * a rank-3 Lorentzian **lattice without roots**, whose reflection
//!   group is trivial for lack of any crystallographic root.
//!
//! Every function returns exact data transcribed by hand.  The tests
//! at the bottom recompute each derived quantity (norms, angles,
//! reflected spheres, Gram matrices, symmetry action) from the primary
//! entries, so a transcription slip fails loudly rather than silently
//! skewing downstream results.

use crate::exact::{ExactMatrix, ExactScalar, ExactVector};
use crate::qspace::{Polyhedron, QuadraticSpace};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Shorthand for the rational scalar `numer/denom`.
fn rat(numer: i64, denom: i64) -> ExactScalar {
    ExactScalar::rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
}

/// Shorthand for the radical scalar `(numer/denom)·√radicand`.
fn rad(numer: i64, denom: i64, radicand: u64) -> ExactScalar {
    ExactScalar::radical(BigRational::new(BigInt::from(numer), BigInt::from(denom)), radicand)
}

/// The prism form: a hyperbolic pairing block `[[0, −1/2], [−1/2, 0]]`
/// orthogonally summed with the Euclidean form on 3-space.
///
/// Under this form all six wall normals of [`prism_normals`] are unit
/// vectors, and the first two coordinates of a root double as the bend
/// and co-bend of its sphere.
pub fn prism_space() -> QuadraticSpace {
    let rows = vec![
        vec![rat(0, 1), rat(-1, 2), rat(0, 1), rat(0, 1), rat(0, 1)],
        vec![rat(-1, 2), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)],
        vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1)],
        vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)],
    ];
    QuadraticSpace::new(ExactMatrix::from_rows(rows))
        .expect("the prism form is Lorentzian of signature (4,1)")
}

/// The six outward unit wall normals of the prism chamber, in index
/// order (walls 1–6 in 1-based naming).
///
/// Wall 6 is the isolated wall: it touches walls 1–4 orthogonally or
/// not at all and diverges from wall 5, so reflecting it through the
/// others generates a circle packing.
pub fn prism_normals() -> Vec<ExactVector> {
    vec![
        ExactVector(vec![rad(-1, 8, 2), rad(1, 1, 2), rat(0, 1), rat(1, 2), rad(1, 2, 2)]),
        ExactVector::from_i64(&[0, 0, 0, 0, -1]),
        ExactVector::from_i64(&[0, 0, 0, -1, 0]),
        ExactVector(vec![rat(1, 1), rat(0, 1), rat(1, 2), rad(1, 2, 2), rat(1, 2)]),
        ExactVector::from_i64(&[0, 0, -1, 0, 0]),
        ExactVector(vec![rad(1, 28, 14), rad(2, 7, 14), rad(2, 7, 14), rat(0, 1), rat(0, 1)]),
    ]
}

/// The prism chamber as a validated Coxeter polyhedron.
pub fn prism_polyhedron() -> Polyhedron {
    Polyhedron::new(prism_space(), prism_normals())
        .expect("the prism walls bound an acute-angled chamber")
}

/// Basis of packing spheres: wall 6 and four reflected copies, reached
/// by the words `[]`, `[5]`, `[5,4]`, `[5,4,2]` and `[5,4,3]` in
/// 1-based wall names.
pub fn prism_sphere_basis() -> Vec<ExactVector> {
    vec![
        ExactVector(vec![rad(1, 28, 14), rad(2, 7, 14), rad(2, 7, 14), rat(0, 1), rat(0, 1)]),
        ExactVector(vec![rad(1, 28, 14), rad(2, 7, 14), rad(-2, 7, 14), rat(0, 1), rat(0, 1)]),
        ExactVector(vec![rad(17, 28, 14), rad(2, 7, 14), rat(0, 1), rad(4, 7, 7), rad(2, 7, 14)]),
        ExactVector(vec![rad(17, 28, 14), rad(2, 7, 14), rat(0, 1), rad(4, 7, 7), rad(-2, 7, 14)]),
        ExactVector(vec![rad(17, 28, 14), rad(2, 7, 14), rat(0, 1), rad(-4, 7, 7), rad(2, 7, 14)]),
    ]
}

/// Gram matrix of the sphere basis under the prism form: `−1/7` times
/// an integer matrix.
pub fn prism_basis_gram() -> ExactMatrix {
    let scaled: [[i64; 5]; 5] = [
        [-7, 9, 9, 9, 9],
        [9, -7, 9, 9, 9],
        [9, 9, -7, 9, 25],
        [9, 9, 9, -7, 41],
        [9, 9, 25, 41, -7],
    ];
    ExactMatrix::from_fn(5, 5, |i, j| rat(-scaled[i][j], 7))
}

/// The five wall reflections of the prism written in sphere-basis
/// coordinates (walls 1–5 in index order).
///
/// With the basis spheres as rows of `V` and `M` the matrix of a
/// reflection acting on column vectors, these are `V·Mᵀ·V⁻¹`; they act
/// on the left on columns of per-sphere data such as bends.
pub fn prism_conjugated_generators() -> Vec<ExactMatrix> {
    vec![
        ExactMatrix::from_rows(vec![
            vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(9, 4), rat(9, 4), rat(3, 2), rat(-1, 4), rat(-3, 4)],
            vec![rat(9, 4), rat(9, 4), rat(3, 2), rat(-5, 4), rat(1, 4)],
        ]),
        ExactMatrix::from_i64_rows(&[
            vec![1, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0],
            vec![0, 0, 1, 0, 0],
            vec![0, 0, -1, 1, 1],
        ]),
        ExactMatrix::from_i64_rows(&[
            vec![1, 0, 0, 0, 0],
            vec![0, 1, 0, 0, 0],
            vec![0, 0, 0, 0, 1],
            vec![0, 0, -1, 1, 1],
            vec![0, 0, 1, 0, 0],
        ]),
        ExactMatrix::from_i64_rows(&[
            vec![1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0],
            vec![0, 1, 0, 0, 0],
            vec![0, 0, 0, 1, 0],
            vec![0, -1, 1, 0, 1],
        ]),
        ExactMatrix::from_i64_rows(&[
            vec![0, 1, 0, 0, 0],
            vec![1, 0, 0, 0, 0],
            vec![0, 0, 1, 0, 0],
            vec![0, 0, 0, 1, 0],
            vec![0, 0, 0, 0, 1],
        ]),
    ]
}

/// The rank-5 integral Lorentzian form attached to the prism packing:
/// the dual of the sphere-basis Gram, cleared to integers.
pub fn omega_space() -> QuadraticSpace {
    QuadraticSpace::new(ExactMatrix::from_i64_rows(&[
        vec![25, 9, 0, -9, -9],
        vec![9, 25, 0, -9, -9],
        vec![0, 0, 12, -8, -4],
        vec![-9, -9, -8, 9, 1],
        vec![-9, -9, -4, 1, 5],
    ]))
    .expect("the rank-5 form is Lorentzian of signature (4,1)")
}

/// The first 31 roots accepted for the rank-5 form, in enumeration
/// order.
pub fn omega_roots() -> Vec<ExactVector> {
    let rows: [[i64; 5]; 31] = [
        [1, -1, 0, 0, 0],
        [0, 1, 2, 1, 0],
        [0, 1, 0, 1, 0],
        [-1, 0, -1, -2, 1],
        [0, 1, 2, 3, 0],
        [2, 4, 9, 15, -1],
        [1, 2, 8, 11, 0],
        [1, 3, 6, 12, 0],
        [5, 6, 20, 29, -2],
        [8, 8, 21, 35, -3],
        [7, 10, 23, 36, -3],
        [4, 4, 15, 25, -1],
        [6, 7, 16, 31, -2],
        [3, 3, 7, 13, -1],
        [5, 6, 13, 28, -1],
        [5, 6, 18, 29, -2],
        [8, 8, 23, 35, -3],
        [2, 3, 11, 20, 1],
        [4, 4, 17, 25, -1],
        [1, 1, 2, 5, 0],
        [3, 6, 19, 26, -1],
        [3, 6, 15, 26, -1],
        [4, 4, 9, 23, 1],
        [3, 3, 14, 22, 0],
        [3, 3, 11, 17, -1],
        [3, 4, 12, 23, 0],
        [2, 5, 8, 21, 2],
        [3, 3, 7, 12, -1],
        [11, 12, 34, 59, -4],
        [10, 11, 32, 49, -4],
        [8, 11, 35, 54, -3],
    ];
    rows.iter().map(|row| ExactVector::from_i64(row)).collect()
}

/// An infinite-order integral symmetry of the rank-5 form.
///
/// As a column action `x ↦ S·x` it preserves the form (`Sᵀ·A·S = A`)
/// and sends the image root of every pair in
/// [`omega_symmetry_pairs`] back to its source; its characteristic
/// polynomial has a non-cyclotomic factor, so no power of it is the
/// identity and the root enumeration can never terminate.
pub fn omega_symmetry() -> ExactMatrix {
    ExactMatrix::from_i64_rows(&[
        vec![54, 41, -3, -10, 79],
        vec![64, 48, -3, -12, 96],
        vec![159, 122, -8, -30, 238],
        vec![276, 210, -15, -51, 413],
        vec![-21, -16, 1, 4, -31],
    ])
}

/// Root correspondence induced by the symmetry, as 0-based
/// `(source, image)` index pairs into [`omega_roots`]: the mirror of
/// the source root maps to the mirror of the image root.
pub fn omega_symmetry_pairs() -> Vec<(usize, usize)> {
    vec![(12, 11), (2, 18), (13, 24), (0, 30), (5, 6)]
}

/// A rank-3 Lorentzian lattice with no crystallographic roots at all.
pub fn lattice_without_roots() -> QuadraticSpace {
    QuadraticSpace::new(ExactMatrix::from_i64_rows(&[
        vec![0, 0, 49],
        vec![0, 49, 7],
        vec![49, 7, 3],
    ]))
    .expect("the rootless form is Lorentzian of signature (2,1)")
}
