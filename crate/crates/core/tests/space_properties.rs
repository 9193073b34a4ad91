//! Geometric laws of Lorentzian quadratic spaces checked on randomly
//! generated diagonal forms and integer vectors.
//!
//! Reflections must be involutive isometries, their matrices must act
//! the way the direct formula does, and crystallographic roots must
//! produce integer reflection matrices — the facts every downstream
//! module leans on.

use proptest::prelude::*;
use reflekt_core::exact::{ExactScalar, ExactVector};
use reflekt_core::qspace::QuadraticSpace;

/// A Lorentzian diagonal form `diag(−d₀, d₁, …, dₙ)` of dimension 3–4.
fn lorentzian_diagonal() -> impl Strategy<Value = QuadraticSpace> {
    proptest::collection::vec(1i64..=5, 3..=4).prop_map(|mut entries| {
        entries[0] = -entries[0];
        QuadraticSpace::diagonal(&entries).expect("one negative diagonal entry is Lorentzian")
    })
}

/// A space together with a space-like integer vector (a mirror normal).
fn space_with_mirror() -> impl Strategy<Value = (QuadraticSpace, ExactVector)> {
    lorentzian_diagonal().prop_flat_map(|space| {
        let dim = space.dim();
        (
            Just(space),
            proptest::collection::vec(-4i64..=4, dim..=dim),
        )
            .prop_map(|(space, coords)| (space, ExactVector::from_i64(&coords)))
            .prop_filter("mirror normals must be space-like", |(space, e)| {
                space.norm(e).is_positive()
            })
    })
}

/// An extra integer vector of the same dimension.
fn with_vector(
    inner: impl Strategy<Value = (QuadraticSpace, ExactVector)>,
) -> impl Strategy<Value = (QuadraticSpace, ExactVector, ExactVector)> {
    inner.prop_flat_map(|(space, e)| {
        let dim = space.dim();
        (
            Just(space),
            Just(e),
            proptest::collection::vec(-4i64..=4, dim..=dim),
        )
            .prop_map(|(space, e, coords)| (space, e, ExactVector::from_i64(&coords)))
    })
}

proptest! {
    #[test]
    fn reflecting_twice_restores_the_vector((space, e, x) in with_vector(space_with_mirror())) {
        let image = space.reflect(&e, &space.reflect(&e, &x));
        prop_assert_eq!(image, x);
    }

    #[test]
    fn reflection_preserves_the_bilinear_form(
        (space, e, x) in with_vector(space_with_mirror()),
        extra in proptest::collection::vec(-4i64..=4, 4),
    ) {
        let y = ExactVector::from_i64(&extra[..space.dim()]);
        let rx = space.reflect(&e, &x);
        let ry = space.reflect(&e, &y);
        prop_assert_eq!(space.inner(&rx, &ry), space.inner(&x, &y));
    }

    #[test]
    fn reflection_fixes_the_mirror_normal_up_to_sign((space, e) in space_with_mirror()) {
        let image = space.reflect(&e, &e);
        prop_assert_eq!(image, e.scaled(&ExactScalar::integer(-1)));
    }

    #[test]
    fn the_reflection_matrix_agrees_with_the_direct_formula(
        (space, e, x) in with_vector(space_with_mirror()),
    ) {
        let matrix = space.reflection_matrix(&e);
        prop_assert_eq!(matrix.mul_vec(&x), space.reflect(&e, &x));
    }

    #[test]
    fn crystallographic_roots_have_integer_reflection_matrices(
        (space, e) in space_with_mirror(),
        axis in 1usize..=3,
    ) {
        // Standard basis vectors on positive diagonal entries are
        // always crystallographic, so the property is never vacuous;
        // the random mirror joins in whenever it happens to qualify.
        let mut coords = vec![0i64; space.dim()];
        coords[axis.min(space.dim() - 1)] = 1;
        let basis_root = ExactVector::from_i64(&coords);
        prop_assert!(space.is_crystallographic_root(&basis_root));
        let mut candidates = vec![basis_root];
        if space.is_crystallographic_root(&e) {
            candidates.push(e);
        }
        for root in candidates {
            let matrix = space.reflection_matrix(&root);
            for i in 0..space.dim() {
                for j in 0..space.dim() {
                    prop_assert!(
                        matrix.get(i, j).is_integer(),
                        "entry ({i}, {j}) = {} of the reflection in {:?} is fractional",
                        matrix.get(i, j),
                        root.as_i64()
                    );
                }
            }
        }
    }

    #[test]
    fn the_inner_product_is_symmetric_and_bilinear(
        (space, u, v) in with_vector(space_with_mirror()),
        scale in -5i64..=5,
    ) {
        prop_assert_eq!(space.inner(&u, &v), space.inner(&v, &u));
        let scaled = v.scaled(&ExactScalar::integer(scale));
        prop_assert_eq!(
            space.inner(&u, &scaled),
            &space.inner(&u, &v) * &ExactScalar::integer(scale)
        );
    }
}
