//! Invariants of sphere-packing orbits in inversive coordinates,
//! exercised on the triangular-prism reflection group.
//!
//! The orbit of the distinguished wall must consist of unit spheres
//! whose coordinates satisfy the bend–cobend relation, pairwise
//! disjoint or tangent, and the whole computation must be a function
//! of the mirror *set*, not of enumeration order, mirror scaling, or
//! thread scheduling.

use proptest::prelude::*;
use reflekt_core::exact::{ExactScalar, ExactVector};
use reflekt_core::fixtures::{prism_normals, prism_space};
use reflekt_core::packing::{
    audit_packing, inversive_frame, inversive_product, orbit, reflect_closure, InversiveFrame,
};

fn prism_frame() -> InversiveFrame {
    inversive_frame(&prism_space()).expect("the prism form admits an inversive frame")
}

/// The distinguished isolated wall and the five mirrors.
fn prism_partition() -> (Vec<ExactVector>, Vec<ExactVector>) {
    let walls = prism_normals();
    (vec![walls[5].clone()], walls[..5].to_vec())
}

/// A permutation of the five mirror indices.
fn mirror_order() -> impl Strategy<Value = Vec<usize>> {
    Just((0..5).collect::<Vec<usize>>()).prop_shuffle()
}

/// Sorted root coordinates, the order-free fingerprint of an orbit.
fn root_set(records: &[reflekt_core::packing::OrbitRecord]) -> Vec<ExactVector> {
    let mut roots: Vec<ExactVector> = records.iter().map(|r| r.root.clone()).collect();
    roots.sort();
    roots
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn orbit_spheres_satisfy_the_inversive_identities(depth in 0usize..=3) {
        let frame = prism_frame();
        let (cluster, cocluster) = prism_partition();
        let records = orbit(&frame, &cluster, &cocluster, depth).expect("prism orbit");
        prop_assert!(!records.is_empty());
        for record in &records {
            prop_assert_eq!(
                inversive_product(&record.sphere, &record.sphere),
                ExactScalar::one(),
                "every orbit sphere is a unit sphere"
            );
            let coords = record.sphere.coords();
            let mut squares = ExactScalar::zero();
            for x in coords.iter().skip(2) {
                squares += &(x * x);
            }
            prop_assert_eq!(
                &coords[0] * &coords[1],
                &squares - &ExactScalar::one(),
                "bend·cobend must equal Σxᵢ² − 1"
            );
            prop_assert!(record.depth <= depth);
            prop_assert_eq!(record.word.len(), record.depth);
        }
    }

    #[test]
    fn orbit_spheres_never_overlap(depth in 0usize..=3) {
        let frame = prism_frame();
        let (cluster, cocluster) = prism_partition();
        let records = orbit(&frame, &cluster, &cocluster, depth).expect("prism orbit");
        audit_packing(&records).expect("pairwise inversive products stay at or below −1");
        for a in &records {
            for b in &records {
                if a.root == b.root {
                    continue;
                }
                let product = inversive_product(&a.sphere, &b.sphere);
                prop_assert!(
                    !(&product + &ExactScalar::one()).is_positive(),
                    "spheres {:?} and {:?} have product {}",
                    a.word,
                    b.word,
                    product
                );
            }
        }
    }

    #[test]
    fn the_orbit_is_a_function_of_the_mirror_set(order in mirror_order(), depth in 0usize..=3) {
        let frame = prism_frame();
        let (cluster, cocluster) = prism_partition();
        let shuffled: Vec<ExactVector> = order.iter().map(|&i| cocluster[i].clone()).collect();
        let reference = orbit(&frame, &cluster, &cocluster, depth).expect("reference orbit");
        let permuted = orbit(&frame, &cluster, &shuffled, depth).expect("permuted orbit");
        prop_assert_eq!(root_set(&reference), root_set(&permuted));
    }

    #[test]
    fn rescaling_mirrors_never_changes_the_orbit(scales in proptest::collection::vec(1i64..=9, 5)) {
        let frame = prism_frame();
        let (cluster, cocluster) = prism_partition();
        let rescaled: Vec<ExactVector> = cocluster
            .iter()
            .zip(&scales)
            .map(|(root, &s)| root.scaled(&ExactScalar::integer(s)))
            .collect();
        let reference = orbit(&frame, &cluster, &cocluster, 3).expect("reference orbit");
        let stretched = orbit(&frame, &cluster, &rescaled, 3).expect("rescaled orbit");
        prop_assert_eq!(
            root_set(&reference),
            root_set(&stretched),
            "reflections depend only on the mirror hyperplane"
        );
    }

    #[test]
    fn repeated_runs_reproduce_the_closure_byte_for_byte(depth in 0usize..=3) {
        let frame = prism_frame();
        let walls = prism_normals();
        let seeds = vec![walls[5].clone()];
        let first = reflect_closure(&frame, &seeds, &walls[..5], depth).expect("first run");
        let second = reflect_closure(&frame, &seeds, &walls[..5], depth).expect("second run");
        prop_assert_eq!(first.len(), second.len());
        for (a, b) in first.iter().zip(&second) {
            prop_assert_eq!(&a.root, &b.root);
            prop_assert_eq!(&a.word, &b.word);
            prop_assert_eq!(a.depth, b.depth);
            prop_assert_eq!(a.sphere.coords(), b.sphere.coords());
        }
    }

    #[test]
    fn the_inversive_product_is_symmetric(depth in 1usize..=3) {
        let frame = prism_frame();
        let (cluster, cocluster) = prism_partition();
        let records = orbit(&frame, &cluster, &cocluster, depth).expect("prism orbit");
        for a in &records {
            for b in &records {
                prop_assert_eq!(
                    inversive_product(&a.sphere, &b.sphere),
                    inversive_product(&b.sphere, &a.sphere)
                );
            }
        }
    }
}
