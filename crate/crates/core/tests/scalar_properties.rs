//! Algebraic laws of exact radical arithmetic on randomly generated
//! scalars.
//!
//! Scalars are drawn with small rational coefficients and square-free
//! radicands from a fixed palette, so products stay inside the closure
//! the crate supports while still exercising multi-term normalisation.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use reflekt_core::exact::ExactScalar;

/// Square-free radicands that stay square-free under pairwise products
/// of their prime supports ({2, 3, 5, 7} and a composite).
const RADICANDS: [u64; 7] = [1, 2, 3, 5, 6, 7, 14];

fn rational(num: i64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// One term `q·√s` with a bounded rational coefficient.
fn term() -> impl Strategy<Value = ExactScalar> {
    (-12i64..=12, 1u64..=6, 0usize..RADICANDS.len())
        .prop_map(|(num, den, idx)| ExactScalar::radical(rational(num, den), RADICANDS[idx]))
}

/// A scalar with up to three terms, biased towards genuinely mixed
/// radical expressions.
fn scalar() -> impl Strategy<Value = ExactScalar> {
    proptest::collection::vec(term(), 1..=3)
        .prop_map(|terms| terms.iter().fold(ExactScalar::zero(), |acc, t| &acc + t))
}

proptest! {
    #[test]
    fn addition_is_commutative(a in scalar(), b in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_is_commutative(a in scalar(), b in scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn multiplication_is_associative(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes_over_addition(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn subtraction_undoes_addition(a in scalar(), b in scalar()) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn printing_round_trips_through_the_parser(a in scalar()) {
        let text = a.to_string();
        let parsed: ExactScalar = text.parse().unwrap_or_else(|_| {
            panic!("printed scalar {text} must parse back");
        });
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn a_square_is_never_negative(a in scalar()) {
        let square = &a * &a;
        prop_assert!(
            !square.is_negative(),
            "square {} of {} compares below zero",
            square,
            a
        );
    }

    #[test]
    fn single_term_squares_are_rational(a in term()) {
        let square = &a * &a;
        prop_assert!(
            square.as_rational().is_some(),
            "(q·sqrt(s))² = q²·s must be rational, got {}",
            square
        );
    }

    #[test]
    fn reciprocal_multiplies_back_to_one(a in term()) {
        prop_assume!(!a.is_zero());
        let inverse = a.inv().expect("a nonzero single term is invertible");
        prop_assert_eq!(&a * &inverse, ExactScalar::one());
    }

    #[test]
    fn sign_tests_partition_every_scalar(a in scalar()) {
        let classifications =
            usize::from(a.is_zero()) + usize::from(a.is_positive()) + usize::from(a.is_negative());
        prop_assert_eq!(classifications, 1, "scalar {} has an ambiguous sign", a);
    }

    #[test]
    fn float_image_respects_the_exact_sign(a in scalar()) {
        let image = a.to_f64();
        if a.is_positive() {
            prop_assert!(image > -1e-9, "positive {} maps to {}", a, image);
        }
        if a.is_negative() {
            prop_assert!(image < 1e-9, "negative {} maps to {}", a, image);
        }
    }
}
