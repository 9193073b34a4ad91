//! Verification of infinite-order lattice symmetries.
//!
//! A certificate that root enumeration never halts consists of an
//! integer matrix `S` preserving the form (`SᵀMS = M`) and mapping
//! some already-found roots to much later roots: iterating `S` then
//! drags the chamber walls out to infinity.  `S` must have infinite
//! order, which for an integer matrix holds exactly when its
//! characteristic polynomial keeps a non-cyclotomic irreducible
//! factor: all eigenvalues of a finite-order matrix are roots of
//! unity, and an integer polynomial all of whose roots are roots of
//! unity is a product of cyclotomics.  The check strips every
//! cyclotomic Φ_m with φ(m) ≤ deg from the characteristic polynomial
//! and succeeds if a nontrivial factor remains; any cyclotomic factor
//! of a degree-d polynomial has φ(m) ≤ d, so the stripping is
//! complete.

use super::VinbergError;
use crate::exact::{ExactMatrix, ExactVector};
use crate::qspace::QuadraticSpace;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Integer polynomials, ascending coefficients, no trailing zeros.
type Poly = Vec<BigInt>;

fn poly_trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().map(Zero::is_zero).unwrap_or(false) {
        p.pop();
    }
    p
}

/// Division by a monic divisor; returns (quotient, remainder).
fn poly_divrem_monic(a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(b.last().map(One::is_one).unwrap_or(false), "divisor must be monic");
    let mut remainder = a.clone();
    let db = b.len() - 1;
    if remainder.len() <= db {
        return (vec![BigInt::zero()], poly_trim(remainder));
    }
    let mut quotient = vec![BigInt::zero(); remainder.len() - db];
    for top in (db..remainder.len()).rev() {
        let coefficient = remainder[top].clone();
        if coefficient.is_zero() {
            continue;
        }
        quotient[top - db] = coefficient.clone();
        for (offset, b_coefficient) in b.iter().enumerate() {
            let index = top - db + offset;
            let delta = &coefficient * b_coefficient;
            remainder[index] -= delta;
        }
    }
    (poly_trim(quotient), poly_trim(remainder))
}

fn poly_is_zero(p: &Poly) -> bool {
    p.iter().all(Zero::is_zero)
}

/// The m-th cyclotomic polynomial via xᵐ−1 = Π_{d|m} Φ_d.
fn cyclotomic(m: u64) -> Poly {
    let mut numerator: Poly = vec![BigInt::zero(); m as usize + 1];
    numerator[0] = -BigInt::one();
    numerator[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let (q, r) = poly_divrem_monic(&numerator, &cyclotomic(d));
            debug_assert!(poly_is_zero(&r));
            numerator = q;
        }
    }
    numerator
}

fn euler_phi(m: u64) -> u64 {
    let mut result = m;
    let mut rest = m;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            result = result / p * (p - 1);
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        result = result / rest * (rest - 1);
    }
    result
}

/// Characteristic polynomial of an integer matrix, monic, ascending
/// coefficients, computed by the trace recursion (Faddeev–LeVerrier).
fn characteristic_polynomial(s: &[Vec<BigInt>]) -> Poly {
    let n = s.len();
    let rational = |x: &BigInt| BigRational::from(x.clone());
    let mut work: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    let mut coefficients = vec![BigRational::zero(); n + 1];
    coefficients[n] = BigRational::one();
    // work starts as the zero matrix; each round sets
    // work ← S·(work + c_{n−k+1}·I) and c_{n−k} = −tr(work)/k.
    for k in 1..=n {
        let shift = coefficients[n - k + 1].clone();
        let mut shifted = work.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] += &shift;
        }
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut total = BigRational::zero();
                for (t, shifted_row) in shifted.iter().enumerate() {
                    if !s[i][t].is_zero() {
                        total += rational(&s[i][t]) * &shifted_row[j];
                    }
                }
                next[i][j] = total;
            }
        }
        work = next;
        let mut trace = BigRational::zero();
        for (i, row) in work.iter().enumerate() {
            trace += &row[i];
        }
        coefficients[n - k] = -trace / BigRational::from(BigInt::from(k as i64));
    }
    coefficients
        .into_iter()
        .map(|c| {
            debug_assert!(c.is_integer(), "characteristic coefficients are integers");
            c.to_integer()
        })
        .collect()
}

/// Whether the polynomial keeps a factor after all cyclotomic factors
/// are divided out.
fn has_non_cyclotomic_factor(p: &Poly) -> bool {
    let mut remaining = poly_trim(p.clone());
    let degree = remaining.len() - 1;
    // Any cyclotomic factor Φ_m of a degree-d polynomial has
    // φ(m) ≤ d, and φ(m) ≥ √(m/2) bounds the search range.
    let bound = 2 * (degree as u64) * (degree as u64) + 1;
    for m in 1..=bound {
        if euler_phi(m) > degree as u64 {
            continue;
        }
        let phi_m = cyclotomic(m);
        loop {
            if remaining.len() < phi_m.len() {
                break;
            }
            let (q, r) = poly_divrem_monic(&remaining, &phi_m);
            if poly_is_zero(&r) {
                remaining = q;
            } else {
                break;
            }
        }
    }
    remaining.len() > 1
}

fn to_integer_matrix(matrix: &ExactMatrix) -> Result<Vec<Vec<BigInt>>, VinbergError> {
    let mut rows = Vec::with_capacity(matrix.rows());
    for i in 0..matrix.rows() {
        let mut row = Vec::with_capacity(matrix.cols());
        for j in 0..matrix.cols() {
            let entry = matrix.get(i, j);
            let value = entry
                .as_rational()
                .filter(|q| q.is_integer())
                .ok_or_else(|| VinbergError::NotIntegral {
                    value: entry.to_string(),
                })?;
            row.push(value.to_integer());
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Verifies an infinite-order symmetry certificate.
///
/// Returns true iff `s` preserves the form (`SᵀMS = M`), maps each
/// source root to the corresponding destination root, and has a
/// non-cyclotomic factor in its characteristic polynomial (hence
/// infinite order).  Roots are mapped as column vectors: `S·src =
/// dst`.
pub fn verify_infinite_symmetry(
    space: &QuadraticSpace,
    s: &ExactMatrix,
    source_roots: &[ExactVector],
    destination_roots: &[ExactVector],
) -> Result<bool, VinbergError> {
    let d = space.dim();
    if s.rows() != d || s.cols() != d {
        return Err(VinbergError::DimensionMismatch {
            expected: d,
            found: s.rows().max(s.cols()),
        });
    }
    if source_roots.len() != destination_roots.len() {
        return Err(VinbergError::DimensionMismatch {
            expected: source_roots.len(),
            found: destination_roots.len(),
        });
    }
    for root in source_roots.iter().chain(destination_roots) {
        if root.len() != d {
            return Err(VinbergError::DimensionMismatch {
                expected: d,
                found: root.len(),
            });
        }
    }
    let integer_s = to_integer_matrix(s)?;
    // (i) S preserves the form.
    let m = space.matrix();
    let sms = &(&s.transpose() * m) * s;
    if sms != *m {
        return Ok(false);
    }
    // (ii) S maps sources to destinations.
    for (source, destination) in source_roots.iter().zip(destination_roots) {
        if &s.mul_vec(source) != destination {
            return Ok(false);
        }
    }
    // (iii) S has infinite order.
    Ok(has_non_cyclotomic_factor(&characteristic_polynomial(
        &integer_s,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(values: &[i64]) -> Poly {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    #[test]
    fn small_cyclotomics_match_tables() {
        assert_eq!(cyclotomic(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic(2), ints(&[1, 1]));
        assert_eq!(cyclotomic(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn characteristic_polynomial_of_companion_matrix() {
        // Companion of x² − x − 1 (the golden-mean matrix).
        let s = vec![
            vec![BigInt::from(0), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(1)],
        ];
        assert_eq!(characteristic_polynomial(&s), ints(&[-1, -1, 1]));
    }

    #[test]
    fn identity_is_fully_cyclotomic() {
        let p = ints(&[-1, 3, -3, 1]); // (x−1)³
        assert!(!has_non_cyclotomic_factor(&p));
    }

    #[test]
    fn golden_mean_polynomial_is_not_cyclotomic() {
        assert!(has_non_cyclotomic_factor(&ints(&[-1, -1, 1])));
    }

    #[test]
    fn mixed_product_keeps_salem_like_factor() {
        // (x+1)·(x² − 3x + 1) = x³ − 2x² − 2x + 1: the quadratic factor
        // has roots (3±√5)/2, not on the unit circle.
        let p = ints(&[1, -2, -2, 1]);
        assert!(has_non_cyclotomic_factor(&p));
    }
}
