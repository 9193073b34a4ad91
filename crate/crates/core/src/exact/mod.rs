//! Exact arithmetic on finite sums of rational multiples of square
//! roots of positive integers.
//!
//! A scalar is stored as a map from square-free radicands to rational
//! coefficients, so `3/2 - 1/7·√2 + √15` is `{1: 3/2, 2: -1/7, 15: 1}`.
//! Square roots of distinct square-free integers are linearly
//! independent over the rationals, which makes this representation a
//! normal form: two scalars are numerically equal exactly when their
//! term maps coincide.  All ring operations stay inside the class.
//! Division is exact as well; the reciprocal of a multi-term scalar is
//! obtained by multiplying with its conjugates over the sign flips of
//! the square roots involved, which rationalises the denominator.
//!
//! Comparisons never fall back to floating point: the sign of a
//! multi-term scalar is decided by refining integer-square-root
//! enclosures of each radical until the enclosing interval of the sum
//! excludes zero, which must happen because a nonzero normal form is
//! numerically nonzero.

mod linalg;
mod parse;

pub use linalg::{rational_signature, ExactMatrix, ExactVector};
pub use parse::ExactParseError;

use num_bigint::BigInt;
use num_integer::gcd;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use thiserror::Error;

/// Errors produced by scalar arithmetic that cannot be represented in
/// the radical class.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    /// Division by the zero scalar.
    #[error("division by zero")]
    DivisionByZero,
    /// Square root of a negative quantity.
    #[error("square root of negative scalar {0}")]
    NegativeSqrt(String),
    /// Square root of a scalar that is not a nonnegative rational, so
    /// the result would leave the class of sums of square roots.
    #[error("square root of {0} leaves the radical class")]
    IrrationalSqrt(String),
    /// A radicand exceeded the supported integer range.
    #[error("radicand {0} exceeds the supported range")]
    RadicandTooLarge(String),
}

/// Splits `s` into `(sq, sf)` with `s = sq²·sf` and `sf` square-free.
fn split_square(mut s: u64) -> (u64, u64) {
    let mut square_root_part = 1u64;
    let mut square_free = 1u64;
    let mut p = 2u64;
    while p * p <= s {
        if s.is_multiple_of(p) {
            let mut exponent = 0u32;
            while s.is_multiple_of(p) {
                s /= p;
                exponent += 1;
            }
            for _ in 0..exponent / 2 {
                square_root_part *= p;
            }
            if exponent % 2 == 1 {
                square_free *= p;
            }
        }
        p += 1;
    }
    if s > 1 {
        square_free *= s;
    }
    (square_root_part, square_free)
}

/// Rewrites `r·√s` as `r'·√s'` with `s'` square-free, extracting the
/// square part of the radicand into the coefficient.
///
/// `normalize(r, 0)` and `normalize(0, s)` both yield `(0, 1)`.  The
/// result is a fixed point: normalising it again changes nothing.
pub fn normalize(r: &BigRational, s: u64) -> (BigRational, u64) {
    if r.is_zero() || s == 0 {
        return (BigRational::zero(), 1);
    }
    let (square_root_part, square_free) = split_square(s);
    let coefficient = r * BigRational::from(BigInt::from(square_root_part));
    (coefficient, square_free)
}

/// A finite sum `Σ rᵢ·√sᵢ` with rational coefficients and pairwise
/// distinct square-free radicands `sᵢ ≥ 1`.
///
/// The radicand `1` carries the rational part.  The map never stores a
/// zero coefficient, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    terms: BTreeMap<u64, BigRational>,
}

impl ExactScalar {
    /// The zero scalar.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The scalar one.
    pub fn one() -> Self {
        Self::integer(1)
    }

    /// An integer as a scalar.
    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from(BigInt::from(n)))
    }

    /// A rational as a scalar.
    pub fn rational(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(1, q);
        }
        Self { terms }
    }

    /// The scalar `r·√s`, normalised so the stored radicand is
    /// square-free.
    pub fn radical(r: BigRational, s: u64) -> Self {
        let (coefficient, radicand) = normalize(&r, s);
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(radicand, coefficient);
        }
        Self { terms }
    }

    /// Builds a scalar from raw `(radicand, coefficient)` pairs,
    /// normalising each radicand and merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (u64, BigRational)>>(pairs: I) -> Self {
        let mut result = Self::zero();
        for (s, r) in pairs {
            result += Self::radical(r, s);
        }
        result
    }

    /// Iterates over `(radicand, coefficient)` pairs in increasing
    /// radicand order; the rational part, if any, comes first.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(s, r)| (*s, r))
    }

    /// Number of stored terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Whether the scalar is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether the scalar is a rational number.
    pub fn is_rational(&self) -> bool {
        match self.terms.len() {
            0 => true,
            1 => self.terms.contains_key(&1),
            _ => false,
        }
    }

    /// Whether the scalar is a rational integer.
    pub fn is_integer(&self) -> bool {
        self.as_rational()
            .map(|q| q.denom().is_one())
            .unwrap_or(false)
    }

    /// The scalar as a rational, when it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// The scalar as an `i64`, when it is an integer in range.
    pub fn as_i64(&self) -> Option<i64> {
        let q = self.as_rational()?;
        if q.denom().is_one() {
            q.numer().to_i64()
        } else {
            None
        }
    }

    /// Coefficient of `√s` for square-free `s` (the rational part for
    /// `s = 1`).
    pub fn coefficient(&self, s: u64) -> BigRational {
        self.terms.get(&s).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The radicands with nonzero coefficient, in increasing order.
    pub fn radicands(&self) -> Vec<u64> {
        self.terms.keys().copied().collect()
    }

    /// Multiplies by a rational in place.
    pub fn scale(&mut self, q: &BigRational) {
        if q.is_zero() {
            self.terms.clear();
            return;
        }
        for r in self.terms.values_mut() {
            *r *= q;
        }
    }

    /// Returns `self · q` for rational `q`.
    pub fn scaled(&self, q: &BigRational) -> Self {
        let mut result = self.clone();
        result.scale(q);
        result
    }

    fn add_term(&mut self, s: u64, r: &BigRational) {
        if r.is_zero() {
            return;
        }
        match self.terms.get_mut(&s) {
            Some(existing) => {
                *existing += r;
                if existing.is_zero() {
                    self.terms.remove(&s);
                }
            }
            None => {
                self.terms.insert(s, r.clone());
            }
        }
    }

    /// Sign of the scalar: `-1`, `0` or `1`.
    ///
    /// Multi-term sums are decided by refining integer-square-root
    /// enclosures of each radical until the interval around the sum
    /// excludes zero.  Termination is guaranteed because a scalar with
    /// a nonempty term map is numerically nonzero.
    pub fn signum(&self) -> i32 {
        match self.terms.len() {
            0 => return 0,
            1 => {
                let (_, r) = self.terms.iter().next().unwrap();
                return if r.is_positive() { 1 } else { -1 };
            }
            _ => {}
        }
        let mut denom = BigInt::one();
        for r in self.terms.values() {
            denom = num_integer::lcm(denom, r.denom().clone());
        }
        let mut bits = 16u32;
        loop {
            // m ≤ √s·2^bits < m + 1 exactly, so each term is bracketed
            // by integer bounds after clearing the common denominator.
            let scale = BigInt::one() << bits;
            let scale_squared = &scale * &scale;
            let mut lower = BigInt::zero();
            let mut upper = BigInt::zero();
            for (s, r) in &self.terms {
                let m = (BigInt::from(*s) * &scale_squared).sqrt();
                let m1 = &m + 1;
                let weight = r.numer() * (&denom / r.denom());
                if weight.is_positive() {
                    lower += &weight * &m;
                    upper += &weight * &m1;
                } else {
                    lower += &weight * &m1;
                    upper += &weight * &m;
                }
            }
            if lower.is_positive() {
                return 1;
            }
            if upper.is_negative() {
                return -1;
            }
            bits *= 2;
            assert!(
                bits <= 1 << 16,
                "sign refinement failed to converge; term map violates its normal form"
            );
        }
    }

    /// Whether the scalar is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    /// Whether the scalar is strictly negative.
    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Exact reciprocal.
    ///
    /// For a multi-term scalar the reciprocal is computed by
    /// multiplying numerator and denominator with every conjugate
    /// obtained by flipping the signs of the square roots of the
    /// primes supporting the radicands; the full product of conjugates
    /// is rational.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::rational(q.recip()));
        }
        if self.terms.len() == 1 {
            let (s, r) = self.terms.iter().next().unwrap();
            // 1/(r·√s) = √s/(r·s).
            let coefficient = (r * BigRational::from(BigInt::from(*s))).recip();
            return Ok(Self::radical(coefficient, *s));
        }
        let primes = self.radical_primes();
        assert!(
            primes.len() <= 16,
            "reciprocal over {} radical primes is not supported",
            primes.len()
        );
        let mut conjugate_product = Self::one();
        for mask in 1u32..(1 << primes.len()) {
            conjugate_product = &conjugate_product * &self.conjugate(&primes, mask);
        }
        let norm = self * &conjugate_product;
        let norm = norm
            .as_rational()
            .expect("product over all sign-flip conjugates must be rational");
        if norm.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(conjugate_product.scaled(&norm.recip()))
    }

    /// The primes dividing any radicand of this scalar, sorted.
    ///
    /// Sign flips on these primes generate every real embedding of
    /// the multi-quadratic field the scalar lives in.
    pub fn radical_primes(&self) -> Vec<u64> {
        let mut primes: Vec<u64> = Vec::new();
        for s in self.terms.keys().filter(|s| **s > 1) {
            let mut rest = *s;
            let mut p = 2u64;
            while p * p <= rest {
                if rest % p == 0 {
                    if !primes.contains(&p) {
                        primes.push(p);
                    }
                    while rest % p == 0 {
                        rest /= p;
                    }
                }
                p += 1;
            }
            if rest > 1 && !primes.contains(&rest) {
                primes.push(rest);
            }
        }
        primes.sort_unstable();
        primes
    }

    /// The conjugate that flips `√p` for each prime `p` in `primes`
    /// selected by `mask`.
    ///
    /// Radicands divisible by an even number of flipped primes keep
    /// their sign, so the map is a field embedding on any
    /// multi-quadratic field containing the scalar.
    pub fn conjugate(&self, primes: &[u64], mask: u32) -> Self {
        let mut terms = BTreeMap::new();
        for (s, r) in &self.terms {
            let mut flips = 0u32;
            for (index, p) in primes.iter().enumerate() {
                if mask & (1 << index) != 0 && s % p == 0 {
                    flips += 1;
                }
            }
            let coefficient = if flips % 2 == 1 { -r.clone() } else { r.clone() };
            terms.insert(*s, coefficient);
        }
        Self { terms }
    }

    /// Exact square root, defined for nonnegative rationals only.
    ///
    /// `√(a/b) = √(a·b)/b` stays in the class; roots of irrational
    /// scalars would not and are rejected.
    pub fn sqrt(&self) -> Result<Self, ExactError> {
        let Some(q) = self.as_rational() else {
            return Err(ExactError::IrrationalSqrt(self.to_string()));
        };
        if q.is_zero() {
            return Ok(Self::zero());
        }
        if q.is_negative() {
            return Err(ExactError::NegativeSqrt(self.to_string()));
        }
        let product = q.numer() * q.denom();
        let radicand = product
            .to_u64()
            .ok_or_else(|| ExactError::RadicandTooLarge(product.to_string()))?;
        let coefficient = BigRational::new(BigInt::one(), q.denom().clone());
        Ok(Self::radical(coefficient, radicand))
    }

    /// Approximate value as a float, for rendering only.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(s, r)| r.to_f64().unwrap_or(f64::NAN) * (*s as f64).sqrt())
            .sum()
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, other: &ExactScalar) -> ExactScalar {
        let mut result = self.clone();
        for (s, r) in &other.terms {
            result.add_term(*s, r);
        }
        result
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, other: &ExactScalar) -> ExactScalar {
        let mut result = self.clone();
        for (s, r) in &other.terms {
            result.add_term(*s, &-r.clone());
        }
        result
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, other: &ExactScalar) -> ExactScalar {
        let mut result = ExactScalar::zero();
        for (s1, r1) in &self.terms {
            for (s2, r2) in &other.terms {
                let g = gcd(*s1, *s2);
                let radicand = (s1 / g)
                    .checked_mul(s2 / g)
                    .expect("radicand product exceeds the supported range");
                let coefficient = r1 * r2 * BigRational::from(BigInt::from(g));
                result.add_term(radicand, &coefficient);
            }
        }
        result
    }
}

impl Div for &ExactScalar {
    type Output = ExactScalar;
    // Division is multiplication by the exact reciprocal.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, other: &ExactScalar) -> ExactScalar {
        let reciprocal = other.inv().expect("division by zero ExactScalar");
        self * &reciprocal
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(mut self) -> ExactScalar {
        for r in self.terms.values_mut() {
            *r = -r.clone();
        }
        self
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, other: ExactScalar) -> ExactScalar {
                (&self).$method(&other)
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, other: &ExactScalar) -> ExactScalar {
                (&self).$method(other)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, other: &ExactScalar) {
        for (s, r) in &other.terms {
            self.add_term(*s, r);
        }
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, other: ExactScalar) {
        *self += &other;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, other: &ExactScalar) {
        for (s, r) in &other.terms {
            self.add_term(*s, &-r.clone());
        }
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, other: &ExactScalar) {
        *self = &*self * other;
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        match (self - other).signum() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => unreachable!("distinct normal forms compare equal"),
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (s, r) in &self.terms {
            let negative = r.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let magnitude = r.abs();
            if *s == 1 {
                write!(f, "{}", magnitude)?;
            } else if magnitude.is_one() {
                write!(f, "sqrt({})", s)?;
            } else {
                write!(f, "{}*sqrt({})", magnitude, s)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({})", self)
    }
}

impl FromStr for ExactScalar {
    type Err = ExactParseError;
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse::parse_scalar(text)
    }
}

impl serde::Serialize for ExactScalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for ExactScalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn normalize_extracts_square_parts() {
        let (r, s) = normalize(&q(1, 1), 8);
        assert_eq!(r, q(2, 1));
        assert_eq!(s, 2);
        let (r, s) = normalize(&q(3, 7), 360);
        assert_eq!(r, q(18, 7));
        assert_eq!(s, 10);
        let (r, s) = normalize(&q(1, 1), 49);
        assert_eq!(r, q(7, 1));
        assert_eq!(s, 1);
    }

    #[test]
    fn normalize_of_zero_radicand_is_zero() {
        let (r, s) = normalize(&q(5, 2), 0);
        assert!(r.is_zero());
        assert_eq!(s, 1);
    }

    #[test]
    fn multiplication_reduces_radicands_via_gcd() {
        // √6 · √10 = 2·√15.
        let a = ExactScalar::radical(q(1, 1), 6);
        let b = ExactScalar::radical(q(1, 1), 10);
        let product = &a * &b;
        assert_eq!(product, ExactScalar::radical(q(2, 1), 15));
    }

    #[test]
    fn squares_of_radicals_are_rational() {
        let a = ExactScalar::radical(q(-3, 4), 14);
        let square = &a * &a;
        assert_eq!(square.as_rational(), Some(q(9 * 14, 16)));
    }

    #[test]
    fn mixed_sum_arithmetic() {
        // (1 + √2)·(1 - √2) = -1.
        let one = ExactScalar::one();
        let root2 = ExactScalar::radical(q(1, 1), 2);
        let product = &(&one + &root2) * &(&one - &root2);
        assert_eq!(product, ExactScalar::integer(-1));
    }

    #[test]
    fn sign_of_close_radical_combinations() {
        // √2 + √3 - √10 < 0 but the difference is only about 0.016.
        let sum = &(&ExactScalar::radical(q(1, 1), 2) + &ExactScalar::radical(q(1, 1), 3))
            - &ExactScalar::radical(q(1, 1), 10);
        assert_eq!(sum.signum(), -1);
        // 3·√2 - 2·√3 + √5 - √6 > 0, around 1.54.
        let mut s = ExactScalar::radical(q(3, 1), 2);
        s += &ExactScalar::radical(q(-2, 1), 3);
        s += &ExactScalar::radical(q(1, 1), 5);
        s += &ExactScalar::radical(q(-1, 1), 6);
        assert_eq!(s.signum(), 1);
    }

    #[test]
    fn reciprocal_of_multi_term_scalar() {
        // 1/(1 + √2 + √3) against the product check a·a⁻¹ = 1.
        let mut a = ExactScalar::one();
        a += &ExactScalar::radical(q(1, 1), 2);
        a += &ExactScalar::radical(q(1, 1), 3);
        let inverse = a.inv().unwrap();
        assert_eq!(&a * &inverse, ExactScalar::one());
    }

    #[test]
    fn reciprocal_rejects_zero() {
        assert_eq!(ExactScalar::zero().inv(), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn sqrt_of_rational() {
        // √(8/7) = 2/7·√14.
        let value = ExactScalar::rational(q(8, 7));
        assert_eq!(value.sqrt().unwrap(), ExactScalar::radical(q(2, 7), 14));
        assert!(ExactScalar::integer(-2).sqrt().is_err());
        assert!(ExactScalar::radical(q(1, 1), 2).sqrt().is_err());
    }

    #[test]
    fn display_round_trip() {
        let mut a = ExactScalar::rational(q(-3, 2));
        a += &ExactScalar::radical(q(1, 7), 14);
        a += &ExactScalar::radical(q(-1, 1), 15);
        let text = a.to_string();
        assert_eq!(text, "-3/2+1/7*sqrt(14)-sqrt(15)");
        let back: ExactScalar = text.parse().unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn ordering_matches_numeric_value() {
        let a = ExactScalar::radical(q(1, 1), 2); // ≈ 1.414
        let b = ExactScalar::rational(q(3, 2)); // 1.5
        assert!(a < b);
        assert!(b > a);
        assert_eq!(a.cmp(&a), Ordering::Equal);
    }
}
