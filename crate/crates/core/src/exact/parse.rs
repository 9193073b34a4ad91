//! Text form of scalars: sums of terms `r`, `sqrt(s)` or `r*sqrt(s)`
//! with rational `r` written as `a` or `a/b`, joined by `+` and `-`.
//!
//! The grammar has no nesting, so a scalar splits into terms at every
//! sign that is not the leading character.  Whitespace around tokens
//! is ignored; output produced by `Display` parses back unchanged.

use super::ExactScalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

/// Error raised when a scalar string does not match the grammar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as an exact scalar: {reason}")]
pub struct ExactParseError {
    /// The offending input fragment.
    pub input: String,
    /// What went wrong.
    pub reason: String,
}

impl ExactParseError {
    fn new(input: &str, reason: impl Into<String>) -> Self {
        Self {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

fn parse_unsigned_integer(text: &str, whole: &str) -> Result<BigInt, ExactParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ExactParseError::new(whole, "missing integer"));
    }
    if !trimmed.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ExactParseError::new(
            whole,
            format!("{trimmed:?} is not an unsigned integer"),
        ));
    }
    trimmed
        .parse::<BigInt>()
        .map_err(|e| ExactParseError::new(whole, e.to_string()))
}

fn parse_rational(text: &str, whole: &str) -> Result<BigRational, ExactParseError> {
    let trimmed = text.trim();
    match trimmed.split_once('/') {
        Some((numer, denom)) => {
            let numer = parse_unsigned_integer(numer, whole)?;
            let denom = parse_unsigned_integer(denom, whole)?;
            if denom.is_zero() {
                return Err(ExactParseError::new(whole, "zero denominator"));
            }
            Ok(BigRational::new(numer, denom))
        }
        None => Ok(BigRational::from(parse_unsigned_integer(trimmed, whole)?)),
    }
}

fn parse_radicand(text: &str, whole: &str) -> Result<u64, ExactParseError> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix("sqrt(")
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| {
            ExactParseError::new(whole, format!("{trimmed:?} is not of the form sqrt(s)"))
        })?;
    let value = parse_unsigned_integer(inner, whole)?;
    u64::try_from(value).map_err(|_| ExactParseError::new(whole, "radicand out of range"))
}

/// Parses one unsigned term: `r`, `sqrt(s)` or `r*sqrt(s)`.
fn parse_term(text: &str, whole: &str) -> Result<ExactScalar, ExactParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ExactParseError::new(whole, "empty term"));
    }
    if let Some((coefficient, radical)) = trimmed.split_once('*') {
        let r = parse_rational(coefficient, whole)?;
        let s = parse_radicand(radical, whole)?;
        return Ok(ExactScalar::radical(r, s));
    }
    if trimmed.starts_with("sqrt") {
        let s = parse_radicand(trimmed, whole)?;
        return Ok(ExactScalar::radical(BigRational::from(BigInt::from(1)), s));
    }
    Ok(ExactScalar::rational(parse_rational(trimmed, whole)?))
}

/// Parses a full scalar expression.
pub(super) fn parse_scalar(text: &str) -> Result<ExactScalar, ExactParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(ExactParseError::new(text, "empty input"));
    }
    let mut result = ExactScalar::zero();
    let bytes = trimmed.as_bytes();
    let mut term_start = 0usize;
    let mut term_negative = false;
    let mut index = 0usize;
    while index <= bytes.len() {
        let at_boundary = index == bytes.len()
            || ((bytes[index] == b'+' || bytes[index] == b'-') && index > term_start);
        if at_boundary {
            let term_text = &trimmed[term_start..index];
            if term_text.trim().is_empty() && index < bytes.len() {
                // A sign directly following another sign: let the term
                // parser report the empty fragment.
                return Err(ExactParseError::new(trimmed, "consecutive signs"));
            }
            let term = parse_term(term_text, trimmed)?;
            if term_negative {
                result -= &term;
            } else {
                result += &term;
            }
            if index == bytes.len() {
                break;
            }
            term_negative = bytes[index] == b'-';
            term_start = index + 1;
        } else if index == 0 && (bytes[index] == b'+' || bytes[index] == b'-') {
            // Leading sign of the first term.
            term_negative = bytes[index] == b'-';
            term_start = 1;
        }
        index += 1;
    }
    Ok(result)
}
