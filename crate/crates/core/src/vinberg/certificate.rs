//! Congruence certificates that a form has no roots at all.
//!
//! A root of norm `k` is a primitive integer vector with `(e,e) = k`
//! whose reflection preserves the lattice: `2(Me)ᵢ ≡ 0 (mod k)` for
//! every coordinate.  If, for some prime power `p^j`, no vector
//! modulo `p^j` that is nonzero modulo `p` satisfies both conditions,
//! then no root of that norm exists — a reduction of any integer root
//! would solve the congruence.  (Primitivity costs nothing: the
//! primitive vector under an imprimitive root is itself a root of a
//! smaller candidate norm, so per-norm certificates over the full
//! candidate list still rule out every root.)
//!
//! Certificates are searched by progressive lifting: solutions modulo
//! `p^{j+1}` all reduce to solutions modulo `p^j`, so the solution
//! set is grown level by level and the search succeeds the moment it
//! becomes empty.  Lifting a solution `s` from modulus `q = p^j` asks
//! which digits `δ` keep the conditions alive at `qp`; because
//! `q² ≡ 0 (mod qp)`, every condition is *affine linear* in `δ` over
//! `F_p`, so the children form an affine subspace found by a small
//! exact elimination instead of a `p^d` scan.  Only prime-power
//! moduli are tried — by the Chinese remainder theorem a composite
//! modulus admits a solution exactly when each prime-power part does,
//! so composite certificates add nothing.

use super::{candidate_norms, VinbergError};
use crate::qspace::QuadraticSpace;
use serde::Serialize;
use std::collections::BTreeMap;

/// Per-norm congruence certificates: each candidate norm is ruled out
/// modulo its recorded prime power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoRootsCertificate {
    /// Norm → modulus `p^j` with no admissible solution.
    pub per_norm: BTreeMap<i64, u64>,
}

/// Residue sets larger than this abort the attempt (the search gives
/// up rather than certifying, which is always sound).
const SOLUTION_CAP: usize = 500_000;

fn prime_factors(mut value: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= value {
        if value.is_multiple_of(p) {
            primes.push(p);
            while value.is_multiple_of(p) {
                value /= p;
            }
        }
        p += 1;
    }
    if value > 1 {
        primes.push(value);
    }
    primes
}

fn exact_norm(m: &[Vec<i64>], e: &[u64]) -> i128 {
    let d = e.len();
    let mut total: i128 = 0;
    for i in 0..d {
        for j in 0..d {
            if m[i][j] != 0 {
                total += m[i][j] as i128 * e[i] as i128 * e[j] as i128;
            }
        }
    }
    total
}

fn exact_gradient(m: &[Vec<i64>], e: &[u64]) -> Vec<i128> {
    // 2·(Me), the derivative of the norm form.
    m.iter()
        .map(|row| {
            2 * row
                .iter()
                .zip(e)
                .map(|(&c, &x)| c as i128 * x as i128)
                .sum::<i128>()
        })
        .collect()
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    debug_assert_eq!(old_r, 1, "inverse of a unit modulo a prime");
    old_s.rem_euclid(p as i128) as u64
}

/// Solves an affine system over `F_p`: rows are `(coefficients | rhs)`
/// with entries already reduced.  Returns a particular solution and a
/// basis of the homogeneous solution space, or `None` when
/// inconsistent.
fn solve_affine(mut rows: Vec<Vec<u64>>, d: usize, p: u64) -> Option<(Vec<u64>, Vec<Vec<u64>>)> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; d];
    let mut rank = 0;
    for col in 0..d {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = inverse_mod(rows[rank][col], p);
        for entry in rows[rank].iter_mut() {
            *entry = *entry * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (entry, pivot) in row.iter_mut().zip(&pivot_row) {
                    let sub = factor * pivot % p;
                    *entry = (*entry + p - sub) % p;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    if rows.iter().skip(rank).any(|row| row[d] != 0) {
        return None;
    }
    let mut particular = vec![0u64; d];
    for col in 0..d {
        if let Some(r) = pivot_of_col[col] {
            particular[col] = rows[r][d];
        }
    }
    let mut basis = Vec::new();
    for free in 0..d {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut vector = vec![0u64; d];
        vector[free] = 1;
        for col in 0..d {
            if let Some(r) = pivot_of_col[col] {
                vector[col] = (p - rows[r][free] % p) % p;
            }
        }
        basis.push(vector);
    }
    Some((particular, basis))
}

/// Tries to certify that no root of norm `k` exists using powers of
/// `p` up to `bound`; returns the successful modulus.
fn certify_norm_at_prime(m: &[Vec<i64>], k: i64, p: u64, bound: u64) -> Option<u64> {
    let d = m.len();
    let k_valuation = {
        let mut v = 0u32;
        let mut rest = k.unsigned_abs();
        while rest.is_multiple_of(p) {
            v += 1;
            rest /= p;
        }
        v
    };
    if p > bound {
        return None;
    }
    let mut seed_count: usize = 1;
    for _ in 0..d {
        seed_count = seed_count.checked_mul(p as usize)?;
        if seed_count > SOLUTION_CAP {
            return None;
        }
    }
    // Level 1: direct enumeration of (Z/p)^d.  The conditions at
    // level j are: e nonzero mod p, (e,e) ≡ k (mod p^j), and the
    // crystallographic congruence modulo p^{min(j, v_p(k))}; each is
    // a necessary condition on any integer root and survives
    // reduction, so an empty level is a certificate.
    let mut modulus: u64 = p;
    let mut exponent = 1u32;
    let mut solutions: Vec<Vec<u64>> = Vec::new();
    let mut e = vec![0u64; d];
    loop {
        let primitive = e.iter().any(|&x| x != 0);
        if primitive
            && exact_norm(m, &e).rem_euclid(p as i128) == (k as i128).rem_euclid(p as i128)
            && (k_valuation == 0
                || exact_gradient(m, &e)
                    .iter()
                    .all(|g| g.rem_euclid(p as i128) == 0))
        {
            solutions.push(e.clone());
        }
        let mut position = 0;
        loop {
            if position == d {
                break;
            }
            e[position] += 1;
            if e[position] < p {
                break;
            }
            e[position] = 0;
            position += 1;
        }
        if position == d {
            break;
        }
    }
    // Progressive lifting until the solution set dies out.  For a
    // solution s at modulus q, a child s + qδ survives at qp iff
    //   2(Ms)·δ ≡ (k − (s,s))/q          (mod p)
    // and, while the level stays below the norm valuation,
    //   2(Mδ)ᵢ ≡ −2(Ms)ᵢ/q  for each i  (mod p);
    // both right-hand sides are exact integers by the level-j
    // invariants.  Primitivity is preserved automatically.
    loop {
        if solutions.is_empty() {
            return Some(modulus);
        }
        let next_modulus = modulus.checked_mul(p)?;
        if next_modulus > bound {
            return None;
        }
        let q = modulus as i128;
        let mut lifted: Vec<Vec<u64>> = Vec::new();
        for s in &solutions {
            let gradient = exact_gradient(m, s);
            let mut rows = Vec::with_capacity(1 + d);
            debug_assert_eq!(
                (k as i128 - exact_norm(m, s)).rem_euclid(q),
                0,
                "level invariant: norms agree modulo the current modulus"
            );
            let norm_defect = (k as i128 - exact_norm(m, s)) / q;
            let mut norm_row: Vec<u64> = gradient
                .iter()
                .map(|g| g.rem_euclid(p as i128) as u64)
                .collect();
            norm_row.push(norm_defect.rem_euclid(p as i128) as u64);
            rows.push(norm_row);
            if exponent < k_valuation {
                for (i, g) in gradient.iter().enumerate() {
                    let mut row: Vec<u64> = (0..d)
                        .map(|l| (2 * m[i][l] as i128).rem_euclid(p as i128) as u64)
                        .collect();
                    debug_assert_eq!(
                        g.rem_euclid(q),
                        0,
                        "level invariant: the divisibility holds at the current modulus"
                    );
                    row.push((-(g / q)).rem_euclid(p as i128) as u64);
                    rows.push(row);
                }
            }
            let Some((particular, basis)) = solve_affine(rows, d, p) else {
                continue;
            };
            // Enumerate the affine space of admissible digits.
            let mut coeffs = vec![0u64; basis.len()];
            loop {
                let mut child = s.clone();
                for (l, x) in child.iter_mut().enumerate() {
                    let mut digit = particular[l];
                    for (c, vector) in coeffs.iter().zip(&basis) {
                        digit = (digit + c * vector[l]) % p;
                    }
                    *x += digit * modulus;
                }
                debug_assert_eq!(
                    exact_norm(m, &child).rem_euclid(next_modulus as i128),
                    (k as i128).rem_euclid(next_modulus as i128),
                    "lifted solutions satisfy the norm congruence"
                );
                lifted.push(child);
                if lifted.len() > SOLUTION_CAP {
                    return None;
                }
                let mut position = 0;
                loop {
                    if position == coeffs.len() {
                        break;
                    }
                    coeffs[position] += 1;
                    if coeffs[position] < p {
                        break;
                    }
                    coeffs[position] = 0;
                    position += 1;
                }
                if position == coeffs.len() {
                    break;
                }
            }
        }
        solutions = lifted;
        modulus = next_modulus;
        exponent += 1;
    }
}

/// Attempts to certify that the form has no roots of any candidate
/// norm via congruences modulo prime powers up to `bound`.
///
/// Returns a per-norm certificate when every candidate norm is ruled
/// out, or `None` when some norm resists (in particular whenever
/// roots exist).
pub fn no_roots_obstruction(
    space: &QuadraticSpace,
    bound: u64,
) -> Result<Option<NoRootsCertificate>, VinbergError> {
    let norms = candidate_norms(space)?;
    let matrix = space
        .as_i64_matrix()
        .expect("candidate_norms already validated integrality");
    let form_primes = {
        let gram: Vec<Vec<num_bigint::BigInt>> = matrix
            .iter()
            .map(|row| row.iter().map(|&x| num_bigint::BigInt::from(x)).collect())
            .collect();
        let det = super::volume::integer_determinant(gram);
        let magnitude = num_traits::Signed::abs(&det)
            .try_into()
            .unwrap_or(u64::MAX);
        prime_factors(magnitude)
    };
    let mut per_norm = BTreeMap::new();
    for &k in &norms {
        let mut primes = prime_factors(k.unsigned_abs());
        for p in form_primes.iter().chain(std::iter::once(&2)) {
            if !primes.contains(p) {
                primes.push(*p);
            }
        }
        // Largest first: obstructions tend to live at the odd primes
        // ramified in the form, and a failed attempt at a small prime
        // is the most expensive way to fail.
        primes.sort_unstable_by(|a, b| b.cmp(a));
        let mut found = None;
        for p in primes {
            if let Some(modulus) = certify_norm_at_prime(&matrix, k, p, bound) {
                found = Some(modulus);
                break;
            }
        }
        match found {
            Some(modulus) => {
                per_norm.insert(k, modulus);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(NoRootsCertificate { per_norm }))
}
