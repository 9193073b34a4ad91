//! Integer lattice plumbing for root enumeration.
//!
//! A root candidate at norm `k` and height `t` is an integer solution
//! of the linear equation `(e, v0) = −t` together with the quadratic
//! equation `(e, e) = k`.  The linear equation is solved by a
//! unimodular change of basis: column operations shrink the
//! functional to a single nonzero entry, producing a particular
//! solution and an integer basis of the kernel hyperplane.  On that
//! hyperplane the form is positive definite (it is the orthogonal
//! complement of a time-like vector), so the quadratic equation cuts
//! out a finite set, enumerated by descending through an exact LDLᵀ
//! decomposition with interval bounds at every level.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `a · x = g` with `g = ±gcd(a)`: returns the transform `u` with
/// `a · u = (…, g, …)` concentrated in one column, as the pair of
/// that column index and the full column-operation matrix.
pub(crate) fn concentrate_functional(a: &[BigInt]) -> (usize, BigInt, Vec<Vec<BigInt>>) {
    let d = a.len();
    let mut b = a.to_vec();
    // u is maintained columnwise: u[j] is the j-th column.
    let mut u: Vec<Vec<BigInt>> = (0..d)
        .map(|j| {
            let mut column = vec![BigInt::zero(); d];
            column[j] = BigInt::one();
            column
        })
        .collect();
    loop {
        let nonzero: Vec<usize> = (0..d).filter(|&j| !b[j].is_zero()).collect();
        assert!(!nonzero.is_empty(), "functional must be nonzero");
        if nonzero.len() == 1 {
            return (nonzero[0], b[nonzero[0]].clone(), u);
        }
        let pivot = *nonzero
            .iter()
            .min_by_key(|&&j| b[j].abs())
            .expect("nonempty");
        for j in nonzero {
            if j == pivot {
                continue;
            }
            let q = b[j].div_floor(&b[pivot]);
            if !q.is_zero() {
                b[j] = &b[j] - &q * &b[pivot];
                let scaled: Vec<BigInt> = u[pivot].iter().map(|x| x * &q).collect();
                for (entry, sub) in u[j].iter_mut().zip(scaled) {
                    *entry -= sub;
                }
            }
        }
    }
}

/// Exact LDLᵀ decomposition of a positive definite rational matrix.
///
/// Returns `(l, diag)` with `l` unit lower triangular and all pivots
/// positive; panics if the matrix is not positive definite, which
/// would contradict the time-like basepoint.
fn ldl(a: &[Vec<BigRational>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let r = a.len();
    let mut l: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); r]; r];
    let mut diag = vec![BigRational::zero(); r];
    for i in 0..r {
        l[i][i] = BigRational::one();
        for j in 0..=i {
            let mut sum = a[i][j].clone();
            for t in 0..j {
                sum -= &l[i][t] * &l[j][t] * &diag[t];
            }
            if i == j {
                assert!(
                    sum.is_positive(),
                    "restriction of the form to the basepoint complement must be positive definite"
                );
                diag[i] = sum;
            } else {
                l[i][j] = sum / &diag[j];
            }
        }
    }
    (l, diag)
}

/// Floor of `√q` for a nonnegative rational, as a rational upper
/// staircase: returns `h` with `h ≤ √q < h + 1/denom`-ish slack, good
/// enough for conservative interval bounds (exact checks happen per
/// candidate).
fn sqrt_upper(q: &BigRational) -> BigRational {
    debug_assert!(!q.is_negative());
    let root = (q.numer() * q.denom()).sqrt() + BigInt::one();
    BigRational::new(root, q.denom().clone())
}

/// All integer solutions of `(e, m·e) = k` and `a · e = −t`.
///
/// `a` is the functional `M·v0`; the result is unsorted and carries
/// no crystallographic or primitivity filtering.
pub(super) fn solve_fiber(
    m: &[Vec<BigInt>],
    a: &[BigInt],
    t: &BigInt,
    k: &BigInt,
) -> Vec<Vec<BigInt>> {
    let d = a.len();
    let (column, g, u) = concentrate_functional(a);
    let (quotient, remainder) = (-t).div_rem(&g);
    if !remainder.is_zero() {
        return Vec::new();
    }
    let particular: Vec<BigInt> = u[column].iter().map(|x| x * &quotient).collect();
    let kernel: Vec<&Vec<BigInt>> = (0..d).filter(|&j| j != column).map(|j| &u[j]).collect();
    let r = kernel.len();
    let inner = |x: &[BigInt], y: &[BigInt]| -> BigInt {
        let mut total = BigInt::zero();
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if !m[i][j].is_zero() && !y[j].is_zero() {
                    total += &x[i] * &m[i][j] * &y[j];
                }
            }
        }
        total
    };
    let c0 = inner(&particular, &particular);
    if r == 0 {
        return if &c0 == k {
            vec![particular]
        } else {
            Vec::new()
        };
    }
    // Restricted form, linear term and completed square.
    let a_sub: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| BigRational::from(inner(kernel[i], kernel[j])))
                .collect()
        })
        .collect();
    let linear: Vec<BigRational> = (0..r)
        .map(|i| BigRational::from(inner(kernel[i], &particular)))
        .collect();
    let shift = solve_pd_system(&a_sub, &linear);
    let mut shifted_constant = BigRational::from(c0.clone());
    for i in 0..r {
        shifted_constant -= &shift[i] * &linear[i];
    }
    let target = BigRational::from(k.clone()) - shifted_constant;
    if target.is_negative() {
        return Vec::new();
    }
    let (l, diag) = ldl(&a_sub);
    // Descend levels r−1 .. 0; v_i = (y_i + shift_i) + Σ_{j>i} l[j][i] (y_j + shift_j).
    let mut results = Vec::new();
    let mut y = vec![BigInt::zero(); r];
    descend(
        r,
        &l,
        &diag,
        &shift,
        target,
        &mut y,
        r,
        &mut |y: &[BigInt]| {
            let mut e = particular.clone();
            for (basis, coefficient) in kernel.iter().zip(y) {
                for (entry, b) in e.iter_mut().zip(basis.iter()) {
                    *entry += b * coefficient;
                }
            }
            results.push(e);
        },
    );
    results
}

/// Solves `A x = b` for positive definite rational `A` by Gaussian
/// elimination without pivoting (pivots are positive).
fn solve_pd_system(a: &[Vec<BigRational>], b: &[BigRational]) -> Vec<BigRational> {
    let r = a.len();
    let mut m: Vec<Vec<BigRational>> = (0..r)
        .map(|i| {
            let mut row = a[i].clone();
            row.push(b[i].clone());
            row
        })
        .collect();
    for step in 0..r {
        let pivot = m[step][step].clone();
        assert!(!pivot.is_zero(), "positive definite system has nonzero pivots");
        for i in 0..r {
            if i == step {
                continue;
            }
            let factor = &m[i][step] / &pivot;
            if factor.is_zero() {
                continue;
            }
            let reference = m[step].clone();
            for (entry, base) in m[i].iter_mut().zip(reference) {
                *entry -= &factor * base;
            }
        }
    }
    (0..r).map(|i| &m[i][r] / &m[i][i]).collect()
}

/// Recursive level descent: choose `y[level−1]`, consume budget.
#[allow(clippy::too_many_arguments)]
fn descend(
    level: usize,
    l: &[Vec<BigRational>],
    diag: &[BigRational],
    shift: &[BigRational],
    budget: BigRational,
    y: &mut Vec<BigInt>,
    r: usize,
    emit: &mut dyn FnMut(&[BigInt]),
) {
    if level == 0 {
        if budget.is_zero() {
            emit(y);
        }
        return;
    }
    let i = level - 1;
    // offset = shift_i + Σ_{j>i} l[j][i] (y_j + shift_j)
    let mut offset = shift[i].clone();
    for j in i + 1..r {
        offset += &l[j][i] * (BigRational::from(y[j].clone()) + &shift[j]);
    }
    let radius = sqrt_upper(&(&budget / &diag[i]));
    let low = (-&radius - &offset).ceil().to_integer();
    let high = (&radius - &offset).floor().to_integer();
    let mut value = low;
    while value <= high {
        let v = BigRational::from(value.clone()) + &offset;
        let used = &diag[i] * &v * &v;
        if used <= budget {
            y[i] = value.clone();
            descend(level - 1, l, diag, shift, &budget - &used, y, r, emit);
        }
        value += BigInt::one();
    }
    y[i] = BigInt::zero();
}

/// Greatest common divisor of a vector's entries (zero for the zero
/// vector).
pub(crate) fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    g
}
