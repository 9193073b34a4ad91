//! Vectors and matrices over [`ExactScalar`].
//!
//! Everything here is exact: matrix inversion divides by pivots in the
//! radical class, and the signature of a symmetric matrix is obtained
//! by congruence diagonalisation with exact sign tests, so definite
//! and semidefinite cases are distinguished without tolerance knobs.

use super::ExactScalar;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

/// A dense vector of exact scalars.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct ExactVector(pub Vec<ExactScalar>);

impl ExactVector {
    /// Builds a vector from integer coordinates.
    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| ExactScalar::integer(c)).collect())
    }

    /// Vector of `n` zeros.
    pub fn zeros(n: usize) -> Self {
        Self(vec![ExactScalar::zero(); n])
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether the vector has no coordinates.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether every coordinate is zero.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(ExactScalar::is_zero)
    }

    /// Iterates over the coordinates.
    pub fn iter(&self) -> std::slice::Iter<'_, ExactScalar> {
        self.0.iter()
    }

    /// Plain coordinate-wise dot product `Σ xᵢ·yᵢ` (no bilinear form).
    pub fn dot(&self, other: &Self) -> ExactScalar {
        assert_eq!(self.len(), other.len(), "dot product dimension mismatch");
        let mut sum = ExactScalar::zero();
        for (x, y) in self.0.iter().zip(&other.0) {
            sum += &(x * y);
        }
        sum
    }

    /// Multiplies every coordinate by `q`.
    pub fn scaled(&self, q: &ExactScalar) -> Self {
        Self(self.0.iter().map(|x| x * q).collect())
    }

    /// The coordinates as `i64`, when all of them are integers in
    /// range.
    pub fn as_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(ExactScalar::as_i64).collect()
    }

    /// The coordinates as rationals, when all of them are rational.
    pub fn as_rationals(&self) -> Option<Vec<BigRational>> {
        self.0.iter().map(ExactScalar::as_rational).collect()
    }
}

impl Index<usize> for ExactVector {
    type Output = ExactScalar;
    fn index(&self, i: usize) -> &ExactScalar {
        &self.0[i]
    }
}

impl Add for &ExactVector {
    type Output = ExactVector;
    fn add(self, other: &ExactVector) -> ExactVector {
        assert_eq!(self.len(), other.len(), "vector sum dimension mismatch");
        ExactVector(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }
}

impl Sub for &ExactVector {
    type Output = ExactVector;
    fn sub(self, other: &ExactVector) -> ExactVector {
        assert_eq!(self.len(), other.len(), "vector difference dimension mismatch");
        ExactVector(self.0.iter().zip(&other.0).map(|(x, y)| x - y).collect())
    }
}

impl Neg for &ExactVector {
    type Output = ExactVector;
    fn neg(self) -> ExactVector {
        ExactVector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Debug for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A dense row-major matrix of exact scalars.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExactScalar>,
}

impl ExactMatrix {
    /// Builds a matrix from rows, which must all have equal length.
    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Self {
        let row_count = rows.len();
        let col_count = rows.first().map(Vec::len).unwrap_or(0);
        assert!(
            rows.iter().all(|r| r.len() == col_count),
            "matrix rows must have equal length"
        );
        Self {
            rows: row_count,
            cols: col_count,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix from integer rows.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| ExactScalar::integer(c)).collect())
                .collect(),
        )
    }

    /// Builds an `rows × cols` matrix from an entry function.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// The `n × n` identity.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            }
        })
    }

    /// An all-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| ExactScalar::zero())
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }

    /// Replaces the entry at `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, value: ExactScalar) {
        self.data[i * self.cols + j] = value;
    }

    /// Row `i` as a vector.
    pub fn row(&self, i: usize) -> ExactVector {
        ExactVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    /// All rows as vectors.
    pub fn to_rows(&self) -> Vec<Vec<ExactScalar>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    /// The transpose.
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Whether the matrix equals its transpose.
    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether every entry is rational.
    pub fn is_rational(&self) -> bool {
        self.data.iter().all(ExactScalar::is_rational)
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &ExactVector) -> ExactVector {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        ExactVector(
            (0..self.rows)
                .map(|i| {
                    let mut sum = ExactScalar::zero();
                    for j in 0..self.cols {
                        sum += &(self.get(i, j) * &v[j]);
                    }
                    sum
                })
                .collect(),
        )
    }

    /// Multiplies every entry by `q`.
    pub fn scaled(&self, q: &ExactScalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * q).collect(),
        }
    }

    /// Exact inverse, or `None` when the matrix is singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "only square matrices invert");
        let n = self.rows;
        let mut work = self.clone();
        let mut result = Self::identity(n);
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !work.get(r, col).is_zero())?;
            if pivot_row != col {
                for j in 0..n {
                    let a = work.get(col, j).clone();
                    let b = work.get(pivot_row, j).clone();
                    work.set(col, j, b);
                    work.set(pivot_row, j, a);
                    let a = result.get(col, j).clone();
                    let b = result.get(pivot_row, j).clone();
                    result.set(col, j, b);
                    result.set(pivot_row, j, a);
                }
            }
            let pivot_inverse = work
                .get(col, col)
                .inv()
                .expect("pivot was checked to be nonzero");
            for j in 0..n {
                work.set(col, j, work.get(col, j) * &pivot_inverse);
                result.set(col, j, result.get(col, j) * &pivot_inverse);
            }
            for i in 0..n {
                if i == col || work.get(i, col).is_zero() {
                    continue;
                }
                let factor = work.get(i, col).clone();
                for j in 0..n {
                    let w = work.get(i, j) - &(work.get(col, j) * &factor);
                    work.set(i, j, w);
                    let r = result.get(i, j) - &(result.get(col, j) * &factor);
                    result.set(i, j, r);
                }
            }
        }
        Some(result)
    }

    /// Exact determinant.
    pub fn determinant(&self) -> ExactScalar {
        assert_eq!(self.rows, self.cols, "determinant of a square matrix only");
        let n = self.rows;
        let mut work = self.clone();
        let mut det = ExactScalar::one();
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| !work.get(r, col).is_zero()) else {
                return ExactScalar::zero();
            };
            if pivot_row != col {
                for j in 0..n {
                    let a = work.get(col, j).clone();
                    let b = work.get(pivot_row, j).clone();
                    work.set(col, j, b);
                    work.set(pivot_row, j, a);
                }
                det = -det;
            }
            let pivot = work.get(col, col).clone();
            det *= &pivot;
            let pivot_inverse = pivot.inv().expect("pivot was checked to be nonzero");
            for i in col + 1..n {
                if work.get(i, col).is_zero() {
                    continue;
                }
                let factor = work.get(i, col) * &pivot_inverse;
                for j in col..n {
                    let w = work.get(i, j) - &(work.get(col, j) * &factor);
                    work.set(i, j, w);
                }
            }
        }
        det
    }

    /// Signature `(positive, negative, zero)` of a symmetric matrix,
    /// computed by exact congruence diagonalisation.
    // The elimination reads two rows of `m` at once, so index loops are
    // the borrow-friendly shape here.
    #[allow(clippy::needless_range_loop)]
    pub fn signature(&self) -> (usize, usize, usize) {
        assert!(self.is_symmetric(), "signature of a symmetric matrix only");
        let n = self.rows;
        let mut m: Vec<Vec<ExactScalar>> = self.to_rows();
        let mut positive = 0usize;
        let mut negative = 0usize;
        let mut zero = 0usize;
        let mut step = 0usize;
        while step < n {
            // Prefer a nonzero diagonal pivot; otherwise create one
            // from a nonzero off-diagonal pair, or stop if the block
            // vanished.
            let diagonal_pivot = (step..n).find(|&k| !m[k][k].is_zero());
            let pivot_index = match diagonal_pivot {
                Some(k) => k,
                None => {
                    let pair = (step..n)
                        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                        .find(|&(i, j)| !m[i][j].is_zero());
                    match pair {
                        None => {
                            zero += n - step;
                            break;
                        }
                        Some((i, j)) => {
                            // Row and column addition makes the (i, i)
                            // entry 2·m[i][j] ≠ 0.
                            for k in step..n {
                                let v = &m[i][k] + &m[j][k];
                                m[i][k] = v;
                            }
                            for k in step..n {
                                let v = &m[k][i] + &m[k][j];
                                m[k][i] = v;
                            }
                            i
                        }
                    }
                }
            };
            if pivot_index != step {
                m.swap(pivot_index, step);
                for row in m.iter_mut().skip(step) {
                    row.swap(pivot_index, step);
                }
            }
            let pivot = m[step][step].clone();
            match pivot.signum() {
                1 => positive += 1,
                -1 => negative += 1,
                _ => unreachable!("pivot was chosen nonzero"),
            }
            let pivot_inverse = pivot.inv().expect("pivot is nonzero");
            // A row operation alone realises the congruence update on
            // the trailing block because the eliminated column entries
            // match the eliminated row entries symmetrically.
            let pivot_row: Vec<ExactScalar> = m[step][step..n].to_vec();
            for i in step + 1..n {
                if m[i][step].is_zero() {
                    continue;
                }
                let factor = &m[i][step] * &pivot_inverse;
                for j in step..n {
                    let v = &m[i][j] - &(&pivot_row[j - step] * &factor);
                    m[i][j] = v;
                }
            }
            for j in step + 1..n {
                m[step][j] = ExactScalar::zero();
                m[j][step] = ExactScalar::zero();
            }
            step += 1;
        }
        (positive, negative, zero)
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        ExactMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut sum = ExactScalar::zero();
            for k in 0..self.cols {
                sum += &(self.get(i, k) * other.get(k, j));
            }
            sum
        })
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix sum dimension mismatch"
        );
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix difference dimension mismatch"
        );
        ExactMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(deserializer)?;
        let col_count = rows.first().map(Vec::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != col_count) {
            return Err(serde::de::Error::custom("matrix rows have unequal lengths"));
        }
        let mut parsed = Vec::with_capacity(rows.len());
        for row in rows {
            let mut entries = Vec::with_capacity(row.len());
            for cell in row {
                entries.push(cell.parse::<ExactScalar>().map_err(serde::de::Error::custom)?);
            }
            parsed.push(entries);
        }
        Ok(Self::from_rows(parsed))
    }
}

/// Signature `(positive, negative, zero)` of a symmetric rational
/// matrix; the rational specialisation of [`ExactMatrix::signature`]
/// used on hot paths.
// The elimination reads two rows of `m` at once, so index loops are the
// borrow-friendly shape here.
#[allow(clippy::needless_range_loop)]
pub fn rational_signature(matrix: &[Vec<BigRational>]) -> (usize, usize, usize) {
    let n = matrix.len();
    debug_assert!(matrix.iter().all(|row| row.len() == n));
    let mut m: Vec<Vec<BigRational>> = matrix.to_vec();
    let mut positive = 0usize;
    let mut negative = 0usize;
    let mut zero = 0usize;
    let mut step = 0usize;
    while step < n {
        let diagonal_pivot = (step..n).find(|&k| !m[k][k].is_zero());
        let pivot_index = match diagonal_pivot {
            Some(k) => k,
            None => {
                let pair = (step..n)
                    .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !m[i][j].is_zero());
                match pair {
                    None => {
                        zero += n - step;
                        break;
                    }
                    Some((i, j)) => {
                        for k in step..n {
                            let v = &m[i][k] + &m[j][k];
                            m[i][k] = v;
                        }
                        for k in step..n {
                            let v = &m[k][i] + &m[k][j];
                            m[k][i] = v;
                        }
                        i
                    }
                }
            }
        };
        if pivot_index != step {
            m.swap(pivot_index, step);
            for row in m.iter_mut().skip(step) {
                row.swap(pivot_index, step);
            }
        }
        let pivot = m[step][step].clone();
        if pivot.is_positive() {
            positive += 1;
        } else {
            negative += 1;
        }
        let pivot_row: Vec<BigRational> = m[step][step..n].to_vec();
        for i in step + 1..n {
            if m[i][step].is_zero() {
                continue;
            }
            let factor = &m[i][step] / &pivot;
            for j in step..n {
                let v = &m[i][j] - &(&pivot_row[j - step] * &factor);
                m[i][j] = v;
            }
        }
        for j in step + 1..n {
            m[step][j] = BigRational::zero();
            m[j][step] = BigRational::zero();
        }
        step += 1;
    }
    (positive, negative, zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn inverse_of_radical_matrix() {
        // [[1, √2], [√2, 1]] has determinant -1.
        let root2 = ExactScalar::radical(q(1, 1), 2);
        let m = ExactMatrix::from_rows(vec![
            vec![ExactScalar::one(), root2.clone()],
            vec![root2.clone(), ExactScalar::one()],
        ]);
        assert_eq!(m.determinant(), ExactScalar::integer(-1));
        let inverse = m.inverse().unwrap();
        assert_eq!(&m * &inverse, ExactMatrix::identity(2));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = ExactMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(m.inverse().is_none());
        assert_eq!(m.determinant(), ExactScalar::zero());
    }

    #[test]
    fn signature_of_lorentzian_diagonal() {
        let m = ExactMatrix::from_i64_rows(&[
            vec![-1, 0, 0],
            vec![0, 2, 0],
            vec![0, 0, 1],
        ]);
        assert_eq!(m.signature(), (2, 1, 0));
    }

    #[test]
    fn signature_with_zero_diagonal() {
        // Hyperbolic plane: zero diagonal, signature (1, 1).
        let m = ExactMatrix::from_rows(vec![
            vec![ExactScalar::zero(), ExactScalar::rational(q(-1, 2))],
            vec![ExactScalar::rational(q(-1, 2)), ExactScalar::zero()],
        ]);
        assert_eq!(m.signature(), (1, 1, 0));
    }

    #[test]
    fn signature_counts_kernel() {
        // Gram matrix of a bold pair: positive semidefinite, rank 1.
        let m = ExactMatrix::from_i64_rows(&[vec![1, -1], vec![-1, 1]]);
        assert_eq!(m.signature(), (1, 0, 1));
        let rational: Vec<Vec<BigRational>> =
            vec![vec![q(1, 1), q(-1, 1)], vec![q(-1, 1), q(1, 1)]];
        assert_eq!(rational_signature(&rational), (1, 0, 1));
    }

    #[test]
    fn matrix_serde_round_trip() {
        let m = ExactMatrix::from_rows(vec![
            vec![ExactScalar::zero(), ExactScalar::rational(q(-1, 2))],
            vec![ExactScalar::rational(q(-1, 2)), ExactScalar::radical(q(2, 7), 14)],
        ]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[["0","-1/2"],["-1/2","2/7*sqrt(14)"]]"#);
        let back: ExactMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
