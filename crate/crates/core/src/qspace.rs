//! Quadratic spaces of signature `(n, 1)`, their root vectors and
//! acute-angled polyhedra.
//!
//! A space wraps a symmetric matrix `M` over the exact scalar class
//! and exposes the bilinear form `(u, v) = uᵀ·M·v`.  Roots are
//! space-like vectors; the reflection in a root `e` is
//! `x ↦ x − 2·(e, x)/(e, e)·e`, which fixes the mirror `e⊥` and
//! negates `e`.  A root with integer coordinates is crystallographic
//! when `2·(e, bᵢ)/(e, e)` is an integer for every standard basis
//! vector `bᵢ`; its reflection then maps the lattice `ℤⁿ⁺¹` to
//! itself.
//!
//! A polyhedron is a list of outward root normals whose pairwise
//! inner products are nonpositive, so all dihedral angles are at most
//! `π/2`.  Both structures serialise to flat JSON objects with scalar
//! strings, documented in `docs/formats.md` at the repository root.

use crate::exact::{ExactMatrix, ExactScalar, ExactVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Validation errors for spaces, roots and polyhedra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QspaceError {
    /// The matrix is not square.
    #[error("form matrix must be square, got {rows}x{cols}")]
    NotSquare {
        /// Row count of the offending matrix.
        rows: usize,
        /// Column count of the offending matrix.
        cols: usize,
    },
    /// The matrix is not symmetric.
    #[error("form matrix must be symmetric; entries ({i},{j}) and ({j},{i}) differ")]
    NotSymmetric {
        /// Row of the offending pair.
        i: usize,
        /// Column of the offending pair.
        j: usize,
    },
    /// The declared dimension does not match the matrix.
    #[error("declared dimension {declared} does not match a {actual}x{actual} matrix")]
    DimensionMismatch {
        /// Dimension named in the input.
        declared: usize,
        /// Actual matrix size.
        actual: usize,
    },
    /// The form does not have Lorentzian signature `(n-1, 1)`.
    #[error("form must have signature ({}, 1), got ({positive}, {negative}) with {zero}-dimensional kernel", .dim - 1)]
    NotLorentzian {
        /// Dimension of the space.
        dim: usize,
        /// Count of positive squares.
        positive: usize,
        /// Count of negative squares.
        negative: usize,
        /// Kernel dimension.
        zero: usize,
    },
    /// A vector had the wrong number of coordinates.
    #[error("vector has {found} coordinates, the space needs {expected}")]
    VectorDimension {
        /// Required coordinate count.
        expected: usize,
        /// Coordinate count of the offending vector.
        found: usize,
    },
    /// A declared root is not space-like.
    #[error("root {index} has norm {norm}, which is not positive")]
    NotSpacelike {
        /// Position of the root in its list.
        index: usize,
        /// The offending norm.
        norm: String,
    },
    /// Two walls meet at an angle wider than `π/2`.
    #[error("roots {i} and {j} have positive inner product {value}; walls must meet at angles of at most pi/2")]
    NotAcuteAngled {
        /// First root index.
        i: usize,
        /// Second root index.
        j: usize,
        /// The offending inner product.
        value: String,
    },
    /// An operation needed rational matrix entries.
    #[error("operation requires rational matrix entries, found {entry}")]
    NotRational {
        /// The offending entry.
        entry: String,
    },
}

/// A quadratic space of signature `(dim − 1, 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadraticSpace {
    dim: usize,
    matrix: ExactMatrix,
}

impl QuadraticSpace {
    /// Validates a symmetric Lorentzian matrix and wraps it.
    pub fn new(matrix: ExactMatrix) -> Result<Self, QspaceError> {
        if matrix.rows() != matrix.cols() {
            return Err(QspaceError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let dim = matrix.rows();
        for i in 0..dim {
            for j in i + 1..dim {
                if matrix.get(i, j) != matrix.get(j, i) {
                    return Err(QspaceError::NotSymmetric { i, j });
                }
            }
        }
        let (positive, negative, zero) = matrix.signature();
        if negative != 1 || zero != 0 {
            return Err(QspaceError::NotLorentzian {
                dim,
                positive,
                negative,
                zero,
            });
        }
        Ok(Self { dim, matrix })
    }

    /// The diagonal form `x ↦ Σ dᵢ·xᵢ²` for the given diagonal.
    pub fn diagonal(entries: &[i64]) -> Result<Self, QspaceError> {
        let n = entries.len();
        let matrix = ExactMatrix::from_fn(n, n, |i, j| {
            if i == j {
                ExactScalar::integer(entries[i])
            } else {
                ExactScalar::zero()
            }
        });
        Self::new(matrix)
    }

    /// Dimension of the space.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The form matrix.
    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// The `i`-th standard basis vector.
    pub fn basis(&self, i: usize) -> ExactVector {
        let mut coords = vec![ExactScalar::zero(); self.dim];
        coords[i] = ExactScalar::one();
        ExactVector(coords)
    }

    /// Checks that a vector has the right number of coordinates.
    pub fn check_vector(&self, v: &ExactVector) -> Result<(), QspaceError> {
        if v.len() != self.dim {
            return Err(QspaceError::VectorDimension {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// The bilinear form `(u, v) = uᵀ·M·v`.
    pub fn inner(&self, u: &ExactVector, v: &ExactVector) -> ExactScalar {
        assert_eq!(u.len(), self.dim, "inner product dimension mismatch");
        assert_eq!(v.len(), self.dim, "inner product dimension mismatch");
        let mut sum = ExactScalar::zero();
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            let mut row = ExactScalar::zero();
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                row += &(self.matrix.get(i, j) * &v[j]);
            }
            sum += &(&u[i] * &row);
        }
        sum
    }

    /// The quadratic form `(v, v)`.
    pub fn norm(&self, v: &ExactVector) -> ExactScalar {
        self.inner(v, v)
    }

    /// Reflects `x` in the mirror of `e`; `e` must not be isotropic.
    pub fn reflect(&self, e: &ExactVector, x: &ExactVector) -> ExactVector {
        let norm = self.norm(e);
        assert!(!norm.is_zero(), "reflection in an isotropic vector");
        let factor = &(&self.inner(e, x) * &ExactScalar::integer(2)) / &norm;
        x - &e.scaled(&factor)
    }

    /// The matrix of the reflection in `e` acting on column vectors.
    pub fn reflection_matrix(&self, e: &ExactVector) -> ExactMatrix {
        let norm = self.norm(e);
        assert!(!norm.is_zero(), "reflection in an isotropic vector");
        let me = self.matrix.mul_vec(e);
        let scale = &ExactScalar::integer(2) / &norm;
        ExactMatrix::from_fn(self.dim, self.dim, |i, j| {
            let outer = &(&e[i] * &me[j]) * &scale;
            if i == j {
                &ExactScalar::one() - &outer
            } else {
                -outer
            }
        })
    }

    /// Whether the matrix has integer entries only.
    pub fn is_integral(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.matrix.get(i, j).is_integer()))
    }

    /// The form matrix as `i64` entries, when integral and in range.
    pub fn as_i64_matrix(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.matrix.get(i, j).as_i64()).collect())
            .collect()
    }

    /// Whether `e` is a crystallographic root: integer coordinates,
    /// positive norm, and `2·(e, bᵢ)/(e, e)` integral for every
    /// standard basis vector.
    pub fn is_crystallographic_root(&self, e: &ExactVector) -> bool {
        if e.len() != self.dim || e.as_i64().is_none() && !e.iter().all(ExactScalar::is_integer) {
            return false;
        }
        let norm = self.norm(e);
        if !norm.is_positive() {
            return false;
        }
        let me = self.matrix.mul_vec(e);
        let two = ExactScalar::integer(2);
        me.iter().all(|entry| (&(entry * &two) / &norm).is_integer())
    }
}

/// Rescales a symmetric rational matrix to the minimal integral
/// multiple `c·M`, flipping the sign when needed so the result has
/// Lorentzian signature `(n − 1, 1)`.
///
/// Returns the integral space together with the signed scale `c`.
pub fn rescale_to_integral(matrix: &ExactMatrix) -> Result<(QuadraticSpace, BigRational), QspaceError> {
    if matrix.rows() != matrix.cols() {
        return Err(QspaceError::NotSquare {
            rows: matrix.rows(),
            cols: matrix.cols(),
        });
    }
    let n = matrix.rows();
    let mut entries: Vec<BigRational> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let entry = matrix.get(i, j);
            match entry.as_rational() {
                Some(q) => entries.push(q),
                None => {
                    return Err(QspaceError::NotRational {
                        entry: entry.to_string(),
                    })
                }
            }
        }
    }
    let mut denominator_lcm = BigInt::one();
    for q in &entries {
        denominator_lcm = denominator_lcm.lcm(q.denom());
    }
    let mut numerator_gcd = BigInt::zero();
    for q in &entries {
        let scaled = q * BigRational::from(denominator_lcm.clone());
        debug_assert!(scaled.denom().is_one());
        numerator_gcd = numerator_gcd.gcd(scaled.numer());
    }
    if numerator_gcd.is_zero() {
        // The zero matrix cannot be Lorentzian; report its signature.
        return Err(QspaceError::NotLorentzian {
            dim: n,
            positive: 0,
            negative: 0,
            zero: n,
        });
    }
    let mut scale = BigRational::new(denominator_lcm, numerator_gcd);
    let mut rescaled = matrix.scaled(&ExactScalar::rational(scale.clone()));
    let (positive, negative, zero) = rescaled.signature();
    if positive == 1 && negative == n - 1 && zero == 0 {
        scale = -scale;
        rescaled = rescaled.scaled(&ExactScalar::integer(-1));
    } else if !(positive == n - 1 && negative == 1 && zero == 0) {
        return Err(QspaceError::NotLorentzian {
            dim: n,
            positive,
            negative,
            zero,
        });
    }
    Ok((QuadraticSpace::new(rescaled)?, scale))
}

/// A space-like vector with its cached norm.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Root {
    coords: ExactVector,
    norm: ExactScalar,
}

impl Root {
    /// Validates that `coords` is space-like in `space`.
    pub fn new(space: &QuadraticSpace, coords: ExactVector) -> Result<Self, QspaceError> {
        space.check_vector(&coords)?;
        let norm = space.norm(&coords);
        if !norm.is_positive() {
            return Err(QspaceError::NotSpacelike {
                index: 0,
                norm: norm.to_string(),
            });
        }
        Ok(Self { coords, norm })
    }

    /// The coordinates.
    pub fn coords(&self) -> &ExactVector {
        &self.coords
    }

    /// The cached norm `(e, e)`.
    pub fn norm(&self) -> &ExactScalar {
        &self.norm
    }
}

/// An acute-angled polyhedron given by outward root normals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polyhedron {
    space: QuadraticSpace,
    roots: Vec<Root>,
}

impl Polyhedron {
    /// Validates norms and pairwise angles and builds the polyhedron.
    pub fn new(space: QuadraticSpace, roots: Vec<ExactVector>) -> Result<Self, QspaceError> {
        let mut validated = Vec::with_capacity(roots.len());
        for (index, coords) in roots.into_iter().enumerate() {
            space.check_vector(&coords)?;
            let norm = space.norm(&coords);
            if !norm.is_positive() {
                return Err(QspaceError::NotSpacelike {
                    index,
                    norm: norm.to_string(),
                });
            }
            validated.push(Root { coords, norm });
        }
        for i in 0..validated.len() {
            for j in i + 1..validated.len() {
                let inner = space.inner(&validated[i].coords, &validated[j].coords);
                if inner.is_positive() {
                    return Err(QspaceError::NotAcuteAngled {
                        i,
                        j,
                        value: inner.to_string(),
                    });
                }
            }
        }
        Ok(Self {
            space,
            roots: validated,
        })
    }

    /// The ambient space.
    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    /// The validated roots.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    /// Number of walls.
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    /// Whether the polyhedron has no walls.
    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Coordinates of root `i`.
    pub fn root(&self, i: usize) -> &ExactVector {
        &self.roots[i].coords
    }

    /// The unnormalised Gram matrix `(eᵢ, eⱼ)` of the roots.
    pub fn gram(&self) -> ExactMatrix {
        let n = self.roots.len();
        let mut gram = ExactMatrix::zeros(n, n);
        for i in 0..n {
            gram.set(i, i, self.roots[i].norm.clone());
            for j in i + 1..n {
                let inner = self
                    .space
                    .inner(&self.roots[i].coords, &self.roots[j].coords);
                gram.set(i, j, inner.clone());
                gram.set(j, i, inner);
            }
        }
        gram
    }
}

#[derive(Serialize, Deserialize)]
struct SpaceJson {
    dim: usize,
    matrix: ExactMatrix,
}

#[derive(Serialize, Deserialize)]
struct PolyhedronJson {
    dim: usize,
    matrix: ExactMatrix,
    roots: Vec<ExactVector>,
}

impl Serialize for QuadraticSpace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SpaceJson {
            dim: self.dim,
            matrix: self.matrix.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadraticSpace {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = SpaceJson::deserialize(deserializer)?;
        if raw.matrix.rows() != raw.dim {
            return Err(serde::de::Error::custom(QspaceError::DimensionMismatch {
                declared: raw.dim,
                actual: raw.matrix.rows(),
            }));
        }
        QuadraticSpace::new(raw.matrix).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Polyhedron {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyhedronJson {
            dim: self.space.dim,
            matrix: self.space.matrix.clone(),
            roots: self.roots.iter().map(|r| r.coords.clone()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polyhedron {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PolyhedronJson::deserialize(deserializer)?;
        if raw.matrix.rows() != raw.dim {
            return Err(serde::de::Error::custom(QspaceError::DimensionMismatch {
                declared: raw.dim,
                actual: raw.matrix.rows(),
            }));
        }
        let space = QuadraticSpace::new(raw.matrix).map_err(serde::de::Error::custom)?;
        Polyhedron::new(space, raw.roots).map_err(serde::de::Error::custom)
    }
}
