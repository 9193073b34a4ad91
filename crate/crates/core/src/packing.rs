//! Inversive coordinates and sphere-packing orbits.
//!
//! Every space-like unit vector `e` in a Lorentzian space of signature
//! `(n+1, 1)` cuts the ideal boundary sphere `Sⁿ` along an oriented
//! `(n−1)`-sphere.  A convenient coordinate system for these spheres
//! lists, per sphere, its *bend* (signed inverse radius), its
//! *co-bend* (the bend of the image under inversion in the unit
//! sphere) and the bend-scaled center.  The tuple is read off by
//! evaluating a fixed frame of covectors on `e`: two covectors `b`,
//! `b̂` that are isotropic for the dual form and pair to `−2`, plus
//! `n` dual-orthonormal covectors `b₁..bₙ`.
//!
//! The coordinates turn sphere geometry into linear algebra.  The
//! *inversive product* `⟨v,w⟩ = −(v₀w₁ + v₁w₀)/2 + Σ vₖwₖ` of two
//! coordinate tuples equals the bilinear form of the underlying
//! roots, so unit roots give `⟨v,v⟩ = 1`, externally tangent unit
//! spheres give `⟨v,w⟩ = −1`, and disjoint interiors give
//! `⟨v,w⟩ < −1`.  A sphere with bend `0` is a hyperplane: its stored
//! center degenerates to the unit normal and half the co-bend is the
//! signed distance from the origin.
//!
//! Packings arise from Coxeter polyhedra.  Pick walls that pairwise
//! avoid each other (a *cluster*) and reflect them through the
//! remaining walls (the *cocluster*): the orbit of the cluster
//! spheres under the generated group is a sphere packing.  [`orbit`]
//! computes it breadth-first with exact coordinates,
//! [`audit_packing`] re-checks unit norms and disjointness pair by
//! pair, and [`render_svg`] draws the planar case.  Bend arithmetic —
//! orbit closures of bend data under the conjugated wall reflections,
//! invariant congruences between bends, and integrality of all bends
//! after one fixed rescale — is covered by [`bend_orbit`],
//! [`find_bend_congruence`] and [`integrality_scan`].

use crate::exact::{ExactMatrix, ExactScalar, ExactVector};
use crate::qspace::{QspaceError, QuadraticSpace, Root};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

/// Errors from frame construction, orbit generation, bend arithmetic
/// and rendering.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingError {
    /// Orthonormalization needs a square root the scalar class cannot
    /// express.
    #[error("no inversive frame over the scalar class: {detail}")]
    RadicalClosure {
        /// Description of the failing normalization step.
        detail: String,
    },
    /// A supplied covector matrix is not an inversive frame.
    #[error("covector row {row} violates the inversive frame pairing")]
    InvalidFrame {
        /// First row participating in a wrong dual pairing.
        row: usize,
    },
    /// A vector or matrix does not match the expected dimension.
    #[error("expected dimension {expected}, got {found}")]
    DimensionMismatch {
        /// Dimension required by the frame or generator set.
        expected: usize,
        /// Dimension actually supplied.
        found: usize,
    },
    /// The cluster is empty.
    #[error("cluster must contain at least one root")]
    EmptyCluster,
    /// Two roots of the partition span the same mirror.
    #[error("cluster root {cluster} and root {other} lie on the same ray")]
    ClusterOverlap {
        /// Index into the cluster list.
        cluster: usize,
        /// Index into the list the duplicate was found in.
        other: usize,
    },
    /// A cluster sphere crosses another wall at a proper angle.
    #[error("cluster root {cluster} meets root {other} at a proper angle")]
    ClusterMeets {
        /// Index into the cluster list.
        cluster: usize,
        /// Index into the list the crossing wall was found in.
        other: usize,
    },
    /// The conjugating root list is not a basis.
    #[error("conjugation basis is singular")]
    SingularBasis,
    /// The renderer only draws circles in the plane.
    #[error("renderer needs {expected} inversive coordinates, got {found}")]
    UnsupportedDimension {
        /// Coordinate count the renderer supports.
        expected: usize,
        /// Coordinate count actually supplied.
        found: usize,
    },
    /// A value that must be an integer is not.
    #[error("expected an integer, got {value}")]
    NotInteger {
        /// Offending value, printed exactly.
        value: String,
    },
    /// An orbit sphere fails the unit-norm audit.
    #[error("orbit sphere {index} is not a unit sphere")]
    NotUnitSphere {
        /// Record index within the audited orbit.
        index: usize,
    },
    /// Two orbit spheres overlap.
    #[error("orbit spheres {first} and {second} have inversive product above -1")]
    OverlappingSpheres {
        /// Record index of the first sphere.
        first: usize,
        /// Record index of the second sphere.
        second: usize,
    },
    /// Underlying space or root validation failed.
    #[error(transparent)]
    Space(#[from] QspaceError),
}

/// A frame of covectors turning roots into inversive coordinates.
///
/// The rows are `b`, `b̂`, `b₁..bₙ` in order; applied to a root they
/// yield the bend, the co-bend and the bend-scaled center of the
/// root's sphere.  The defining property is the dual Gram shape:
/// `b` and `b̂` are dual-isotropic with pairing `−2`, the `bᵢ` are
/// dual-orthonormal and dual-orthogonal to both.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InversiveFrame {
    space: QuadraticSpace,
    covectors: ExactMatrix,
}

impl InversiveFrame {
    /// Validates a hand-picked covector matrix against the dual form
    /// of `space` and wraps it.
    pub fn from_covectors(
        space: QuadraticSpace,
        covectors: ExactMatrix,
    ) -> Result<Self, PackingError> {
        let dim = space.dim();
        if covectors.rows() != dim || covectors.cols() != dim {
            return Err(PackingError::DimensionMismatch {
                expected: dim,
                found: covectors.rows().max(covectors.cols()),
            });
        }
        let dual = space
            .matrix()
            .inverse()
            .expect("Lorentzian forms are nondegenerate");
        let gram = &(&covectors * &dual) * &covectors.transpose();
        let expected = inversive_gram(dim);
        for i in 0..dim {
            for j in 0..dim {
                if gram.get(i, j) != expected.get(i, j) {
                    return Err(PackingError::InvalidFrame { row: i.min(j) });
                }
            }
        }
        Ok(Self { space, covectors })
    }

    /// The underlying quadratic space.
    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    /// The covector rows `b`, `b̂`, `b₁..bₙ`.
    pub fn covectors(&self) -> &ExactMatrix {
        &self.covectors
    }

    /// Evaluates the frame on a root, producing its sphere.
    pub fn apply(&self, root: &ExactVector) -> Result<InversiveSphere, PackingError> {
        if root.len() != self.space.dim() {
            return Err(PackingError::DimensionMismatch {
                expected: self.space.dim(),
                found: root.len(),
            });
        }
        Ok(InversiveSphere {
            coords: self.covectors.mul_vec(root),
        })
    }
}

/// The Gram matrix every inversive frame has under the dual form: the
/// isotropic pair `b`, `b̂` with pairing `−2`, then an identity block.
fn inversive_gram(dim: usize) -> ExactMatrix {
    ExactMatrix::from_fn(dim, dim, |i, j| match (i, j) {
        (0, 1) | (1, 0) => ExactScalar::integer(-2),
        (0, 0) | (1, 1) => ExactScalar::zero(),
        _ if i == j => ExactScalar::one(),
        _ => ExactScalar::zero(),
    })
}

/// Builds the canonical inversive frame of a Lorentzian space.
///
/// The construction is deterministic.  When some standard dual
/// covector is dual-isotropic, the first such covector becomes `b`,
/// the first covector pairing with it nontrivially is corrected into
/// `b̂`, and the remaining standard covectors are projected off the
/// pair and orthonormalized in index order.  Otherwise the standard
/// covectors are orthogonalized in index order and the unique
/// negative-norm direction is combined with the first positive one
/// into the isotropic pair.  Each normalization takes one square root
/// of a rational number; if a norm is irrational the scalar class
/// cannot express the frame and the construction reports a
/// radical-closure failure — the caller may then supply a hand-picked
/// frame through [`InversiveFrame::from_covectors`].
pub fn inversive_frame(space: &QuadraticSpace) -> Result<InversiveFrame, PackingError> {
    let dim = space.dim();
    let dual_matrix = space
        .matrix()
        .inverse()
        .expect("Lorentzian forms are nondegenerate");
    let dual = |u: &ExactVector, v: &ExactVector| u.dot(&dual_matrix.mul_vec(v));
    let delta = |i: usize| {
        let mut coords = vec![ExactScalar::zero(); dim];
        coords[i] = ExactScalar::one();
        ExactVector(coords)
    };
    let mut rows: Vec<ExactVector> = Vec::with_capacity(dim);
    if let Some(i) = (0..dim).find(|&i| dual(&delta(i), &delta(i)).is_zero()) {
        let b = delta(i);
        let j = (0..dim)
            .find(|&j| j != i && !dual(&b, &delta(j)).is_zero())
            .expect("nondegenerate forms pair every covector with something");
        let pairing = dual(&b, &delta(j));
        let rescaled = delta(j).scaled(&(&ExactScalar::integer(-2) / &pairing));
        let correction = &dual(&rescaled, &rescaled) / &ExactScalar::integer(4);
        let bhat = &rescaled + &b.scaled(&correction);
        let mut projected = Vec::with_capacity(dim - 2);
        for k in (0..dim).filter(|&k| k != i && k != j) {
            let alpha = &dual(&delta(k), &bhat) / &ExactScalar::integer(2);
            let beta = &dual(&delta(k), &b) / &ExactScalar::integer(2);
            projected.push(&(&delta(k) + &b.scaled(&alpha)) + &bhat.scaled(&beta));
        }
        rows.push(b);
        rows.push(bhat);
        rows.extend(orthonormalize(&dual, projected)?);
    } else {
        let mut basis: Vec<ExactVector> = Vec::with_capacity(dim);
        let mut norms: Vec<ExactScalar> = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut vector = delta(k);
            for (u, norm) in basis.iter().zip(&norms) {
                let coefficient = &dual(&vector, u) / norm;
                vector = &vector - &u.scaled(&coefficient);
            }
            let norm = dual(&vector, &vector);
            if norm.is_zero() {
                return Err(PackingError::RadicalClosure {
                    detail: format!(
                        "orthogonalization of covector {} hit a light-like direction",
                        k + 1
                    ),
                });
            }
            basis.push(vector);
            norms.push(norm);
        }
        let negative = norms
            .iter()
            .position(ExactScalar::is_negative)
            .expect("a Lorentzian dual form has a negative direction");
        let positive = norms
            .iter()
            .position(ExactScalar::is_positive)
            .expect("a Lorentzian dual form has a positive direction");
        let minus = basis[negative].scaled(&unit_scale(&norms[negative].abs())?);
        let plus = basis[positive].scaled(&unit_scale(&norms[positive])?);
        rows.push(&plus + &minus);
        rows.push(&minus - &plus);
        for (k, (u, norm)) in basis.iter().zip(&norms).enumerate() {
            if k != negative && k != positive {
                rows.push(u.scaled(&unit_scale(norm)?));
            }
        }
    }
    let covectors = ExactMatrix::from_rows(rows.into_iter().map(|row| row.0).collect());
    InversiveFrame::from_covectors(space.clone(), covectors)
}

/// Gram–Schmidt over the dual form followed by normalization; the
/// input vectors must span a positive definite subspace.
fn orthonormalize(
    dual: &impl Fn(&ExactVector, &ExactVector) -> ExactScalar,
    vectors: Vec<ExactVector>,
) -> Result<Vec<ExactVector>, PackingError> {
    let mut pending: Vec<(ExactVector, ExactScalar)> = Vec::with_capacity(vectors.len());
    for (k, mut vector) in vectors.into_iter().enumerate() {
        for (u, norm) in &pending {
            let coefficient = &dual(&vector, u) / norm;
            vector = &vector - &u.scaled(&coefficient);
        }
        let norm = dual(&vector, &vector);
        if !norm.is_positive() {
            return Err(PackingError::RadicalClosure {
                detail: format!(
                    "projected covector {} has non-positive dual norm {}",
                    k + 1,
                    norm
                ),
            });
        }
        pending.push((vector, norm));
    }
    pending
        .into_iter()
        .map(|(vector, norm)| Ok(vector.scaled(&unit_scale(&norm)?)))
        .collect()
}

/// `1/√ν` for positive `ν`, or a radical-closure error when the
/// square root leaves the scalar class.
fn unit_scale(norm: &ExactScalar) -> Result<ExactScalar, PackingError> {
    let root = norm.sqrt().map_err(|e| PackingError::RadicalClosure {
        detail: e.to_string(),
    })?;
    root.inv().map_err(|e| PackingError::RadicalClosure {
        detail: e.to_string(),
    })
}

/// Rescales a space-like root to unit norm without leaving the scalar
/// class.
pub fn unit_root(
    space: &QuadraticSpace,
    root: &ExactVector,
) -> Result<ExactVector, PackingError> {
    Root::new(space, root.clone())?;
    Ok(root.scaled(&unit_scale(&space.norm(root))?))
}

/// Inversive coordinates of one oriented sphere.
///
/// Coordinates read `(bend, co-bend, x₁..xₙ)`: for a nonzero bend the
/// sphere has radius `1/|bend|` and center `(x₁..xₙ)/bend`, while
/// bend zero describes a hyperplane with unit normal `(x₁..xₙ)` at
/// signed distance `co-bend/2` from the origin.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct InversiveSphere {
    coords: ExactVector,
}

impl InversiveSphere {
    /// Wraps raw inversive coordinates (bend, co-bend and center
    /// data).
    pub fn from_coords(coords: ExactVector) -> Self {
        assert!(
            coords.len() >= 2,
            "inversive coordinates need at least bend and co-bend"
        );
        Self { coords }
    }

    /// The raw coordinate tuple.
    pub fn coords(&self) -> &ExactVector {
        &self.coords
    }

    /// Signed inverse radius.
    pub fn bend(&self) -> &ExactScalar {
        &self.coords[0]
    }

    /// Bend of the image under inversion in the unit sphere.
    pub fn cobend(&self) -> &ExactScalar {
        &self.coords[1]
    }

    /// Dimension `n` of the ambient boundary sphere.
    pub fn dim(&self) -> usize {
        self.coords.len() - 2
    }

    /// Exact center, absent when the sphere is a hyperplane.
    pub fn center(&self) -> Option<Vec<ExactScalar>> {
        if self.bend().is_zero() {
            return None;
        }
        let inverse_bend = self.bend().inv().expect("nonzero bend");
        Some(
            self.coords
                .iter()
                .skip(2)
                .map(|x| x * &inverse_bend)
                .collect(),
        )
    }
}

/// The inversive product `−(v₀w₁ + v₁w₀)/2 + Σ vₖwₖ`.
///
/// For spheres produced by one frame this equals the bilinear form of
/// the underlying roots: `1` for a unit sphere with itself, `−1` for
/// externally tangent unit spheres, below `−1` for disjoint
/// interiors.
pub fn inversive_product(v: &InversiveSphere, w: &InversiveSphere) -> ExactScalar {
    assert_eq!(
        v.coords.len(),
        w.coords.len(),
        "inversive product dimension mismatch"
    );
    let minus_half = ExactScalar::rational(BigRational::new(BigInt::from(-1), BigInt::from(2)));
    let cross = &(&v.coords[0] * &w.coords[1]) + &(&v.coords[1] * &w.coords[0]);
    let mut sum = &cross * &minus_half;
    for (x, y) in v.coords.iter().skip(2).zip(w.coords.iter().skip(2)) {
        sum += &(x * y);
    }
    sum
}

/// One sphere of an orbit: the root, its coordinates and how it was
/// reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitRecord {
    /// Exact root vector whose mirror carries the sphere.
    pub root: ExactVector,
    /// Inversive coordinates of the sphere.
    pub sphere: InversiveSphere,
    /// Mirror indices applied to the seed, in application order.
    pub word: Vec<usize>,
    /// Word length.
    pub depth: usize,
}

/// Canonical representative of a root up to positive rescaling: the
/// vector divided by the absolute value of its first nonzero entry.
fn ray_key(root: &ExactVector) -> ExactVector {
    match root.iter().find(|x| !x.is_zero()) {
        Some(leading) => {
            let scale = leading
                .abs()
                .inv()
                .expect("a nonzero leading entry is invertible");
            root.scaled(&scale)
        }
        None => root.clone(),
    }
}

/// Reflects every frontier root in every mirror, fanning out across
/// the thread pool; the per-record batches are recombined in frontier
/// order, so the result is independent of the pool size.
fn expand_frontier(
    space: &QuadraticSpace,
    mirrors: &[ExactVector],
    frontier: &[OrbitRecord],
) -> Vec<(ExactVector, ExactVector, Vec<usize>)> {
    frontier
        .par_iter()
        .map(|record| {
            let mut local = Vec::with_capacity(mirrors.len());
            for (index, mirror) in mirrors.iter().enumerate() {
                let image = space.reflect(mirror, &record.root);
                let mut word = record.word.clone();
                word.push(index);
                local.push((ray_key(&image), image, word));
            }
            local
        })
        .reduce(Vec::new, |mut left, mut right| {
            left.append(&mut right);
            left
        })
}

/// Breadth-first closure of `seeds` under reflections in `mirrors`,
/// with no cluster validation.
///
/// Seeds may themselves appear among the mirrors; this is exactly the
/// enlarged reflection set used to probe how a packing behaves under
/// the full wall group of its chamber.  Records come out deduplicated
/// up to positive rescaling and ordered by depth, then by canonical
/// root coordinates; the word kept for a sphere is the first one in
/// that order.
pub fn reflect_closure(
    frame: &InversiveFrame,
    seeds: &[ExactVector],
    mirrors: &[ExactVector],
    depth: usize,
) -> Result<Vec<OrbitRecord>, PackingError> {
    let space = frame.space();
    for mirror in mirrors {
        Root::new(space, mirror.clone())?;
    }
    for seed in seeds {
        Root::new(space, seed.clone())?;
    }
    let mut seeded: Vec<(ExactVector, ExactVector)> =
        seeds.iter().map(|seed| (ray_key(seed), seed.clone())).collect();
    seeded.sort();
    let mut seen: BTreeSet<ExactVector> = BTreeSet::new();
    let mut level: Vec<OrbitRecord> = Vec::new();
    for (key, root) in seeded {
        if seen.insert(key) {
            level.push(OrbitRecord {
                sphere: frame.apply(&root)?,
                root,
                word: Vec::new(),
                depth: 0,
            });
        }
    }
    let mut records = level.clone();
    for _ in 1..=depth {
        let mut candidates = expand_frontier(space, mirrors, &level);
        candidates.sort();
        let mut next = Vec::new();
        for (key, root, word) in candidates {
            if seen.insert(key) {
                next.push(OrbitRecord {
                    sphere: frame.apply(&root)?,
                    depth: word.len(),
                    root,
                    word,
                });
            }
        }
        if next.is_empty() {
            break;
        }
        records.extend(next.iter().cloned());
        level = next;
    }
    Ok(records)
}

/// Whether two mirrors avoid each other: tangent at the boundary or
/// diverging, i.e. negative inner product with `inner² ≥ norm·norm`.
fn avoids(space: &QuadraticSpace, u: &ExactVector, v: &ExactVector) -> bool {
    let inner = space.inner(u, v);
    if !inner.is_negative() {
        return false;
    }
    let separation = &(&inner * &inner) - &(&space.norm(u) * &space.norm(v));
    !separation.is_negative()
}

/// Breadth-first packing orbit of a validated cluster.
///
/// Cluster spheres must pairwise avoid each other, must not cross any
/// cocluster wall at a proper angle (orthogonal contact is fine), and
/// no ray may repeat between the lists.  The orbit of the cluster
/// under the cocluster reflections is then a sphere packing;
/// [`audit_packing`] re-verifies the result sphere by sphere.
pub fn orbit(
    frame: &InversiveFrame,
    cluster: &[ExactVector],
    cocluster: &[ExactVector],
    depth: usize,
) -> Result<Vec<OrbitRecord>, PackingError> {
    if cluster.is_empty() {
        return Err(PackingError::EmptyCluster);
    }
    let space = frame.space();
    for root in cluster.iter().chain(cocluster) {
        Root::new(space, root.clone())?;
    }
    let cluster_keys: Vec<ExactVector> = cluster.iter().map(ray_key).collect();
    let cocluster_keys: Vec<ExactVector> = cocluster.iter().map(ray_key).collect();
    for (a, key) in cluster_keys.iter().enumerate() {
        for (b, other_key) in cluster_keys.iter().enumerate().skip(a + 1) {
            if key == other_key {
                return Err(PackingError::ClusterOverlap { cluster: a, other: b });
            }
            if !avoids(space, &cluster[a], &cluster[b]) {
                return Err(PackingError::ClusterMeets { cluster: a, other: b });
            }
        }
        for (b, other_key) in cocluster_keys.iter().enumerate() {
            if key == other_key {
                return Err(PackingError::ClusterOverlap { cluster: a, other: b });
            }
            let inner = space.inner(&cluster[a], &cocluster[b]);
            if !inner.is_zero() && !avoids(space, &cluster[a], &cocluster[b]) {
                return Err(PackingError::ClusterMeets { cluster: a, other: b });
            }
        }
    }
    reflect_closure(frame, cluster, cocluster, depth)
}

/// Re-checks a computed orbit as a packing: every sphere must be a
/// unit sphere and distinct spheres must be tangent or have disjoint
/// interiors (pairwise inversive product at most `−1`).
pub fn audit_packing(records: &[OrbitRecord]) -> Result<(), PackingError> {
    let one = ExactScalar::one();
    for (index, record) in records.iter().enumerate() {
        if inversive_product(&record.sphere, &record.sphere) != one {
            return Err(PackingError::NotUnitSphere { index });
        }
    }
    for (first, a) in records.iter().enumerate() {
        for (second, b) in records.iter().enumerate().skip(first + 1) {
            let product = inversive_product(&a.sphere, &b.sphere);
            if (&product + &one).is_positive() {
                return Err(PackingError::OverlappingSpheres { first, second });
            }
        }
    }
    Ok(())
}

/// Exact Gram matrix of a root list under the space's form.
pub fn gram_of_orbit(roots: &[ExactVector], space: &QuadraticSpace) -> ExactMatrix {
    ExactMatrix::from_fn(roots.len(), roots.len(), |i, j| {
        space.inner(&roots[i], &roots[j])
    })
}

/// Conjugates mirror reflections into the coordinate system of a root
/// basis.
///
/// With the basis roots as the rows of `V` and `M` the matrix of a
/// reflection acting on column vectors, a reflection acts on row
/// vectors as right multiplication by `Mᵀ`, so its matrix in basis
/// coordinates is `A = V·Mᵀ·V⁻¹`.  The same `A` acts on the left on
/// columns of per-sphere data — evaluating any fixed covector on the
/// reflected basis multiplies the column of values by `A`.
pub fn conjugated_generators(
    basis: &[ExactVector],
    mirrors: &[ExactVector],
    space: &QuadraticSpace,
) -> Result<Vec<ExactMatrix>, PackingError> {
    let dim = space.dim();
    if basis.len() != dim {
        return Err(PackingError::DimensionMismatch {
            expected: dim,
            found: basis.len(),
        });
    }
    let v = ExactMatrix::from_rows(basis.iter().map(|row| row.0.clone()).collect());
    let v_inverse = v.inverse().ok_or(PackingError::SingularBasis)?;
    mirrors
        .iter()
        .map(|mirror| {
            Root::new(space, mirror.clone())?;
            let row_action = space.reflection_matrix(mirror).transpose();
            Ok(&(&v * &row_action) * &v_inverse)
        })
        .collect()
}

/// Closure of an initial data vector under left multiplication by the
/// generators, through words of length at most `depth`, deduplicated
/// and sorted.
pub fn bend_orbit(
    generators: &[ExactMatrix],
    initial: &ExactVector,
    depth: usize,
) -> Result<Vec<ExactVector>, PackingError> {
    let dim = initial.len();
    for matrix in generators {
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(PackingError::DimensionMismatch {
                expected: dim,
                found: matrix.rows().max(matrix.cols()),
            });
        }
    }
    let mut seen: BTreeSet<ExactVector> = BTreeSet::new();
    seen.insert(initial.clone());
    let mut frontier = vec![initial.clone()];
    for _ in 1..=depth {
        let mut next = Vec::new();
        for vector in &frontier {
            for matrix in generators {
                let image = matrix.mul_vec(vector);
                if seen.insert(image.clone()) {
                    next.push(image);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}

/// Searches for an invariant congruence `c·x ≡ 0 (mod m)` on integer
/// data vectors.
///
/// Moduli are scanned ascending from 2 to `modulus_bound`; per
/// modulus, coefficient vectors are scanned in little-endian counting
/// order.  The first pair `(c, m)` is returned such that the lattice
/// `L = {x ∈ ℤᵈ : c·x ≡ 0 (mod m)}` contains the initial vector, is
/// carried into `ℤᵈ` by every generator, and is mapped into itself.
/// Both lattice conditions are decided exactly through annihilators:
/// for `gcd(c, m) = 1` an integer functional vanishes on `L` modulo a
/// multiple `M` of `m` precisely when it is congruent to a multiple
/// of `(M/m)·c` modulo `M`.  Candidates with `gcd(c, m) > 1` cut the
/// same lattice as a divisor modulus already scanned and are skipped.
///
/// Generators may have rational entries — a generator then constrains
/// the lattice through its denominators — but the initial vector must
/// be integral.
pub fn find_bend_congruence(
    generators: &[ExactMatrix],
    initial: &ExactVector,
    modulus_bound: u64,
) -> Result<Option<(Vec<u64>, u64)>, PackingError> {
    let dim = initial.len();
    let start: Vec<BigInt> = initial
        .iter()
        .map(|x| {
            x.as_rational()
                .filter(BigRational::is_integer)
                .map(|q| q.to_integer())
                .ok_or_else(|| PackingError::NotInteger {
                    value: x.to_string(),
                })
        })
        .collect::<Result<_, _>>()?;
    let mut cleared: Vec<(Vec<Vec<BigInt>>, BigInt)> = Vec::with_capacity(generators.len());
    for matrix in generators {
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(PackingError::DimensionMismatch {
                expected: dim,
                found: matrix.rows().max(matrix.cols()),
            });
        }
        let mut denominator = BigInt::one();
        let mut entries: Vec<Vec<BigRational>> = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut row = Vec::with_capacity(dim);
            for j in 0..dim {
                let entry = matrix.get(i, j).as_rational().ok_or_else(|| {
                    PackingError::NotInteger {
                        value: matrix.get(i, j).to_string(),
                    }
                })?;
                denominator = denominator.lcm(entry.denom());
                row.push(entry);
            }
            entries.push(row);
        }
        let numerators = entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| (entry * BigRational::from(denominator.clone())).to_integer())
                    .collect()
            })
            .collect();
        cleared.push((numerators, denominator));
    }
    for modulus in 2..=modulus_bound {
        let mut coefficients = vec![0u64; dim];
        'candidates: loop {
            let mut position = 0;
            loop {
                if position == dim {
                    break 'candidates;
                }
                coefficients[position] += 1;
                if coefficients[position] < modulus {
                    break;
                }
                coefficients[position] = 0;
                position += 1;
            }
            let mut shared = modulus;
            for &digit in &coefficients {
                shared = num_integer::gcd(shared, digit);
            }
            if shared != 1 {
                continue;
            }
            if congruence_satisfied(&coefficients, &start, &cleared, modulus) {
                return Ok(Some((coefficients.clone(), modulus)));
            }
        }
    }
    Ok(None)
}

/// Checks one primitive candidate `(c, m)` against the initial vector
/// and all denominator-cleared generators.
fn congruence_satisfied(
    coefficients: &[u64],
    initial: &[BigInt],
    generators: &[(Vec<Vec<BigInt>>, BigInt)],
    modulus: u64,
) -> bool {
    let m = BigInt::from(modulus);
    let dot: BigInt = coefficients
        .iter()
        .zip(initial)
        .map(|(&c, x)| BigInt::from(c) * x)
        .sum();
    if !dot.mod_floor(&m).is_zero() {
        return false;
    }
    for (numerators, denominator) in generators {
        // Each row of N/denominator must map the lattice into ℤ:
        // (M/denominator)·row ≡ k·(M/m)·c (mod M) with M = lcm(m, denominator).
        let cap = m.lcm(denominator);
        let row_scale = &cap / denominator;
        let coefficient_scale = &cap / &m;
        for row in numerators {
            if !annihilator_multiple(row, coefficients, &row_scale, &coefficient_scale, &cap, modulus)
            {
                return false;
            }
        }
        // The functional c·N must vanish on the lattice modulo
        // denominator·m, i.e. equal k·denominator·c there.
        let cap = denominator * &m;
        let mut combined = vec![BigInt::zero(); coefficients.len()];
        for (&c, row) in coefficients.iter().zip(numerators) {
            for (slot, entry) in combined.iter_mut().zip(row) {
                *slot += BigInt::from(c) * entry;
            }
        }
        if !annihilator_multiple(&combined, coefficients, &BigInt::one(), denominator, &cap, modulus)
        {
            return false;
        }
    }
    true
}

/// Whether `row_scale·row ≡ k·(coefficient_scale·c) (mod cap)` for
/// some `k` below the modulus.
fn annihilator_multiple(
    row: &[BigInt],
    coefficients: &[u64],
    row_scale: &BigInt,
    coefficient_scale: &BigInt,
    cap: &BigInt,
    modulus: u64,
) -> bool {
    'scan: for k in 0..modulus {
        let factor = BigInt::from(k) * coefficient_scale;
        for (entry, &c) in row.iter().zip(coefficients) {
            let lhs = (entry * row_scale).mod_floor(cap);
            let rhs = (&factor * BigInt::from(c)).mod_floor(cap);
            if lhs != rhs {
                continue 'scan;
            }
        }
        return true;
    }
    false
}

/// Result of a bend-integrality scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralityReport {
    /// Whether one fixed rescale makes every scanned bend an integer.
    pub integral: bool,
    /// The smallest working rescale, when integral.
    pub rescale: Option<ExactScalar>,
    /// A bend no candidate rescale clears, when not integral.
    pub witness: Option<ExactScalar>,
}

/// Scans orbit bends for integrality after one fixed rescale.
///
/// Candidate rescales are `1` and the reciprocals `1/|bend|` of the
/// observed bends — exactly the scales that normalize one observed
/// sphere to bend `1`.  The scan reports the numerically smallest
/// candidate `t` with `t·bend` an integer across every record of
/// depth at most `depth`; when no candidate works, it reports the
/// smallest bend that even the largest candidate cannot clear.
/// Hyperplanes (bend `0`) never constrain the scan.
pub fn integrality_scan(records: &[OrbitRecord], depth: usize) -> IntegralityReport {
    let mut bends: BTreeSet<ExactScalar> = BTreeSet::new();
    for record in records.iter().filter(|record| record.depth <= depth) {
        let bend = record.sphere.bend();
        if !bend.is_zero() {
            bends.insert(bend.clone());
        }
    }
    if bends.is_empty() {
        return IntegralityReport {
            integral: true,
            rescale: Some(ExactScalar::one()),
            witness: None,
        };
    }
    let mut candidates = vec![ExactScalar::one()];
    for bend in &bends {
        candidates.push(bend.abs().inv().expect("nonzero bend"));
    }
    candidates.sort_by(numeric_order);
    candidates.dedup();
    for candidate in &candidates {
        if bends.iter().all(|bend| (candidate * bend).is_integer()) {
            return IntegralityReport {
                integral: true,
                rescale: Some(candidate.clone()),
                witness: None,
            };
        }
    }
    let largest = candidates.last().expect("the identity candidate exists");
    let mut ordered: Vec<&ExactScalar> = bends.iter().collect();
    ordered.sort_by(|a, b| numeric_order(a, b));
    let witness = ordered
        .into_iter()
        .find(|bend| !(largest * *bend).is_integer())
        .cloned();
    IntegralityReport {
        integral: false,
        rescale: None,
        witness,
    }
}

/// Numeric (not structural) comparison of exact scalars.
fn numeric_order(a: &ExactScalar, b: &ExactScalar) -> std::cmp::Ordering {
    let difference = a - b;
    if difference.is_negative() {
        std::cmp::Ordering::Less
    } else if difference.is_zero() {
        std::cmp::Ordering::Equal
    } else {
        std::cmp::Ordering::Greater
    }
}

/// Rectangular drawing region in sphere coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Viewport {
    /// Left edge.
    pub min_x: f64,
    /// Top edge.
    pub min_y: f64,
    /// Width.
    pub width: f64,
    /// Height.
    pub height: f64,
}

impl Viewport {
    /// Square viewport centered at the origin with the given
    /// half-width.
    pub fn centered(half_width: f64) -> Self {
        Self {
            min_x: -half_width,
            min_y: -half_width,
            width: 2.0 * half_width,
            height: 2.0 * half_width,
        }
    }
}

/// Renders plane spheres (two inversive center coordinates) as a
/// deterministic SVG document.
///
/// Circles take their exact center and radius, converted to floats
/// only at output time; bend-zero spheres are drawn as lines through
/// `normal·(co-bend/2)` perpendicular to their unit normal, extended
/// past the viewport and clipped by it.  Input order is drawing
/// order, so callers control layering.
pub fn render_svg(spheres: &[InversiveSphere], viewport: &Viewport) -> Result<String, PackingError> {
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.6} {:.6} {:.6} {:.6}\">\n",
        viewport.min_x, viewport.min_y, viewport.width, viewport.height
    ));
    let stroke = viewport.width.max(viewport.height) / 400.0;
    out.push_str(&format!(
        "<g fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"{stroke:.6}\">\n"
    ));
    // Exact zeros can surface as the float -0.0; both print differently
    // but describe the same coordinate, so flatten the sign.
    let unsign = |x: f64| if x == 0.0 { 0.0 } else { x };
    for sphere in spheres {
        if sphere.coords().len() != 4 {
            return Err(PackingError::UnsupportedDimension {
                expected: 4,
                found: sphere.coords().len(),
            });
        }
        let bend = sphere.bend();
        if bend.is_zero() {
            let normal_x = sphere.coords()[2].to_f64();
            let normal_y = sphere.coords()[3].to_f64();
            let offset = sphere.cobend().to_f64() / 2.0;
            let (px, py) = (normal_x * offset, normal_y * offset);
            let reach = viewport.width.hypot(viewport.height);
            let (dx, dy) = (-normal_y, normal_x);
            out.push_str(&format!(
                "<line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\"/>\n",
                unsign(px - reach * dx),
                unsign(py - reach * dy),
                unsign(px + reach * dx),
                unsign(py + reach * dy)
            ));
        } else {
            let inverse_bend = bend.inv().expect("nonzero bend");
            let cx = unsign((&sphere.coords()[2] * &inverse_bend).to_f64());
            let cy = unsign((&sphere.coords()[3] * &inverse_bend).to_f64());
            let radius = inverse_bend.abs().to_f64();
            out.push_str(&format!(
                "<circle cx=\"{cx:.6}\" cy=\"{cy:.6}\" r=\"{radius:.6}\"/>\n"
            ));
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{build_diagram, find_isolated_roots};
    use crate::fixtures;
    use crate::vinberg::{run, Budget, RunStatus, VinbergState};

    fn rat(numer: i64, denom: i64) -> ExactScalar {
        ExactScalar::rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    fn rad(numer: i64, denom: i64, radicand: u64) -> ExactScalar {
        ExactScalar::radical(
            BigRational::new(BigInt::from(numer), BigInt::from(denom)),
            radicand,
        )
    }

    fn diagonal_space() -> QuadraticSpace {
        QuadraticSpace::diagonal(&[-1, 1, 1, 1]).expect("diagonal Lorentzian form")
    }

    #[test]
    fn canonical_frame_of_the_diagonal_form_pairs_the_two_unit_axes() {
        let frame = inversive_frame(&diagonal_space()).expect("frame exists");
        let expected = ExactMatrix::from_i64_rows(&[
            vec![1, 1, 0, 0],
            vec![1, -1, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ]);
        assert_eq!(
            frame.covectors(),
            &expected,
            "the diagonal form combines the time axis with the first space axis"
        );
    }

    #[test]
    fn canonical_frame_of_the_prism_space_is_the_standard_dual_basis() {
        let frame = inversive_frame(&fixtures::prism_space()).expect("frame exists");
        assert_eq!(
            frame.covectors(),
            &ExactMatrix::identity(5),
            "the prism pairing block already has the inversive shape"
        );
    }

    #[test]
    fn frame_validation_rejects_a_non_isotropic_leading_covector() {
        let error = InversiveFrame::from_covectors(diagonal_space(), ExactMatrix::identity(4))
            .expect_err("the identity rows are not an inversive frame");
        assert_eq!(
            error,
            PackingError::InvalidFrame { row: 0 },
            "the first standard covector is not dual-isotropic"
        );
    }

    #[test]
    fn frame_construction_reports_radical_closure_failures() {
        let rows = vec![
            vec![rat(0, 1), rat(-1, 1), rat(0, 1)],
            vec![rat(-1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rad(1, 1, 2)],
        ];
        let space = QuadraticSpace::new(ExactMatrix::from_rows(rows)).expect("valid space");
        let error = inversive_frame(&space).expect_err("no frame over the scalar class");
        assert!(
            matches!(error, PackingError::RadicalClosure { .. }),
            "normalizing a covector of dual norm 1/√2 needs a nested radical, got {error:?}"
        );
    }

    #[test]
    fn prism_wall_spheres_are_unit_spheres() {
        let frame = inversive_frame(&fixtures::prism_space()).expect("frame exists");
        for (index, wall) in fixtures::prism_normals().iter().enumerate() {
            let sphere = frame.apply(wall).expect("wall maps to a sphere");
            assert_eq!(
                inversive_product(&sphere, &sphere),
                ExactScalar::one(),
                "wall {} is a unit sphere",
                index + 1
            );
        }
    }

    #[test]
    fn a_zero_bend_sphere_reads_as_a_line_with_unit_normal() {
        let frame = prism_frame();
        let sphere = frame
            .apply(&fixtures::prism_normals()[1])
            .expect("wall 2 maps to a sphere");
        assert!(sphere.bend().is_zero(), "wall 2 passes through infinity");
        assert_eq!(sphere.center(), None, "a hyperplane has no finite center");
        let normal: Vec<ExactScalar> = sphere.coords().iter().skip(2).cloned().collect();
        assert_eq!(
            normal,
            vec![ExactScalar::zero(), ExactScalar::zero(), ExactScalar::integer(-1)],
            "the stored center coordinates are the unit normal of the plane"
        );
        let squares = normal.iter().fold(ExactScalar::zero(), |acc, x| &acc + &(x * x));
        assert_eq!(squares, ExactScalar::one(), "the normal is a unit vector");
    }

    fn prism_frame() -> InversiveFrame {
        inversive_frame(&fixtures::prism_space()).expect("frame exists")
    }

    fn prism_partition() -> (Vec<ExactVector>, Vec<ExactVector>) {
        let walls = fixtures::prism_normals();
        (vec![walls[5].clone()], walls[..5].to_vec())
    }

    #[test]
    fn orbit_depth_zero_returns_the_cluster_itself() {
        let frame = prism_frame();
        let (cluster, cocluster) = prism_partition();
        let records = orbit(&frame, &cluster, &cocluster, 0).expect("valid cluster");
        assert_eq!(records.len(), 1, "depth 0 keeps exactly the cluster");
        assert_eq!(records[0].root, cluster[0], "the seed root is recorded");
        assert_eq!(records[0].word, Vec::<usize>::new(), "the seed has the empty word");
        assert_eq!(records[0].depth, 0, "the seed sits at depth 0");
    }

    #[test]
    fn prism_cluster_orbit_contains_the_recorded_sphere_basis() {
        let frame = prism_frame();
        let (cluster, cocluster) = prism_partition();
        let records = orbit(&frame, &cluster, &cocluster, 3).expect("valid cluster");
        let basis = fixtures::prism_sphere_basis();
        assert_eq!(
            records.len(),
            basis.len(),
            "the depth-3 orbit is exactly the recorded sphere basis"
        );
        let expected_words: [&[usize]; 5] = [&[], &[4], &[4, 3], &[4, 3, 1], &[4, 3, 2]];
        for (index, (root, word)) in basis.iter().zip(expected_words).enumerate() {
            let record = records
                .iter()
                .find(|record| &record.root == root)
                .unwrap_or_else(|| panic!("basis sphere {} appears in the orbit", index + 1));
            assert_eq!(
                record.word,
                word,
                "basis sphere {} is first reached through its recorded word",
                index + 1
            );
        }
        assert_eq!(
            records[0].sphere.bend(),
            &rad(1, 28, 14),
            "the seed sphere has bend √14/28"
        );
    }

    #[test]
    fn prism_orbit_spheres_pass_the_packing_audit() {
        let frame = prism_frame();
        let (cluster, cocluster) = prism_partition();
        let records = orbit(&frame, &cluster, &cocluster, 4).expect("valid cluster");
        assert!(records.len() > 5, "depth 4 grows past the sphere basis");
        audit_packing(&records).expect("all spheres unit, all pairs tangent or disjoint");
        for record in &records {
            let coords = record.sphere.coords();
            let squares = coords
                .iter()
                .skip(2)
                .fold(ExactScalar::zero(), |acc, x| &acc + &(x * x));
            assert_eq!(
                &(record.sphere.bend() * record.sphere.cobend()),
                &(&squares - &ExactScalar::one()),
                "bend·co-bend equals |center data|² − 1 on every sphere"
            );
        }
    }

    #[test]
    fn orbit_validation_rejects_an_empty_cluster() {
        let frame = prism_frame();
        let error = orbit(&frame, &[], &fixtures::prism_normals(), 1)
            .expect_err("an empty cluster cannot seed a packing");
        assert_eq!(error, PackingError::EmptyCluster, "empty cluster is reported");
    }

    #[test]
    fn orbit_validation_rejects_a_cluster_crossing_a_wall() {
        let space = QuadraticSpace::diagonal(&[-1, 1, 1]).expect("Lorentzian plane");
        let frame = inversive_frame(&space).expect("frame exists");
        let cluster = vec![ExactVector::from_i64(&[0, 1, 0])];
        let cocluster = vec![ExactVector::from_i64(&[0, -1, 1])];
        let error = orbit(&frame, &cluster, &cocluster, 1)
            .expect_err("the walls meet at 45 degrees");
        assert_eq!(
            error,
            PackingError::ClusterMeets { cluster: 0, other: 0 },
            "a proper crossing angle invalidates the cluster"
        );
    }

    #[test]
    fn orbit_validation_rejects_duplicate_rays() {
        let frame = prism_frame();
        let (cluster, _) = prism_partition();
        let doubled = cluster[0].scaled(&ExactScalar::integer(3));
        let error = orbit(&frame, &cluster, &[doubled], 1)
            .expect_err("a rescaled copy of the seed is the same mirror");
        assert_eq!(
            error,
            PackingError::ClusterOverlap { cluster: 0, other: 0 },
            "rays are compared up to positive rescaling"
        );
    }

    #[test]
    fn gram_of_the_prism_sphere_basis_matches_the_recorded_matrix() {
        let gram = gram_of_orbit(&fixtures::prism_sphere_basis(), &fixtures::prism_space());
        assert_eq!(
            gram,
            fixtures::prism_basis_gram(),
            "the sphere basis has the recorded Gram matrix"
        );
    }

    #[test]
    fn gram_of_a_single_unit_root_is_the_identity_of_size_one() {
        let space = diagonal_space();
        let gram = gram_of_orbit(&[ExactVector::from_i64(&[0, 0, 0, 1])], &space);
        assert_eq!(gram, ExactMatrix::identity(1), "a unit root pairs to 1 with itself");
    }

    #[test]
    fn permuting_the_basis_permutes_the_gram() {
        let space = fixtures::prism_space();
        let mut basis = fixtures::prism_sphere_basis();
        basis.swap(0, 3);
        basis.swap(2, 4);
        let permuted = gram_of_orbit(&basis, &space);
        let original = fixtures::prism_basis_gram();
        let order = [3usize, 1, 4, 0, 2];
        let expected = ExactMatrix::from_fn(5, 5, |i, j| original.get(order[i], order[j]).clone());
        assert_eq!(permuted, expected, "conjugation by a permutation relabels entries");
    }

    #[test]
    fn conjugated_prism_generators_match_the_recorded_matrices() {
        let generators = conjugated_generators(
            &fixtures::prism_sphere_basis(),
            &fixtures::prism_normals()[..5],
            &fixtures::prism_space(),
        )
        .expect("the sphere basis is a basis");
        assert_eq!(
            generators,
            fixtures::prism_conjugated_generators(),
            "wall reflections in sphere-basis coordinates equal the recorded matrices"
        );
    }

    #[test]
    fn conjugating_by_the_standard_basis_returns_the_row_reflections() {
        let space = diagonal_space();
        let basis: Vec<ExactVector> = (0..4)
            .map(|i| {
                let mut coords = vec![ExactScalar::zero(); 4];
                coords[i] = ExactScalar::one();
                ExactVector(coords)
            })
            .collect();
        let mirror = ExactVector::from_i64(&[0, 1, -1, 0]);
        let generators =
            conjugated_generators(&basis, std::slice::from_ref(&mirror), &space).expect("identity basis");
        assert_eq!(
            generators[0],
            space.reflection_matrix(&mirror).transpose(),
            "the standard basis leaves the row-action reflection unchanged"
        );
    }

    #[test]
    fn conjugation_rejects_a_singular_basis() {
        let space = diagonal_space();
        let degenerate = vec![
            ExactVector::from_i64(&[0, 1, 0, 0]),
            ExactVector::from_i64(&[0, 2, 0, 0]),
            ExactVector::from_i64(&[0, 0, 1, 0]),
            ExactVector::from_i64(&[0, 0, 0, 1]),
        ];
        let error = conjugated_generators(
            &degenerate,
            &[ExactVector::from_i64(&[0, 0, 0, 1])],
            &space,
        )
        .expect_err("two parallel rows are not a basis");
        assert_eq!(error, PackingError::SingularBasis, "singular bases are rejected");
    }

    #[test]
    fn bend_orbit_of_the_identity_generator_is_the_initial_vector() {
        let ones = ExactVector::from_i64(&[1, 1, 1, 1, 1]);
        let closure =
            bend_orbit(&[ExactMatrix::identity(5)], &ones, 4).expect("matching dimensions");
        assert_eq!(closure, vec![ones], "the identity generates nothing new");
    }

    #[test]
    fn first_conjugated_prism_generator_grows_the_last_two_bends() {
        let generators = fixtures::prism_conjugated_generators();
        let ones = ExactVector::from_i64(&[1, 1, 1, 1, 1]);
        assert_eq!(
            generators[0].mul_vec(&ones),
            ExactVector::from_i64(&[1, 1, 1, 5, 5]),
            "the recorded first generator sends all-ones to (1,1,1,5,5)"
        );
        let closure = bend_orbit(&generators[..1], &ones, 1).expect("matching dimensions");
        assert_eq!(
            closure,
            vec![ones, ExactVector::from_i64(&[1, 1, 1, 5, 5])],
            "one application adds exactly one new bend vector"
        );
    }

    #[test]
    fn prism_bend_orbit_stays_integral_and_congruent() {
        let generators = fixtures::prism_conjugated_generators();
        let ones = ExactVector::from_i64(&[1, 1, 1, 1, 1]);
        let closure = bend_orbit(&generators, &ones, 5).expect("matching dimensions");
        assert!(closure.len() > 20, "five generators grow the orbit quickly");
        let weights = [1i64, 1, 2, 3, 1];
        for vector in &closure {
            let mut weighted = 0i64;
            for (x, w) in vector.iter().zip(weights) {
                let value = x
                    .as_i64()
                    .unwrap_or_else(|| panic!("bend entry {} must be an integer", x));
                weighted += value * w;
            }
            assert_eq!(
                weighted.rem_euclid(4),
                0,
                "bends {:?} satisfy the invariant congruence mod 4",
                vector
            );
        }
    }

    #[test]
    fn prism_bend_congruence_is_found_at_modulus_four() {
        let generators = fixtures::prism_conjugated_generators();
        let ones = ExactVector::from_i64(&[1, 1, 1, 1, 1]);
        let found = find_bend_congruence(&generators, &ones, 6).expect("integral input");
        assert_eq!(
            found,
            Some((vec![1, 1, 2, 3, 1], 4)),
            "the smallest invariant congruence has coefficients (1,1,2,3,1) mod 4"
        );
    }

    #[test]
    fn identity_generators_admit_the_degenerate_parity_congruence() {
        let initial = ExactVector::from_i64(&[2, 1, 1, 1, 1]);
        let found = find_bend_congruence(&[ExactMatrix::identity(5)], &initial, 6)
            .expect("integral input");
        assert_eq!(
            found,
            Some((vec![1, 0, 0, 0, 0], 2)),
            "the first even coordinate already yields a parity congruence"
        );
    }

    #[test]
    fn congruence_search_reports_none_when_the_bound_is_too_small() {
        let generator = ExactMatrix::from_rows(vec![vec![rat(1, 8)]]);
        let initial = ExactVector::from_i64(&[8]);
        let found = find_bend_congruence(&[generator], &initial, 4).expect("integral input");
        assert_eq!(
            found, None,
            "an eighth-scaling generator admits no congruence below modulus 8"
        );
    }

    #[test]
    fn integrality_scan_of_the_prism_packing_finds_the_bend_unit() {
        let frame = prism_frame();
        let (cluster, cocluster) = prism_partition();
        let records = orbit(&frame, &cluster, &cocluster, 3).expect("valid cluster");
        let report = integrality_scan(&records, 3);
        assert!(report.integral, "the packing bends share one integral scale");
        assert_eq!(report.witness, None, "no witness accompanies an integral scan");
        let rescale = report.rescale.expect("integral scans report their scale");
        assert_eq!(rescale, rad(2, 1, 14), "the scale is 2√14, the reciprocal seed bend");
        let ratio = ExactScalar::rational(BigRational::new(BigInt::from(8), BigInt::from(7)))
            .sqrt()
            .expect("8/7 has a radical square root");
        assert_eq!(
            rescale,
            &ratio * &ExactScalar::integer(7),
            "the scale equals √(8/7) rescaled by the frame normalization factor 7"
        );
    }

    #[test]
    fn integrality_scan_accepts_an_all_line_orbit() {
        let frame = prism_frame();
        let walls = fixtures::prism_normals();
        let lines: Vec<OrbitRecord> = [1usize, 2, 4]
            .iter()
            .map(|&i| &walls[i])
            .map(|root| OrbitRecord {
                sphere: frame.apply(root).expect("wall maps to a sphere"),
                root: root.clone(),
                word: Vec::new(),
                depth: 0,
            })
            .collect();
        for record in &lines {
            assert!(record.sphere.bend().is_zero(), "the chosen walls are planes");
        }
        let report = integrality_scan(&lines, 0);
        assert_eq!(
            report,
            IntegralityReport {
                integral: true,
                rescale: Some(ExactScalar::one()),
                witness: None
            },
            "hyperplanes impose no integrality constraint"
        );
    }

    #[test]
    fn superpacking_closure_of_the_prism_is_not_integral() {
        let frame = prism_frame();
        let walls = fixtures::prism_normals();
        let records = reflect_closure(&frame, &[walls[5].clone()], &walls, 4)
            .expect("the enlarged reflection set is valid");
        let report = integrality_scan(&records, 4);
        assert!(
            !report.integral,
            "reflecting through all six walls breaks bend integrality"
        );
        assert_eq!(report.rescale, None, "no rescale accompanies a failed scan");
        let witness = report.witness.expect("failed scans name a witness bend");
        let packing_scale = rad(2, 1, 14);
        assert!(
            !(&packing_scale * &witness).is_integer(),
            "the witness bend {witness} resists the packing scale 2√14"
        );
    }

    #[test]
    fn render_svg_draws_a_unit_circle_at_the_origin() {
        let sphere = InversiveSphere::from_coords(ExactVector::from_i64(&[1, -1, 0, 0]));
        let svg = render_svg(&[sphere], &Viewport::centered(2.0)).expect("plane sphere");
        assert!(
            svg.contains("<circle cx=\"0.000000\" cy=\"0.000000\" r=\"1.000000\"/>"),
            "the unit circle renders exactly, got:\n{svg}"
        );
    }

    #[test]
    fn render_svg_keeps_exact_tangency_coordinates() {
        let first = InversiveSphere::from_coords(ExactVector::from_i64(&[1, -1, 0, 0]));
        let second = InversiveSphere::from_coords(ExactVector::from_i64(&[1, 3, 2, 0]));
        assert_eq!(
            inversive_product(&first, &second),
            ExactScalar::integer(-1),
            "the two circles are externally tangent"
        );
        let svg = render_svg(&[first, second], &Viewport::centered(4.0)).expect("plane spheres");
        assert!(
            svg.contains("<circle cx=\"2.000000\" cy=\"0.000000\" r=\"1.000000\"/>"),
            "the tangent neighbour sits exactly two radii away, got:\n{svg}"
        );
    }

    #[test]
    fn render_svg_draws_zero_bend_spheres_as_lines() {
        let line = InversiveSphere::from_coords(ExactVector::from_i64(&[0, 2, 1, 0]));
        let svg = render_svg(&[line], &Viewport::centered(2.0)).expect("plane sphere");
        assert!(
            svg.contains("<line x1=\"1.000000\""),
            "the vertical line x = 1 starts at its foot point, got:\n{svg}"
        );
    }

    #[test]
    fn render_svg_rejects_higher_dimensional_spheres() {
        let frame = prism_frame();
        let sphere = frame
            .apply(&fixtures::prism_normals()[5])
            .expect("wall maps to a sphere");
        let error = render_svg(&[sphere], &Viewport::centered(2.0))
            .expect_err("five coordinates do not fit the plane");
        assert_eq!(
            error,
            PackingError::UnsupportedDimension { expected: 4, found: 5 },
            "only plane packings render"
        );
    }

    #[test]
    fn plane_pipeline_from_wall_enumeration_to_svg() {
        let space = diagonal_space();
        let mut state =
            VinbergState::new(space.clone(), &ExactVector::from_i64(&[1, 0, 0, 0]))
                .expect("diagonal form state");
        let report = run(
            &mut state,
            &Budget {
                max_roots: Some(8),
                max_distance: None,
            },
        );
        assert_eq!(
            report.status,
            RunStatus::FiniteVolume,
            "the diagonal form has a finite-volume chamber"
        );
        let polyhedron = state.polyhedron().expect("accepted walls bound a chamber");
        let slanted = ExactVector::from_i64(&[1, -1, -1, -1]);
        let facet = polyhedron
            .roots()
            .iter()
            .position(|root| root.coords() == &slanted)
            .expect("the slanted wall is part of the chamber");
        let trace = crate::doubling::orthogonalize(&polyhedron, facet)
            .expect("the slanted wall straightens in one doubling");
        assert_eq!(
            trace.steps.len(),
            1,
            "the slanted wall has exactly one quarter-angle neighbour"
        );
        let final_poly = &trace.final_polyhedron;
        assert_eq!(final_poly.len(), 5, "the double keeps five walls");
        let diagram = build_diagram(final_poly).expect("the straightened chamber is Coxeter");
        assert!(
            find_isolated_roots(&diagram).contains(&trace.distinguished),
            "the distinguished wall is isolated after straightening"
        );
        let seed = unit_root(&space, final_poly.root(trace.distinguished))
            .expect("the distinguished wall rescales to a unit root");
        let cocluster: Vec<ExactVector> = (0..final_poly.len())
            .filter(|&i| i != trace.distinguished)
            .map(|i| final_poly.root(i).clone())
            .collect();
        let frame = inversive_frame(&space).expect("diagonal frame");
        let records =
            orbit(&frame, &[seed], &cocluster, 4).expect("isolated wall seeds a packing");
        assert_eq!(
            records.len(),
            5,
            "depth 4 yields the seed plus one new sphere per level"
        );
        audit_packing(&records).expect("the packing patch is disjoint and unit");
        let spheres: Vec<InversiveSphere> =
            records.iter().map(|record| record.sphere.clone()).collect();
        let viewport = Viewport::centered(3.0);
        let svg = render_svg(&spheres, &viewport).expect("plane packing renders");
        assert!(svg.starts_with("<svg "), "the drawing is an SVG document");
        assert_eq!(
            svg.matches("<circle").count(),
            3,
            "three orbit spheres are circles"
        );
        assert_eq!(svg.matches("<line").count(), 2, "two orbit spheres are lines");
        assert_eq!(
            svg,
            render_svg(&spheres, &viewport).expect("plane packing renders"),
            "rendering is deterministic"
        );
    }

    #[test]
    fn orbit_output_is_independent_of_mirror_order() {
        let frame = prism_frame();
        let (cluster, cocluster) = prism_partition();
        let records = orbit(&frame, &cluster, &cocluster, 3).expect("valid cluster");
        let mut shuffled = cocluster.clone();
        shuffled.reverse();
        let reversed = orbit(&frame, &cluster, &shuffled, 3).expect("valid cluster");
        let roots: BTreeSet<ExactVector> =
            records.iter().map(|record| record.root.clone()).collect();
        let reversed_roots: BTreeSet<ExactVector> =
            reversed.iter().map(|record| record.root.clone()).collect();
        assert_eq!(
            roots, reversed_roots,
            "the orbit as a set does not depend on mirror order"
        );
    }
}
