//! Finite-volume test for chambers cut out by root sets.
//!
//! A chamber in hyperbolic n-space has finite volume exactly when it
//! is the hull of finitely many ordinary and ideal vertices.
//! Combinatorially, every positive definite subset of n−1 walls (an
//! edge germ of the chamber) must close up in exactly two ways:
//! either a positive definite extension by one more wall (an ordinary
//! vertex) or an extension to a set whose components are each
//! connected, positive semidefinite and singular with one added wall
//! per component (an ideal vertex on the boundary sphere).
//!
//! All tests run exactly.  Integer Gram matrices go through
//! fraction-free (Bareiss) leading minors: a set is positive definite
//! iff all leading minors are positive, and a connected set is the
//! Gram of an affine component iff it is singular while dropping its
//! last wall leaves a positive definite set (eigenvalue interlacing
//! makes one drop sufficient).  Radical Gram matrices fall back to
//! exact signatures.

use crate::exact::ExactMatrix;
use crate::qspace::Polyhedron;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact predicates about induced sub-Grams.
trait FormTests {
    fn size(&self) -> usize;
    fn adjacent(&self, i: usize, j: usize) -> bool;
    fn is_positive_definite(&self, set: &[usize]) -> bool;
    /// `comp` is assumed connected; tests for a positive
    /// semidefinite singular (affine) component.
    fn is_affine(&self, comp: &[usize]) -> bool;
}

struct IntGram {
    entries: Vec<Vec<BigInt>>,
}

impl IntGram {
    fn induced(&self, set: &[usize]) -> Vec<Vec<BigInt>> {
        set.iter()
            .map(|&i| set.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect()
    }
}

/// Leading principal minors via fraction-free elimination; true iff
/// all of them are positive.
fn leading_minors_positive(mut m: Vec<Vec<BigInt>>) -> bool {
    let k = m.len();
    let mut previous = BigInt::one();
    for step in 0..k {
        let pivot = m[step][step].clone();
        if !pivot.is_positive() {
            return false;
        }
        for i in step + 1..k {
            for j in step + 1..k {
                let numerator = &pivot * &m[i][j] - &m[i][step] * &m[step][j];
                let (q, r) = numerator.div_rem(&previous);
                debug_assert!(r.is_zero(), "fraction-free elimination divides exactly");
                m[i][j] = q;
            }
        }
        previous = pivot;
    }
    true
}

/// Exact determinant by fraction-free elimination with row pivoting.
pub(super) fn integer_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let k = m.len();
    if k == 0 {
        return BigInt::one();
    }
    let mut previous = BigInt::one();
    let mut sign = 1;
    for step in 0..k {
        if m[step][step].is_zero() {
            let Some(swap) = (step + 1..k).find(|&i| !m[i][step].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(step, swap);
            sign = -sign;
        }
        let pivot = m[step][step].clone();
        for i in step + 1..k {
            for j in step + 1..k {
                let numerator = &pivot * &m[i][j] - &m[i][step] * &m[step][j];
                let (q, r) = numerator.div_rem(&previous);
                debug_assert!(r.is_zero(), "fraction-free elimination divides exactly");
                m[i][j] = q;
            }
            m[i][step] = BigInt::zero();
        }
        previous = pivot;
    }
    let result = m[k - 1][k - 1].clone();
    if sign < 0 {
        -result
    } else {
        result
    }
}

impl FormTests for IntGram {
    fn size(&self) -> usize {
        self.entries.len()
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        !self.entries[i][j].is_zero()
    }

    fn is_positive_definite(&self, set: &[usize]) -> bool {
        leading_minors_positive(self.induced(set))
    }

    fn is_affine(&self, comp: &[usize]) -> bool {
        if comp.len() < 2 {
            // A single wall has positive norm: never singular.
            return false;
        }
        if !integer_determinant(self.induced(comp)).is_zero() {
            return false;
        }
        // Singular and psd iff additionally any one-wall deletion is
        // positive definite, by interlacing.
        self.is_positive_definite(&comp[..comp.len() - 1])
    }
}

struct ExactGram<'a> {
    gram: &'a ExactMatrix,
}

impl ExactGram<'_> {
    fn induced(&self, set: &[usize]) -> ExactMatrix {
        ExactMatrix::from_fn(set.len(), set.len(), |i, j| {
            self.gram.get(set[i], set[j]).clone()
        })
    }
}

impl FormTests for ExactGram<'_> {
    fn size(&self) -> usize {
        self.gram.rows()
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        !self.gram.get(i, j).is_zero()
    }

    fn is_positive_definite(&self, set: &[usize]) -> bool {
        self.induced(set).signature() == (set.len(), 0, 0)
    }

    fn is_affine(&self, comp: &[usize]) -> bool {
        self.induced(comp).signature() == (comp.len() - 1, 0, 1)
    }
}

/// Connected components of `set` under Gram adjacency, each sorted,
/// ordered by smallest member.
fn components<T: FormTests>(tests: &T, set: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; set.len()];
    let mut parts = Vec::new();
    for start in 0..set.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut part = Vec::new();
        while let Some(position) = stack.pop() {
            part.push(set[position]);
            for other in 0..set.len() {
                if !seen[other] && tests.adjacent(set[position], set[other]) {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        part.sort_unstable();
        parts.push(part);
    }
    parts
}

/// A vertex of the chamber: the set of walls through it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ChamberVertex {
    /// Indices of the walls meeting at the vertex, sorted.
    pub support: Vec<usize>,
    /// Whether the vertex lies on the ideal boundary.
    pub ideal: bool,
}

/// Visits the extensions of the edge germ `sigma` to vertices; calls
/// `found` for each, and stops early if `found` returns false.
fn visit_vertex_extensions<T: FormTests>(
    tests: &T,
    rank: usize,
    sigma: &[usize],
    found: &mut dyn FnMut(ChamberVertex) -> bool,
) -> bool {
    let size = tests.size();
    let in_sigma = |v: usize| sigma.binary_search(&v).is_ok();
    // Ordinary vertices: one more wall keeping the set positive
    // definite.
    for v in 0..size {
        if in_sigma(v) {
            continue;
        }
        let mut tau: Vec<usize> = sigma.to_vec();
        tau.push(v);
        tau.sort_unstable();
        if tests.is_positive_definite(&tau) {
            let keep = found(ChamberVertex {
                support: tau,
                ideal: false,
            });
            if !keep {
                return false;
            }
        }
    }
    // Ideal vertices: add one wall per affine component.  Every
    // added wall must connect to sigma, because in a valid extension
    // each component contains exactly one added wall and at least
    // two walls in total.
    let pool: Vec<usize> = (0..size)
        .filter(|&v| !in_sigma(v) && sigma.iter().any(|&s| tests.adjacent(s, v)))
        .collect();
    // At most rank−1 components can appear: each affine component
    // contributes at least one to the total rank n−1.
    let max_added = rank.saturating_sub(1).min(pool.len());
    let mut selection: Vec<usize> = Vec::new();
    fn select<T: FormTests>(
        tests: &T,
        sigma: &[usize],
        pool: &[usize],
        from: usize,
        max_added: usize,
        selection: &mut Vec<usize>,
        found: &mut dyn FnMut(ChamberVertex) -> bool,
    ) -> bool {
        if !selection.is_empty() {
            let mut tau: Vec<usize> = sigma.to_vec();
            tau.extend(selection.iter().copied());
            tau.sort_unstable();
            let parts = components(tests, &tau);
            if parts.len() == selection.len()
                && parts.iter().all(|part| tests.is_affine(part))
            {
                let keep = found(ChamberVertex {
                    support: tau,
                    ideal: true,
                });
                if !keep {
                    return false;
                }
            }
        }
        if selection.len() == max_added {
            return true;
        }
        for position in from..pool.len() {
            selection.push(pool[position]);
            let keep = select(tests, sigma, pool, position + 1, max_added, selection, found);
            selection.pop();
            if !keep {
                return false;
            }
        }
        true
    }
    select(tests, sigma, &pool, 0, max_added, &mut selection, found)
}

/// Visits every positive definite subset of size `target` (with
/// prefix pruning); `process` returns false to stop the walk.
fn visit_elliptic_subsets<T: FormTests>(
    tests: &T,
    target: usize,
    process: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    fn walk<T: FormTests>(
        tests: &T,
        target: usize,
        from: usize,
        prefix: &mut Vec<usize>,
        process: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if prefix.len() == target {
            return process(prefix);
        }
        for v in from..tests.size() {
            prefix.push(v);
            // Subsets of positive definite sets are positive
            // definite, so pruning on prefixes is lossless.
            let viable = tests.is_positive_definite(prefix);
            let keep = if viable {
                walk(tests, target, v + 1, prefix, process)
            } else {
                true
            };
            prefix.pop();
            if !keep {
                return false;
            }
        }
        true
    }
    let mut prefix = Vec::new();
    walk(tests, target, 0, &mut prefix, process)
}

fn check_with<T: FormTests>(tests: &T, rank: usize) -> bool {
    let mut all_good = true;
    let mut any_sigma = false;
    visit_elliptic_subsets(tests, rank.saturating_sub(1), &mut |sigma| {
        any_sigma = true;
        let mut count = 0usize;
        let within_two = visit_vertex_extensions(tests, rank, sigma, &mut |_vertex| {
            count += 1;
            count <= 2
        });
        if !within_two || count != 2 {
            all_good = false;
            return false;
        }
        true
    });
    all_good && any_sigma
}

fn vertices_with<T: FormTests>(tests: &T, rank: usize) -> Vec<ChamberVertex> {
    let mut collected: std::collections::BTreeSet<ChamberVertex> = Default::default();
    visit_elliptic_subsets(tests, rank.saturating_sub(1), &mut |sigma| {
        visit_vertex_extensions(tests, rank, sigma, &mut |vertex| {
            collected.insert(vertex);
            true
        });
        true
    });
    collected.into_iter().collect()
}

/// Converts a rational Gram matrix to integers by clearing the common
/// denominator; positive scaling preserves definiteness and
/// singularity of every submatrix.
fn to_integer_gram(gram: &ExactMatrix) -> Option<Vec<Vec<BigInt>>> {
    let n = gram.rows();
    let mut rational: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(gram.get(i, j).as_rational()?);
        }
        rational.push(row);
    }
    let mut denominator = BigInt::one();
    for row in &rational {
        for entry in row {
            denominator = denominator.lcm(entry.denom());
        }
    }
    Some(
        rational
            .iter()
            .map(|row| {
                row.iter()
                    .map(|entry| (entry * BigRational::from(denominator.clone())).to_integer())
                    .collect()
            })
            .collect(),
    )
}

/// Whether the chamber cut out by the polyhedron's walls has finite
/// volume: every positive definite set of n−1 walls extends to
/// exactly two vertices, ordinary or ideal, and at least one such
/// germ exists.
pub fn finite_volume_check(poly: &Polyhedron) -> bool {
    let rank = poly.space().dim() - 1;
    if poly.len() < rank + 1 {
        // A finite-volume chamber in hyperbolic n-space needs at
        // least n+1 walls.
        return false;
    }
    let gram = poly.gram();
    match to_integer_gram(&gram) {
        Some(entries) => check_with(&IntGram { entries }, rank),
        None => check_with(&ExactGram { gram: &gram }, rank),
    }
}

/// Enumerates the vertices of the chamber (ordinary and ideal), each
/// reported once with its sorted wall support.
pub fn chamber_vertices(poly: &Polyhedron) -> Vec<ChamberVertex> {
    let rank = poly.space().dim() - 1;
    let gram = poly.gram();
    match to_integer_gram(&gram) {
        Some(entries) => vertices_with(&IntGram { entries }, rank),
        None => vertices_with(&ExactGram { gram: &gram }, rank),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactVector;
    use crate::qspace::QuadraticSpace;

    fn triangle_roots() -> Vec<ExactVector> {
        vec![
            ExactVector::from_i64(&[0, -1, 0]),
            ExactVector::from_i64(&[0, 0, -1]),
            ExactVector::from_i64(&[1, 1, 1]),
        ]
    }

    #[test]
    fn triangle_chamber_has_finite_volume() {
        let space = QuadraticSpace::diagonal(&[-1, 2, 1]).unwrap();
        let poly = Polyhedron::new(space, triangle_roots()).unwrap();
        assert!(finite_volume_check(&poly));
    }

    #[test]
    fn wedge_does_not_have_finite_volume() {
        let space = QuadraticSpace::diagonal(&[-1, 2, 1]).unwrap();
        let poly = Polyhedron::new(space, triangle_roots()[..2].to_vec()).unwrap();
        assert!(!finite_volume_check(&poly));
    }

    #[test]
    fn triangle_chamber_vertices_are_one_ordinary_one_ideal_pair_each() {
        let space = QuadraticSpace::diagonal(&[-1, 2, 1]).unwrap();
        let poly = Polyhedron::new(space, triangle_roots()).unwrap();
        let vertices = chamber_vertices(&poly);
        assert_eq!(
            vertices,
            vec![
                ChamberVertex {
                    support: vec![0, 1],
                    ideal: false
                },
                ChamberVertex {
                    support: vec![0, 2],
                    ideal: true
                },
                ChamberVertex {
                    support: vec![1, 2],
                    ideal: false
                },
            ]
        );
    }

    #[test]
    fn minors_detect_definiteness() {
        let pd = vec![
            vec![BigInt::from(2), BigInt::from(-1)],
            vec![BigInt::from(-1), BigInt::from(2)],
        ];
        assert!(leading_minors_positive(pd));
        let singular = vec![
            vec![BigInt::from(1), BigInt::from(-1)],
            vec![BigInt::from(-1), BigInt::from(1)],
        ];
        assert!(!leading_minors_positive(singular.clone()));
        assert_eq!(integer_determinant(singular), BigInt::zero());
    }

    #[test]
    fn determinant_with_zero_pivot_uses_row_swap() {
        let m = vec![
            vec![BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(3), BigInt::from(1)],
        ];
        assert_eq!(integer_determinant(m), BigInt::from(-6));
    }
}
