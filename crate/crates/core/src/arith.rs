//! Arithmeticity of reflection groups from cyclic Gram products.
//!
//! For a Coxeter polyhedron with normalised Gram matrix `G`, the
//! products `(2g_{i₁i₂})(2g_{i₂i₃})…(2g_{i_ki₁})` over closed walks
//! generate a field `k`.  The group is quasi-arithmetic exactly when
//! `k` is totally real and every Galois conjugate `G^σ` (σ nontrivial
//! on `k`) is positive semidefinite, and arithmetic when each cyclic
//! product is additionally an algebraic integer of `k`.
//!
//! Two reductions keep this finite.  First, products over a cycle
//! *basis* of the diagram, together with the back-and-forth squares
//! `(2gᵢⱼ)²`, already generate all cyclic products up to squares of
//! field elements, so integrality only needs checking there.  Second,
//! scalars built from square roots of rationals are automatically
//! totally real, and their real embeddings are exactly the sign flips
//! on the primes under the radicals.
//!
//! Over `k = ℚ` the conjugate condition is empty: the group is always
//! quasi-arithmetic, and arithmetic exactly when every product is an
//! integer.  The verdict reports the first non-integral product as
//! its witness.

use crate::diagram::DiagramError;
use crate::exact::{ExactMatrix, ExactScalar};
use crate::qspace::Polyhedron;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

/// Errors from the arithmeticity verdict.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    /// The polyhedron's angles could not be normalised.
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    /// The cyclic products generate a field of degree above 2, which
    /// this criterion does not decide.
    #[error("cyclic products generate a field of degree above 2; witnesses: {}", witnesses.join(", "))]
    UnsupportedField {
        /// Products exhibiting more than one independent radical.
        witnesses: Vec<String>,
    },
}

/// The kind of field the cyclic products generate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FieldKind {
    /// All cyclic products are rational.
    Rational,
    /// The products generate `ℚ(√d)` for the given square-free `d`.
    RealQuadratic(u64),
    /// More than one independent radical appears.
    Unsupported {
        /// Products exhibiting the extra radicals.
        witnesses: Vec<ExactScalar>,
    },
}

/// The field generated by the cyclic products.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldDescription {
    /// Field classification.
    pub kind: FieldKind,
    /// Irrational cyclic products generating the field over `ℚ`.
    pub generators: Vec<ExactScalar>,
}

/// A closed walk together with the product of `2·G` entries along it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclicProduct {
    /// Vertex sequence of the cycle (the closing edge is implicit).
    pub cycle: Vec<usize>,
    /// Product of the `2gᵢⱼ` along the cycle.
    pub value: ExactScalar,
}

/// Outcome of the arithmeticity criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArithmeticityVerdict {
    /// Field generated by the cyclic products.
    pub field: FieldDescription,
    /// Whether the group is quasi-arithmetic.
    pub quasi_arithmetic: bool,
    /// Whether the group is arithmetic.
    pub arithmetic: bool,
    /// First cyclic product that is not an algebraic integer, if any.
    pub failing_cycle: Option<CyclicProduct>,
}

fn is_adjacent(gram: &ExactMatrix, i: usize, j: usize) -> bool {
    !gram.get(i, j).is_zero()
}

/// Fundamental cycles of a spanning forest of the Gram graph.
///
/// Vertices are adjacent when their Gram entry is nonzero.  Each
/// non-tree edge closes exactly one cycle through the forest; the
/// returned list has `|E| − |V| + #components` entries.  Cycles are
/// rotated to start at their smallest vertex and oriented towards the
/// smaller neighbour, so the output is independent of traversal
/// details.
pub fn cycle_basis(gram: &ExactMatrix) -> Vec<Vec<usize>> {
    let n = gram.rows();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    let mut order = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            order.push(v);
            for u in 0..n {
                if u != v && !visited[u] && is_adjacent(gram, v, u) {
                    visited[u] = true;
                    parent[u] = Some(v);
                    stack.push(u);
                }
            }
        }
    }
    let mut tree_edges = std::collections::BTreeSet::new();
    for (child, p) in parent.iter().enumerate() {
        if let Some(p) = p {
            tree_edges.insert((child.min(*p), child.max(*p)));
        }
    }
    let mut cycles = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !is_adjacent(gram, i, j) || tree_edges.contains(&(i, j)) {
                continue;
            }
            // Paths from both endpoints to the root meet at the
            // lowest common ancestor.
            let ancestors = |mut v: usize| {
                let mut path = vec![v];
                while let Some(p) = parent[v] {
                    path.push(p);
                    v = p;
                }
                path
            };
            let path_i = ancestors(i);
            let path_j = ancestors(j);
            let in_path_i: std::collections::BTreeSet<usize> = path_i.iter().copied().collect();
            let meet_position = path_j
                .iter()
                .position(|v| in_path_i.contains(v))
                .expect("endpoints of a non-tree edge share a tree component");
            let meet = path_j[meet_position];
            let mut cycle: Vec<usize> = path_i
                .iter()
                .copied()
                .take_while(|&v| v != meet)
                .collect();
            cycle.push(meet);
            cycle.extend(path_j[..meet_position].iter().rev());
            cycles.push(canonical_cycle(cycle));
        }
    }
    cycles.sort();
    cycles
}

/// Rotates a cycle to start at its smallest vertex and orients it
/// towards the smaller of that vertex's two neighbours.
fn canonical_cycle(cycle: Vec<usize>) -> Vec<usize> {
    let k = cycle.len();
    let start = (0..k).min_by_key(|&p| cycle[p]).unwrap();
    let forward = cycle[(start + 1) % k];
    let backward = cycle[(start + k - 1) % k];
    let mut result = Vec::with_capacity(k);
    if forward <= backward {
        for step in 0..k {
            result.push(cycle[(start + step) % k]);
        }
    } else {
        for step in 0..k {
            result.push(cycle[(start + k - step) % k]);
        }
    }
    result
}

/// Products of `2·G` entries around the given cycles, preceded by the
/// back-and-forth squares `(2gᵢⱼ)²` of every edge.
///
/// The squares come first, ordered by edge, then the given cycles in
/// order.  Back-and-forth products are included unconditionally
/// because `(2gᵢⱼ)²` must be an algebraic integer even when the edge
/// lies on no simple cycle — this is what catches dotted edges.
pub fn cyclic_products(gram: &ExactMatrix, cycles: &[Vec<usize>]) -> Vec<CyclicProduct> {
    let n = gram.rows();
    let two = ExactScalar::integer(2);
    let mut products = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !is_adjacent(gram, i, j) {
                continue;
            }
            let doubled = &two * gram.get(i, j);
            products.push(CyclicProduct {
                cycle: vec![i, j],
                value: &doubled * &doubled,
            });
        }
    }
    for cycle in cycles {
        let mut value = ExactScalar::one();
        for position in 0..cycle.len() {
            let a = cycle[position];
            let b = cycle[(position + 1) % cycle.len()];
            value = &value * &(&two * gram.get(a, b));
        }
        products.push(CyclicProduct {
            cycle: cycle.clone(),
            value,
        });
    }
    products
}

/// The field generated by all cyclic products of `2·G`.
pub fn ground_field(gram: &ExactMatrix) -> FieldDescription {
    let cycles = cycle_basis(gram);
    let products = cyclic_products(gram, &cycles);
    field_of_products(&products)
}

fn field_of_products(products: &[CyclicProduct]) -> FieldDescription {
    let mut generators: Vec<ExactScalar> = Vec::new();
    let mut radicands = std::collections::BTreeSet::new();
    for product in products {
        let radical: Vec<u64> = product
            .value
            .radicands()
            .into_iter()
            .filter(|&s| s > 1)
            .collect();
        if !radical.is_empty() {
            radicands.extend(radical);
            if !generators.contains(&product.value) {
                generators.push(product.value.clone());
            }
        }
    }
    let kind = match radicands.len() {
        0 => FieldKind::Rational,
        1 => FieldKind::RealQuadratic(*radicands.iter().next().unwrap()),
        _ => FieldKind::Unsupported {
            witnesses: generators.clone(),
        },
    };
    FieldDescription { kind, generators }
}

/// Whether `x ∈ ℚ(√d)` is an algebraic integer: its trace `2a` and
/// norm `a² − d·b²` must both be rational integers.
fn is_algebraic_integer(x: &ExactScalar, d: u64) -> bool {
    if let Some(q) = x.as_rational() {
        return q.is_integer();
    }
    let a = x.coefficient(1);
    let b = x.coefficient(d);
    let two_a = &a * BigRational::from(BigInt::from(2));
    let norm = &a * &a - &b * &b * BigRational::from(BigInt::from(d));
    two_a.is_integer() && norm.is_integer()
}

/// Positive semidefiniteness of every Galois conjugate of `gram`
/// under embeddings that flip `√d`.
fn conjugates_semidefinite(gram: &ExactMatrix, d: u64) -> bool {
    // Primes appearing under radicals anywhere in the matrix: sign
    // flips on these generate all real embeddings of the entry field.
    let mut primes: Vec<u64> = Vec::new();
    for i in 0..gram.rows() {
        for j in 0..gram.cols() {
            for p in gram.get(i, j).radical_primes() {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
    }
    primes.sort_unstable();
    assert!(
        primes.len() <= 16,
        "conjugate scan over {} radical primes is not supported",
        primes.len()
    );
    let probe = ExactScalar::radical(BigRational::from(BigInt::from(1)), d);
    for mask in 1u32..(1 << primes.len()) {
        // Only embeddings nontrivial on ℚ(√d) constrain the form.
        if probe.conjugate(&primes, mask) == probe {
            continue;
        }
        let conjugated = ExactMatrix::from_fn(gram.rows(), gram.cols(), |i, j| {
            gram.get(i, j).conjugate(&primes, mask)
        });
        let (_, negative, _) = conjugated.signature();
        if negative > 0 {
            return false;
        }
    }
    true
}

/// Decides the verdict from a normalised Gram matrix.
pub fn verdict_from_gram(gram: &ExactMatrix) -> Result<ArithmeticityVerdict, ArithError> {
    let cycles = cycle_basis(gram);
    let products = cyclic_products(gram, &cycles);
    let field = field_of_products(&products);
    let quasi_arithmetic = match field.kind {
        FieldKind::Rational => true,
        FieldKind::RealQuadratic(d) => conjugates_semidefinite(gram, d),
        FieldKind::Unsupported { ref witnesses } => {
            return Err(ArithError::UnsupportedField {
                witnesses: witnesses.iter().map(ExactScalar::to_string).collect(),
            })
        }
    };
    let failing_cycle = products.iter().find(|product| match field.kind {
        FieldKind::Rational => !product
            .value
            .as_rational()
            .expect("rational field implies rational products")
            .is_integer(),
        FieldKind::RealQuadratic(d) => !is_algebraic_integer(&product.value, d),
        FieldKind::Unsupported { .. } => unreachable!("rejected above"),
    });
    let arithmetic = quasi_arithmetic && failing_cycle.is_none();
    Ok(ArithmeticityVerdict {
        field,
        quasi_arithmetic,
        arithmetic,
        failing_cycle: failing_cycle.cloned(),
    })
}

/// Applies the arithmeticity criterion to a polyhedron.
///
/// The Gram matrix is normalised to unit diagonal first, so the
/// verdict only sees angles, never the chosen root scaling.
pub fn verdict(poly: &Polyhedron) -> Result<ArithmeticityVerdict, ArithError> {
    let diagram = crate::diagram::build_diagram(poly)?;
    verdict_from_gram(diagram.normalized_gram())
}
