//! Root enumeration for integral Lorentzian forms.
//!
//! Fixing an integer basepoint `v0` with `(v0,v0) < 0`, every mirror
//! wall of the reflection group either passes through `v0`'s point of
//! hyperbolic space or lies at positive distance from it.  The walls
//! through the point form the finite stabilizer chamber, computed
//! first; all other walls are found by enumerating crystallographic
//! roots `e` in non-decreasing distance `(e,v0)²/(e,e)` and keeping
//! exactly those making obtuse or right angles with everything kept
//! so far.  When the kept walls close up into a finite-volume
//! chamber, the enumeration stops: the group generated by the wall
//! reflections has finite covolume.  For non-reflective forms the
//! walls never close up, so the run ends by exhausting its budget;
//! separate certificates (an infinite-order symmetry, or congruence
//! obstructions to any root existing) prove non-halting exactly.
//!
//! Candidate norms are bounded: a primitive crystallographic root `e`
//! has `2·M⁻¹·(M e)` integral with `M e ≡ 0` only when `(e,e)`
//! divides `2λ`, `λ` the denominator of `M⁻¹`.  Heights at fixed norm
//! `k` satisfy `2(e,v0) ≡ 0 (mod k)`, pruning the shell queue.

mod certificate;
pub(crate) mod lattice;
mod symmetry;
mod volume;

pub use certificate::{no_roots_obstruction, NoRootsCertificate};
pub use symmetry::verify_infinite_symmetry;
pub use volume::{chamber_vertices, finite_volume_check, ChamberVertex};

use crate::exact::{ExactScalar, ExactVector};
use crate::qspace::{Polyhedron, QspaceError, QuadraticSpace};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, VecDeque};
use std::time::Duration;
use thiserror::Error;

/// Errors from enumeration setup and certificate verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VinbergError {
    /// The form is singular, so no norm bound exists.
    #[error("quadratic form is singular")]
    SingularForm,
    /// An input that must be integral is not.
    #[error("expected an integer entry, found {value}")]
    NotIntegral {
        /// Offending entry.
        value: String,
    },
    /// The basepoint is not inside the negative cone.
    #[error("basepoint must have negative norm, found {norm}")]
    BasepointNotTimeLike {
        /// Norm of the rejected basepoint.
        norm: String,
    },
    /// Mismatched dimensions between the form and another input.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch {
        /// Expected dimension.
        expected: usize,
        /// Actual dimension.
        found: usize,
    },
    /// The norm bound does not fit the supported integer range.
    #[error("norm bound {value} exceeds the supported range")]
    ScaleTooLarge {
        /// The oversized value.
        value: String,
    },
    /// Underlying quadratic-space failure.
    #[error(transparent)]
    Space(#[from] QspaceError),
}

/// Every norm a primitive crystallographic root can have: the
/// positive divisors of `2λ`, where `λ` is the least positive integer
/// making `λ·M⁻¹` integral.
pub fn candidate_norms(space: &QuadraticSpace) -> Result<Vec<i64>, VinbergError> {
    let matrix = space.matrix();
    for i in 0..space.dim() {
        for j in 0..space.dim() {
            let entry = matrix.get(i, j);
            if entry.as_rational().map(|q| !q.is_integer()).unwrap_or(true) {
                return Err(VinbergError::NotIntegral {
                    value: entry.to_string(),
                });
            }
        }
    }
    let inverse = matrix.inverse().ok_or(VinbergError::SingularForm)?;
    let mut lambda = BigInt::from(1);
    for i in 0..space.dim() {
        for j in 0..space.dim() {
            let entry = inverse
                .get(i, j)
                .as_rational()
                .expect("inverse of a rational matrix is rational");
            lambda = lambda.lcm(entry.denom());
        }
    }
    let doubled = BigInt::from(2) * lambda;
    let bound = doubled.to_i64().ok_or(VinbergError::ScaleTooLarge {
        value: doubled.to_string(),
    })?;
    let mut norms: Vec<i64> = (1..=bound).filter(|k| bound % k == 0).collect();
    norms.sort_unstable();
    Ok(norms)
}

fn integer_coordinates(v: &ExactVector) -> Result<Vec<BigInt>, VinbergError> {
    v.iter()
        .map(|entry| {
            entry
                .as_rational()
                .filter(|q| q.is_integer())
                .map(|q| q.to_integer())
                .ok_or_else(|| VinbergError::NotIntegral {
                    value: entry.to_string(),
                })
        })
        .collect()
}

fn bigint_matrix(space: &QuadraticSpace) -> Vec<Vec<BigInt>> {
    let m = space.matrix();
    (0..space.dim())
        .map(|i| {
            (0..space.dim())
                .map(|j| {
                    m.get(i, j)
                        .as_rational()
                        .expect("validated integral")
                        .to_integer()
                })
                .collect()
        })
        .collect()
}

fn bigint_inner(m: &[Vec<BigInt>], x: &[BigInt], y: &[BigInt]) -> BigInt {
    let mut total = BigInt::zero();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !m[i][j].is_zero() && !yj.is_zero() {
                total += xi * &m[i][j] * yj;
            }
        }
    }
    total
}

/// `2(Me)ᵢ ≡ 0 (mod k)` for every coordinate.
fn is_crystallographic(m: &[Vec<BigInt>], e: &[BigInt], k: &BigInt) -> bool {
    for row in m {
        let mut entry = BigInt::zero();
        for (coefficient, value) in row.iter().zip(e) {
            if !coefficient.is_zero() && !value.is_zero() {
                entry += coefficient * value;
            }
        }
        if !(BigInt::from(2) * entry).is_multiple_of(k) {
            return false;
        }
    }
    true
}

fn to_exact_vector(coords: &[BigInt]) -> ExactVector {
    ExactVector(
        coords
            .iter()
            .map(|c| ExactScalar::rational(BigRational::from(c.clone())))
            .collect(),
    )
}

/// Simple roots of the finite reflection group fixing the basepoint:
/// the crystallographic roots orthogonal to `v0`, cut down to the
/// indecomposable elements of the lexicographically positive half.
pub fn stabilizer_cone(
    space: &QuadraticSpace,
    v0: &ExactVector,
) -> Result<Vec<ExactVector>, VinbergError> {
    let basepoint = validate_basepoint(space, v0)?;
    let norms = candidate_norms(space)?;
    let m = bigint_matrix(space);
    let functional: Vec<BigInt> = (0..space.dim())
        .map(|i| bigint_inner(&m, &unit_vector(space.dim(), i), &basepoint))
        .collect();
    let mut roots: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for &k in &norms {
        let norm = BigInt::from(k);
        for e in lattice::solve_fiber(&m, &functional, &BigInt::zero(), &norm) {
            if lattice::content(&e) == BigInt::from(1) && is_crystallographic(&m, &e, &norm) {
                roots.insert(e);
            }
        }
    }
    let lex_positive = |e: &Vec<BigInt>| -> bool {
        e.iter()
            .find(|x| !x.is_zero())
            .map(|x| x.is_positive())
            .unwrap_or(false)
    };
    let positive: Vec<Vec<BigInt>> = roots.iter().filter(|e| lex_positive(e)).cloned().collect();
    let positive_set: BTreeSet<&Vec<BigInt>> = positive.iter().collect();
    let mut simple: Vec<Vec<BigInt>> = positive
        .iter()
        .filter(|e| {
            // Indecomposable: e − f is never again a positive root.
            !positive.iter().any(|f| {
                if f == *e {
                    return false;
                }
                let difference: Vec<BigInt> =
                    e.iter().zip(f).map(|(a, b)| a - b).collect();
                positive_set.contains(&difference)
            })
        })
        .cloned()
        .collect();
    simple.sort();
    Ok(simple.iter().map(|e| to_exact_vector(e)).collect())
}

fn unit_vector(d: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); d];
    v[i] = BigInt::from(1);
    v
}

fn validate_basepoint(
    space: &QuadraticSpace,
    v0: &ExactVector,
) -> Result<Vec<BigInt>, VinbergError> {
    if v0.len() != space.dim() {
        return Err(VinbergError::DimensionMismatch {
            expected: space.dim(),
            found: v0.len(),
        });
    }
    let coords = integer_coordinates(v0)?;
    let norm = space.norm(v0);
    if !norm.is_negative() {
        return Err(VinbergError::BasepointNotTimeLike {
            norm: norm.to_string(),
        });
    }
    Ok(coords)
}

/// One accepted mirror wall.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRoot {
    /// Integer coordinates of the root.
    pub coords: ExactVector,
    /// Norm `(e,e)`.
    pub norm: ExactScalar,
    /// Distance parameter `(e,v0)²/(e,e)` from the basepoint.
    pub distance: ExactScalar,
}

/// A root candidate produced by the enumeration, before acceptance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    /// Integer coordinates.
    pub coords: ExactVector,
    /// Norm `(e,e)`.
    pub norm: ExactScalar,
    /// Distance parameter `(e,v0)²/(e,e)`.
    pub distance: ExactScalar,
}

#[derive(Debug, Clone)]
struct Accepted {
    coords: Vec<BigInt>,
    norm: BigInt,
    distance: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Shell {
    distance: BigRational,
    norm: i64,
    height: BigInt,
}

/// Enumeration caps; exceeding either ends a run with
/// `BudgetExhausted`.  Caps are checked between distance levels, so a
/// level is always processed in full once started.
#[derive(Debug, Clone, Default)]
pub struct Budget {
    /// Cap on the number of accepted roots (stabilizer included).
    pub max_roots: Option<usize>,
    /// Cap on the distance parameter of enumerated candidates.
    pub max_distance: Option<BigRational>,
}

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RunStatus {
    /// The accepted walls bound a finite-volume chamber.
    FiniteVolume,
    /// A budget cap was reached first.
    BudgetExhausted,
}

/// Result of a run: final status and the accepted roots in order.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    /// Final status.
    pub status: RunStatus,
    /// Accepted roots, stabilizer cone first, then by distance.
    pub roots: Vec<ReportRoot>,
    /// Wall-clock duration of the run (not serialized; reporting it
    /// is the caller's concern and keeps artifacts deterministic).
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Enumeration state: the form, the basepoint, accepted walls and the
/// shell queue of `(norm, height)` levels still to visit.
#[derive(Debug, Clone)]
pub struct VinbergState {
    space: QuadraticSpace,
    matrix: Vec<Vec<BigInt>>,
    basepoint: Vec<BigInt>,
    functional: Vec<BigInt>,
    norms: Vec<i64>,
    accepted: Vec<Accepted>,
    shells: BinaryHeap<Reverse<Shell>>,
    pending: VecDeque<Candidate>,
}

fn height_step(norm: i64) -> i64 {
    // 2t ≡ 0 (mod k) constrains heights to multiples of k/gcd(k,2).
    if norm % 2 == 0 {
        norm / 2
    } else {
        norm
    }
}

impl VinbergState {
    /// Sets up enumeration from a basepoint, seeding the accepted
    /// list with the stabilizer chamber.
    pub fn new(space: QuadraticSpace, v0: &ExactVector) -> Result<Self, VinbergError> {
        let mut state = Self::bare(space, v0)?;
        let cone = stabilizer_cone(&state.space, v0)?;
        for root in &cone {
            let coords = integer_coordinates(root).expect("cone roots are integral");
            let norm = bigint_inner(&state.matrix, &coords, &coords);
            state.accepted.push(Accepted {
                coords,
                norm,
                distance: BigRational::zero(),
            });
        }
        Ok(state)
    }

    /// Sets up enumeration with an empty accepted list: the caller
    /// replays roots through [`accept`] directly, for instance to
    /// validate an externally produced root sequence.
    pub fn bare(space: QuadraticSpace, v0: &ExactVector) -> Result<Self, VinbergError> {
        let basepoint = validate_basepoint(&space, v0)?;
        let norms = candidate_norms(&space)?;
        let matrix = bigint_matrix(&space);
        let functional: Vec<BigInt> = (0..space.dim())
            .map(|i| bigint_inner(&matrix, &unit_vector(space.dim(), i), &basepoint))
            .collect();
        let mut shells = BinaryHeap::new();
        for &k in &norms {
            let step = height_step(k);
            let height = BigInt::from(step);
            shells.push(Reverse(Shell {
                distance: BigRational::new(&height * &height, BigInt::from(k)),
                norm: k,
                height,
            }));
        }
        Ok(Self {
            space,
            matrix,
            basepoint,
            functional,
            norms,
            accepted: Vec::new(),
            shells,
            pending: VecDeque::new(),
        })
    }

    /// The underlying quadratic space.
    pub fn space(&self) -> &QuadraticSpace {
        &self.space
    }

    /// The basepoint as an exact vector.
    pub fn basepoint(&self) -> ExactVector {
        to_exact_vector(&self.basepoint)
    }

    /// The candidate norms in use.
    pub fn candidate_norms(&self) -> &[i64] {
        &self.norms
    }

    /// Accepted roots so far as report entries.
    pub fn roots(&self) -> Vec<ReportRoot> {
        self.accepted
            .iter()
            .map(|accepted| ReportRoot {
                coords: to_exact_vector(&accepted.coords),
                norm: ExactScalar::rational(BigRational::from(accepted.norm.clone())),
                distance: ExactScalar::rational(accepted.distance.clone()),
            })
            .collect()
    }

    /// The accepted roots as a polyhedron.
    pub fn polyhedron(&self) -> Result<Polyhedron, QspaceError> {
        Polyhedron::new(
            self.space.clone(),
            self.accepted
                .iter()
                .map(|accepted| to_exact_vector(&accepted.coords))
                .collect(),
        )
    }

    /// Distance level of the next unprocessed shell.
    pub fn next_level_distance(&self) -> Option<BigRational> {
        self.shells.peek().map(|Reverse(shell)| shell.distance.clone())
    }

    /// Processes the next distance level: computes all fibers at the
    /// minimal distance, filters to primitive crystallographic roots,
    /// sorts them lexicographically and queues them.  Returns the
    /// level's distance.
    fn advance_level(&mut self) -> Option<BigRational> {
        let Reverse(first) = self.shells.pop()?;
        let distance = first.distance.clone();
        let mut level = vec![first];
        while let Some(Reverse(shell)) = self.shells.peek() {
            if shell.distance == distance {
                let Reverse(shell) = self.shells.pop().expect("peeked");
                level.push(shell);
            } else {
                break;
            }
        }
        let matrix = &self.matrix;
        let functional = &self.functional;
        let mut found: Vec<(Vec<BigInt>, i64)> = level
            .par_iter()
            .map(|shell| {
                let norm = BigInt::from(shell.norm);
                lattice::solve_fiber(matrix, functional, &shell.height, &norm)
                    .into_iter()
                    .filter(|e| {
                        lattice::content(e) == BigInt::from(1)
                            && is_crystallographic(matrix, e, &norm)
                    })
                    .map(|e| (e, shell.norm))
                    .collect::<Vec<_>>()
            })
            .reduce(Vec::new, |mut a, mut b| {
                a.append(&mut b);
                a
            });
        found.sort();
        for (coords, norm) in found {
            self.pending.push_back(Candidate {
                coords: to_exact_vector(&coords),
                norm: ExactScalar::integer(norm),
                distance: ExactScalar::rational(distance.clone()),
            });
        }
        for shell in level {
            let next_height = &shell.height + BigInt::from(height_step(shell.norm));
            self.shells.push(Reverse(Shell {
                distance: BigRational::new(&next_height * &next_height, BigInt::from(shell.norm)),
                norm: shell.norm,
                height: next_height,
            }));
        }
        Some(distance)
    }

    /// Number of accepted roots (stabilizer cone included).
    pub fn accepted_len(&self) -> usize {
        self.accepted.len()
    }
}

/// Acceptance test of the enumeration: a candidate is kept iff it
/// makes a non-acute angle with every wall kept before it.  Keeps the
/// root on success.
pub fn accept(state: &mut VinbergState, e: &ExactVector) -> bool {
    let coords = integer_coordinates(e).expect("candidates have integer coordinates");
    for earlier in &state.accepted {
        if bigint_inner(&state.matrix, &coords, &earlier.coords).is_positive() {
            return false;
        }
    }
    let norm = bigint_inner(&state.matrix, &coords, &coords);
    assert!(norm.is_positive(), "roots must be space-like");
    let height = -bigint_inner(&state.matrix, &coords, &state.basepoint);
    let distance = BigRational::new(&height * &height, norm.clone());
    state.accepted.push(Accepted {
        coords,
        norm,
        distance,
    });
    true
}

/// Streams candidates in enumeration order until a budget cap.
///
/// Candidates are *not* filtered by acceptance; the stream is the raw
/// non-decreasing-distance sequence of primitive crystallographic
/// roots with `(e, v0) < 0`.
pub fn enumerate_roots(state: &mut VinbergState, budget: &Budget) -> Vec<Candidate> {
    let mut out = Vec::new();
    loop {
        if let Some(cap) = budget.max_roots {
            if out.len() >= cap {
                return out;
            }
        }
        if state.pending.is_empty() {
            let Some(distance) = state.next_level_distance() else {
                return out;
            };
            if let Some(cap) = &budget.max_distance {
                if &distance > cap {
                    return out;
                }
            }
            state.advance_level();
            continue;
        }
        while let Some(candidate) = state.pending.pop_front() {
            out.push(candidate);
            if let Some(cap) = budget.max_roots {
                if out.len() >= cap {
                    return out;
                }
            }
        }
    }
}

/// Runs the full algorithm: enumerate, accept, and stop once the
/// accepted walls bound a finite-volume chamber or the budget runs
/// out.
pub fn run(state: &mut VinbergState, budget: &Budget) -> RunReport {
    let started = std::time::Instant::now();
    let status = loop {
        if let Some(cap) = budget.max_roots {
            if state.accepted.len() >= cap {
                break RunStatus::BudgetExhausted;
            }
        }
        let Some(distance) = state.next_level_distance() else {
            break RunStatus::BudgetExhausted;
        };
        if let Some(cap) = &budget.max_distance {
            if &distance > cap {
                break RunStatus::BudgetExhausted;
            }
        }
        state.advance_level();
        let mut finished = false;
        while let Some(candidate) = state.pending.pop_front() {
            if accept(state, &candidate.coords)
                && finite_volume_check(&state.polyhedron().expect("accepted roots stay valid"))
            {
                finished = true;
                break;
            }
        }
        if finished {
            break RunStatus::FiniteVolume;
        }
    };
    RunReport {
        status,
        roots: state.roots(),
        elapsed: started.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(entries: &[i64]) -> QuadraticSpace {
        QuadraticSpace::diagonal(entries).unwrap()
    }

    fn vector(coords: &[i64]) -> ExactVector {
        ExactVector::from_i64(coords)
    }

    #[test]
    fn candidate_norms_of_small_diagonal_forms() {
        assert_eq!(candidate_norms(&diag(&[-1, 2, 1])).unwrap(), vec![1, 2, 4]);
        assert_eq!(candidate_norms(&diag(&[-1, 1, 1])).unwrap(), vec![1, 2]);
    }

    #[test]
    fn stabilizer_cone_matches_brute_force_oracle() {
        let space = diag(&[-1, 2, 1]);
        let v0 = vector(&[1, 0, 0]);
        let cone = stabilizer_cone(&space, &v0).unwrap();
        assert_eq!(cone, vec![vector(&[0, 0, 1]), vector(&[0, 1, 0])]);
        // Oracle: every mirror orthogonal to v0 with small
        // coefficients — primitive crystallographic roots — shows up
        // in the cone up to sign.
        let mut oracle = Vec::new();
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                if num_integer::gcd(x, y) != 1 {
                    continue;
                }
                let e = vector(&[0, x, y]);
                let norm = space.norm(&e);
                if norm.is_positive() && space.is_crystallographic_root(&e) {
                    oracle.push(e);
                }
            }
        }
        for root in &oracle {
            let negated = -root;
            assert!(
                cone.contains(root) || cone.contains(&negated),
                "oracle root {root:?} missing from the cone"
            );
        }
    }

    #[test]
    fn generic_basepoint_has_trivial_stabilizer() {
        let space = diag(&[-1, 2, 1]);
        // The complement form of (7,3,2) represents 5 as its minimum,
        // above every candidate norm.
        let cone = stabilizer_cone(&space, &vector(&[7, 3, 2])).unwrap();
        assert!(cone.is_empty(), "unexpected stabilizer roots: {cone:?}");
    }

    #[test]
    fn triangle_run_halts_with_three_mirrors() {
        let space = diag(&[-1, 2, 1]);
        let mut state = VinbergState::new(space, &vector(&[1, 0, 0])).unwrap();
        let report = run(
            &mut state,
            &Budget {
                max_roots: Some(10),
                max_distance: None,
            },
        );
        assert_eq!(report.status, RunStatus::FiniteVolume);
        let coords: Vec<ExactVector> = report.roots.iter().map(|r| r.coords.clone()).collect();
        assert_eq!(
            coords,
            vec![vector(&[0, 0, 1]), vector(&[0, 1, 0]), vector(&[1, -1, -1])]
        );
    }

    #[test]
    fn candidate_stream_is_sorted_by_distance_then_lex() {
        let space = diag(&[-1, 2, 1]);
        let mut state = VinbergState::new(space.clone(), &vector(&[1, 0, 0])).unwrap();
        let stream = enumerate_roots(
            &mut state,
            &Budget {
                max_roots: Some(40),
                max_distance: None,
            },
        );
        assert_eq!(stream.len(), 40);
        for window in stream.windows(2) {
            let a = window[0].distance.as_rational().unwrap();
            let b = window[1].distance.as_rational().unwrap();
            assert!(a <= b, "distances must be non-decreasing");
            if a == b {
                assert!(window[0].coords < window[1].coords, "ties break lexicographically");
            }
        }
        for candidate in &stream {
            assert!(space.is_crystallographic_root(&candidate.coords));
            let height = space.inner(&candidate.coords, &vector(&[1, 0, 0]));
            assert!(height.is_negative(), "candidates point away from the basepoint");
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let space = diag(&[-2, 1, 1, 1]);
        let budget = Budget {
            max_roots: Some(12),
            max_distance: None,
        };
        let run_once = || {
            let mut state = VinbergState::new(space.clone(), &vector(&[1, 0, 0, 0])).unwrap();
            run(&mut state, &budget)
        };
        let first = run_once();
        let second = run_once();
        assert_eq!(first.status, second.status);
        assert_eq!(first.roots, second.roots);
    }

    #[test]
    fn simplex_form_reaches_finite_volume() {
        let space = diag(&[-2, 1, 1, 1]);
        let mut state = VinbergState::new(space, &vector(&[1, 0, 0, 0])).unwrap();
        let report = run(
            &mut state,
            &Budget {
                max_roots: Some(16),
                max_distance: None,
            },
        );
        assert_eq!(report.status, RunStatus::FiniteVolume);
        assert!(
            finite_volume_check(&state.polyhedron().unwrap()),
            "reported finite volume must replay"
        );
        for root in &report.roots {
            assert!(state.space().is_crystallographic_root(&root.coords));
        }
    }

    #[test]
    fn no_roots_certificate_on_root_rich_forms_is_none() {
        assert_eq!(
            no_roots_obstruction(&diag(&[-1, 2, 1]), 1 << 12).unwrap(),
            None
        );
        assert_eq!(
            no_roots_obstruction(&diag(&[-1, 1, 1]), 1 << 12).unwrap(),
            None
        );
    }

    #[test]
    fn identity_and_reflections_are_not_infinite_symmetries() {
        let space = diag(&[-1, 2, 1]);
        let identity = crate::exact::ExactMatrix::identity(3);
        assert!(
            !verify_infinite_symmetry(&space, &identity, &[], &[]).unwrap()
        );
        let reflection = space.reflection_matrix(&vector(&[0, 1, 0]));
        assert!(
            !verify_infinite_symmetry(&space, &reflection, &[], &[]).unwrap()
        );
    }
}
