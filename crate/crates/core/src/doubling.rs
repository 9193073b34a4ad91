//! Doubling acute-angled hyperbolic polyhedra across their walls.
//!
//! The double of a polyhedron `P` across a wall `f` is `P ∪ R_f(P)`, the
//! union with its mirror image. At the level of root systems the mirror
//! root itself disappears (its hyperplane becomes interior to the double)
//! while every wall not orthogonal to `f` contributes its reflected image
//! as a new wall. Whenever each wall meeting `f` does so at an angle
//! `π/2^m`, the double is again acute-angled with angles of the form
//! `π/k`: the two copies of a wall meeting the mirror at `π/2^m` form the
//! angle `π/2^(m-1)` with each other, and all other angles are carried
//! over by the isometry `R_f`.
//!
//! Iterating the construction straightens a chosen wall: doubling across
//! one of its `π/4`-neighbours replaces the tracked wall by its reflected
//! image, which has exactly one `π/4`-neighbour fewer. After as many steps
//! as there were `π/4`-neighbours at the start, the tracked wall meets
//! every other wall orthogonally or not at all — it becomes an isolated
//! vertex of the diagram, the configuration from which a sphere packing
//! can be read off.
//!
//! [`facet_polyhedron`] goes one dimension down: it restricts a polyhedron
//! to the mirror hyperplane of one of its walls. Walls incident to the
//! chosen wall are projected orthogonally into the mirror and re-expressed
//! in an integral basis of the orthogonal sublattice, so the restriction
//! is again a polyhedron over an exact quadratic space. The reflection
//! group of the restriction is the stabilizer of the mirror in the
//! original reflection group.

use crate::diagram::{build_diagram, find_isolated_roots, Diagram, DiagramError, EdgeKind};
use crate::exact::{ExactMatrix, ExactScalar, ExactVector};
use crate::qspace::{Polyhedron, QspaceError, QuadraticSpace};
use crate::vinberg::lattice::{concentrate_functional, content};
use crate::vinberg::{chamber_vertices, finite_volume_check};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// Errors from doubling and restriction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DoublingError {
    /// A wall index outside the polyhedron.
    #[error("wall index {index} is out of range for a polyhedron with {len} walls")]
    WallOutOfRange { index: usize, len: usize },
    /// The wall to double across meets a neighbour at an angle that is
    /// not `π` over a power of two, so the angles of the double would
    /// not all be of the form `π/k`.
    #[error(
        "wall {facet} meets wall {neighbor} at angle pi/{order}, \
         which is not pi over a power of two"
    )]
    OddAngleNeighbor {
        facet: usize,
        neighbor: usize,
        order: u32,
    },
    /// A doubling step inside [`orthogonalize`] failed.
    #[error("doubling step {step} failed: {source}")]
    Stage {
        step: usize,
        source: Box<DoublingError>,
    },
    /// After a doubling step the tracked wall did not lose exactly one
    /// `π/4`-neighbour.
    #[error(
        "tracked wall kept {found} quarter-angle neighbours after step {step}, expected {expected}"
    )]
    QuarterAngleMiscount {
        step: usize,
        expected: usize,
        found: usize,
    },
    /// The distinguished wall of a finished trace still meets another
    /// wall at a proper angle below `π/2`.
    #[error("distinguished wall {index} still meets another wall at a proper acute angle")]
    NotIsolated { index: usize },
    /// The double of a finite-volume polyhedron failed the finite-volume
    /// check, indicating an arithmetic fault rather than a geometric one.
    #[error("the double across wall {facet} lost finite volume")]
    VolumeLost { facet: usize },
    /// The mirror functional of the wall has irrational entries, so the
    /// orthogonal sublattice has no integral basis.
    #[error("wall {facet} has an irrational mirror functional, so no integral basis exists")]
    IrrationalMirror { facet: usize },
    /// Invalid vectors or angles while rebuilding a polyhedron.
    #[error(transparent)]
    Space(#[from] QspaceError),
    /// Unrecognized angles while rebuilding a diagram.
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// One step of an iterated doubling: the polyhedron entering the step
/// and the wall that was doubled across.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoublingStep {
    /// The polyhedron before the step.
    pub polyhedron: Polyhedron,
    /// Index of the wall doubled across.
    pub facet: usize,
}

/// The record of an iterated doubling: every intermediate polyhedron,
/// the final polyhedron, and the index of the tracked wall inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoublingTrace {
    /// The steps performed, in order; empty if the wall was already
    /// orthogonal to all of its neighbours.
    pub steps: Vec<DoublingStep>,
    /// The polyhedron after the last step.
    pub final_polyhedron: Polyhedron,
    /// Index of the image of the tracked wall in `final_polyhedron`.
    pub distinguished: usize,
}

/// Appends `candidate` unless an equal root is already present; returns
/// its position either way.
fn push_unique(roots: &mut Vec<ExactVector>, candidate: ExactVector) -> usize {
    match roots.iter().position(|root| *root == candidate) {
        Some(position) => position,
        None => {
            roots.push(candidate);
            roots.len() - 1
        }
    }
}

/// The walls forming an angle of `π/4` with wall `v`.
fn quarter_neighbors(diagram: &Diagram, v: usize) -> Vec<usize> {
    (0..diagram.size())
        .filter(|&u| u != v && diagram.edge(v, u) == EdgeKind::Simple(4))
        .collect()
}

/// Doubles the polyhedron across the mirror of the wall `facet`.
///
/// The walls of the double are the remaining walls together with the
/// reflected images of those not orthogonal to the mirror, deduplicated;
/// the mirror root itself becomes interior and is dropped. The result is
/// validated: all pairwise angles must again be of the form `π/k`, and a
/// finite-volume input must produce a finite-volume double.
pub fn double(poly: &Polyhedron, facet: usize) -> Result<Polyhedron, DoublingError> {
    if facet >= poly.len() {
        return Err(DoublingError::WallOutOfRange {
            index: facet,
            len: poly.len(),
        });
    }
    let diagram = build_diagram(poly)?;
    for j in 0..poly.len() {
        if j == facet {
            continue;
        }
        if let EdgeKind::Simple(m) = diagram.edge(facet, j) {
            if !m.is_power_of_two() {
                return Err(DoublingError::OddAngleNeighbor {
                    facet,
                    neighbor: j,
                    order: m,
                });
            }
        }
    }

    let space = poly.space().clone();
    let mirror = poly.root(facet).clone();
    let mut new_roots: Vec<ExactVector> = Vec::new();
    let mut kept_position: BTreeMap<usize, usize> = BTreeMap::new();
    let mut image_position: BTreeMap<usize, usize> = BTreeMap::new();
    for j in 0..poly.len() {
        if j == facet {
            continue;
        }
        let position = push_unique(&mut new_roots, poly.root(j).clone());
        kept_position.insert(j, position);
    }
    for j in 0..poly.len() {
        if j == facet || space.inner(poly.root(j), &mirror).is_zero() {
            continue;
        }
        let image = space.reflect(&mirror, poly.root(j));
        let position = push_unique(&mut new_roots, image);
        image_position.insert(j, position);
    }

    let doubled = Polyhedron::new(space, new_roots)?;
    let new_diagram = build_diagram(&doubled)?;
    for (&j, &image) in &image_position {
        if let EdgeKind::Simple(m) = diagram.edge(facet, j) {
            let expected = if m == 4 {
                EdgeKind::None
            } else {
                EdgeKind::Simple(m / 2)
            };
            assert_eq!(
                new_diagram.edge(kept_position[&j], image),
                expected,
                "the angle pi/{m} between wall {j} and the mirror must double between the wall and its image",
            );
        }
    }
    if finite_volume_check(poly) && !finite_volume_check(&doubled) {
        return Err(DoublingError::VolumeLost { facet });
    }
    Ok(doubled)
}

/// Iteratively doubles until the tracked wall is orthogonal to every
/// wall it meets.
///
/// The wall `facet` must meet its neighbours only at `π/2` or `π/4`.
/// Each step doubles across the lowest-indexed `π/4`-neighbour of the
/// tracked wall and replaces the tracked wall by its reflected image;
/// the number of steps equals the number of `π/4`-neighbours at entry.
/// The distinguished wall of the returned trace is an isolated vertex
/// of the final diagram: all its incidences are orthogonal, tangent or
/// divergent.
pub fn orthogonalize(poly: &Polyhedron, facet: usize) -> Result<DoublingTrace, DoublingError> {
    if facet >= poly.len() {
        return Err(DoublingError::WallOutOfRange {
            index: facet,
            len: poly.len(),
        });
    }
    let diagram = build_diagram(poly)?;
    for j in 0..poly.len() {
        if j == facet {
            continue;
        }
        if let EdgeKind::Simple(m) = diagram.edge(facet, j) {
            if m != 4 {
                return Err(DoublingError::OddAngleNeighbor {
                    facet,
                    neighbor: j,
                    order: m,
                });
            }
        }
    }
    let expected_steps = quarter_neighbors(&diagram, facet).len();

    let mut current = poly.clone();
    let mut distinguished = facet;
    let mut steps: Vec<DoublingStep> = Vec::new();
    loop {
        let diagram = build_diagram(&current)?;
        let quarters = quarter_neighbors(&diagram, distinguished);
        let Some(&wall) = quarters.first() else {
            break;
        };
        let image = current
            .space()
            .reflect(current.root(wall), current.root(distinguished));
        let doubled = double(&current, wall).map_err(|source| DoublingError::Stage {
            step: steps.len(),
            source: Box::new(source),
        })?;
        let new_distinguished = doubled
            .roots()
            .iter()
            .position(|root| *root.coords() == image)
            .expect("the reflected image of the tracked wall is a wall of the double");
        let new_diagram = build_diagram(&doubled)?;
        let remaining = quarter_neighbors(&new_diagram, new_distinguished).len();
        if remaining + 1 != quarters.len() {
            return Err(DoublingError::QuarterAngleMiscount {
                step: steps.len(),
                expected: quarters.len() - 1,
                found: remaining,
            });
        }
        steps.push(DoublingStep {
            polyhedron: current,
            facet: wall,
        });
        current = doubled;
        distinguished = new_distinguished;
    }
    assert_eq!(
        steps.len(),
        expected_steps,
        "each step must clear exactly one quarter angle",
    );

    let final_diagram = build_diagram(&current)?;
    if !find_isolated_roots(&final_diagram).contains(&distinguished) {
        return Err(DoublingError::NotIsolated {
            index: distinguished,
        });
    }
    Ok(DoublingTrace {
        steps,
        final_polyhedron: current,
        distinguished,
    })
}

/// The mirror functional of a wall as a primitive integer vector, or
/// `None` if it has irrational entries.
fn integral_mirror_functional(
    space: &QuadraticSpace,
    mirror: &ExactVector,
) -> Option<Vec<BigInt>> {
    let image = space.matrix().mul_vec(mirror);
    let rationals = image.as_rationals()?;
    let scale = rationals
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut entries: Vec<BigInt> = rationals
        .iter()
        .map(|q| q.numer() * (&scale / q.denom()))
        .collect();
    let gcd = content(&entries);
    if !gcd.is_zero() && !gcd.is_one() {
        for entry in &mut entries {
            *entry = &*entry / &gcd;
        }
    }
    Some(entries)
}

/// Restricts the polyhedron to the mirror hyperplane of the wall `facet`.
///
/// The walls of the restriction are the orthogonal projections
/// `e' = e − ((e,e₀)/(e₀,e₀))·e₀` of the walls incident to `facet`,
/// where incidence means sharing a chamber vertex. Walls tangent to the
/// mirror at the ideal boundary project to light-like vectors and are
/// dropped. Coordinates are re-expressed in an integral basis of the
/// sublattice `{x : (x, e₀) = 0}`, obtained by exact integer elimination
/// on the mirror functional, so the restriction lives in a quadratic
/// space of one dimension lower.
pub fn facet_polyhedron(poly: &Polyhedron, facet: usize) -> Result<Polyhedron, DoublingError> {
    if facet >= poly.len() {
        return Err(DoublingError::WallOutOfRange {
            index: facet,
            len: poly.len(),
        });
    }
    let space = poly.space();
    let mirror = poly.root(facet);
    let mirror_norm = space.norm(mirror);

    let mut incident: BTreeSet<usize> = BTreeSet::new();
    for vertex in chamber_vertices(poly) {
        if vertex.support.contains(&facet) {
            incident.extend(vertex.support.iter().copied().filter(|&j| j != facet));
        }
    }
    let mut projected: Vec<ExactVector> = Vec::new();
    for j in incident {
        let root = poly.root(j);
        let coefficient = &space.inner(root, mirror) / &mirror_norm;
        let projection = root - &mirror.scaled(&coefficient);
        if space.norm(&projection).is_positive() {
            projected.push(projection);
        }
    }

    let functional = integral_mirror_functional(space, mirror)
        .ok_or(DoublingError::IrrationalMirror { facet })?;
    let (column, _pivot, unimodular) = concentrate_functional(&functional);
    let kernel: Vec<ExactVector> = (0..functional.len())
        .filter(|&j| j != column)
        .map(|j| {
            ExactVector(
                unimodular[j]
                    .iter()
                    .map(|entry| ExactScalar::rational(BigRational::from_integer(entry.clone())))
                    .collect(),
            )
        })
        .collect();

    let rank = kernel.len();
    let gram = ExactMatrix::from_fn(rank, rank, |i, j| space.inner(&kernel[i], &kernel[j]));
    let inverse = gram
        .inverse()
        .expect("the restriction of a nondegenerate form to a space-like mirror is nondegenerate");
    let restricted = QuadraticSpace::new(gram)?;
    let mut walls = Vec::with_capacity(projected.len());
    for projection in &projected {
        let rhs = ExactVector(
            (0..rank)
                .map(|i| space.inner(&kernel[i], projection))
                .collect(),
        );
        walls.push(inverse.mul_vec(&rhs));
    }
    Ok(Polyhedron::new(restricted, walls)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The right triangle with angles `π/2`, `π/4` and an ideal vertex,
    /// realised over `diag(-1, 2, 1)`.
    fn right_triangle() -> Polyhedron {
        let space = QuadraticSpace::diagonal(&[-1, 2, 1]).expect("Lorentzian diagonal form");
        let roots = vec![
            ExactVector::from_i64(&[0, 0, 1]),
            ExactVector::from_i64(&[0, 1, 0]),
            ExactVector::from_i64(&[1, -1, -1]),
        ];
        Polyhedron::new(space, roots).expect("triangle walls are acute-angled")
    }

    #[test]
    fn doubling_across_an_orthogonal_wall_drops_only_the_mirror() {
        let space = QuadraticSpace::diagonal(&[-1, 2, 1]).expect("Lorentzian diagonal form");
        let wedge = Polyhedron::new(
            space,
            vec![
                ExactVector::from_i64(&[0, 1, 0]),
                ExactVector::from_i64(&[0, 0, 1]),
            ],
        )
        .expect("orthogonal wedge");
        let doubled = double(&wedge, 0).expect("doubling across an orthogonal wall");
        assert_eq!(
            doubled.len(),
            1,
            "the orthogonal wall is fixed by the mirror and must not duplicate"
        );
        assert_eq!(
            doubled.root(0),
            &ExactVector::from_i64(&[0, 0, 1]),
            "the surviving wall must be kept verbatim"
        );
    }

    #[test]
    fn doubling_the_right_triangle_yields_a_lambert_quadrilateral() {
        let triangle = right_triangle();
        let doubled = double(&triangle, 2).expect("doubling across the quarter-angle wall");
        let expected = vec![
            ExactVector::from_i64(&[0, 0, 1]),
            ExactVector::from_i64(&[0, 1, 0]),
            ExactVector::from_i64(&[1, -1, 0]),
            ExactVector::from_i64(&[2, -1, -2]),
        ];
        let roots: Vec<ExactVector> = doubled
            .roots()
            .iter()
            .map(|root| root.coords().clone())
            .collect();
        assert_eq!(roots, expected, "walls kept in order, then reflected images");

        let diagram = build_diagram(&doubled).expect("the double is a valid diagram");
        assert_eq!(
            diagram.edge(0, 2),
            EdgeKind::None,
            "the quarter-angle wall and its image must become orthogonal"
        );
        assert_eq!(diagram.edge(0, 1), EdgeKind::None, "right angle preserved");
        assert_eq!(diagram.edge(2, 3), EdgeKind::None, "reflected right angle");
        assert_eq!(
            diagram.edge(1, 3),
            EdgeKind::Bold,
            "the ideal vertex doubles into a tangency"
        );
        assert!(
            matches!(diagram.edge(0, 3), EdgeKind::Dotted(_)),
            "opposite walls of the quadrilateral diverge"
        );
        assert!(
            matches!(diagram.edge(1, 2), EdgeKind::Dotted(_)),
            "opposite walls of the quadrilateral diverge"
        );
        assert!(
            finite_volume_check(&doubled),
            "the double of a finite-volume triangle keeps finite volume"
        );
    }

    #[test]
    fn doubling_rejects_odd_angle_neighbors() {
        let space = QuadraticSpace::new(ExactMatrix::from_i64_rows(&[
            vec![-2, 0, 0],
            vec![0, 2, -1],
            vec![0, -1, 2],
        ]))
        .expect("Lorentzian form with a sixth-angle pair");
        let poly = Polyhedron::new(
            space,
            vec![
                ExactVector::from_i64(&[0, 1, 0]),
                ExactVector::from_i64(&[0, 0, 1]),
            ],
        )
        .expect("third-angle wedge");
        let error = double(&poly, 0).expect_err("a pi/3 neighbour cannot be doubled across");
        assert_eq!(
            error,
            DoublingError::OddAngleNeighbor {
                facet: 0,
                neighbor: 1,
                order: 3,
            },
            "the offending pair and angle order must be reported"
        );
    }

    #[test]
    fn orthogonalize_is_a_no_op_for_an_orthogonal_wall() {
        let triangle = right_triangle();
        let trace = orthogonalize(&triangle, 1).expect("wall 1 meets nothing at pi/4");
        assert!(trace.steps.is_empty(), "no doubling steps are needed");
        assert_eq!(
            trace.final_polyhedron, triangle,
            "the polyhedron must be returned unchanged"
        );
        assert_eq!(trace.distinguished, 1, "the tracked wall keeps its index");
    }

    #[test]
    fn orthogonalize_clears_one_quarter_angle_on_the_right_triangle() {
        let triangle = right_triangle();
        let trace = orthogonalize(&triangle, 0).expect("wall 0 has one quarter-angle neighbour");
        assert_eq!(trace.steps.len(), 1, "one pi/4 neighbour, one step");
        assert_eq!(trace.steps[0].facet, 2, "the doubling wall is the pi/4 neighbour");
        assert_eq!(trace.steps[0].polyhedron, triangle, "the step records its input");
        assert_eq!(
            trace.final_polyhedron.root(trace.distinguished),
            &ExactVector::from_i64(&[1, -1, 0]),
            "the distinguished wall is the reflected image of wall 0"
        );
        let diagram = build_diagram(&trace.final_polyhedron).expect("valid final diagram");
        assert!(
            find_isolated_roots(&diagram).contains(&trace.distinguished),
            "the distinguished wall must be isolated in the final diagram"
        );
    }

    #[test]
    fn orthogonalize_performs_one_step_per_quarter_angle_neighbor() {
        // A triangle with two pi/4 angles and an ideal vertex, realised
        // over diag(-1, 1, 1) with coordinates in Q(sqrt 2).
        let space = QuadraticSpace::diagonal(&[-1, 1, 1]).expect("Lorentzian diagonal form");
        let half_root_two = &ExactScalar::integer(2).sqrt().expect("exact sqrt")
            / &ExactScalar::integer(2);
        let b = ExactVector(vec![
            ExactScalar::zero(),
            half_root_two.clone(),
            -&half_root_two,
        ]);
        let c = ExactVector(vec![
            ExactScalar::integer(2),
            -&(&ExactScalar::integer(3) * &half_root_two),
            -&half_root_two,
        ]);
        let a = ExactVector::from_i64(&[0, 0, 1]);
        let poly = Polyhedron::new(space, vec![b, c, a]).expect("quarter-angle triangle");
        let diagram = build_diagram(&poly).expect("valid triangle diagram");
        assert_eq!(diagram.edge(2, 0), EdgeKind::Simple(4), "first pi/4 neighbour");
        assert_eq!(diagram.edge(2, 1), EdgeKind::Simple(4), "second pi/4 neighbour");
        assert_eq!(diagram.edge(0, 1), EdgeKind::Bold, "ideal vertex");

        let trace = orthogonalize(&poly, 2).expect("two quarter angles must straighten");
        assert_eq!(trace.steps.len(), 2, "two pi/4 neighbours, two steps");
        let final_diagram =
            build_diagram(&trace.final_polyhedron).expect("valid final diagram");
        assert!(
            find_isolated_roots(&final_diagram).contains(&trace.distinguished),
            "the distinguished wall must be isolated in the final diagram"
        );
    }

    #[test]
    fn mirror_restriction_keeps_orthogonal_walls_verbatim() {
        let triangle = right_triangle();
        let restricted = facet_polyhedron(&triangle, 0).expect("restriction to wall 0");
        assert_eq!(restricted.space().dim(), 2, "one dimension lower");
        assert_eq!(restricted.len(), 2, "both incident walls survive");
        assert_eq!(
            restricted.root(0),
            &ExactVector::from_i64(&[0, 1]),
            "the orthogonal wall projects to itself in kernel coordinates"
        );
        assert_eq!(
            restricted.root(1),
            &ExactVector::from_i64(&[1, -1]),
            "the quarter-angle wall projects into the mirror"
        );
        assert_eq!(
            restricted.space().matrix(),
            &ExactMatrix::from_i64_rows(&[vec![-1, 0], vec![0, 2]]),
            "the kernel basis carries the restricted form"
        );
        assert!(
            finite_volume_check(&restricted),
            "the restriction is a segment, hence finite volume"
        );
    }

    #[test]
    fn mirror_restriction_drops_ideal_tangencies() {
        let triangle = right_triangle();
        let restricted = facet_polyhedron(&triangle, 1).expect("restriction to wall 1");
        assert_eq!(restricted.space().dim(), 2, "one dimension lower");
        assert_eq!(
            restricted.len(),
            1,
            "the wall tangent at the ideal vertex projects to a light-like \
             vector and is dropped"
        );
        assert_eq!(
            restricted.root(0),
            &ExactVector::from_i64(&[0, 1]),
            "the orthogonal wall survives in kernel coordinates"
        );
        assert!(
            !finite_volume_check(&restricted),
            "a single mirror bounds a half-line of infinite length"
        );
    }
}
