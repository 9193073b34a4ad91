//! Machine-readable output schemas.
//!
//! Every index in these reports is 1-based: wall `i` of a polyhedron
//! file is the `i`-th entry of its `roots` array counting from one,
//! and words list mirror walls by the same numbering.  Scalars are
//! strings in the exact grammar (`-3/2`, `sqrt(14)`, `1/2*sqrt(2)`,
//! sums joined by `+`/`-`).

use reflekt_core::arith::{ArithmeticityVerdict, FieldKind};
use reflekt_core::diagram::{Diagram, EdgeKind};
use reflekt_core::exact::{ExactScalar, ExactVector};
use reflekt_core::packing::OrbitRecord;
use reflekt_core::qspace::Polyhedron;
use reflekt_core::vinberg::{ReportRoot, RunStatus};
use serde::Serialize;

/// Output of `vinberg`: run status, accepted walls, and the diagram of
/// the chamber found so far.
#[derive(Serialize)]
pub struct VinbergReport {
    /// `finite_volume` or `budget_exhausted`.
    pub status: &'static str,
    /// Accepted walls with norms and basepoint distances, in
    /// acceptance order.
    pub roots: Vec<ReportRoot>,
    /// Diagram of the accepted walls, when they form a polyhedron.
    pub diagram: Option<DiagramReport>,
}

/// A diagram as vertex count plus classified edges.
#[derive(Serialize)]
pub struct DiagramReport {
    /// Number of walls.
    pub vertices: usize,
    /// Drawn edges; orthogonal pairs are omitted.
    pub edges: Vec<EdgeReport>,
}

/// One classified edge between walls `i < j` (1-based).
#[derive(Serialize)]
pub struct EdgeReport {
    pub i: usize,
    pub j: usize,
    /// `simple`, `bold` or `dotted`.
    pub kind: &'static str,
    /// Dihedral angle π/m for simple edges.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    /// Normalised product magnitude for dotted edges.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<ExactScalar>,
}

impl DiagramReport {
    /// Flattens a diagram into the report schema.
    pub fn from_diagram(diagram: &Diagram) -> Self {
        let edges = diagram
            .edges()
            .filter(|(_, _, kind)| kind.is_edge())
            .map(|(i, j, kind)| {
                let (name, m, weight) = match kind {
                    EdgeKind::None => unreachable!("filtered above"),
                    EdgeKind::Simple(m) => ("simple", Some(*m), None),
                    EdgeKind::Bold => ("bold", None, None),
                    EdgeKind::Dotted(w) => ("dotted", None, Some(w.clone())),
                };
                EdgeReport {
                    i: i + 1,
                    j: j + 1,
                    kind: name,
                    m,
                    weight,
                }
            })
            .collect();
        DiagramReport {
            vertices: diagram.size(),
            edges,
        }
    }
}

/// Status string for a run result.
pub fn status_name(status: RunStatus) -> &'static str {
    match status {
        RunStatus::FiniteVolume => "finite_volume",
        RunStatus::BudgetExhausted => "budget_exhausted",
    }
}

/// Output of `arith`: ground field and the two criterion flags.
#[derive(Serialize)]
pub struct ArithReport {
    pub field: FieldReport,
    pub quasi_arithmetic: bool,
    pub arithmetic: bool,
    /// A cycle whose doubled product is not an algebraic integer, when
    /// one exists.
    pub failing_cycle: Option<CycleReport>,
}

/// Ground field of the cyclic products.
#[derive(Serialize)]
pub struct FieldReport {
    /// `rational` or `real_quadratic`.
    pub kind: &'static str,
    /// The radicand d of ℚ(√d) for quadratic fields.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<u64>,
    /// Irrational cyclic products witnessing the field.
    pub generators: Vec<ExactScalar>,
}

/// A cycle (1-based walls) with its doubled Gram product.
#[derive(Serialize)]
pub struct CycleReport {
    pub cycle: Vec<usize>,
    pub value: ExactScalar,
}

impl ArithReport {
    /// Flattens a verdict; the caller has already rejected unsupported
    /// fields.
    pub fn from_verdict(verdict: &ArithmeticityVerdict) -> Self {
        let (kind, discriminant) = match verdict.field.kind {
            FieldKind::Rational => ("rational", None),
            FieldKind::RealQuadratic(d) => ("real_quadratic", Some(d)),
            FieldKind::Unsupported { .. } => {
                unreachable!("unsupported fields abort before reporting")
            }
        };
        ArithReport {
            field: FieldReport {
                kind,
                discriminant,
                generators: verdict.field.generators.clone(),
            },
            quasi_arithmetic: verdict.quasi_arithmetic,
            arithmetic: verdict.arithmetic,
            failing_cycle: verdict.failing_cycle.as_ref().map(|product| CycleReport {
                cycle: product.cycle.iter().map(|&v| v + 1).collect(),
                value: product.value.clone(),
            }),
        }
    }
}

/// Output of `clusters`: isolated walls and the packing partitions.
#[derive(Serialize)]
pub struct ClustersReport {
    /// Walls with no plain edges at all (1-based).
    pub isolated: Vec<usize>,
    /// Every cluster/cocluster partition seeded by isolated walls.
    pub clusters: Vec<PartitionReport>,
}

/// One cluster/cocluster partition (1-based walls).
#[derive(Serialize)]
pub struct PartitionReport {
    pub cluster: Vec<usize>,
    pub cocluster: Vec<usize>,
}

/// Output of `pack`: one record per orbit sphere.
#[derive(Serialize)]
pub struct OrbitReport {
    pub records: Vec<SphereReport>,
}

/// One orbit sphere: its root, inversive data, and the mirror word
/// that produced it.
#[derive(Serialize)]
pub struct SphereReport {
    /// Unit root of the sphere in lattice coordinates.
    pub root: ExactVector,
    /// Inverse signed radius; 0 for hyperplanes.
    pub bend: ExactScalar,
    /// Dual coordinate: bend of the image under inverting in the unit
    /// sphere.
    pub cobend: ExactScalar,
    /// Euclidean center (circles only; absent for hyperplanes).
    pub center: Option<Vec<ExactScalar>>,
    /// Mirror walls applied left-to-right (1-based), empty for seeds.
    pub word: Vec<usize>,
    /// Length of the word.
    pub depth: usize,
}

impl SphereReport {
    /// Converts a record, renaming mirror positions to wall numbers.
    pub fn from_record(record: &OrbitRecord, mirror_walls: &[usize]) -> Self {
        SphereReport {
            root: record.root.clone(),
            bend: record.sphere.bend().clone(),
            cobend: record.sphere.cobend().clone(),
            center: record.sphere.center(),
            word: record.word.iter().map(|&k| mirror_walls[k]).collect(),
            depth: record.depth,
        }
    }
}

/// Output of `double` with `--orthogonalize`: the full trace.
#[derive(Serialize)]
pub struct TraceReport {
    /// Performed steps in order; empty when the wall was already
    /// orthogonal to every neighbour.
    pub steps: Vec<StepReport>,
    /// The polyhedron after the last step.
    pub final_polyhedron: Polyhedron,
    /// 1-based index of the tracked wall in the final polyhedron.
    pub distinguished: usize,
}

/// One doubling step: the polyhedron entering it and the wall doubled
/// across (1-based).
#[derive(Serialize)]
pub struct StepReport {
    pub polyhedron: Polyhedron,
    pub facet: usize,
}

/// Output of `fixtures`: one row per verification.
#[derive(Serialize)]
pub struct FixturesReport {
    pub checks: Vec<CheckReport>,
    pub passed: usize,
    pub failed: usize,
}

/// One fixture verification row.
#[derive(Serialize)]
pub struct CheckReport {
    pub name: &'static str,
    pub pass: bool,
    /// What went wrong, for failing rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}
