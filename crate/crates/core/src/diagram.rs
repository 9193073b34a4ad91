//! Edge-labelled diagrams of acute-angled polyhedra.
//!
//! Vertices stand for walls.  The edge between walls `i` and `j` is
//! read off the normalised Gram entry `g = (eᵢ, eⱼ)/√((eᵢ,eᵢ)(eⱼ,eⱼ))`:
//!
//! * `g = 0`: no edge, the walls are orthogonal;
//! * `g² ∈ {1/4, 1/2, 3/4}` with `g < 0`: a simple edge of
//!   multiplicity `m ∈ {3, 4, 6}`, dihedral angle `π/m`;
//! * `g = -1`: a bold edge, the walls meet at the ideal boundary;
//! * `g < -1`: a dotted edge of weight `|g|`, the walls diverge.
//!
//! Positive entries and cosines outside the table are rejected with
//! the offending value.  Subdiagrams are classified through exact
//! signatures of the induced Gram matrix: positive definite means
//! elliptic (a finite reflection group), positive semidefinite with a
//! one-dimensional kernel on every connected component means
//! parabolic (a Euclidean reflection group).  The classifier also
//! names the standard connected types, which is what the reports
//! print.

use crate::exact::{ExactMatrix, ExactScalar};
use crate::qspace::Polyhedron;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

/// Errors raised while reading angles off a Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    /// A pair of walls meets at an angle wider than `π/2`.
    #[error("normalized Gram entry ({i},{j}) is {value} > 0; walls must meet at angles of at most pi/2")]
    PositiveInner {
        /// First wall.
        i: usize,
        /// Second wall.
        j: usize,
        /// The positive entry.
        value: String,
    },
    /// A dihedral angle is not `π/m` for `m ∈ {2, 3, 4, 6}` and the
    /// walls neither touch at infinity nor diverge.
    #[error("normalized Gram entry ({i},{j}) has square {cos_squared}, not a recognized angle cosine")]
    UnrecognizedAngle {
        /// First wall.
        i: usize,
        /// Second wall.
        j: usize,
        /// Square of the offending entry.
        cos_squared: String,
    },
    /// Normalisation needed the square root of an irrational norm
    /// product, which leaves the scalar class.
    #[error("norm product of walls {i} and {j} is {product}, not rational; cannot normalize")]
    NormalizationFailed {
        /// First wall.
        i: usize,
        /// Second wall.
        j: usize,
        /// The irrational norm product.
        product: String,
    },
    /// A diagonal entry of a claimed normalised Gram matrix is not 1.
    #[error("normalized Gram diagonal entry {index} is {value}, expected 1")]
    BadDiagonal {
        /// Offending index.
        index: usize,
        /// Offending value.
        value: String,
    },
}

/// The relation between two walls.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    /// Orthogonal walls; no edge is drawn.
    None,
    /// Dihedral angle `π/m`.
    Simple(u32),
    /// Walls meeting at the ideal boundary (`g = -1`).
    Bold,
    /// Diverging walls with normalised inner product `-weight`.
    Dotted(ExactScalar),
}

impl EdgeKind {
    /// Whether an edge is drawn at all.
    pub fn is_edge(&self) -> bool {
        !matches!(self, EdgeKind::None)
    }
}

/// The diagram of a polyhedron: normalised Gram matrix plus the
/// classified edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    size: usize,
    gram: ExactMatrix,
    edges: BTreeMap<(usize, usize), EdgeKind>,
}

fn classify_entry(i: usize, j: usize, g: &ExactScalar) -> Result<EdgeKind, DiagramError> {
    if g.is_zero() {
        return Ok(EdgeKind::None);
    }
    if g.is_positive() {
        return Err(DiagramError::PositiveInner {
            i,
            j,
            value: g.to_string(),
        });
    }
    let minus_one = ExactScalar::integer(-1);
    if *g == minus_one {
        return Ok(EdgeKind::Bold);
    }
    if g < &minus_one {
        return Ok(EdgeKind::Dotted(g.abs()));
    }
    // -1 < g < 0: table of angle cosines.
    let squared = g * g;
    if let Some(q) = squared.as_rational() {
        let quarter = |n: i64| BigRational::new(BigInt::from(n), BigInt::from(4));
        if q == quarter(1) {
            return Ok(EdgeKind::Simple(3));
        }
        if q == quarter(2) {
            return Ok(EdgeKind::Simple(4));
        }
        if q == quarter(3) {
            return Ok(EdgeKind::Simple(6));
        }
    }
    Err(DiagramError::UnrecognizedAngle {
        i,
        j,
        cos_squared: squared.to_string(),
    })
}

impl Diagram {
    /// Classifies a normalised Gram matrix (unit diagonal) into a
    /// diagram.
    pub fn from_normalized_gram(gram: ExactMatrix) -> Result<Self, DiagramError> {
        let size = gram.rows();
        assert!(gram.is_symmetric(), "Gram matrix must be symmetric");
        for index in 0..size {
            if *gram.get(index, index) != ExactScalar::one() {
                return Err(DiagramError::BadDiagonal {
                    index,
                    value: gram.get(index, index).to_string(),
                });
            }
        }
        let mut edges = BTreeMap::new();
        for i in 0..size {
            for j in i + 1..size {
                let kind = classify_entry(i, j, gram.get(i, j))?;
                if kind.is_edge() {
                    edges.insert((i, j), kind);
                }
            }
        }
        Ok(Self { size, gram, edges })
    }

    /// Number of vertices.
    pub fn size(&self) -> usize {
        self.size
    }

    /// The normalised Gram matrix.
    pub fn normalized_gram(&self) -> &ExactMatrix {
        &self.gram
    }

    /// The edge between two distinct vertices.
    pub fn edge(&self, i: usize, j: usize) -> EdgeKind {
        assert!(i != j, "no edge from a vertex to itself");
        let key = if i < j { (i, j) } else { (j, i) };
        self.edges.get(&key).cloned().unwrap_or(EdgeKind::None)
    }

    /// Iterates over the drawn edges in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &EdgeKind)> {
        self.edges.iter().map(|(&(i, j), kind)| (i, j, kind))
    }
}

/// Builds the diagram of a polyhedron from its pairwise angles.
pub fn build_diagram(poly: &Polyhedron) -> Result<Diagram, DiagramError> {
    let n = poly.len();
    let gram = poly.gram();
    let mut normalized = ExactMatrix::identity(n);
    for i in 0..n {
        for j in i + 1..n {
            let product = gram.get(i, i) * gram.get(j, j);
            let Some(q) = product.as_rational() else {
                return Err(DiagramError::NormalizationFailed {
                    i,
                    j,
                    product: product.to_string(),
                });
            };
            // 1/√(a/b) = √(a·b)/a, staying in the scalar class.
            let radicand = (q.numer() * q.denom())
                .try_into()
                .expect("norm product exceeds the supported radicand range");
            let inverse_root = ExactScalar::radical(
                BigRational::new(BigInt::from(1), q.numer().clone()),
                radicand,
            );
            let entry = gram.get(i, j) * &inverse_root;
            normalized.set(i, j, entry.clone());
            normalized.set(j, i, entry);
        }
    }
    Diagram::from_normalized_gram(normalized)
}

/// Coarse classification of an induced subdiagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubdiagramKind {
    /// Positive definite: a finite reflection group.
    Elliptic,
    /// Positive semidefinite with one-dimensional kernel per
    /// connected component: a Euclidean reflection group.
    Parabolic,
    /// Anything else.
    Other,
}

/// Classification result for a vertex set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdiagramClass {
    /// Elliptic, parabolic or other.
    pub kind: SubdiagramKind,
    /// Connected type labels joined by `+`, such as `A2+B3` or `~A1`.
    pub label: String,
    /// Rank: vertex count for elliptic, vertex count minus component
    /// count for parabolic, matrix rank otherwise.
    pub rank: usize,
}

/// Connected components of the induced subdiagram, in order of their
/// smallest member.
fn components(diagram: &Diagram, vertices: &[usize]) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = vertices.to_vec();
    remaining.sort_unstable();
    let mut result = Vec::new();
    let mut seen = vec![false; remaining.len()];
    for start in 0..remaining.len() {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut component = Vec::new();
        while let Some(position) = stack.pop() {
            component.push(remaining[position]);
            for (other, flag) in seen.iter_mut().enumerate() {
                if !*flag && diagram.edge(remaining[position], remaining[other]).is_edge() {
                    *flag = true;
                    stack.push(other);
                }
            }
        }
        component.sort_unstable();
        result.push(component);
    }
    result
}

fn induced_gram(diagram: &Diagram, vertices: &[usize]) -> ExactMatrix {
    ExactMatrix::from_fn(vertices.len(), vertices.len(), |i, j| {
        diagram.gram.get(vertices[i], vertices[j]).clone()
    })
}

/// Names a connected elliptic component.
fn elliptic_label(diagram: &Diagram, component: &[usize]) -> String {
    let n = component.len();
    if n == 1 {
        return "A1".to_string();
    }
    let multiplicity = |i: usize, j: usize| match diagram.edge(component[i], component[j]) {
        EdgeKind::Simple(m) => Some(m),
        EdgeKind::None => None,
        _ => Some(0),
    };
    let degrees: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && multiplicity(i, j).is_some()).count())
        .collect();
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    if max_degree <= 2 {
        // A path (cycles cannot be positive definite): read off the
        // multiplicity sequence from one end.
        if let Some(sequence) = path_multiplicities(n, &multiplicity, &degrees) {
            let fours = sequence.iter().filter(|&&m| m == 4).count();
            let sixes = sequence.iter().filter(|&&m| m == 6).count();
            if fours == 0 && sixes == 0 {
                return format!("A{n}");
            }
            if sixes == 1 && n == 2 {
                return "G2".to_string();
            }
            if fours == 1 && sixes == 0 {
                if sequence[0] == 4 || sequence[n - 2] == 4 {
                    return format!("B{n}");
                }
                if n == 4 && sequence == vec![3, 4, 3] {
                    return "F4".to_string();
                }
            }
        }
    } else if max_degree == 3 && degrees.iter().filter(|&&d| d == 3).count() == 1 {
        if let Some(mut legs) = branch_leg_lengths(n, &multiplicity, &degrees) {
            legs.sort_unstable();
            let all_simple_3 = (0..n).all(|i| {
                (i + 1..n).all(|j| matches!(multiplicity(i, j), None | Some(3)))
            });
            if all_simple_3 {
                match legs.as_slice() {
                    [1, 1, _] => return format!("D{n}"),
                    [1, 2, 2] => return "E6".to_string(),
                    [1, 2, 3] => return "E7".to_string(),
                    [1, 2, 4] => return "E8".to_string(),
                    _ => {}
                }
            }
        }
    }
    format!("elliptic{n}")
}

/// Names a connected affine component.
fn affine_label(diagram: &Diagram, component: &[usize]) -> String {
    let n = component.len();
    let rank = n - 1;
    if n == 2 && diagram.edge(component[0], component[1]) == EdgeKind::Bold {
        return "~A1".to_string();
    }
    let multiplicity = |i: usize, j: usize| match diagram.edge(component[i], component[j]) {
        EdgeKind::Simple(m) => Some(m),
        EdgeKind::None => None,
        _ => Some(0),
    };
    let degrees: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && multiplicity(i, j).is_some()).count())
        .collect();
    let edge_count = degrees.iter().sum::<usize>() / 2;
    let max_degree = degrees.iter().copied().max().unwrap_or(0);
    let branch_count = degrees.iter().filter(|&&d| d == 3).count();
    if max_degree <= 2 {
        if edge_count == n && n >= 3 {
            let all_3 = (0..n)
                .all(|i| (i + 1..n).all(|j| matches!(multiplicity(i, j), None | Some(3))));
            if all_3 {
                return format!("~A{rank}");
            }
        } else if let Some(sequence) = path_multiplicities(n, &multiplicity, &degrees) {
            if n == 3 && (sequence == vec![6, 3] || sequence == vec![3, 6]) {
                return "~G2".to_string();
            }
            if n >= 3 && sequence[0] == 4 && sequence[n - 2] == 4 {
                let middle_all_3 = sequence[1..n - 2].iter().all(|&m| m == 3);
                if middle_all_3 {
                    return format!("~C{rank}");
                }
            }
            if n == 5 && (sequence == vec![3, 3, 4, 3] || sequence == vec![3, 4, 3, 3]) {
                return "~F4".to_string();
            }
        }
    } else if max_degree == 4 && n == 5 {
        return "~D4".to_string();
    } else if branch_count == 2 && max_degree == 3 {
        return format!("~D{rank}");
    } else if branch_count == 1 && max_degree == 3 {
        if let Some(mut legs) = branch_leg_lengths(n, &multiplicity, &degrees) {
            legs.sort_unstable();
            let has_four = (0..n).any(|i| (i + 1..n).any(|j| multiplicity(i, j) == Some(4)));
            if has_four {
                return format!("~B{rank}");
            }
            match legs.as_slice() {
                [2, 2, 2] => return "~E6".to_string(),
                [1, 3, 3] => return "~E7".to_string(),
                [1, 2, 5] => return "~E8".to_string(),
                _ => {}
            }
        }
    }
    format!("affine{rank}")
}

/// Orders a path component and returns its multiplicity sequence.
fn path_multiplicities(
    n: usize,
    multiplicity: &dyn Fn(usize, usize) -> Option<u32>,
    degrees: &[usize],
) -> Option<Vec<u32>> {
    let start = (0..n).find(|&i| degrees[i] == 1)?;
    let mut order = vec![start];
    let mut previous = usize::MAX;
    while order.len() < n {
        let current = *order.last().unwrap();
        let next = (0..n)
            .find(|&j| j != current && j != previous && multiplicity(current, j).is_some())?;
        previous = current;
        order.push(next);
    }
    Some(
        order
            .windows(2)
            .map(|w| multiplicity(w[0], w[1]).unwrap_or(0))
            .collect(),
    )
}

/// Leg lengths of a component with a unique degree-3 branch vertex.
fn branch_leg_lengths(
    n: usize,
    multiplicity: &dyn Fn(usize, usize) -> Option<u32>,
    degrees: &[usize],
) -> Option<Vec<usize>> {
    let branch = (0..n).find(|&i| degrees[i] == 3)?;
    let mut legs = Vec::new();
    for first in (0..n).filter(|&j| j != branch && multiplicity(branch, j).is_some()) {
        let mut length = 1;
        let mut previous = branch;
        let mut current = first;
        loop {
            let next = (0..n)
                .find(|&j| j != current && j != previous && multiplicity(current, j).is_some());
            match next {
                Some(j) => {
                    previous = current;
                    current = j;
                    length += 1;
                }
                None => break,
            }
        }
        legs.push(length);
    }
    Some(legs)
}

/// Classifies the subdiagram induced by `vertices` (0-based indices).
pub fn classify_subdiagram(diagram: &Diagram, vertices: &[usize]) -> SubdiagramClass {
    let mut sorted: Vec<usize> = vertices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.is_empty() {
        return SubdiagramClass {
            kind: SubdiagramKind::Elliptic,
            label: String::new(),
            rank: 0,
        };
    }
    let has_dotted = sorted.iter().enumerate().any(|(a, &i)| {
        sorted[a + 1..]
            .iter()
            .any(|&j| matches!(diagram.edge(i, j), EdgeKind::Dotted(_)))
    });
    let gram = induced_gram(diagram, &sorted);
    let (positive, negative, zero) = gram.signature();
    if has_dotted || negative > 0 {
        return SubdiagramClass {
            kind: SubdiagramKind::Other,
            label: String::new(),
            rank: positive + negative,
        };
    }
    let parts = components(diagram, &sorted);
    if zero == 0 {
        let mut labels: Vec<String> = parts
            .iter()
            .map(|part| elliptic_label(diagram, part))
            .collect();
        labels.sort();
        return SubdiagramClass {
            kind: SubdiagramKind::Elliptic,
            label: labels.join("+"),
            rank: sorted.len(),
        };
    }
    // Positive semidefinite: parabolic exactly when every component
    // carries a one-dimensional kernel.
    let mut labels = Vec::new();
    for part in &parts {
        let (_, component_negative, component_zero) = induced_gram(diagram, part).signature();
        debug_assert_eq!(component_negative, 0);
        if component_zero != 1 {
            return SubdiagramClass {
                kind: SubdiagramKind::Other,
                label: String::new(),
                rank: positive,
            };
        }
        labels.push(affine_label(diagram, part));
    }
    labels.sort();
    SubdiagramClass {
        kind: SubdiagramKind::Parabolic,
        label: labels.join("+"),
        rank: sorted.len() - parts.len(),
    }
}

/// Vertices all of whose incidences are orthogonal, bold or dotted,
/// so no wall meets them at a proper angle below `π/2`.
pub fn find_isolated_roots(diagram: &Diagram) -> Vec<usize> {
    (0..diagram.size)
        .filter(|&v| {
            (0..diagram.size).all(|u| {
                u == v || !matches!(diagram.edge(v, u), EdgeKind::Simple(_))
            })
        })
        .collect()
}

/// A partition of the vertices into a cluster and its cocluster.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterPartition {
    /// Vertices pairwise joined by bold or dotted edges, meeting the
    /// rest only orthogonally, boldly or dottedly.
    pub cluster: Vec<usize>,
    /// The complementary vertices.
    pub cocluster: Vec<usize>,
}

/// Enumerates every valid cluster partition, in lexicographic order
/// of the cluster.
///
/// A vertex set `R` is a valid cluster when each member has no simple
/// edge at all and members are pairwise joined by bold or dotted
/// edges.  Singleton clusters therefore exist exactly at the isolated
/// roots.
pub fn find_clusters(diagram: &Diagram) -> Vec<ClusterPartition> {
    let candidates = find_isolated_roots(diagram);
    let joined = |a: usize, b: usize| {
        matches!(diagram.edge(a, b), EdgeKind::Bold | EdgeKind::Dotted(_))
    };
    let mut result = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((prefix, from)) = stack.pop() {
        // Depth-first in reverse so the output comes out in
        // lexicographic order of the cluster.
        let mut extensions = Vec::new();
        for (position, &candidate) in candidates.iter().enumerate().skip(from) {
            if prefix.iter().all(|&member| joined(member, candidate)) {
                let mut cluster = prefix.clone();
                cluster.push(candidate);
                extensions.push((cluster, position + 1));
            }
        }
        for entry in extensions.into_iter().rev() {
            stack.push(entry);
        }
        if !prefix.is_empty() {
            let cocluster = (0..diagram.size).filter(|v| !prefix.contains(v)).collect();
            result.push(ClusterPartition {
                cluster: prefix,
                cocluster,
            });
        }
    }
    // The traversal emits a cluster before its extensions; reorder to
    // straight lexicographic order.
    result.sort_by(|a, b| a.cluster.cmp(&b.cluster));
    result
}

/// Renders the diagram in DOT format with 1-based vertex names.
///
/// Simple edges of multiplicity above 3 carry their multiplicity as a
/// label, bold edges are drawn bold, dotted edges dashed with their
/// weight as a label.
pub fn to_dot(diagram: &Diagram) -> String {
    let mut out = String::new();
    out.push_str("graph diagram {\n");
    out.push_str("  node [shape=circle, fontsize=11];\n");
    for v in 0..diagram.size {
        let _ = writeln!(out, "  e{};", v + 1);
    }
    for (i, j, kind) in diagram.edges() {
        let attributes = match kind {
            EdgeKind::None => continue,
            EdgeKind::Simple(3) => String::new(),
            EdgeKind::Simple(m) => format!(" [label=\"{m}\"]"),
            EdgeKind::Bold => " [style=bold, penwidth=2.5]".to_string(),
            EdgeKind::Dotted(weight) => {
                format!(" [style=dashed, label=\"{weight}\"]")
            }
        };
        let _ = writeln!(out, "  e{} -- e{}{};", i + 1, j + 1, attributes);
    }
    out.push_str("}\n");
    out
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct EdgeJson {
            i: usize,
            j: usize,
            kind: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            m: Option<u32>,
            #[serde(skip_serializing_if = "Option::is_none")]
            weight: Option<String>,
        }
        let edges: Vec<EdgeJson> = self
            .edges()
            .map(|(i, j, kind)| {
                let (kind_name, m, weight) = match kind {
                    EdgeKind::None => unreachable!("only drawn edges are stored"),
                    EdgeKind::Simple(m) => ("simple", Some(*m), None),
                    EdgeKind::Bold => ("bold", None, None),
                    EdgeKind::Dotted(w) => ("dotted", None, Some(w.to_string())),
                };
                EdgeJson {
                    i: i + 1,
                    j: j + 1,
                    kind: kind_name,
                    m,
                    weight,
                }
            })
            .collect();
        let mut state = serializer.serialize_struct("Diagram", 2)?;
        state.serialize_field("vertices", &(1..=self.size).collect::<Vec<usize>>())?;
        state.serialize_field("edges", &edges)?;
        state.end()
    }
}

/// Whether two diagrams are isomorphic as edge-labelled graphs.
///
/// Uses iterated neighbourhood refinement to cut the search space,
/// then backtracking over the refined classes.
pub fn isomorphic(a: &Diagram, b: &Diagram) -> bool {
    if a.size != b.size {
        return false;
    }
    let n = a.size;
    if n == 0 {
        return true;
    }
    let edge_key = |d: &Diagram, i: usize, j: usize| -> String {
        match d.edge(i, j) {
            EdgeKind::None => "0".to_string(),
            EdgeKind::Simple(m) => format!("s{m}"),
            EdgeKind::Bold => "b".to_string(),
            EdgeKind::Dotted(w) => format!("d{w}"),
        }
    };
    let refine = |d: &Diagram| -> Vec<u64> {
        let mut colors = vec![0u64; n];
        for _ in 0..n {
            let mut signatures: Vec<(u64, Vec<(String, u64)>)> = (0..n)
                .map(|v| {
                    let mut neighbourhood: Vec<(String, u64)> = (0..n)
                        .filter(|&u| u != v)
                        .map(|u| (edge_key(d, v, u), colors[u]))
                        .collect();
                    neighbourhood.sort();
                    (colors[v], neighbourhood)
                })
                .collect();
            let mut distinct: Vec<(u64, Vec<(String, u64)>)> = signatures.clone();
            distinct.sort();
            distinct.dedup();
            for (v, signature) in signatures.drain(..).enumerate() {
                colors[v] = distinct.binary_search(&signature).unwrap() as u64;
            }
        }
        colors
    };
    let colors_a = refine(a);
    let colors_b = refine(b);
    let mut sorted_a = colors_a.clone();
    let mut sorted_b = colors_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return false;
    }
    // Backtracking assignment of a-vertices to b-vertices within
    // matching color classes, checking edge labels incrementally.
    let mut assignment: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn extend(
        v: usize,
        n: usize,
        a: &Diagram,
        b: &Diagram,
        colors_a: &[u64],
        colors_b: &[u64],
        assignment: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == n {
            return true;
        }
        for candidate in 0..n {
            if used[candidate] || colors_b[candidate] != colors_a[v] {
                continue;
            }
            let consistent = (0..v).all(|earlier| {
                let image = assignment[earlier].unwrap();
                a.edge(v, earlier) == b.edge(candidate, image)
            });
            if consistent {
                assignment[v] = Some(candidate);
                used[candidate] = true;
                if extend(v + 1, n, a, b, colors_a, colors_b, assignment, used) {
                    return true;
                }
                assignment[v] = None;
                used[candidate] = false;
            }
        }
        false
    }
    extend(0, n, a, b, &colors_a, &colors_b, &mut assignment, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ExactVector;
    use crate::qspace::QuadraticSpace;

    fn triangle() -> Polyhedron {
        let space = QuadraticSpace::diagonal(&[-1, 2, 1]).unwrap();
        Polyhedron::new(
            space,
            vec![
                ExactVector::from_i64(&[0, -1, 0]),
                ExactVector::from_i64(&[0, 0, -1]),
                ExactVector::from_i64(&[1, 1, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn triangle_edge_classification() {
        let diagram = build_diagram(&triangle()).unwrap();
        assert_eq!(diagram.edge(0, 1), EdgeKind::None);
        assert_eq!(diagram.edge(1, 2), EdgeKind::Simple(4));
        assert_eq!(diagram.edge(0, 2), EdgeKind::Bold);
    }

    #[test]
    fn unrecognized_angle_is_reported_with_its_cosine_square() {
        // cos² = 9/25 is no angle of the form π/m.
        let q = |n: i64, d: i64| {
            ExactScalar::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
        };
        let gram = ExactMatrix::from_rows(vec![
            vec![ExactScalar::one(), q(-3, 5)],
            vec![q(-3, 5), ExactScalar::one()],
        ]);
        match Diagram::from_normalized_gram(gram) {
            Err(DiagramError::UnrecognizedAngle { cos_squared, .. }) => {
                assert_eq!(cos_squared, "9/25");
            }
            other => panic!("expected UnrecognizedAngle, got {other:?}"),
        }
    }

    #[test]
    fn positive_entries_are_rejected() {
        let q = |n: i64, d: i64| {
            ExactScalar::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
        };
        let gram = ExactMatrix::from_rows(vec![
            vec![ExactScalar::one(), q(1, 2)],
            vec![q(1, 2), ExactScalar::one()],
        ]);
        assert!(matches!(
            Diagram::from_normalized_gram(gram),
            Err(DiagramError::PositiveInner { i: 0, j: 1, .. })
        ));
    }

    #[test]
    fn classify_elliptic_types() {
        // B3 chain: edges 4, 3.
        let q = |n: i64, d: i64| {
            ExactScalar::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
        };
        let half = q(-1, 2);
        let sqrt_half = ExactScalar::radical(BigRational::new(BigInt::from(-1), BigInt::from(2)), 2);
        let zero = ExactScalar::zero();
        let one = ExactScalar::one();
        let gram = ExactMatrix::from_rows(vec![
            vec![one.clone(), sqrt_half.clone(), zero.clone()],
            vec![sqrt_half.clone(), one.clone(), half.clone()],
            vec![zero.clone(), half.clone(), one.clone()],
        ]);
        let diagram = Diagram::from_normalized_gram(gram).unwrap();
        let class = classify_subdiagram(&diagram, &[0, 1, 2]);
        assert_eq!(class.kind, SubdiagramKind::Elliptic);
        assert_eq!(class.label, "B3");
        assert_eq!(class.rank, 3);
        let pair = classify_subdiagram(&diagram, &[1, 2]);
        assert_eq!(pair.label, "A2");
    }

    #[test]
    fn classify_parabolic_bold_pair() {
        let triangle = build_diagram(&triangle()).unwrap();
        let class = classify_subdiagram(&triangle, &[0, 2]);
        assert_eq!(class.kind, SubdiagramKind::Parabolic);
        assert_eq!(class.label, "~A1");
        assert_eq!(class.rank, 1);
    }

    #[test]
    fn isolated_roots_and_clusters_of_triangle() {
        let diagram = build_diagram(&triangle()).unwrap();
        assert_eq!(find_isolated_roots(&diagram), vec![0]);
        let clusters = find_clusters(&diagram);
        assert_eq!(clusters.len(), 1);
        assert_eq!(clusters[0].cluster, vec![0]);
        assert_eq!(clusters[0].cocluster, vec![1, 2]);
    }

    #[test]
    fn clusters_on_a_dotted_pair_enumerate_all_subsets() {
        let root2 = ExactScalar::radical(BigRational::new(BigInt::from(-1), BigInt::from(1)), 2);
        let gram = ExactMatrix::from_rows(vec![
            vec![ExactScalar::one(), root2.clone()],
            vec![root2, ExactScalar::one()],
        ]);
        let diagram = Diagram::from_normalized_gram(gram).unwrap();
        let clusters = find_clusters(&diagram);
        let cluster_sets: Vec<Vec<usize>> =
            clusters.iter().map(|c| c.cluster.clone()).collect();
        assert_eq!(cluster_sets, vec![vec![0], vec![0, 1], vec![1]]);
    }

    #[test]
    fn dot_output_is_deterministic_and_styled() {
        let diagram = build_diagram(&triangle()).unwrap();
        let dot = to_dot(&diagram);
        assert!(dot.contains("e2 -- e3 [label=\"4\"]"));
        assert!(dot.contains("e1 -- e3 [style=bold"));
        assert_eq!(dot, to_dot(&diagram));
    }

    #[test]
    fn isomorphism_ignores_vertex_order() {
        let space = QuadraticSpace::diagonal(&[-1, 2, 1]).unwrap();
        let permuted = Polyhedron::new(
            space,
            vec![
                ExactVector::from_i64(&[1, 1, 1]),
                ExactVector::from_i64(&[0, -1, 0]),
                ExactVector::from_i64(&[0, 0, -1]),
            ],
        )
        .unwrap();
        let a = build_diagram(&triangle()).unwrap();
        let b = build_diagram(&permuted).unwrap();
        assert!(isomorphic(&a, &b));
        // Dropping the bold edge breaks the isomorphism.
        let wedge = Polyhedron::new(
            QuadraticSpace::diagonal(&[-1, 2, 1]).unwrap(),
            vec![
                ExactVector::from_i64(&[0, -1, 0]),
                ExactVector::from_i64(&[0, 0, -1]),
            ],
        )
        .unwrap();
        let c = build_diagram(&wedge).unwrap();
        assert!(!isomorphic(&a, &c));
    }
}
