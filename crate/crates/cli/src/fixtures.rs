//! Verification of the checked-in fixture files.
//!
//! The JSON files under `fixtures/` are embedded into the binary and
//! replayed against the library's own constructors and algorithms, so
//! a transcription typo in either place fails loudly: norms, Gram
//! entries, isometry of the symmetry matrix, and the congruence search
//! are all recomputed rather than trusted.

use serde::{Deserialize, Serialize};

use reflekt_core::diagram::{build_diagram, find_clusters, find_isolated_roots};
use reflekt_core::exact::{ExactMatrix, ExactScalar, ExactVector};
use reflekt_core::fixtures as built_in;
use reflekt_core::packing::{conjugated_generators, find_bend_congruence, gram_of_orbit};
use reflekt_core::qspace::{Polyhedron, QuadraticSpace};
use reflekt_core::vinberg::{no_roots_obstruction, verify_infinite_symmetry};

use crate::job::{usage, CliError};
use crate::reports::CheckReport;

const PRISM_JSON: &str = include_str!("../../../fixtures/prism.json");
const OMEGA_JSON: &str = include_str!("../../../fixtures/omega.json");
const NO_ROOTS_JSON: &str = include_str!("../../../fixtures/no_roots.json");

/// The three checked-in fixtures.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum FixtureName {
    Prism,
    Omega,
    NoRoots,
}

impl FixtureName {
    /// All fixtures, in reporting order.
    pub fn all() -> Vec<FixtureName> {
        vec![FixtureName::Prism, FixtureName::Omega, FixtureName::NoRoots]
    }

    /// Parses a fixture name from the command line.
    pub fn parse(name: &str) -> Result<FixtureName, CliError> {
        match name {
            "prism" => Ok(FixtureName::Prism),
            "omega" => Ok(FixtureName::Omega),
            "no_roots" => Ok(FixtureName::NoRoots),
            other => Err(usage(format!(
                "unknown fixture {other:?}; expected prism, omega or no_roots"
            ))),
        }
    }
}

/// The prism chamber with its packing data.
#[derive(Serialize, Deserialize)]
struct PrismFixture {
    polyhedron: Polyhedron,
    distinguished_wall: usize,
    cluster: Vec<usize>,
    cocluster: Vec<usize>,
    sphere_basis: Vec<ExactVector>,
    basis_gram: ExactMatrix,
    conjugated_generators: Vec<ExactMatrix>,
    initial_bends: Vec<ExactScalar>,
    bend_congruence: CongruenceFixture,
}

/// A residue class constraint on bend vectors.
#[derive(Serialize, Deserialize)]
struct CongruenceFixture {
    residues: Vec<u64>,
    modulus: u64,
}

/// The rank-5 lattice with its replayed roots and symmetry.
#[derive(Serialize, Deserialize)]
struct OmegaFixture {
    space: QuadraticSpace,
    roots: Vec<ExactVector>,
    symmetry: ExactMatrix,
    symmetry_pairs: Vec<PairFixture>,
}

/// `symmetry · roots[image] == roots[source]`, 1-based.
#[derive(Serialize, Deserialize)]
struct PairFixture {
    source: usize,
    image: usize,
}

/// The rank-3 lattice certified to have no roots.
#[derive(Serialize, Deserialize)]
struct NoRootsFixture {
    space: QuadraticSpace,
    modulus_bound: u64,
}

/// Runs one named verification, capturing a failure message.
fn check(name: &'static str, body: impl FnOnce() -> Result<(), String>) -> CheckReport {
    match body() {
        Ok(()) => CheckReport {
            name,
            pass: true,
            detail: None,
        },
        Err(detail) => CheckReport {
            name,
            pass: false,
            detail: Some(detail),
        },
    }
}

/// `Ok(())` when the two values print identically, else a diff note.
fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, found: &T, expected: &T) -> Result<(), String> {
    if found == expected {
        Ok(())
    } else {
        Err(format!("{what}: expected {expected:?}, found {found:?}"))
    }
}

/// Parses raw JSON and confirms the parsed value re-serializes to the
/// same content.
fn round_trip<'de, T: Serialize + Deserialize<'de>>(
    raw: &'de str,
) -> Result<T, String> {
    let parsed: T = serde_json::from_str(raw).map_err(|err| format!("parse: {err}"))?;
    let reserialized =
        serde_json::to_value(&parsed).map_err(|err| format!("serialize: {err}"))?;
    let original: serde_json::Value =
        serde_json::from_str(raw).map_err(|err| format!("parse: {err}"))?;
    if reserialized != original {
        return Err("re-serialized fixture differs from the file".into());
    }
    Ok(parsed)
}

fn prism_checks(checks: &mut Vec<CheckReport>) {
    let fixture: PrismFixture = match round_trip(PRISM_JSON) {
        Ok(fixture) => fixture,
        Err(detail) => {
            checks.push(CheckReport {
                name: "prism: file round-trips through its schema",
                pass: false,
                detail: Some(detail),
            });
            return;
        }
    };
    checks.push(CheckReport {
        name: "prism: file round-trips through its schema",
        pass: true,
        detail: None,
    });
    let space = fixture.polyhedron.space().clone();

    checks.push(check("prism: chamber matches the built-in walls", || {
        expect_eq(
            "polyhedron",
            &fixture.polyhedron,
            &built_in::prism_polyhedron(),
        )
    }));
    checks.push(check("prism: walls are unit roots", || {
        for (i, root) in fixture.polyhedron.roots().iter().enumerate() {
            if *root.norm() != ExactScalar::one() {
                return Err(format!("wall {} has norm {}", i + 1, root.norm()));
            }
        }
        Ok(())
    }));
    checks.push(check("prism: the distinguished wall is isolated", || {
        let diagram = build_diagram(&fixture.polyhedron).map_err(|err| err.to_string())?;
        let isolated: Vec<usize> = find_isolated_roots(&diagram)
            .into_iter()
            .map(|v| v + 1)
            .collect();
        expect_eq("isolated walls", &isolated, &vec![fixture.distinguished_wall])?;
        let partitions = find_clusters(&diagram);
        let clusters: Vec<Vec<usize>> = partitions
            .iter()
            .map(|p| p.cluster.iter().map(|&v| v + 1).collect())
            .collect();
        let coclusters: Vec<Vec<usize>> = partitions
            .iter()
            .map(|p| p.cocluster.iter().map(|&v| v + 1).collect())
            .collect();
        expect_eq("clusters", &clusters, &vec![fixture.cluster.clone()])?;
        expect_eq("coclusters", &coclusters, &vec![fixture.cocluster.clone()])
    }));
    checks.push(check("prism: sphere basis matches and is unit", || {
        expect_eq(
            "sphere basis",
            &fixture.sphere_basis,
            &built_in::prism_sphere_basis(),
        )?;
        for (i, root) in fixture.sphere_basis.iter().enumerate() {
            let norm = space.norm(root);
            if norm != ExactScalar::one() {
                return Err(format!("basis sphere {} has norm {}", i + 1, norm));
            }
        }
        Ok(())
    }));
    checks.push(check("prism: basis Gram matches the recomputation", || {
        expect_eq(
            "stored Gram",
            &fixture.basis_gram,
            &built_in::prism_basis_gram(),
        )?;
        let recomputed = gram_of_orbit(&fixture.sphere_basis, &space);
        expect_eq("recomputed Gram", &fixture.basis_gram, &recomputed)
    }));
    checks.push(check(
        "prism: conjugated reflections match the recomputation",
        || {
            expect_eq(
                "stored generators",
                &fixture.conjugated_generators,
                &built_in::prism_conjugated_generators(),
            )?;
            let mirrors: Vec<ExactVector> = fixture
                .cocluster
                .iter()
                .map(|&wall| fixture.polyhedron.root(wall - 1).clone())
                .collect();
            let recomputed = conjugated_generators(&fixture.sphere_basis, &mirrors, &space)
                .map_err(|err| err.to_string())?;
            expect_eq(
                "recomputed generators",
                &fixture.conjugated_generators,
                &recomputed,
            )
        },
    ));
    checks.push(check("prism: bend congruence is found by the search", || {
        let initial = ExactVector(fixture.initial_bends.clone());
        let found = find_bend_congruence(&fixture.conjugated_generators, &initial, 6)
            .map_err(|err| err.to_string())?;
        expect_eq(
            "congruence",
            &found,
            &Some((
                fixture.bend_congruence.residues.clone(),
                fixture.bend_congruence.modulus,
            )),
        )
    }));
}

fn omega_checks(checks: &mut Vec<CheckReport>) {
    let fixture: OmegaFixture = match round_trip(OMEGA_JSON) {
        Ok(fixture) => fixture,
        Err(detail) => {
            checks.push(CheckReport {
                name: "omega: file round-trips through its schema",
                pass: false,
                detail: Some(detail),
            });
            return;
        }
    };
    checks.push(CheckReport {
        name: "omega: file round-trips through its schema",
        pass: true,
        detail: None,
    });

    checks.push(check("omega: form matches the built-in lattice", || {
        expect_eq("space", &fixture.space, &built_in::omega_space())?;
        if !fixture.space.is_integral() {
            return Err("the form matrix is not integral".into());
        }
        Ok(())
    }));
    checks.push(check("omega: all 31 roots are crystallographic", || {
        expect_eq("roots", &fixture.roots, &built_in::omega_roots())?;
        expect_eq("root count", &fixture.roots.len(), &31)?;
        for (i, root) in fixture.roots.iter().enumerate() {
            if !fixture.space.is_crystallographic_root(root) {
                return Err(format!("root {} fails the crystallographic test", i + 1));
            }
        }
        Ok(())
    }));
    checks.push(check(
        "omega: symmetry preserves the form with determinant one",
        || {
            expect_eq("symmetry", &fixture.symmetry, &built_in::omega_symmetry())?;
            let s = &fixture.symmetry;
            let preserved = &(&s.transpose() * fixture.space.matrix()) * s;
            expect_eq("StMS", &preserved, fixture.space.matrix())?;
            expect_eq("determinant", &s.determinant(), &ExactScalar::one())
        },
    ));
    checks.push(check("omega: symmetry maps image roots to sources", || {
        let expected: Vec<(usize, usize)> = built_in::omega_symmetry_pairs()
            .into_iter()
            .map(|(source, image)| (source + 1, image + 1))
            .collect();
        let stored: Vec<(usize, usize)> = fixture
            .symmetry_pairs
            .iter()
            .map(|pair| (pair.source, pair.image))
            .collect();
        expect_eq("pairs", &stored, &expected)?;
        for pair in &fixture.symmetry_pairs {
            let image = &fixture.roots[pair.image - 1];
            let source = &fixture.roots[pair.source - 1];
            if fixture.symmetry.mul_vec(image) != *source {
                return Err(format!(
                    "symmetry does not carry root {} to root {}",
                    pair.image, pair.source
                ));
            }
        }
        Ok(())
    }));
    checks.push(check("omega: symmetry has infinite order", || {
        let images: Vec<ExactVector> = fixture
            .symmetry_pairs
            .iter()
            .map(|pair| fixture.roots[pair.image - 1].clone())
            .collect();
        let sources: Vec<ExactVector> = fixture
            .symmetry_pairs
            .iter()
            .map(|pair| fixture.roots[pair.source - 1].clone())
            .collect();
        let verified =
            verify_infinite_symmetry(&fixture.space, &fixture.symmetry, &images, &sources)
                .map_err(|err| err.to_string())?;
        if !verified {
            return Err("the certificate was rejected".into());
        }
        Ok(())
    }));
}

fn no_roots_checks(checks: &mut Vec<CheckReport>) {
    let fixture: NoRootsFixture = match round_trip(NO_ROOTS_JSON) {
        Ok(fixture) => fixture,
        Err(detail) => {
            checks.push(CheckReport {
                name: "no_roots: file round-trips through its schema",
                pass: false,
                detail: Some(detail),
            });
            return;
        }
    };
    checks.push(CheckReport {
        name: "no_roots: file round-trips through its schema",
        pass: true,
        detail: None,
    });

    checks.push(check("no_roots: form matches the built-in lattice", || {
        expect_eq("space", &fixture.space, &built_in::lattice_without_roots())
    }));
    checks.push(check("no_roots: obstruction certificate exists", || {
        let certificate = no_roots_obstruction(&fixture.space, fixture.modulus_bound)
            .map_err(|err| err.to_string())?;
        match certificate {
            Some(certificate) => {
                if certificate.per_norm.is_empty() {
                    return Err("certificate rules out no norms".into());
                }
                Ok(())
            }
            None => Err(format!(
                "no certificate within modulus bound {}",
                fixture.modulus_bound
            )),
        }
    }));
}

/// Runs the checks of the selected fixtures, in order.
pub fn run_checks(selection: &[FixtureName]) -> Vec<CheckReport> {
    let mut checks = Vec::new();
    for name in selection {
        match name {
            FixtureName::Prism => prism_checks(&mut checks),
            FixtureName::Omega => omega_checks(&mut checks),
            FixtureName::NoRoots => no_roots_checks(&mut checks),
        }
    }
    checks
}
