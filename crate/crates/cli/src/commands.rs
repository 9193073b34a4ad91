//! The seven subcommands.
//!
//! Each command reads its inputs, runs the corresponding library
//! pipeline, emits a JSON report through [`JobConfig`], and prints a
//! one-line human summary to stderr.

use clap::Args;
use std::collections::BTreeSet;
use std::path::PathBuf;

use reflekt_core::arith;
use reflekt_core::diagram::{build_diagram, find_clusters, find_isolated_roots, to_dot};
use reflekt_core::doubling::{self, DoublingError};
use reflekt_core::exact::ExactVector;
use reflekt_core::packing::{
    audit_packing, inversive_frame, orbit, unit_root, Viewport,
};
use reflekt_core::vinberg::{run as vinberg_run, Budget, RunStatus, VinbergState};

use crate::fixtures::{run_checks, FixtureName};
use crate::job::{
    load_polyhedron, load_space, parse_rational, parse_vector, positive_budget, to_json, usage,
    wall_index, CliError, JobConfig,
};
use crate::reports::{
    status_name, ArithReport, ClustersReport, DiagramReport, FixturesReport, OrbitReport,
    PartitionReport, SphereReport, StepReport, TraceReport, VinbergReport,
};

/// Arguments of `reflekt vinberg`.
#[derive(Args)]
pub struct VinbergArgs {
    /// Quadratic form: a JSON file or the shorthand `diag,a,b,...`.
    #[arg(long)]
    form: String,
    /// Comma-separated time-like basepoint; defaults to `1,0,...,0`.
    #[arg(long)]
    basepoint: Option<String>,
    /// Stop after accepting this many walls.
    #[arg(long)]
    max_roots: Option<usize>,
    /// Stop beyond this basepoint distance parameter (rational).
    #[arg(long)]
    max_distance: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the accepted walls as a polyhedron file, ready for
    /// the other subcommands.
    #[arg(long)]
    polyhedron_out: Option<PathBuf>,
    /// Allow overwriting existing output files.
    #[arg(long)]
    force: bool,
}

pub fn vinberg(args: VinbergArgs) -> Result<(), CliError> {
    let job = JobConfig::new(args.out.clone(), args.force);
    let space = load_space(&args.form)?;
    let basepoint = match &args.basepoint {
        Some(text) => parse_vector(text, space.dim())?,
        None => {
            let mut coords = vec![0i64; space.dim()];
            coords[0] = 1;
            ExactVector::from_i64(&coords)
        }
    };
    let budget = Budget {
        max_roots: args
            .max_roots
            .map(|n| positive_budget("max-roots", n))
            .transpose()?,
        max_distance: args
            .max_distance
            .as_deref()
            .map(parse_rational)
            .transpose()?,
    };
    if budget.max_roots.is_none() && budget.max_distance.is_none() {
        eprintln!("note: no budget given; a non-reflective form will run forever");
    }
    let mut state = VinbergState::new(space, &basepoint).map_err(usage)?;
    let report = vinberg_run(&mut state, &budget);
    let diagram = state
        .polyhedron()
        .ok()
        .and_then(|poly| build_diagram(&poly).ok())
        .map(|diagram| DiagramReport::from_diagram(&diagram));
    let payload = VinbergReport {
        status: status_name(report.status),
        roots: report.roots.clone(),
        diagram,
    };
    if let Some(path) = &args.polyhedron_out {
        let poly = state
            .polyhedron()
            .map_err(|err| CliError::Internal(format!("accepted walls: {err}")))?;
        job.emit_to(path, &format!("{}\n", to_json(&poly)?))?;
    }
    job.emit(&to_json(&payload)?)?;
    eprintln!(
        "{} after {} walls ({:.2?})",
        status_name(report.status),
        report.roots.len(),
        report.elapsed
    );
    if report.status == RunStatus::BudgetExhausted {
        return Err(CliError::Budget(format!(
            "budget exhausted after {} walls without a finite-volume chamber",
            report.roots.len()
        )));
    }
    Ok(())
}

/// Arguments of `reflekt diagram`.
#[derive(Args)]
pub struct DiagramArgs {
    /// Polyhedron JSON file.
    #[arg(long)]
    polyhedron: PathBuf,
    /// Also write the diagram as Graphviz DOT to this file.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Allow overwriting existing output files.
    #[arg(long)]
    force: bool,
}

pub fn diagram(args: DiagramArgs) -> Result<(), CliError> {
    let job = JobConfig::new(args.out.clone(), args.force);
    let poly = load_polyhedron(&args.polyhedron)?;
    let diagram = build_diagram(&poly).map_err(usage)?;
    let report = DiagramReport::from_diagram(&diagram);
    if let Some(path) = &args.dot {
        job.emit_to(path, &to_dot(&diagram))?;
    }
    let edges = report.edges.len();
    job.emit(&to_json(&report)?)?;
    eprintln!("{} walls, {} edges", diagram.size(), edges);
    Ok(())
}

/// Arguments of `reflekt arith`.
#[derive(Args)]
pub struct ArithArgs {
    /// Polyhedron JSON file.
    #[arg(long)]
    polyhedron: PathBuf,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Allow overwriting existing output files.
    #[arg(long)]
    force: bool,
}

pub fn arith(args: ArithArgs) -> Result<(), CliError> {
    let job = JobConfig::new(args.out.clone(), args.force);
    let poly = load_polyhedron(&args.polyhedron)?;
    let verdict = arith::verdict(&poly).map_err(usage)?;
    let report = ArithReport::from_verdict(&verdict);
    job.emit(&to_json(&report)?)?;
    eprintln!(
        "quasi_arithmetic={} arithmetic={}",
        verdict.quasi_arithmetic, verdict.arithmetic
    );
    Ok(())
}

/// Arguments of `reflekt clusters`.
#[derive(Args)]
pub struct ClustersArgs {
    /// Polyhedron JSON file.
    #[arg(long)]
    polyhedron: PathBuf,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Allow overwriting existing output files.
    #[arg(long)]
    force: bool,
}

pub fn clusters(args: ClustersArgs) -> Result<(), CliError> {
    let job = JobConfig::new(args.out.clone(), args.force);
    let poly = load_polyhedron(&args.polyhedron)?;
    let diagram = build_diagram(&poly).map_err(usage)?;
    let isolated: Vec<usize> = find_isolated_roots(&diagram)
        .into_iter()
        .map(|v| v + 1)
        .collect();
    let partitions: Vec<PartitionReport> = find_clusters(&diagram)
        .into_iter()
        .map(|partition| PartitionReport {
            cluster: partition.cluster.into_iter().map(|v| v + 1).collect(),
            cocluster: partition.cocluster.into_iter().map(|v| v + 1).collect(),
        })
        .collect();
    let report = ClustersReport {
        isolated,
        clusters: partitions,
    };
    let count = report.clusters.len();
    job.emit(&to_json(&report)?)?;
    eprintln!(
        "{} isolated walls, {} cluster partitions",
        report.isolated.len(),
        count
    );
    Ok(())
}

/// Arguments of `reflekt pack`.
#[derive(Args)]
pub struct PackArgs {
    /// Polyhedron JSON file.
    #[arg(long)]
    polyhedron: PathBuf,
    /// Cluster walls (1-based, comma-separated); the rest mirror.
    #[arg(long, value_delimiter = ',', required = true)]
    cluster: Vec<usize>,
    /// Expand words up to this length.
    #[arg(long)]
    depth: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render the orbit as an SVG drawing to this file.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Half-width of the square SVG viewport around the origin.
    #[arg(long, default_value_t = 3.0)]
    half_width: f64,
    /// Allow overwriting existing output files.
    #[arg(long)]
    force: bool,
}

pub fn pack(args: PackArgs) -> Result<(), CliError> {
    let job = JobConfig::new(args.out.clone(), args.force);
    let depth = positive_budget("depth", args.depth)?;
    let poly = load_polyhedron(&args.polyhedron)?;
    let space = poly.space().clone();

    let mut cluster_walls = BTreeSet::new();
    for &wall in &args.cluster {
        if !cluster_walls.insert(wall_index(wall, poly.len())?) {
            return Err(usage(format!("wall {wall} listed twice in --cluster")));
        }
    }
    let mirror_walls: Vec<usize> = (0..poly.len())
        .filter(|i| !cluster_walls.contains(i))
        .collect();
    if mirror_walls.is_empty() {
        return Err(usage("--cluster must leave at least one mirror wall"));
    }

    let frame = inversive_frame(&space).map_err(usage)?;
    let cluster: Vec<ExactVector> = cluster_walls
        .iter()
        .map(|&i| unit_root(&space, poly.root(i)).map_err(usage))
        .collect::<Result<_, _>>()?;
    let mirrors: Vec<ExactVector> = mirror_walls.iter().map(|&i| poly.root(i).clone()).collect();

    let records = orbit(&frame, &cluster, &mirrors, depth).map_err(usage)?;
    audit_packing(&records)
        .map_err(|err| CliError::Internal(format!("orbit audit failed: {err}")))?;

    let external: Vec<usize> = mirror_walls.iter().map(|&i| i + 1).collect();
    let report = OrbitReport {
        records: records
            .iter()
            .map(|record| SphereReport::from_record(record, &external))
            .collect(),
    };
    if let Some(path) = &args.svg {
        let spheres: Vec<_> = records.iter().map(|r| r.sphere.clone()).collect();
        let viewport = Viewport::centered(args.half_width);
        let drawing = render_svg_checked(&spheres, &viewport)?;
        job.emit_to(path, &drawing)?;
    }
    job.emit(&to_json(&report)?)?;
    eprintln!("{} spheres at depth <= {}", records.len(), depth);
    Ok(())
}

fn render_svg_checked(
    spheres: &[reflekt_core::packing::InversiveSphere],
    viewport: &Viewport,
) -> Result<String, CliError> {
    reflekt_core::packing::render_svg(spheres, viewport).map_err(usage)
}

/// Arguments of `reflekt double`.
#[derive(Args)]
pub struct DoubleArgs {
    /// Polyhedron JSON file.
    #[arg(long)]
    polyhedron: PathBuf,
    /// Wall to straighten or double across (1-based).
    #[arg(long)]
    facet: usize,
    /// Double repeatedly until the wall is orthogonal to all
    /// neighbours, instead of doubling once.
    #[arg(long)]
    orthogonalize: bool,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the resulting polyhedron alone, ready for the other
    /// subcommands.
    #[arg(long)]
    polyhedron_out: Option<PathBuf>,
    /// Allow overwriting existing output files.
    #[arg(long)]
    force: bool,
}

/// Sorts doubling failures into input errors and invariant breaks.
fn doubling_error(err: DoublingError) -> CliError {
    match err {
        DoublingError::Stage { step, source } => match doubling_error(*source) {
            CliError::Usage(message) => usage(format!("doubling step {step}: {message}")),
            other => other,
        },
        DoublingError::QuarterAngleMiscount { .. } | DoublingError::VolumeLost { .. } => {
            CliError::Internal(err.to_string())
        }
        other => usage(other),
    }
}

pub fn double(args: DoubleArgs) -> Result<(), CliError> {
    let job = JobConfig::new(args.out.clone(), args.force);
    let poly = load_polyhedron(&args.polyhedron)?;
    let facet = wall_index(args.facet, poly.len())?;
    if args.orthogonalize {
        let trace = doubling::orthogonalize(&poly, facet).map_err(doubling_error)?;
        let steps = trace.steps.len();
        let report = TraceReport {
            steps: trace
                .steps
                .into_iter()
                .map(|step| StepReport {
                    polyhedron: step.polyhedron,
                    facet: step.facet + 1,
                })
                .collect(),
            final_polyhedron: trace.final_polyhedron,
            distinguished: trace.distinguished + 1,
        };
        if let Some(path) = &args.polyhedron_out {
            job.emit_to(path, &format!("{}\n", to_json(&report.final_polyhedron)?))?;
        }
        job.emit(&to_json(&report)?)?;
        eprintln!(
            "straightened wall {} in {} steps; now wall {} of {} walls",
            args.facet,
            steps,
            report.distinguished,
            report.final_polyhedron.len()
        );
    } else {
        let doubled = doubling::double(&poly, facet).map_err(doubling_error)?;
        if let Some(path) = &args.polyhedron_out {
            job.emit_to(path, &format!("{}\n", to_json(&doubled)?))?;
        }
        job.emit(&to_json(&doubled)?)?;
        eprintln!(
            "doubled across wall {}: {} walls -> {}",
            args.facet,
            poly.len(),
            doubled.len()
        );
    }
    Ok(())
}

/// Arguments of `reflekt fixtures`.
#[derive(Args)]
pub struct FixturesArgs {
    /// Verify every fixture file.
    #[arg(long, conflicts_with = "name")]
    all: bool,
    /// Verify one fixture: `prism`, `omega` or `no_roots`.
    #[arg(long)]
    name: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Allow overwriting existing output files.
    #[arg(long)]
    force: bool,
}

pub fn fixtures(args: FixturesArgs) -> Result<(), CliError> {
    let job = JobConfig::new(args.out.clone(), args.force);
    let selection = match (&args.name, args.all) {
        (Some(name), _) => vec![FixtureName::parse(name)?],
        (None, true) => FixtureName::all(),
        (None, false) => {
            return Err(usage("pass --all or --name <fixture>"));
        }
    };
    let checks = run_checks(&selection);
    let passed = checks.iter().filter(|check| check.pass).count();
    let failed = checks.len() - passed;
    let width = checks
        .iter()
        .map(|check| check.name.len())
        .max()
        .unwrap_or(0);
    for check in &checks {
        let mark = if check.pass { "pass" } else { "FAIL" };
        match &check.detail {
            Some(detail) => eprintln!("{:width$}  {mark}  {detail}", check.name),
            None => eprintln!("{:width$}  {mark}", check.name),
        }
    }
    eprintln!("{passed} passed, {failed} failed");
    let report = FixturesReport {
        checks,
        passed,
        failed,
    };
    job.emit(&to_json(&report)?)?;
    if failed > 0 {
        return Err(usage(format!("{failed} fixture checks failed")));
    }
    Ok(())
}
