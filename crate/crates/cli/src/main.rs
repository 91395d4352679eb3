//! pencilforge: exact reconstruction and certification of the invariant
//! pencils of the bi-polyhedral groups G6, G8, G12, including the
//! degree-12 surface with 600 nodes.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use pencilforge_core::fixlines::{fix_lines, line_intersections};
use pencilforge_core::groups::{reference_matrices, GroupName, PolyGroup};
use pencilforge_core::invariants::{explicit_invariants, invariant_basis};
use pencilforge_core::linalg::charpoly;
use pencilforge_core::molien::molien;
use pencilforge_core::pencil::{
    audit_families, base_locus, bound_report, configurations, singular_orbits, Pencil,
};
use pencilforge_core::render::{mesh, raster, worst_relative_residual, RenderScene};
use pencilforge_core::verify;
use pencilforge_core::ExactScalar;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "pencilforge", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (default: PENCILFORGE_THREADS, then all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print progress to stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Args)]
struct GroupArg {
    /// One of: h, g6, g8, g12.
    #[arg(short, long)]
    group: String,
}

impl GroupArg {
    fn parse(&self) -> Result<GroupName> {
        GroupName::parse(&self.group)
            .with_context(|| format!("unknown group {:?}; expected h, g6, g8 or g12", self.group))
    }

    fn pencil_degree(&self) -> Result<usize> {
        self.parse()?
            .pencil_degree()
            .context("this command needs one of the pencil groups g6, g8, g12")
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a group: order, GL4 class table, generator fidelity.
    Group(GroupArg),
    /// Poincare series of the invariant ring via Molien's formula.
    Molien {
        #[command(flatten)]
        group: GroupArg,
        /// Truncation degree of the series.
        #[arg(long, default_value_t = 14)]
        trunc: usize,
    },
    /// Basis of an invariant slice by exact linear algebra.
    Invariants {
        #[command(flatten)]
        group: GroupArg,
        /// Homogeneous degree to solve.
        #[arg(long)]
        degree: usize,
    },
    /// Fix-line families, their orbits and intersections.
    Fixlines(GroupArg),
    /// Full pencil analysis: singular members, nodes, audits,
    /// configurations, bounds.
    Pencil(GroupArg),
    /// Only the Wronskian and base-locus completeness audits.
    Audit(GroupArg),
    /// Mesh and raster of one pencil member (floating point only).
    Render {
        /// Pencil degree: 6, 8 or 12.
        #[arg(long)]
        n: usize,
        /// Exact lambda, e.g. "-22/243".
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Chart coordinate set to 1 (0..3).
        #[arg(long, default_value_t = 3)]
        chart: usize,
        /// Clip sphere radius.
        #[arg(long, default_value_t = 4.0)]
        radius: f64,
        /// Raster size as WxH.
        #[arg(long, default_value = "512x512")]
        size: String,
        /// Marching-cubes grid resolution per axis.
        #[arg(long, default_value_t = 128)]
        grid: usize,
        /// Write the mesh (wavefront-style text) here.
        #[arg(long)]
        mesh_out: Option<PathBuf>,
        /// Write the image (binary PPM) here.
        #[arg(long)]
        image_out: Option<PathBuf>,
    },
    /// Run every verification against the reference tables.
    All,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let threads = cli.threads.or_else(|| {
        std::env::var("PENCILFORGE_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(Outcome { report, failures }) => {
            let text = serde_json::to_string_pretty(&report).expect("serializable report");
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, text + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                use std::io::Write;
                // tolerate a closed pipe (e.g. piping into head)
                let _ = writeln!(std::io::stdout(), "{text}");
            }
            if failures > 0 {
                eprintln!("{failures} verification failure(s)");
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

struct Outcome {
    report: serde_json::Value,
    failures: usize,
}

fn ok(report: serde_json::Value) -> Result<Outcome> {
    Ok(Outcome {
        report,
        failures: 0,
    })
}

fn progress(cli: &Cli, msg: &str) {
    if cli.verbose > 0 {
        eprintln!("[pencilforge] {msg}");
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Group(arg) => group_report(cli, arg),
        Command::Molien { group, trunc } => molien_report(cli, group, *trunc),
        Command::Invariants { group, degree } => invariants_report(cli, group, *degree),
        Command::Fixlines(arg) => fixlines_report(cli, arg),
        Command::Pencil(arg) => pencil_report(cli, arg),
        Command::Audit(arg) => audit_report(cli, arg),
        Command::Render {
            n,
            lambda,
            chart,
            radius,
            size,
            grid,
            mesh_out,
            image_out,
        } => render_report(
            cli, *n, lambda, *chart, *radius, size, *grid, mesh_out, image_out,
        ),
        Command::All => all_report(cli),
    }
}

fn group_report(cli: &Cli, arg: &GroupArg) -> Result<Outcome> {
    let name = arg.parse()?;
    progress(cli, &format!("building {name}"));
    let group = PolyGroup::cached(name);
    let classes: Vec<serde_json::Value> = group
        .gl4_classes()
        .iter()
        .map(|c| json!({ "charpoly": c.charpoly.to_string(), "size": c.size }))
        .collect();
    let generator_checks: Vec<serde_json::Value> = group
        .generators()
        .iter()
        .zip(reference_matrices::for_group(name))
        .map(|(gen, (_, reference))| {
            json!({
                "name": gen.name,
                "matches_reference": gen.element.so4_matrix() == reference,
            })
        })
        .collect();
    let failures = generator_checks
        .iter()
        .filter(|c| c["matches_reference"] == json!(false))
        .count();
    Ok(Outcome {
        report: json!({
            "schema": SCHEMA_VERSION,
            "command": "group",
            "name": name.as_str(),
            "order": group.order(),
            "conjugacy_classes": group.conjugacy_classes().len(),
            "gl4_classes": classes,
            "generator_checks": generator_checks,
        }),
        failures,
    })
}

fn molien_report(cli: &Cli, arg: &GroupArg, trunc: usize) -> Result<Outcome> {
    let name = arg.parse()?;
    progress(cli, &format!("Molien series of {name} through t^{trunc}"));
    let series = molien(PolyGroup::cached(name), trunc)?;
    ok(json!({
        "schema": SCHEMA_VERSION,
        "command": "molien",
        "group": name.as_str(),
        "truncation": trunc,
        "coefficients": series.integer_coefficients(),
    }))
}

fn invariants_report(cli: &Cli, arg: &GroupArg, degree: usize) -> Result<Outcome> {
    let name = arg.parse()?;
    progress(cli, &format!("invariant slice of {name} at degree {degree}"));
    let group = PolyGroup::cached(name);
    let basis = invariant_basis(group, degree);
    let inv = explicit_invariants();
    ok(json!({
        "schema": SCHEMA_VERSION,
        "command": "invariants",
        "group": name.as_str(),
        "degree": degree,
        "dimension": basis.len(),
        "basis": basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "convention": {
            "summation": inv.convention,
            "fa_sign_flipped": inv.fa_sign_flipped,
        },
    }))
}

fn fixlines_report(cli: &Cli, arg: &GroupArg) -> Result<Outcome> {
    let name = arg.parse()?;
    progress(cli, &format!("fix lines of {name}"));
    let group = PolyGroup::cached(name);
    let families = fix_lines(group);
    let classes: Vec<serde_json::Value> = families
        .iter()
        .map(|f| {
            let rep = &group.matrices()[f.rep_element];
            json!({
                "representative_charpoly": charpoly(rep).to_string(),
                "merged_classes": f.class_reps.len(),
                "line_count": f.line_count(),
                "plus_lines": f.plus_lines,
                "minus_lines": f.minus_lines,
                "sample_generators": f.lines[0].to_string(),
            })
        })
        .collect();
    let all_lines: Vec<_> = families.iter().flat_map(|f| f.lines.clone()).collect();
    let (summary, _) = line_intersections(&all_lines);
    ok(json!({
        "schema": SCHEMA_VERSION,
        "command": "fixlines",
        "group": name.as_str(),
        "classes": classes,
        "intersections": summary,
    }))
}

#[derive(Serialize)]
struct MemberReport {
    lambda: ExactScalar,
    orbit_size: usize,
    hessian_rank: usize,
    node: bool,
    seeds: Vec<&'static str>,
}

fn pencil_report(cli: &Cli, arg: &GroupArg) -> Result<Outcome> {
    let n = arg.pencil_degree()?;
    progress(cli, &format!("analyzing the degree-{n} pencil"));
    let pencil = Pencil::new(n);
    let members = singular_orbits(&pencil)?;
    let families = fix_lines(pencil.group);
    progress(cli, "running completeness audits");
    let audits = audit_families(&pencil, &families, &members);
    let base = base_locus(&pencil);
    progress(cli, "counting incidence configurations");
    let configs = configurations(&families, &members);
    let bounds = bound_report(&pencil);

    let mut checks = verify::check_singular_table(n, &members);
    checks.extend(verify::check_audits(n, &families, &audits, &base));
    checks.extend(verify::check_configuration_table(n, &configs));
    let failures = checks.iter().filter(|c| !c.pass).count();

    let member_reports: Vec<MemberReport> = members
        .iter()
        .map(|m| MemberReport {
            lambda: m.lambda.clone(),
            orbit_size: m.orbit_size(),
            hessian_rank: m.hessian_rank,
            node: m.all_nodes,
            seeds: m.seeds.clone(),
        })
        .collect();
    Ok(Outcome {
        report: json!({
            "schema": SCHEMA_VERSION,
            "command": "pencil",
            "n": n,
            "group": pencil.group.name().as_str(),
            "members": member_reports,
            "base_locus": base,
            "audits": audits,
            "configurations": configs,
            "bounds": bounds,
            "checks": checks,
        }),
        failures,
    })
}

fn audit_report(cli: &Cli, arg: &GroupArg) -> Result<Outcome> {
    let n = arg.pencil_degree()?;
    progress(cli, &format!("auditing the degree-{n} pencil"));
    let pencil = Pencil::new(n);
    let members = singular_orbits(&pencil)?;
    let families = fix_lines(pencil.group);
    let audits = audit_families(&pencil, &families, &members);
    let base = base_locus(&pencil);
    let checks = verify::check_audits(n, &families, &audits, &base);
    let failures = checks.iter().filter(|c| !c.pass).count();
    Ok(Outcome {
        report: json!({
            "schema": SCHEMA_VERSION,
            "command": "audit",
            "n": n,
            "audits": audits,
            "base_locus": base,
            "checks": checks,
        }),
        failures,
    })
}

#[allow(clippy::too_many_arguments)]
fn render_report(
    cli: &Cli,
    n: usize,
    lambda: &str,
    chart: usize,
    radius: f64,
    size: &str,
    grid: usize,
    mesh_out: &Option<PathBuf>,
    image_out: &Option<PathBuf>,
) -> Result<Outcome> {
    if !matches!(n, 6 | 8 | 12) {
        bail!("no pencil of degree {n}; expected 6, 8 or 12");
    }
    if chart > 3 {
        bail!("chart coordinate must be 0..3");
    }
    if radius <= 0.0 {
        bail!("clip radius must be positive");
    }
    if grid < 2 {
        bail!("grid resolution must be at least 2");
    }
    let lambda = ExactScalar::from_str(lambda)
        .map_err(|e| anyhow::anyhow!("cannot parse --lambda: {e}"))?;
    let (w, h) = size
        .split_once('x')
        .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
        .context("--size must look like 512x512")?;
    if w < 2 || h < 2 {
        bail!("image size too small");
    }
    let mut scene = RenderScene::new(n, lambda.clone());
    scene.chart = chart;
    scene.radius = radius;
    scene.grid = grid;
    scene.image_width = w;
    scene.image_height = h;
    progress(cli, "extracting the mesh");
    let m = mesh(&scene);
    let worst = worst_relative_residual(&scene, &m);
    let residual_ok = worst < 1.0;
    if let Some(path) = mesh_out {
        std::fs::write(path, m.to_obj()).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = image_out {
        progress(cli, "rendering the raster image");
        let img = raster(&scene);
        std::fs::write(path, img.to_ppm())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(Outcome {
        report: json!({
            "schema": SCHEMA_VERSION,
            "command": "render",
            "n": n,
            "lambda": lambda,
            "chart": chart,
            "radius": radius,
            "grid": grid,
            "size": format!("{w}x{h}"),
            "vertices": m.vertices.len(),
            "triangles": m.triangles.len(),
            "worst_relative_residual": worst,
            "residual_ok": residual_ok,
            "mesh_out": mesh_out.as_ref().map(|p| p.display().to_string()),
            "image_out": image_out.as_ref().map(|p| p.display().to_string()),
        }),
        failures: usize::from(!residual_ok),
    })
}

fn all_report(cli: &Cli) -> Result<Outcome> {
    let mut checks = Vec::new();
    let mut stage = |name: &str, mut batch: Vec<verify::Check>| {
        progress(cli, name);
        checks.append(&mut batch);
    };
    stage("verifying group orders", verify::verify_orders());
    stage("verifying generator matrices", verify::verify_generator_fidelity());
    stage("verifying Poincare series", verify::verify_molien_series());
    stage("verifying invariant slices", verify::verify_invariant_ring());
    for n in [6, 8, 12] {
        stage(
            &format!("verifying singular members of F{n}"),
            verify::verify_singular_members(n),
        );
    }
    stage("verifying fix lines", verify::verify_fixlines());
    for n in [6, 8, 12] {
        stage(&format!("auditing F{n}"), verify::verify_audits(n));
        stage(
            &format!("verifying configurations of F{n}"),
            verify::verify_configurations(n),
        );
    }
    stage("verifying bounds", verify::verify_bounds());
    stage("verifying the renderer", verify::verify_render(64));
    let failures = checks.iter().filter(|c| !c.pass).count();
    Ok(Outcome {
        report: json!({
            "schema": SCHEMA_VERSION,
            "command": "all",
            "total": checks.len(),
            "failed": failures,
            "checks": checks,
        }),
        failures,
    })
}
