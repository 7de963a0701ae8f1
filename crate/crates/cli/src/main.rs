//! `arcmap`: conformal maps of circular-arc polygons onto the unit disk and
//! moduli of quadrilaterals from the command line.

mod input;
mod output;
mod tables;

use std::path::PathBuf;
use std::process::ExitCode;

use arcmap::modulus::{modulus_report, QuadrilateralSpec};
use arcmap::{map_to_disk, BoundaryDiscretization, DomainKind, MatvecStrategy, SolverOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::output::{fmt, report_lines, sibling, write_file, MapJson};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, domain files or marked points: exit code 2.
    Input(String),
    /// The solver failed: exit code 3.
    Solver(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Solver(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<arcmap::Error> for CliError {
    fn from(e: arcmap::Error) -> Self {
        use arcmap::Error::*;
        match e {
            NotConverged { .. } | Breakdown { .. } | NonFinite(_) => CliError::Solver(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "arcmap", version, about = "Conformal maps of circular-arc polygons and moduli of quadrilaterals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map a domain onto the unit disk and write the boundary correspondence.
    Map(MapArgs),
    /// Modulus of a bounded quadrilateral.
    Modulus(ModulusArgs),
    /// Modulus of the quadrilateral on the exterior of the curve.
    ///
    /// Marked points follow the curve clockwise; `t:` parameters refer to the
    /// clockwise parametrization. The result is the modulus of the curves in
    /// the exterior joining the sides (z1, z2) and (z3, z4).
    Exterior(ModulusArgs),
    /// Reproduce a published table or figure dataset as CSV.
    PaperTable(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Matvec {
    Auto,
    Direct,
    Dense,
}

#[derive(Args, Clone)]
struct SolverArgs {
    /// Grading exponent at the corners.
    #[arg(long = "p", default_value_t = arcmap::grading::DEFAULT_P)]
    grading_p: u32,
    /// GMRES relative residual tolerance.
    #[arg(long, default_value_t = arcmap::kernel::DEFAULT_TOL)]
    tol: f64,
    /// GMRES iteration limit.
    #[arg(long, default_value_t = arcmap::kernel::DEFAULT_MAXIT)]
    maxit: usize,
    #[arg(long, value_enum, default_value = "auto")]
    matvec: Matvec,
}

impl SolverArgs {
    fn options(&self) -> Result<SolverOptions, CliError> {
        if !(self.tol > 0.0) || self.maxit == 0 {
            return Err(CliError::Input("--tol and --maxit must be positive".into()));
        }
        let strategy = match self.matvec {
            Matvec::Auto => MatvecStrategy::Auto,
            Matvec::Direct => MatvecStrategy::Direct,
            Matvec::Dense => MatvecStrategy::Dense,
        };
        Ok(SolverOptions { tol: self.tol, maxit: self.maxit, strategy })
    }
}

#[derive(Args)]
struct DomainArgs {
    /// Builtin domain (e.g. gear6, lshape, onetooth:1.5,0.5236) or a JSON polygon file.
    #[arg(long)]
    domain: String,
    /// Node count, rounded up to a power-of-two multiple of the vertex count.
    #[arg(long, default_value_t = 4096)]
    n: usize,
    /// Auxiliary point inside a bounded domain, or the point enclosed by the
    /// curve for an exterior map: `re,im` or a real number.
    #[arg(long, alias = "base-point", allow_hyphen_values = true)]
    alpha: Option<String>,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Args)]
struct MapArgs {
    #[command(flatten)]
    domain: DomainArgs,
    /// Map the exterior of the curve (the default for exterior builtins).
    #[arg(long)]
    exterior: bool,
    /// Map the interior of the curve.
    #[arg(long, conflicts_with = "exterior")]
    interior: bool,
    /// Radii for grid polylines: `r1,r2,...` or `a..b` for ten values.
    #[arg(long)]
    grid: Option<String>,
    /// JSON output; CSV files are written next to it.
    #[arg(long, short, default_value = "map.json")]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct ModulusArgs {
    #[command(flatten)]
    domain: DomainArgs,
    /// Four marked points: v<k> (1-based vertex), t:<param> or xy:<re>,<im>.
    /// Defaults to the domain's own quadruple when it has one.
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    /// One of half, lshape, lshape-arc, tre, trapezoid, ext-rect, ext-poly,
    /// gear6, multitooth, annular, onetooth-sweep.
    name: String,
    /// Node count for every case instead of the table's own.
    #[arg(long)]
    n: Option<usize>,
    #[command(flatten)]
    solver: SolverArgs,
    /// CSV output file instead of stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

fn base_point(args: &DomainArgs) -> Result<Option<num_complex::Complex64>, CliError> {
    args.alpha.as_deref().map(input::parse_complex).transpose()
}

fn cmd_map(args: &MapArgs) -> Result<(), CliError> {
    let d = input::load_domain(&args.domain.domain)?;
    let kind = if args.exterior {
        DomainKind::Unbounded
    } else if args.interior {
        DomainKind::Bounded
    } else {
        d.kind
    };
    let radii = args.grid.as_deref().map(input::parse_grid).transpose()?;
    let n = input::node_count(args.domain.n, &d.poly)?;
    let p = args.domain.solver.grading_p;
    let disc = BoundaryDiscretization::new(&d.poly, n, p, kind.orientation())?;
    let base = base_point(&args.domain)?.unwrap_or(d.default_base_point);
    let map = map_to_disk(disc, base, kind, &args.domain.solver.options()?)?;

    let json = serde_json::to_string(&MapJson::new(&d.name, &map, p))
        .map_err(|e| CliError::Io(format!("cannot serialize map: {e}")))?;
    write_file(&args.out, &json)?;
    let pre_path = sibling(&args.out, "preimages");
    write_file(&pre_path, &output::preimage_table(&map).to_csv())?;

    let mut lines = vec![
        ("domain", format!("{} ({})", d.name, if kind == DomainKind::Bounded { "interior" } else { "exterior" })),
        ("n", map.disc().n().to_string()),
        ("base_point", format!("{},{}", fmt(base.re), fmt(base.im))),
        ("c", fmt(map.c())),
        ("iterations", map.iterations().to_string()),
        ("residual", fmt(map.residual())),
    ];
    // On the unit circle the exact map is the identity.
    let pts = map.disc().points();
    if pts.iter().all(|p| (p.norm() - 1.0).abs() < 1e-12) {
        let dev = map.zeta().iter().zip(pts).map(|(w, z)| (w - z).norm()).fold(0.0, f64::max);
        lines.push(("identity_deviation", fmt(dev)));
    }
    lines.push(("wrote", format!("{} {}", args.out.display(), pre_path.display())));
    if let Some(radii) = radii {
        let inv = sibling(&args.out, "inverse");
        let fwd = sibling(&args.out, "forward");
        write_file(&inv, &output::inverse_polylines(&map, &radii)?.to_csv())?;
        write_file(&fwd, &output::forward_polylines(&map, &radii)?.to_csv())?;
        lines.push(("wrote", format!("{} {}", inv.display(), fwd.display())));
    }
    print!("{}", report_lines(&lines));
    Ok(())
}

#[derive(Serialize)]
struct ModulusJson<'a> {
    domain: &'a str,
    kind: &'static str,
    marked: [f64; 4],
    modulus: f64,
    conjugate: f64,
    reciprocal_error: f64,
    n: usize,
    iterations: usize,
    residual: f64,
    base_point: [f64; 2],
    images: Vec<[f64; 2]>,
}

fn cmd_modulus(args: &ModulusArgs, kind: DomainKind) -> Result<(), CliError> {
    let d = input::load_domain(&args.domain.domain)?;
    let marked = match &args.points {
        Some(s) => input::parse_points(s, d.poly.len())?,
        None => d
            .default_marked
            .ok_or_else(|| CliError::Input(format!("domain {} has no default marked points; pass --points", d.name)))?,
    };
    let n = input::node_count(args.domain.n, &d.poly)?;
    let mut spec = QuadrilateralSpec::from_marked(d.poly.clone(), marked, n, kind)?
        .with_grading(args.domain.solver.grading_p)?
        .with_solver(args.domain.solver.options()?);
    if let Some(b) = base_point(&args.domain)? {
        spec = spec.with_base_point(b);
    }
    let rep = modulus_report(&spec, kind)?;
    let report = ModulusJson {
        domain: &d.name,
        kind: if kind == DomainKind::Bounded { "interior" } else { "exterior" },
        marked: spec.marked,
        modulus: rep.modulus,
        conjugate: rep.conjugate,
        reciprocal_error: rep.reciprocal_error,
        n: rep.n,
        iterations: rep.iterations,
        residual: rep.residual,
        base_point: [rep.base_point.re, rep.base_point.im],
        images: rep.images.iter().map(|w| [w.re, w.im]).collect(),
    };
    let json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Io(format!("cannot serialize: {e}")))?;
    if let Some(path) = &args.out {
        write_file(path, &json)?;
    }
    match args.format {
        Format::Json => println!("{json}"),
        Format::Text => print!(
            "{}",
            report_lines(&[
                ("modulus", fmt(rep.modulus)),
                ("conjugate", fmt(rep.conjugate)),
                ("reciprocal_error", fmt(rep.reciprocal_error)),
                ("n", rep.n.to_string()),
                ("iterations", rep.iterations.to_string()),
            ])
        ),
    }
    Ok(())
}

fn cmd_table(args: &TableArgs) -> Result<(), CliError> {
    if args.n == Some(0) {
        return Err(CliError::Input("--n must be positive".into()));
    }
    let cfg = tables::TableConfig { n: args.n, grading_p: args.solver.grading_p, solver: args.solver.options()? };
    // Validate the exponent before spending time on the cases.
    arcmap::GradingParams::new(cfg.grading_p, 1)?;
    let csv = tables::run(&args.name, &cfg)?.to_csv();
    match &args.out {
        Some(path) => write_file(path, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

/// Caps the worker pool at `ARCMAP_THREADS` when set.
fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("ARCMAP_THREADS") else {
        return Ok(());
    };
    let k: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&k| k > 0)
        .ok_or_else(|| CliError::Input(format!("ARCMAP_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(k)
        .build_global()
        .map_err(|e| CliError::Io(format!("cannot start worker pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    init_threads()?;
    match &cli.command {
        Command::Map(a) => cmd_map(a),
        Command::Modulus(a) => cmd_modulus(a, DomainKind::Bounded),
        Command::Exterior(a) => cmd_modulus(a, DomainKind::Unbounded),
        Command::PaperTable(a) => cmd_table(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
