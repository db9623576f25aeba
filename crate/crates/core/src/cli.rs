//! Command-line front end.
//!
//! Exit codes: `0` success (valid route, clean audit), `2` a negative
//! finding (invalid route, intersecting leaves, disagreeing predicate),
//! `1` usage or input errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::foliation::{extend, synthesize, verify_disjoint, BuiltinFamily};
use crate::halfplane::Transversal;
use crate::io::{agreement_value, audit_value, parse_route, to_pretty, verdict_value, RouteFile};
use crate::leaf::{ideal_endpoints, LeafShape};
use crate::lemma_check::{lemma_check, Predicate};
use crate::render::{render_svg, Style, Viewport};
use crate::route::{validate_c0, validate_c1, validate_horocycle, Route};

#[derive(Debug, Parser)]
#[command(
    name = "umbilic",
    version,
    about = "Validate mean-curvature routes and build their umbilical leaf families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    C0,
    C1,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PredicateArg {
    Geodesic,
    Hypercycle,
    Both,
}

#[derive(Debug, clap::Args)]
struct RouteArgs {
    /// Route file (JSON).
    file: PathBuf,
    /// Override the route tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a route and print the verdict.
    Validate {
        #[command(flatten)]
        route: RouteArgs,
        /// Lipschitz form (c0) or differential form (c1).
        #[arg(long, value_enum, default_value = "c0")]
        mode: ModeArg,
    },
    /// Print the leaf parameter table of a route.
    Leaves {
        #[command(flatten)]
        route: RouteArgs,
        /// Build leaves even if the route is invalid.
        #[arg(long)]
        force: bool,
    },
    /// Check every pair of leaves for intersections.
    Audit {
        #[command(flatten)]
        route: RouteArgs,
        #[arg(long)]
        force: bool,
        /// Extension leaves per side (hypercycle routes).
        #[arg(long, default_value_t = 0)]
        extend: usize,
        /// Arc-length spacing of extension leaves.
        #[arg(long, default_value_t = 0.25)]
        step: f64,
    },
    /// Draw the leaf family as SVG.
    Render {
        #[command(flatten)]
        route: RouteArgs,
        #[arg(long)]
        force: bool,
        /// Output path; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// `xmin,xmax,ymax,W,H`.
        #[arg(long, default_value = "-4,4,4,800,400", allow_hyphen_values = true)]
        viewport: String,
        #[arg(long, default_value_t = 0)]
        extend: usize,
        #[arg(long, default_value_t = 0.25)]
        step: f64,
    },
    /// List the builtin route families with a sample route file each.
    Examples,
    /// Compare the disjointness criteria with the intersection oracle.
    LemmaCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, value_enum, default_value = "both")]
        predicate: PredicateArg,
    },
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Invalid(format!("i/o: {e}"))
}

fn load(args: &RouteArgs) -> Result<Route> {
    let text = std::fs::read_to_string(&args.file)
        .map_err(|e| Error::Invalid(format!("{}: {e}", args.file.display())))?;
    let route = parse_route(&text)?;
    match args.tol {
        Some(tol) => route.with_tol(tol),
        None => Ok(route),
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Validate { route, mode } => {
            let route = load(&route)?;
            let verdict = match (route.transversal(), mode) {
                (Transversal::Horocycle { .. }, _) => validate_horocycle(&route)?,
                (_, ModeArg::C0) => validate_c0(&route)?,
                (_, ModeArg::C1) => validate_c1(&route)?,
            };
            writeln!(out, "{}", to_pretty(&verdict_value(&route, &verdict))).map_err(io_err)?;
            Ok(if verdict.valid { 0 } else { 2 })
        }
        Command::Leaves { route, force } => {
            let route = load(&route)?;
            let slice = synthesize(&route, force)?;
            write_leaf_table(out, &slice.leaves).map_err(io_err)?;
            Ok(0)
        }
        Command::Audit {
            route,
            force,
            extend: per_side,
            step,
        } => {
            let route = load(&route)?;
            let slice = extend(&synthesize(&route, force)?, per_side, step)?;
            let audit = verify_disjoint(&slice);
            let doc = audit_value(
                &slice.transversal,
                slice.leaves.len(),
                slice.extension_leaves.len(),
                &audit,
            );
            writeln!(out, "{}", to_pretty(&doc)).map_err(io_err)?;
            Ok(if audit.is_clean() { 0 } else { 2 })
        }
        Command::Render {
            route,
            force,
            out: path,
            viewport,
            extend: per_side,
            step,
        } => {
            let vp: Viewport = viewport.parse()?;
            let route = load(&route)?;
            let slice = extend(&synthesize(&route, force)?, per_side, step)?;
            let svg = render_svg(&slice, &vp, &Style::default())?;
            match path {
                Some(p) => std::fs::write(&p, svg)
                    .map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?,
                None => out.write_all(&svg).map_err(io_err)?,
            }
            Ok(0)
        }
        Command::Examples => {
            write_examples(out)?;
            Ok(0)
        }
        Command::LemmaCheck { seed, n, predicate } => {
            let which: &[Predicate] = match predicate {
                PredicateArg::Geodesic => &[Predicate::Geodesic],
                PredicateArg::Hypercycle => &[Predicate::Hypercycle],
                PredicateArg::Both => &[Predicate::Geodesic, Predicate::Hypercycle],
            };
            let mut all_agree = true;
            for &p in which {
                let name = match p {
                    Predicate::Geodesic => "geodesic",
                    Predicate::Hypercycle => "hypercycle",
                };
                let stats = lemma_check(p, seed, n)?;
                all_agree &= stats.all_agree();
                writeln!(
                    out,
                    "{name}: agreement {}/{} outside the tangency margin ({} near-zero slack, {} tangent excluded)",
                    stats.agreed, stats.compared, stats.excluded_margin, stats.excluded_tangent
                )
                .map_err(io_err)?;
                if !stats.all_agree() {
                    writeln!(out, "{}", to_pretty(&agreement_value(name, seed, &stats)))
                        .map_err(io_err)?;
                }
            }
            Ok(if all_agree { 0 } else { 2 })
        }
    }
}

fn write_leaf_table(
    out: &mut dyn Write,
    leaves: &[crate::foliation::PlacedLeaf],
) -> std::io::Result<()> {
    writeln!(
        out,
        "t\th\tbeta\tkind\tshape\tx\ty\tradius_or_dx\tdy\ta_minus\ta_plus"
    )?;
    for p in leaves {
        let l = &p.leaf;
        let (shape, x, y, r, dy) = match *l.shape() {
            LeafShape::Circle { center, radius } => {
                ("circle", center.0, center.1, radius, f64::NAN)
            }
            LeafShape::Line { anchor, direction } => {
                ("line", anchor.0, anchor.1, direction.0, direction.1)
            }
        };
        let (am, ap) = ideal_endpoints(l)
            .map(|e| (e.a_minus, e.a_plus))
            .unwrap_or((f64::NAN, f64::NAN));
        let kind = serde_json::to_value(l.kind())
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        let cell = |v: f64| {
            if v.is_nan() {
                "-".to_string()
            } else {
                format!("{v:.12e}")
            }
        };
        writeln!(
            out,
            "{}\t{}\t{}\t{kind}\t{shape}\t{}\t{}\t{}\t{}\t{}\t{}",
            cell(p.t),
            cell(l.h()),
            cell(l.beta()),
            cell(x),
            cell(y),
            cell(r),
            cell(dy),
            cell(am),
            cell(ap)
        )?;
    }
    Ok(())
}

fn write_examples(out: &mut dyn Write) -> Result<()> {
    let families = [
        BuiltinFamily::TotallyGeodesic,
        BuiltinFamily::Horospherical,
        BuiltinFamily::Pencil,
        BuiltinFamily::Constant(0.5),
        BuiltinFamily::CustomConstantMax,
    ];
    for f in families {
        writeln!(out, "{:<20} {}", f.name(), f.describe()).map_err(io_err)?;
    }
    let doc = r#"{"transversal": {"kind": "geodesic"}, "closed_form": {"name": "pencil"}, "window": [-3, 3], "n": 121}"#;
    let hyper = r#"{"transversal": {"kind": "hypercycle", "phi": 0.7}, "closed_form": {"name": "constant", "params": {"value": 0.3}}, "window": [-2, 2], "n": 41}"#;
    let explicit = RouteFile::from_route(&Route::new(
        Transversal::Geodesic,
        vec![
            crate::route::Sample::new(-1.0, 0.0),
            crate::route::Sample::new(0.0, 0.0),
            crate::route::Sample::new(1.0, 0.0),
        ],
        crate::halfplane::DEFAULT_TOL,
    )?);
    writeln!(
        out,
        "\nexample route files:\n{doc}\n{hyper}\n{}",
        explicit.to_json()
    )
    .map_err(io_err)?;
    Ok(())
}
