//! The `lune` command: generate, measure, verify and plot bodies.
//!
//! Exit codes: 0 success, 1 failed check or computation, 2 usage error,
//! 3 I/O or schema error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::bodies::{
    convex_hull, make_cap, make_quarter_disk, make_regular_reduced_polygon, make_reuleaux_odd_gon,
    Body,
};
use crate::covering::{boundary_centered_cover, min_enclosing_cap};
use crate::error::Error;
use crate::io::{format_sig9, json_point, json_sig9, BodyDocument};
use crate::regions::Lune;
use crate::sphere::{SpherePoint, Tolerance};
use crate::svg::{render_svg, PlotOptions, Projection};
use crate::verify::{run_suite_with, GeneratorSpec, SuiteOptions, TheoremId};
use crate::width::{diameter, is_constant_diameter, is_constant_width, polar, thickness};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "lune",
    version,
    about = "Convex bodies on the unit sphere: width, thickness, lunes and covering caps"
)]
struct Cli {
    /// TOML file overriding eps_alg, eps_opt and eps_claim.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a body and write it as a JSON document.
    Gen(GenArgs),
    /// Report thickness, diameter, covers and constant-width verdicts.
    Measure {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Accept unknown fields, keeping them as metadata.
        #[arg(long)]
        lenient: bool,
    },
    /// Run theorem suites and print one JSON report per line.
    Verify {
        /// Suite id, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, env = "LUNE_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long, default_value_t = 1)]
        density: usize,
    },
    /// Draw a body as SVG.
    Plot {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ProjectionArg::Orthographic)]
        projection: ProjectionArg,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overlay the lune H(k) ∩ H(k'), given as `x,y,z;x,y,z`. Without a
        /// value, the lune of a thickness-attaining pair is drawn.
        #[arg(long, value_name = "K;K'", num_args = 0..=1, default_missing_value = "auto")]
        with_lune: Option<String>,
        /// Overlay the smallest enclosing cap.
        #[arg(long)]
        with_cap: bool,
        /// Projection center `x,y,z`; defaults to the body's interior point.
        #[arg(long, value_parser = parse_point)]
        center: Option<SpherePoint>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProjectionArg {
    Orthographic,
    Gnomonic,
}

impl From<ProjectionArg> for Projection {
    fn from(p: ProjectionArg) -> Self {
        match p {
            ProjectionArg::Orthographic => Projection::Orthographic,
            ProjectionArg::Gnomonic => Projection::Gnomonic,
        }
    }
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Output path; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    shape: Shape,
}

#[derive(Debug, Subcommand)]
enum Shape {
    /// Ball of radius `rho`.
    Cap {
        #[arg(long)]
        rho: f64,
        #[arg(long, value_parser = parse_point, default_value = "0,0,1")]
        center: SpherePoint,
    },
    /// Quarter of a ball of radius `delta`, apex at the center.
    QuarterDisk {
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 0.0)]
        orientation: f64,
        #[arg(long, value_parser = parse_point, default_value = "0,0,1")]
        center: SpherePoint,
    },
    /// Reuleaux odd-gon of constant width `w`.
    Reuleaux {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: f64,
        #[arg(long, value_parser = parse_point, default_value = "0,0,1")]
        center: SpherePoint,
    },
    /// Regular odd-gon of thickness `delta`.
    ReducedNgon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        delta: f64,
        #[arg(long, value_parser = parse_point, default_value = "0,0,1")]
        center: SpherePoint,
    },
    /// Convex hull of points given as `x,y,z;x,y,z;...` or a JSON file of triples.
    HullOfPoints {
        #[arg(
            long,
            required_unless_present = "points_file",
            conflicts_with = "points_file"
        )]
        points: Option<String>,
        #[arg(long)]
        points_file: Option<PathBuf>,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    eps_alg: Option<f64>,
    eps_opt: Option<f64>,
    eps_claim: Option<f64>,
}

/// Error paired with the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

type CliResult<T> = std::result::Result<T, Failure>;

impl Failure {
    fn new(code: i32, e: impl std::fmt::Display) -> Self {
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Schema(_) | Error::Io(_) => EXIT_IO,
            Error::UnknownTheoremId(_) | Error::BadTolerance(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure::new(code, e)
    }
}

fn parse_point(s: &str) -> std::result::Result<SpherePoint, String> {
    let xs: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    let [x, y, z] = xs[..] else {
        return Err(format!("expected x,y,z, got {s:?}"));
    };
    SpherePoint::new(x, y, z).map_err(|e| e.to_string())
}

fn parse_points(s: &str) -> std::result::Result<Vec<SpherePoint>, String> {
    s.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(parse_point)
        .collect()
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", p.display())))
        }
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::new(EXIT_IO, e)),
    }
}

fn load_tolerance(path: Option<&Path>) -> CliResult<Tolerance> {
    let mut tol = Tolerance::default();
    let Some(path) = path else { return Ok(tol) };
    let cfg: ConfigFile = toml::from_str(&read_text(path)?)
        .map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?;
    tol.eps_alg = cfg.eps_alg.unwrap_or(tol.eps_alg);
    tol.eps_opt = cfg.eps_opt.unwrap_or(tol.eps_opt);
    tol.eps_claim = cfg.eps_claim.unwrap_or(tol.eps_claim);
    tol.validate()?;
    Ok(tol)
}

fn load_body(path: &Path, strict: bool) -> CliResult<Body> {
    let doc = BodyDocument::parse(&read_text(path)?, strict).map_err(|e| match e {
        Error::Schema(_) => Failure::from(e),
        other => Failure::new(EXIT_IO, format!("{}: {other}", path.display())),
    })?;
    Ok(doc.to_body()?)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult<i32> {
    let tol = load_tolerance(cli.config.as_deref())?;
    match cli.command {
        Command::Gen(args) => cmd_gen(args, out),
        Command::Measure {
            file,
            json,
            lenient,
        } => cmd_measure(&file, json, !lenient, &tol, out),
        Command::Verify {
            suite,
            seed,
            cases,
            density,
        } => cmd_verify(&suite, seed, cases, density, &tol, out),
        Command::Plot {
            file,
            projection,
            out: path,
            with_lune,
            with_cap,
            center,
        } => {
            let body = load_body(&file, true)?;
            let lune = match with_lune.as_deref() {
                None => None,
                Some("auto") => {
                    let (_, pair) = thickness(&body)?;
                    Some(Lune::new(pair.k, pair.k_star)?)
                }
                Some(s) => {
                    let poles = parse_points(s).map_err(|e| Failure::new(EXIT_USAGE, e))?;
                    let [k, k2] = poles[..] else {
                        return Err(Failure::new(
                            EXIT_USAGE,
                            "--with-lune takes two poles `x,y,z;x,y,z`",
                        ));
                    };
                    Some(Lune::new(k, k2).map_err(|e| Failure::new(EXIT_USAGE, e))?)
                }
            };
            let opts = PlotOptions {
                projection: projection.into(),
                center,
                lune,
                with_cap,
            };
            emit(out, path.as_deref(), &render_svg(&body, &opts)?)?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_gen(args: GenArgs, out: &mut dyn Write) -> CliResult<i32> {
    let usage = |e: Error| Failure::new(EXIT_USAGE, e);
    let (body, shape, params) = match args.shape {
        Shape::Cap { rho, center } => (
            make_cap(center, rho).map_err(usage)?,
            "cap",
            json!({ "rho": rho, "center": center }),
        ),
        Shape::QuarterDisk {
            delta,
            orientation,
            center,
        } => (
            make_quarter_disk(center, delta, orientation).map_err(usage)?,
            "quarter-disk",
            json!({ "delta": delta, "orientation": orientation, "center": center }),
        ),
        Shape::Reuleaux { n, w, center } => (
            make_reuleaux_odd_gon(center, n, w).map_err(usage)?,
            "reuleaux",
            json!({ "n": n, "w": w, "center": center }),
        ),
        Shape::ReducedNgon { n, delta, center } => (
            make_regular_reduced_polygon(center, n, delta).map_err(usage)?,
            "reduced-ngon",
            json!({ "n": n, "delta": delta, "center": center }),
        ),
        Shape::HullOfPoints {
            points,
            points_file,
        } => {
            let pts = match (points, points_file) {
                (Some(s), _) => parse_points(&s).map_err(|e| Failure::new(EXIT_USAGE, e))?,
                (None, Some(path)) => serde_json::from_str::<Vec<SpherePoint>>(&read_text(&path)?)
                    .map_err(|e| Failure::new(EXIT_IO, format!("{}: {e}", path.display())))?,
                (None, None) => unreachable!("clap requires one of the point sources"),
            };
            let count = pts.len();
            (
                Body::Polygon(convex_hull(&pts).map_err(usage)?),
                "hull-of-points",
                json!({ "input_points": count }),
            )
        }
    };
    let doc = BodyDocument::from_body(&body)
        .with_metadata("shape", shape)
        .with_metadata("params", params);
    emit(out, args.out.as_deref(), &doc.to_json())?;
    Ok(EXIT_OK)
}

fn cmd_measure(
    path: &Path,
    as_json: bool,
    strict: bool,
    tol: &Tolerance,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let body = load_body(path, strict)?;
    let (delta, pair) = thickness(&body)?;
    let (diam, (p, q)) = diameter(&body)?;
    let cap = min_enclosing_cap(&body)?;
    let cover = boundary_centered_cover(&body)?;
    let cw = is_constant_width(&body, delta, tol.eps_claim)?;
    let cd = is_constant_diameter(&body, diam, tol.eps_claim)?;
    let (polar_delta, _) = thickness(&polar(&body)?)?;

    let mut report = Map::new();
    report.insert("kind".into(), body.kind_name().into());
    report.insert("thickness".into(), json_sig9(delta));
    report.insert(
        "thickness_poles".into(),
        json!({ "k": json_point(&pair.k), "k_star": json_point(&pair.k_star) }),
    );
    report.insert("diameter".into(), json_sig9(diam));
    report.insert(
        "diameter_endpoints".into(),
        json!([json_point(&p), json_point(&q)]),
    );
    report.insert(
        "min_enclosing_cap".into(),
        json!({ "center": json_point(&cap.center), "radius": json_sig9(cap.radius) }),
    );
    report.insert(
        "boundary_centered_cover".into(),
        json!({ "center": json_point(&cover.center), "radius": json_sig9(cover.radius) }),
    );
    report.insert(
        "constant_width".into(),
        json!({ "holds": cw.holds, "max_deviation": json_sig9(cw.max_deviation) }),
    );
    report.insert(
        "constant_diameter".into(),
        json!({ "holds": cd.holds, "worst_farthest": json_sig9(cd.worst_farthest) }),
    );
    report.insert("polar_thickness".into(), json_sig9(polar_delta));

    let text = if as_json {
        let mut s =
            serde_json::to_string_pretty(&Value::Object(report)).expect("report serializes");
        s.push('\n');
        s
    } else {
        let point = |p: &SpherePoint| {
            let [x, y, z] = p.to_array();
            format!(
                "({}, {}, {})",
                format_sig9(x),
                format_sig9(y),
                format_sig9(z)
            )
        };
        let rows = [
            ("kind", body.kind_name().to_string()),
            ("thickness", format_sig9(delta)),
            ("diameter", format_sig9(diam)),
            ("min_enclosing_cap.radius", format_sig9(cap.radius)),
            ("min_enclosing_cap.center", point(&cap.center)),
            ("boundary_centered_cover.radius", format_sig9(cover.radius)),
            ("boundary_centered_cover.center", point(&cover.center)),
            ("constant_width", cw.holds.to_string()),
            (
                "constant_width.max_deviation",
                format_sig9(cw.max_deviation),
            ),
            ("constant_diameter", cd.holds.to_string()),
            ("polar_thickness", format_sig9(polar_delta)),
        ];
        rows.iter().map(|(k, v)| format!("{k:<32}{v}\n")).collect()
    };
    emit(out, None, &text)?;
    Ok(EXIT_OK)
}

fn cmd_verify(
    suite: &str,
    seed: u64,
    cases: Option<usize>,
    density: usize,
    tol: &Tolerance,
    out: &mut dyn Write,
) -> CliResult<i32> {
    let ids = if suite == "all" {
        TheoremId::ALL.to_vec()
    } else {
        vec![suite.parse::<TheoremId>()?]
    };
    let spec = GeneratorSpec { cases, density };
    let opts = SuiteOptions {
        tolerance: *tol,
        invert: false,
    };
    let mut all_pass = true;
    for id in ids {
        let r = run_suite_with(id, &spec, seed, &opts)?;
        all_pass &= r.pass;
        let line = json!({
            "theorem_id": r.theorem_id.as_str(),
            "cases_run": r.cases_run,
            "worst_violation": json_sig9(r.worst_violation),
            "pass": r.pass,
            "seed": r.seed,
        });
        emit(out, None, &format!("{line}\n"))?;
    }
    Ok(if all_pass { EXIT_OK } else { EXIT_FAILURE })
}
