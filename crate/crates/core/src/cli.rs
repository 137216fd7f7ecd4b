//! Command-line front end.
//!
//! Every subcommand prints a short human summary, or a versioned JSON
//! document (`"schema": "kellipse.<command>/v1"`) with `--json`. Artifacts
//! (pencils, polynomials, SVG, CSV, SDPA files) go to `--out` when given.
//!
//! The defining polynomial is reported as `p_k = det L_k`, with the pencil
//! `L_k = d·I + w₁B₁ ⊕ … ⊕ w_kB_k`; its leading coefficient in `d` is `+1`.
//!
//! Exit codes: 0 success, 2 invalid input, 3 budget exceeded,
//! 4 verification failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::config::FociConfig;
use crate::error::{Error, Result};
use crate::fermat_weber::{self, Formulation, FwStatus};
use crate::geometry::{self, output, CurveKind, Window};
use crate::par::Exec;
use crate::pencil::{build_pencil, build_symbolic_planar_pencil};
use crate::poly::{self, SignVector};
use crate::rational::{self, Rational};

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "KELLIPSE_SEED";

#[derive(Debug, Parser)]
#[command(name = "kellipse", version, about = "LMI representations of k-ellipses and Fermat-Weber tools")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the tensor-sum pencil as JSON.
    Build(BuildArgs),
    /// Expand det L_k exactly.
    Expand(ExpandArgs),
    /// Predicted and interpolated degree of the k-ellipse.
    Degree(CommonArgs),
    /// Membership queries against both the pencil and the distance sum.
    Member(MemberArgs),
    /// Fermat-Weber point.
    Fw(FwArgs),
    /// Real-zero check of det L_k along random lines.
    Rigid(RigidArgs),
    /// SVG plot of branch loci or of confocal k-ellipses.
    Plot(PlotArgs),
    /// Export the Fermat-Weber SDP in SDPA sparse format.
    ExportSdp(ExportArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Number of random integer foci (ignored when foci are given).
    #[arg(short = 'k', long = "count")]
    pub k: Option<usize>,
    /// Foci as "u,v;u,v;…" (exact rationals such as 3, -7/4, 0.5).
    #[arg(long, allow_hyphen_values = true)]
    pub foci: Option<String>,
    /// Weights as "w1,w2,…".
    #[arg(long)]
    pub weights: Option<String>,
    /// Radius d; defaults to ceil(d*) + 1.
    #[arg(long, allow_hyphen_values = true)]
    pub radius: Option<String>,
    /// TOML file with `foci`, `weights`, `radius`, `seed`, `k`, `range`.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Seed for every random choice; KELLIPSE_SEED takes precedence.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Random foci are drawn from [-range, range]².
    #[arg(long)]
    pub range: Option<i64>,
    /// Print a versioned JSON document instead of the summary.
    #[arg(long)]
    pub json: bool,
    /// Artifact output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Keep `d` as a variable.
    #[arg(long)]
    pub free_d: bool,
    /// Fully symbolic pencil in x, y, d, u1, v1, …
    #[arg(long)]
    pub symbolic: bool,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub free_d: bool,
    #[arg(long)]
    pub symbolic: bool,
    /// Also print the polynomial.
    #[arg(long)]
    pub text: bool,
}

#[derive(Debug, Args)]
pub struct MemberArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Query point "x,y[,…]"; repeatable.
    #[arg(long = "point", allow_hyphen_values = true)]
    pub points: Vec<String>,
    /// Number of seeded random points around the region.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = geometry::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct FwArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Check the solution against the pencil (planar only).
    #[arg(long)]
    pub verify: bool,
    /// Boundary point minimizing αx + βy, given as "α,β".
    #[arg(long, allow_hyphen_values = true)]
    pub support: Option<String>,
}

#[derive(Debug, Args)]
pub struct RigidArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, default_value_t = 50)]
    pub lines: usize,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Plot confocal convex curves for these radii instead of branches.
    #[arg(long)]
    pub confocal: Option<String>,
    /// Grid cells per side.
    #[arg(long, default_value_t = 400)]
    pub resolution: usize,
    /// Also write branch vertices as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormulationArg {
    Big,
    Lifted,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, value_enum, default_value_t = FormulationArg::Lifted)]
    pub formulation: FormulationArg,
}

/// Parse `args`, run, and return the exit code. Errors go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(err, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Build(a) => cmd_build(a, out),
        Command::Expand(a) => cmd_expand(a, out),
        Command::Degree(a) => cmd_degree(a, out),
        Command::Member(a) => cmd_member(a, out),
        Command::Fw(a) => cmd_fw(a, out),
        Command::Rigid(a) => cmd_rigid(a, out),
        Command::Plot(a) => cmd_plot(a, out),
        Command::ExportSdp(a) => cmd_export_sdp(a, out),
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    foci: Option<Vec<Vec<Number>>>,
    weights: Option<Vec<Number>>,
    radius: Option<Number>,
    seed: Option<u64>,
    k: Option<usize>,
    range: Option<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Float(f64),
    Text(String),
}

impl Number {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            Number::Int(v) => Ok(rational::int(*v)),
            // Decimal text keeps 0.1 as 1/10 rather than its binary value.
            Number::Float(v) => rational::parse(&format!("{v}")),
            Number::Text(s) => rational::parse(s),
        }
    }
}

/// A resolved configuration and seed.
#[derive(Debug, Clone)]
pub struct Setup {
    pub cfg: FociConfig,
    pub seed: u64,
}

fn read_file_config(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)?;
    toml::from_str(&text).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

pub fn parse_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',').map(|t| rational::parse(t.trim())).collect()
}

pub fn parse_foci(s: &str) -> Result<Vec<Vec<Rational>>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(parse_list)
        .collect()
}

fn parse_point(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid(format!("bad coordinate `{}`", t.trim())))
        })
        .collect()
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::invalid(format!("{SEED_ENV} must be an unsigned integer"))),
        Err(_) => Ok(None),
    }
}

/// Combine flags, config file and environment into a configuration.
pub fn resolve(args: &CommonArgs) -> Result<Setup> {
    let file = match &args.config {
        Some(p) => read_file_config(p)?,
        None => FileConfig::default(),
    };
    let seed = env_seed()?.or(args.seed).or(file.seed).unwrap_or(0);
    let range = args.range.or(file.range).unwrap_or(10);
    let foci = match (&args.foci, &file.foci) {
        (Some(s), _) => Some(parse_foci(s)?),
        (None, Some(f)) => Some(
            f.iter()
                .map(|p| p.iter().map(Number::to_rational).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        ),
        (None, None) => None,
    };
    let k = args.k.or(file.k);
    let base = match foci {
        Some(f) => {
            if let Some(k) = k {
                if k != f.len() {
                    return Err(Error::invalid(format!("-k {k} but {} foci given", f.len())));
                }
            }
            FociConfig::new(f, None, rational::int(0))?
        }
        None => match k {
            Some(k) => FociConfig::random_planar(k, range, seed)?,
            None => return Err(Error::invalid("give --foci, -k or --config")),
        },
    };
    let weights = match (&args.weights, &file.weights) {
        (Some(s), _) => Some(parse_list(s)?),
        (None, Some(w)) => Some(w.iter().map(Number::to_rational).collect::<Result<Vec<_>>>()?),
        (None, None) => None,
    };
    let base = match weights {
        Some(w) => base.with_weights(w)?,
        None => base,
    };
    let radius = match (&args.radius, &file.radius) {
        (Some(s), _) => rational::parse(s)?,
        (None, Some(r)) => r.to_rational()?,
        (None, None) => {
            let fw = fermat_weber::solve_fw(&base)?;
            rational::int(fw.value.ceil() as i64 + 1)
        }
    };
    Ok(Setup { cfg: base.with_radius(radius)?, seed })
}

fn config_json(cfg: &FociConfig) -> Value {
    json!({
        "foci": cfg.foci().iter().map(|f| f.iter().map(rational::format).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "weights": cfg.weights().iter().map(rational::format).collect::<Vec<_>>(),
        "radius": rational::format(cfg.radius()),
    })
}

fn emit_json(out: &mut dyn Write, command: &str, mut body: Value) -> Result<()> {
    body["schema"] = json!(format!("kellipse.{command}/v1"));
    writeln!(out, "{}", serde_json::to_string_pretty(&body)?)?;
    Ok(())
}

fn write_artifact(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}

fn out_path(args: &CommonArgs) -> Value {
    args.out.as_ref().map_or(Value::Null, |p| json!(p.display().to_string()))
}

fn cmd_build(a: &BuildArgs, out: &mut dyn Write) -> Result<()> {
    let c = &a.common;
    let pencil = if a.symbolic {
        let k = match (&c.foci, c.k) {
            (None, Some(k)) if c.config.is_none() => k,
            _ => resolve(c)?.cfg.k(),
        };
        let weights = c.weights.as_deref().map(parse_list).transpose()?;
        build_symbolic_planar_pencil(k, weights.as_deref())?
    } else {
        let setup = resolve(c)?;
        build_pencil(&setup.cfg, a.free_d)?
    };
    let doc = pencil.to_json();
    let text = serde_json::to_string_pretty(&doc)?;
    if let Some(p) = &c.out {
        write_artifact(p, &(text.clone() + "\n"))?;
    }
    if c.json {
        emit_json(out, "build", json!({ "size": pencil.size(), "vars": pencil.vars(), "out": out_path(c), "pencil": doc }))
    } else if c.out.is_some() {
        writeln!(out, "pencil {0}×{0} in variables {1}", pencil.size(), pencil.vars().join(", "))?;
        Ok(())
    } else {
        writeln!(out, "{text}")?;
        Ok(())
    }
}

fn cmd_expand(a: &ExpandArgs, out: &mut dyn Write) -> Result<()> {
    let c = &a.common;
    let (pencil, k) = if a.symbolic {
        let k = match (&c.foci, c.k) {
            (None, Some(k)) if c.config.is_none() => k,
            _ => resolve(c)?.cfg.k(),
        };
        let weights = c.weights.as_deref().map(parse_list).transpose()?;
        (build_symbolic_planar_pencil(k, weights.as_deref())?, k)
    } else {
        let setup = resolve(c)?;
        (build_pencil(&setup.cfg, a.free_d)?, setup.cfg.k())
    };
    let p = poly::det_expand(&pencil)?;
    let monic = if pencil.vars().iter().any(|v| v == "d") {
        Some(poly::monic_in_d_check(&p, k))
    } else {
        None
    };
    if let Some(path) = &c.out {
        write_artifact(path, &(serde_json::to_string_pretty(&p.to_json())? + "\n"))?;
    }
    let xy = poly::xy_degree(&p);
    if c.json {
        let mut body = json!({
            "terms": p.term_count(),
            "total_degree": p.total_degree(),
            "xy_degree": xy,
            "vars": p.vars(),
            "monic_in_d": monic,
            "out": out_path(c),
        });
        if a.text {
            body["polynomial"] = json!(p.to_text());
        }
        return emit_json(out, "expand", body);
    }
    writeln!(
        out,
        "det of {0}×{0} pencil: {1} terms, total degree {2}, degree {3} in (x, y)",
        pencil.size(),
        p.term_count(),
        p.total_degree(),
        xy
    )?;
    if let Some(m) = monic {
        writeln!(out, "leading coefficient in d is {}", if m { "1" } else { "not 1" })?;
    }
    if a.text {
        writeln!(out, "{}", p.to_text())?;
    }
    Ok(())
}

fn cmd_degree(c: &CommonArgs, out: &mut dyn Write) -> Result<()> {
    let setup = resolve(c)?;
    let cfg = &setup.cfg;
    let predicted = poly::predicted_degree(cfg.k(), Some(cfg.weights()))?;
    let report = poly::degree_by_interpolation_report(cfg, Exec::default())?;
    if c.json {
        return emit_json(
            out,
            "degree",
            json!({
                "config": config_json(cfg),
                "predicted": predicted,
                "interpolated": report.degree,
                "attempts": report.attempts.iter().map(|((a, b, _), d)| json!({"direction": [a, b], "degree": d})).collect::<Vec<_>>(),
            }),
        );
    }
    writeln!(out, "predicted {predicted}, interpolated {}", report.degree)?;
    if predicted != report.degree as u64 {
        return Err(Error::Verification(format!(
            "interpolated degree {} differs from predicted {predicted}",
            report.degree
        )));
    }
    Ok(())
}

fn sample_points(cfg: &FociConfig, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let n = cfg.dimension();
    let foci = cfg.foci_f64();
    let total: f64 = cfg.weights_f64().iter().sum();
    // The region lies within d / Σwᵢ of some focus.
    let reach = 1.25 * cfg.radius_f64() / total;
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for f in &foci {
        for j in 0..n {
            lo[j] = lo[j].min(f[j] - reach);
            hi[j] = hi[j].max(f[j] + reach);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..n).map(|j| rng.random_range(lo[j]..=hi[j])).collect())
        .collect()
}

fn cmd_member(a: &MemberArgs, out: &mut dyn Write) -> Result<()> {
    let c = &a.common;
    let setup = resolve(c)?;
    let cfg = &setup.cfg;
    let points: Vec<Vec<f64>> = a.points.iter().map(|s| parse_point(s)).collect::<Result<_>>()?;
    if points.is_empty() && a.sample.is_none() {
        return Err(Error::invalid("give --point or --sample"));
    }
    let oracle = geometry::MembershipOracle::new(cfg, a.tol)?;
    let mut rows = Vec::new();
    for p in &points {
        let m = oracle.query(p)?;
        rows.push(json!({"point": p, "inside": m.inside, "min_eigenvalue": m.min_eigenvalue, "distance_slack": m.distance_slack}));
    }
    let sweep = match a.sample {
        Some(n) => Some(geometry::membership_sweep(
            cfg,
            &sample_points(cfg, n, setup.seed),
            a.tol,
            Exec::default(),
        )?),
        None => None,
    };
    if c.json {
        emit_json(
            out,
            "member",
            json!({
                "config": config_json(cfg),
                "tolerance": a.tol,
                "queries": rows,
                "sweep": sweep.as_ref().map(|s| json!({"points": s.points, "inside": s.inside, "disagreements": s.disagreements, "max_abs_gap": s.max_abs_gap})),
            }),
        )?;
    } else {
        for r in &rows {
            writeln!(
                out,
                "{:?}: {} (min eigenvalue {:.3e}, slack {:.3e})",
                r["point"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect::<Vec<_>>(),
                if r["inside"].as_bool().unwrap() { "inside" } else { "outside" },
                r["min_eigenvalue"].as_f64().unwrap(),
                r["distance_slack"].as_f64().unwrap()
            )?;
        }
        if let Some(s) = &sweep {
            writeln!(out, "{} points, {} inside, {} disagreements", s.points, s.inside, s.disagreements)?;
        }
    }
    match sweep {
        Some(s) if s.disagreements > 0 => Err(Error::Verification(format!(
            "{} of {} points disagree between pencil and distance sum",
            s.disagreements, s.points
        ))),
        _ => Ok(()),
    }
}

fn status_json(status: &FwStatus) -> Value {
    match status {
        FwStatus::Interior => json!({"kind": "interior"}),
        FwStatus::AtFocus(j) => json!({"kind": "at_focus", "focus": j + 1}),
        FwStatus::NonUniqueCollinear { from, to } => {
            json!({"kind": "non_unique_collinear", "segment": [from, to]})
        }
    }
}

fn cmd_fw(a: &FwArgs, out: &mut dyn Write) -> Result<()> {
    let c = &a.common;
    let setup = resolve(c)?;
    let cfg = &setup.cfg;
    let sol = fermat_weber::solve_fw(cfg)?;
    let verification = if a.verify { Some(fermat_weber::verify_fw_via_pencil(cfg, &sol)?) } else { None };
    let support = match &a.support {
        Some(s) => {
            let dir = parse_point(s)?;
            if dir.len() != 2 {
                return Err(Error::invalid("support direction needs two components"));
            }
            Some(fermat_weber::boundary_support(cfg, [dir[0], dir[1]])?)
        }
        None => None,
    };
    if c.json {
        emit_json(
            out,
            "fw",
            json!({
                "config": config_json(cfg),
                "point": sol.point,
                "value": sol.value,
                "status": status_json(&sol.status),
                "certificate": sol.certificate,
                "iterations": sol.iterations,
                "verification": verification.as_ref().map(|v| json!({
                    "min_eigenvalue": v.min_eigenvalue,
                    "shrunk_radius": v.shrunk_radius,
                    "grid_points": v.grid_points,
                    "feasible_points": v.feasible_points,
                    "pass": v.pass,
                })),
                "support": support,
            }),
        )?;
    } else {
        let status = match &sol.status {
            FwStatus::Interior => "interior".to_string(),
            FwStatus::AtFocus(j) => format!("at focus {}", j + 1),
            FwStatus::NonUniqueCollinear { from, to } => {
                format!("non-unique, any point of the segment {from:?} to {to:?}")
            }
        };
        writeln!(out, "point {:?}, d* = {:.12}, {status}", sol.point, sol.value)?;
        writeln!(out, "certificate {:.3e} after {} iterations", sol.certificate, sol.iterations)?;
        if let Some(v) = &verification {
            writeln!(
                out,
                "pencil check: min eigenvalue {:.3e}, {} of {} grid points feasible at d = {:.6}",
                v.min_eigenvalue, v.feasible_points, v.grid_points, v.shrunk_radius
            )?;
        }
        if let Some(p) = support {
            writeln!(out, "support point {p:?}")?;
        }
    }
    match verification {
        Some(v) if !v.pass => Err(Error::Verification("pencil does not certify the Fermat-Weber point".into())),
        _ => Ok(()),
    }
}

fn cmd_rigid(a: &RigidArgs, out: &mut dyn Write) -> Result<()> {
    let c = &a.common;
    let setup = resolve(c)?;
    let cfg = &setup.cfg;
    let reports = geometry::rigidity_check_with(cfg, a.lines, setup.seed, Exec::default())?;
    let passed = reports.iter().filter(|r| r.pass).count();
    let expected = reports.first().map_or(0, |r| r.expected_roots);
    if c.json {
        emit_json(
            out,
            "rigid",
            json!({
                "config": config_json(cfg),
                "seed": setup.seed,
                "lines": reports.iter().map(|r| json!({
                    "origin": r.origin,
                    "direction": r.direction,
                    "degree": r.degree,
                    "real_roots": r.real_roots,
                    "distinct_real_roots": r.distinct_real_roots,
                    "pass": r.pass,
                })).collect::<Vec<_>>(),
                "passed": passed,
            }),
        )?;
    } else {
        writeln!(out, "{passed}/{} lines with all {expected} roots real", reports.len())?;
    }
    if passed != reports.len() {
        return Err(Error::Verification(format!("{} lines have non-real roots", reports.len() - passed)));
    }
    Ok(())
}

fn planar_foci(cfg: &FociConfig) -> Vec<[f64; 2]> {
    cfg.foci_f64().iter().map(|f| [f[0], f[1]]).collect()
}

fn cmd_plot(a: &PlotArgs, out: &mut dyn Write) -> Result<()> {
    let c = &a.common;
    let setup = resolve(c)?;
    let cfg = &setup.cfg;
    if !cfg.is_planar() {
        return Err(Error::invalid("plots need planar foci"));
    }
    let foci = planar_foci(cfg);
    if let Some(radii) = &a.confocal {
        let radii: Vec<f64> = parse_list(radii)?.iter().map(rational::to_f64).collect();
        let plot = geometry::confocal_pencil_with(cfg, &radii, None, a.resolution, Exec::default())?;
        let svg = output::confocal_svg(&plot, &foci);
        if let Some(p) = &c.out {
            write_artifact(p, &svg)?;
        }
        let kinds: Vec<Value> = plot
            .curves
            .iter()
            .map(|cc| {
                let kind = match &cc.kind {
                    CurveKind::Empty => "empty",
                    CurveKind::Point(_) => "point",
                    CurveKind::Curve(_) => "curve",
                };
                json!({"radius": cc.radius, "kind": kind})
            })
            .collect();
        if c.json {
            return emit_json(
                out,
                "plot",
                json!({"config": config_json(cfg), "d_star": plot.d_star, "fw_point": plot.fw_point, "curves": kinds, "nested": plot.nested, "out": out_path(c)}),
            );
        }
        writeln!(out, "d* = {:.9}, {} radii, nested: {}", plot.d_star, radii.len(), plot.nested)?;
        if c.out.is_none() {
            write!(out, "{svg}")?;
        }
        return Ok(());
    }
    let window = Window::for_branches(cfg);
    let sigmas: Vec<SignVector> = SignVector::all(cfg.k()).collect();
    let curves = geometry::trace_branches_with(cfg, &window, a.resolution, &sigmas, Exec::default())?;
    let svg = output::branches_svg(&curves, &window, &foci);
    if let Some(p) = &c.out {
        write_artifact(p, &svg)?;
    }
    if let Some(p) = &a.csv {
        write_artifact(p, &output::branches_csv(&curves))?;
    }
    let nonempty: Vec<&geometry::BranchCurve> = curves.iter().filter(|b| !b.is_empty()).collect();
    if c.json {
        return emit_json(
            out,
            "plot",
            json!({
                "config": config_json(cfg),
                "window": [window.xmin, window.xmax, window.ymin, window.ymax],
                "sign_vectors": curves.len(),
                "nonempty": nonempty.iter().map(|b| b.sigma.to_string()).collect::<Vec<_>>(),
                "max_residual": nonempty.iter().map(|b| b.max_residual()).fold(0.0, f64::max),
                "out": out_path(c),
            }),
        );
    }
    writeln!(out, "{} branch loci from {} sign vectors", nonempty.len(), curves.len())?;
    if c.out.is_none() {
        write!(out, "{svg}")?;
    }
    Ok(())
}

fn cmd_export_sdp(a: &ExportArgs, out: &mut dyn Write) -> Result<()> {
    let c = &a.common;
    let setup = resolve(c)?;
    let formulation = match a.formulation {
        FormulationArg::Big => Formulation::Big,
        FormulationArg::Lifted => Formulation::Lifted,
    };
    let text = fermat_weber::sdpa_string(&setup.cfg, formulation)?;
    if let Some(p) = &c.out {
        write_artifact(p, &text)?;
    }
    let header: Vec<&str> = text.lines().take(3).collect();
    if c.json {
        return emit_json(
            out,
            "export-sdp",
            json!({
                "config": config_json(&setup.cfg),
                "formulation": format!("{:?}", a.formulation).to_lowercase(),
                "variables": header[0].parse::<usize>().unwrap_or(0),
                "blocks": header[1].parse::<usize>().unwrap_or(0),
                "block_sizes": header[2],
                "out": out_path(c),
            }),
        );
    }
    if c.out.is_some() {
        writeln!(out, "{} variables, {} blocks of sizes {}", header[0], header[1], header[2])?;
    } else {
        write!(out, "{text}")?;
    }
    Ok(())
}
