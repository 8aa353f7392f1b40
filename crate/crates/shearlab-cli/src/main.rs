//! `shearlab` — certificates, disk probes, convolutions and the scenario
//! suite from the command line. Reports are JSON documents stamped with a
//! schema version; exit code 0 means pass/consistent, 1 fail/inconsistent,
//! 2 usage or input error.

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use shearlab::atlas::{self, AtlasName};
use shearlab::certificates::{
    salagean_certificate, starlike_certificate, weighted_certificate, Certificate, WeightPreset,
};
use shearlab::error::Error;
use shearlab::exact::polylog_exact;
use shearlab::harmonic::HarmonicMap;
use shearlab::io::{envelope, fmt_sig, HarmonicDoc, SeriesDoc};
use shearlab::numeric::{
    boundary_injectivity_probe, condition_series, direction_convexity_probe, jacobian_scan,
    n_starlike_probe, re_min_on_grid, DirectionVerdict, DiskGrid, Prefactor, ProbeVerdict,
    PROBE_ORDER,
};
use shearlab::series::PowerSeries;
use shearlab::theorems;

/// Environment variable holding a default grid spec `r1,r2,...:<samples>`.
const GRID_ENV: &str = "SHEARLAB_GRID";

#[derive(Parser)]
#[command(name = "shearlab", version, about = "planar harmonic mappings: convolutions, certificates and disk probes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GridOpt {
    /// Grid spec `r1,r2,...:<samples>` (default from SHEARLAB_GRID or built in)
    #[arg(long)]
    grid: Option<String>,
}

impl GridOpt {
    fn resolve(&self) -> Result<DiskGrid, Error> {
        if let Some(spec) = &self.grid {
            return DiskGrid::parse(spec);
        }
        if let Ok(spec) = std::env::var(GRID_ENV) {
            return DiskGrid::parse(&spec);
        }
        Ok(DiskGrid::default_grid())
    }
}

#[derive(Args)]
struct MapOpt {
    /// Atlas name (K, L, f_alpha:<angle>, f_a:<a>, F_b:<b>, polylog:<m>,
    /// lpartial:<n>, kernel:<half|star|log>:<angle>) or a JSON document path
    #[arg(long)]
    map: String,
    /// Convolve the map with this analytic atlas name before use
    #[arg(long)]
    with: Option<String>,
    /// Truncate to the p-th partial sum after convolving
    #[arg(long)]
    partial: Option<usize>,
    /// Truncation order for construction (default: probe order)
    #[arg(long)]
    order: Option<usize>,
}

impl MapOpt {
    fn build(&self) -> Result<HarmonicMap, Error> {
        let order = self.order.unwrap_or(PROBE_ORDER);
        let mut map = build_named_or_file(&self.map, order)?;
        if let Some(with) = &self.with {
            let phi = build_series(with, order)?;
            map = map.tilde_convolve(&phi);
        }
        if let Some(p) = self.partial {
            map = map.partial_sum(p)?;
        }
        Ok(map)
    }
}

#[derive(Subcommand)]
enum Command {
    /// List or emit the named maps
    Atlas {
        #[command(subcommand)]
        action: AtlasAction,
    },
    /// Convolve two maps (tilde, harmonic, or coefficient-wise)
    Convolve(ConvolveArgs),
    /// Truncate a map or series file to its p-th partial sum
    PartialSum(PartialSumArgs),
    /// Evaluate a coefficient certificate on a series document
    Certify(CertifyArgs),
    /// Run a disk probe
    Probe {
        #[command(subcommand)]
        probe: ProbeCommand,
    },
    /// List or run the registered scenarios
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
    /// Sample a boundary curve as CSV (columns t,re,im)
    EmitCurve(EmitCurveArgs),
}

#[derive(Subcommand)]
enum AtlasAction {
    /// Print the accepted map names
    List,
    /// Emit a named map as a JSON document
    Emit {
        /// Atlas name
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 64)]
        order: usize,
        /// Emit exact rational coefficients (K, polylog, lpartial only)
        #[arg(long)]
        exact: bool,
    },
}

#[derive(Args)]
struct ConvolveArgs {
    #[arg(long)]
    map: String,
    #[arg(long)]
    with: String,
    /// Harmonic-with-analytic convolution (the default when `--map` is harmonic)
    #[arg(long)]
    tilde: bool,
    /// Convolve two harmonic maps part-by-part
    #[arg(long)]
    harmonic: bool,
    #[arg(long)]
    partial: Option<usize>,
    #[arg(long, default_value_t = 64)]
    order: usize,
    /// Exact rational coefficients (K, polylog, lpartial only)
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct PartialSumArgs {
    /// Atlas name or JSON document path
    #[arg(long, conflicts_with = "series")]
    map: Option<String>,
    /// Series document path or `-` for stdin
    #[arg(long)]
    series: Option<String>,
    #[arg(short, long)]
    p: usize,
    #[arg(long, default_value_t = 64)]
    order: usize,
}

#[derive(Args)]
struct CertifyArgs {
    /// Class spec: starlike:<alpha>, convex:<alpha>, nstar:<n>:<alpha>,
    /// weighted:<n2|n3|span|2n1>
    #[arg(long)]
    class: String,
    /// Series document path or `-` for stdin
    #[arg(long)]
    series: String,
    /// Direction angle for the weighted presets (radians)
    #[arg(long)]
    theta: Option<f64>,
}

#[derive(Subcommand)]
enum ProbeCommand {
    /// Grid minimum of Re((1 - alpha z)^2 S(z)/z) against 1/2, where S is
    /// the level-n condition series of the analytic part
    ReCondition {
        #[command(flatten)]
        map: MapOpt,
        #[command(flatten)]
        grid: GridOpt,
        /// Angle of the unimodular prefactor twist (radians)
        #[arg(long, default_value_t = 0.0)]
        alpha_angle: f64,
        /// Angle of the kernel twist inside the condition series (radians)
        #[arg(long, default_value_t = 0.0)]
        gamma_angle: f64,
        /// Operator level n (1: weight by k, 2: identity, 3: divide by k)
        #[arg(long, default_value_t = 2)]
        level: i32,
        /// Probe Re S(z) directly without the prefactor
        #[arg(long)]
        no_prefactor: bool,
    },
    /// Grid minimum of Re(D^{n+1} f / D^n f) against alpha
    Starlike {
        #[command(flatten)]
        map: MapOpt,
        #[command(flatten)]
        grid: GridOpt,
        #[arg(long, default_value_t = 0)]
        level: i32,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
    },
    /// Jacobian sweep with sign-change refinement
    Jacobian {
        #[command(flatten)]
        map: MapOpt,
        #[command(flatten)]
        grid: GridOpt,
    },
    /// Monotone-projection convexity probe in direction theta
    Direction {
        #[command(flatten)]
        map: MapOpt,
        #[command(flatten)]
        grid: GridOpt,
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 2048)]
        samples: usize,
        /// Dead band as a fraction of the curve diameter
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Minimum pairwise distance between boundary-circle images
    Injectivity {
        #[command(flatten)]
        map: MapOpt,
        #[arg(long, default_value_t = 0.9)]
        radius: f64,
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        #[arg(long, default_value_t = 1e-6)]
        min_gap: f64,
    },
}

#[derive(Subcommand)]
enum ScenarioAction {
    /// List the registered scenarios
    List {
        #[arg(long)]
        json: bool,
    },
    /// Run one scenario; exit 0 iff the report is consistent
    Run {
        id: String,
        /// Parameter override `name=value` (repeatable)
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run every scenario at default parameters
    All {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct EmitCurveArgs {
    #[command(flatten)]
    map: MapOpt,
    #[arg(long)]
    radius: f64,
    #[arg(long, default_value_t = 720)]
    samples: usize,
}

fn build_named_or_file(name: &str, order: usize) -> Result<HarmonicMap, Error> {
    if let Ok(parsed) = AtlasName::parse(name) {
        return parsed.build(order);
    }
    if name == "-" || name.ends_with(".json") || name.contains('/') {
        let doc = read_document(name)?;
        return doc_to_map(&doc);
    }
    Err(Error::UnknownName(name.to_string()))
}

fn build_series(name: &str, order: usize) -> Result<PowerSeries, Error> {
    match AtlasName::parse(name)? {
        AtlasName::Series(kind) => atlas::kernel(&kind, order),
        AtlasName::Harmonic(_) => Err(Error::InvalidParameter(format!(
            "`{name}` is a harmonic map; an analytic series is required here"
        ))),
    }
}

fn read_text(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Document(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Document(format!("{path}: {e}")))
    }
}

/// Accepts a bare series document, a bare harmonic document, or either
/// wrapped in the report envelope.
fn read_document(path: &str) -> Result<serde_json::Value, Error> {
    let text = read_text(path)?;
    let mut value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Document(e.to_string()))?;
    if value.get("schema").is_some() {
        value = value
            .get("data")
            .cloned()
            .ok_or_else(|| Error::Document("envelope without `data`".into()))?;
    }
    Ok(value)
}

fn doc_to_series(value: &serde_json::Value) -> Result<PowerSeries, Error> {
    if value.get("h").is_some() {
        return Err(Error::Document(
            "harmonic document given where an analytic series is required".into(),
        ));
    }
    let doc: SeriesDoc =
        serde_json::from_value(value.clone()).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_series()
}

fn doc_to_map(value: &serde_json::Value) -> Result<HarmonicMap, Error> {
    if value.get("h").is_some() {
        let doc: HarmonicDoc =
            serde_json::from_value(value.clone()).map_err(|e| Error::Document(e.to_string()))?;
        return doc.to_map();
    }
    Ok(HarmonicMap::analytic(doc_to_series(value)?))
}

fn parse_class(spec: &str, theta: Option<f64>) -> Result<ClassSpec, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::InvalidParameter(format!("unknown class spec `{spec}`"));
    let num = |s: &str| -> Result<f64, Error> { s.parse().map_err(|_| bad()) };
    match parts.as_slice() {
        ["starlike", a] => Ok(ClassSpec::Starlike { alpha: num(a)? }),
        ["convex", a] => Ok(ClassSpec::NStar { n: 1, alpha: num(a)? }),
        ["nstar", n, a] => Ok(ClassSpec::NStar {
            n: n.parse().map_err(|_| bad())?,
            alpha: num(a)?,
        }),
        ["weighted", id] => Ok(ClassSpec::Weighted {
            preset: WeightPreset::parse(id)?,
            theta: theta.unwrap_or(0.0),
        }),
        _ => Err(bad()),
    }
}

enum ClassSpec {
    Starlike { alpha: f64 },
    NStar { n: u32, alpha: f64 },
    Weighted { preset: WeightPreset, theta: f64 },
}

impl ClassSpec {
    fn evaluate(&self, f: &PowerSeries) -> Result<Certificate, Error> {
        match self {
            Self::Starlike { alpha } => starlike_certificate(f, *alpha),
            Self::NStar { n, alpha } => salagean_certificate(f, n + 1, *alpha),
            Self::Weighted { preset, theta } => weighted_certificate(f, *preset, *theta),
        }
    }
}

fn print_json(kind: &str, data: serde_json::Value) {
    println!("{}", envelope(kind, data));
}

fn to_value<T: serde::Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("report serialization")
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Atlas { action } => match action {
            AtlasAction::List => {
                for name in atlas::atlas_names() {
                    println!("{name}");
                }
                Ok(ExitCode::SUCCESS)
            }
            AtlasAction::Emit { map, order, exact } => {
                if exact {
                    let data = exact_emit(&map, order, None)?;
                    print_json("atlas", data);
                } else {
                    let parsed = AtlasName::parse(&map)?;
                    let data = match &parsed {
                        AtlasName::Harmonic(_) => {
                            to_value(&HarmonicDoc::from_map(&parsed.build(order)?))
                        }
                        AtlasName::Series(kind) => {
                            to_value(&SeriesDoc::from_series(&atlas::kernel(kind, order)?))
                        }
                    };
                    print_json("atlas", data);
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Convolve(args) => {
            if args.exact {
                let data = exact_emit(&args.map, args.order, Some((&args.with, args.partial)))?;
                print_json("convolve", data);
                return Ok(ExitCode::SUCCESS);
            }
            let left = build_named_or_file(&args.map, args.order)?;
            let data = if args.harmonic {
                let right = build_named_or_file(&args.with, args.order)?;
                let mut conv = left.convolve(&right);
                if let Some(p) = args.partial {
                    conv = conv.partial_sum(p)?;
                }
                to_value(&HarmonicDoc::from_map(&conv))
            } else {
                let phi = build_series(&args.with, args.order)?;
                let mut conv = left.tilde_convolve(&phi);
                if let Some(p) = args.partial {
                    conv = conv.partial_sum(p)?;
                }
                if conv.g().max_abs_coeff() == 0.0 && !args.tilde {
                    to_value(&SeriesDoc::from_series(conv.h()))
                } else {
                    to_value(&HarmonicDoc::from_map(&conv))
                }
            };
            print_json("convolve", data);
            Ok(ExitCode::SUCCESS)
        }
        Command::PartialSum(args) => {
            let data = if let Some(series) = &args.series {
                let doc = read_document(series)?;
                let f = doc_to_series(&doc)?;
                to_value(&SeriesDoc::from_series(&f.partial_sum(args.p)?))
            } else if let Some(map) = &args.map {
                let f = build_named_or_file(map, args.order)?;
                to_value(&HarmonicDoc::from_map(&f.partial_sum(args.p)?))
            } else {
                return Err(Error::InvalidParameter("need --map or --series".into()));
            };
            print_json("partial-sum", data);
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify(args) => {
            let doc = read_document(&args.series)?;
            let f = doc_to_series(&doc)?;
            let cert = parse_class(&args.class, args.theta)?.evaluate(&f)?;
            print_json("certificate", to_value(&cert));
            Ok(if cert.certified() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Probe { probe } => run_probe(probe),
        Command::Scenario { action } => match action {
            ScenarioAction::List { json } => {
                let descriptors = theorems::list_scenarios();
                if json {
                    print_json("scenario-list", to_value(&descriptors));
                } else {
                    for d in &descriptors {
                        println!("{:<12} {}", d.id, d.title);
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
            ScenarioAction::Run { id, params, json } => {
                let overrides = parse_params(&params)?;
                let report = theorems::run_scenario(&id, &overrides)?;
                if json {
                    print_json("scenario", to_value(&report));
                } else {
                    print_scenario_summary(&report);
                }
                Ok(if report.consistent() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
            }
            ScenarioAction::All { json } => {
                let reports = theorems::run_all()?;
                let all_ok = reports.iter().all(|r| r.consistent());
                if json {
                    print_json("scenario-all", to_value(&reports));
                } else {
                    for r in &reports {
                        println!("{:<12} {:?}", r.id, r.overall);
                    }
                }
                Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
            }
        },
        Command::EmitCurve(args) => {
            let map = args.map.build()?;
            if args.radius <= 0.0 || args.radius >= 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "radius {} outside (0, 1)",
                    args.radius
                )));
            }
            let values =
                shearlab::numeric::circle_values_harmonic(&map, args.radius, args.samples);
            println!("t,re,im");
            for (j, w) in values.iter().enumerate() {
                let t = 2.0 * std::f64::consts::PI * j as f64 / args.samples as f64;
                println!("{},{},{}", fmt_sig(t, 10), fmt_sig(w.re, 10), fmt_sig(w.im, 10));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Exact-rational construction path for the maps with rational data.
fn exact_emit(
    map: &str,
    order: usize,
    convolve: Option<(&str, Option<usize>)>,
) -> Result<serde_json::Value, Error> {
    use shearlab::exact::{geometric_exact, ExactSeries};

    let exact_series = |name: &str| -> Result<Option<ExactSeries>, Error> {
        Ok(match AtlasName::parse(name)? {
            AtlasName::Series(atlas::KernelKind::Polylog { m }) => {
                Some(polylog_exact(m, order))
            }
            AtlasName::Series(atlas::KernelKind::GeometricPartial { n }) => {
                Some(geometric_exact(order).partial_sum(n.min(order)).unwrap())
            }
            _ => None,
        })
    };

    let not_exact = |name: &str| {
        Error::InvalidParameter(format!("`{name}` has no exact-rational constructor"))
    };

    if let Some((with, partial)) = convolve {
        let phi = exact_series(with)?.ok_or_else(|| not_exact(with))?;
        if map == "K" {
            let (h, g) = atlas::koebe_exact(order);
            let (mut h, mut g) = (h.hadamard(&phi), g.hadamard(&phi));
            if let Some(p) = partial {
                h = h.partial_sum(p)?;
                g = g.partial_sum(p)?;
            }
            return Ok(serde_json::json!({
                "h": SeriesDoc::from_exact(&h),
                "g": SeriesDoc::from_exact(&g),
            }));
        }
        let f = exact_series(map)?.ok_or_else(|| not_exact(map))?;
        let mut conv = f.hadamard(&phi);
        if let Some(p) = partial {
            conv = conv.partial_sum(p)?;
        }
        return Ok(to_value(&SeriesDoc::from_exact(&conv)));
    }

    if map == "K" {
        let (h, g) = atlas::koebe_exact(order);
        return Ok(serde_json::json!({
            "h": SeriesDoc::from_exact(&h),
            "g": SeriesDoc::from_exact(&g),
        }));
    }
    exact_series(map)?
        .map(|s| to_value(&SeriesDoc::from_exact(&s)))
        .ok_or_else(|| not_exact(map))
}

fn run_probe(probe: ProbeCommand) -> Result<ExitCode, Error> {
    match probe {
        ProbeCommand::ReCondition {
            map,
            grid,
            alpha_angle,
            gamma_angle,
            level,
            no_prefactor,
        } => {
            let grid = grid.resolve()?;
            let f = map.build()?;
            let s = condition_series(
                f.h(),
                Complex64::from_polar(1.0, gamma_angle),
                level,
            )?;
            let prefactor = (!no_prefactor)
                .then(|| Prefactor::squared(Complex64::from_polar(1.0, alpha_angle)));
            let report = re_min_on_grid(&s, prefactor, &grid)?;
            print_json("probe-re-condition", to_value(&report));
            Ok(exit_for(report.verdict == ProbeVerdict::Pass))
        }
        ProbeCommand::Starlike { map, grid, level, alpha } => {
            let grid = grid.resolve()?;
            let f = map.build()?;
            let report = n_starlike_probe(f.h(), level, alpha, &grid)?;
            print_json("probe-starlike", to_value(&report));
            Ok(exit_for(report.verdict == ProbeVerdict::Pass))
        }
        ProbeCommand::Jacobian { map, grid } => {
            let grid = grid.resolve()?;
            let f = map.build()?;
            let report = jacobian_scan(&f, &grid)?;
            print_json("probe-jacobian", to_value(&report));
            Ok(exit_for(report.positive()))
        }
        ProbeCommand::Direction { map, grid, theta, samples, tol } => {
            let grid = grid.resolve()?;
            let f = map.build()?;
            let report = direction_convexity_probe(&f, theta, grid.radii(), samples, tol)?;
            print_json("probe-direction", to_value(&report));
            Ok(exit_for(report.verdict == DirectionVerdict::Pass))
        }
        ProbeCommand::Injectivity { map, radius, samples, min_gap } => {
            let f = map.build()?;
            let report = boundary_injectivity_probe(&f, radius, samples, min_gap)?;
            print_json("probe-injectivity", to_value(&report));
            Ok(exit_for(report.verdict == ProbeVerdict::Pass))
        }
    }
}

fn exit_for(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn parse_params(pairs: &[String]) -> Result<BTreeMap<String, f64>, Error> {
    let mut map = BTreeMap::new();
    for pair in pairs {
        let (name, value) = pair
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("bad --param `{pair}`")))?;
        let value: f64 = value
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad value in `{pair}`")))?;
        map.insert(name.to_string(), value);
    }
    Ok(map)
}

fn print_scenario_summary(report: &theorems::ScenarioReport) {
    println!("{}: {:?}", report.id, report.overall);
    for check in &report.checks {
        let mark = if check.matched() { "ok " } else { "!! " };
        println!(
            "  {mark}[{:?}/{:?}] {} — {}",
            check.role, check.outcome, check.name, check.detail
        );
    }
    for note in &report.notes {
        println!("  note: {note}");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
