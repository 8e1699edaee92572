//! Command-line front end.
//!
//! Every subcommand writes one JSON document (default `<subcommand>.json`)
//! and prints a one-line summary. Failures print a JSON error record on
//! stderr and exit with 2 (parse or input file), 3 (domain) or 4 (resource
//! guard). `acceptance` exits with 1 when a criterion fails.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::acceptance::{self, CAUCHY_CALIBRATION_LEVEL, CRITERIA};
use crate::algebra::{variable_count, Paravector, MAX_M};
use crate::calculus::{is_holomorphic_cliffordian, MvPolynomial, PolynomialDoc, RationalDoc, RationalMvFunction};
use crate::cauchy::{calibration_scan, cauchy_reconstruct, relative_defect, Ball, Convention};
use crate::elliptic::{periodicity_study, Lattice, TruncatedZeta};
use crate::error::{Error, Result};
use crate::sampling::{self, DEFAULT_SEED};
use crate::scalar::{parse_scalar_list, Rational, Scalar, ScalarDoc};
use crate::series::{laurent_fit, taylor_fit};
use crate::solutions::{p_alpha, p_alpha_shifted, s_beta, solution_space_compare, MultiIndex, DEFAULT_MATRIX_LIMIT};

pub const SCHEMA_VERSION: u32 = 1;
pub const THREADS_ENV: &str = "CLIFFORDIAN_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Exact,
    Float,
}

impl ScalarMode {
    fn name(self) -> &'static str {
        match self {
            ScalarMode::Exact => "exact",
            ScalarMode::Float => "float",
        }
    }
}

/// Settings shared by all subcommands. A TOML file with the same field names
/// can be passed through `--config`; flags override it.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub m: Option<usize>,
    pub scalar: Option<ScalarMode>,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn m(&self) -> usize {
        self.m.unwrap_or(1)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    fn validate(&self) -> Result<()> {
        if self.m() > MAX_M {
            return Err(Error::Parse(format!("m = {} is outside 0..={MAX_M}", self.m())));
        }
        if self.threads == Some(0) {
            return Err(Error::Parse("thread count must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(name = "cliffordian", version, about = "Holomorphic Cliffordian functions: exact solutions, integral representation, series and the Weierstrass zeta function")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML file with RunConfig fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Algebra parameter: functions live in R_{0,2m+1}.
    #[arg(long, global = true)]
    pub m: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub scalar: Option<ScalarMode>,
    /// Worker threads (also read from CLIFFORDIAN_THREADS).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Result document path; defaults to `<subcommand>.json`.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polynomial solution P_α.
    Palpha {
        #[arg(long)]
        alpha: MultiIndex,
        /// Expand P_α(x - a) instead.
        #[arg(long)]
        shift: Option<String>,
    },
    /// Singular solution S_β.
    Sbeta {
        #[arg(long)]
        beta: MultiIndex,
    },
    /// Exact test of D Δ^m f = 0 for a serialized function.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Kernel of D Δ^m on polynomials of degree <= d versus the span of P_α e_A.
    SpaceCheck {
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long, default_value_t = DEFAULT_MATRIX_LIMIT)]
        matrix_limit: usize,
    },
    /// Reconstruct P_α(x) from boundary data on a ball.
    CauchyCheck {
        #[arg(long)]
        alpha: MultiIndex,
        #[arg(long)]
        center: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = CAUCHY_CALIBRATION_LEVEL)]
        level: usize,
        #[arg(long, default_value = "mixed")]
        convention: Convention,
        /// Normalization constant; defaults to m + 1.
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Measure λ under every measure convention.
    Calibrate {
        #[arg(long, default_value_t = CAUCHY_CALIBRATION_LEVEL)]
        level: usize,
        /// Test functions are P_α with 1 <= |α| <= max-order.
        #[arg(long, default_value_t = 3)]
        max_order: u32,
        /// Semicolon-separated interior points.
        #[arg(long)]
        points: Option<String>,
    },
    /// Expand a polynomial solution as Σ P_α(x - a) c_α.
    TaylorFit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        center: Option<String>,
        /// Largest degree; defaults to the degree of the input.
        #[arg(long)]
        dmax: Option<u32>,
    },
    /// Expand a solution with a pole at 0 as Σ P_α c_α + Σ S_β d_β.
    LaurentFit {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        dmax: u32,
        #[arg(long, default_value_t = 3)]
        bmax: u32,
    },
    /// Truncated Weierstrass zeta function or one of its partial derivatives.
    Zeta {
        /// JSON or TOML file with the periods; defaults to ω_j = e_j.
        #[arg(long)]
        periods: Option<PathBuf>,
        #[arg(long)]
        x: String,
        #[arg(long)]
        radius: f64,
        #[arg(long, default_value_t = 0)]
        axis: usize,
        #[arg(long, default_value_t = 0)]
        order: u32,
    },
    /// Defect of ∂^order ζ_R under x -> x + 2ω_j at several radii.
    ZetaPeriodicity {
        #[arg(long)]
        periods: Option<PathBuf>,
        #[arg(long)]
        x: String,
        /// Comma-separated truncation radii.
        #[arg(long, default_value = "10.1,20.2")]
        radii: String,
        #[arg(long, default_value_t = 4)]
        order: u32,
        #[arg(long, default_value_t = 0)]
        period_index: usize,
        #[arg(long, default_value_t = 0)]
        axis: usize,
    },
    /// Run the acceptance criteria.
    Acceptance {
        /// Comma-separated criterion numbers; all by default.
        #[arg(long)]
        only: Option<String>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Palpha { .. } => "palpha",
            Command::Sbeta { .. } => "sbeta",
            Command::Verify { .. } => "verify",
            Command::SpaceCheck { .. } => "space-check",
            Command::CauchyCheck { .. } => "cauchy-check",
            Command::Calibrate { .. } => "calibrate",
            Command::TaylorFit { .. } => "taylor-fit",
            Command::LaurentFit { .. } => "laurent-fit",
            Command::Zeta { .. } => "zeta",
            Command::ZetaPeriodicity { .. } => "zeta-periodicity",
            Command::Acceptance { .. } => "acceptance",
        }
    }
}

/// Machine-readable error category and exit code.
pub fn error_category(e: &Error) -> (&'static str, i32) {
    match e {
        Error::Parse(_) | Error::Io(_) => ("parse", 2),
        Error::ResourceLimit(_) => ("resource", 4),
        _ => ("domain", 3),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::SingularPoint(_) => "singular_point",
        Error::InvalidMultiIndex(_) => "invalid_multi_index",
        Error::AxisOutOfRange { .. } => "axis_out_of_range",
        Error::Divergence(_) => "divergence",
        Error::DegenerateLattice(_) => "degenerate_lattice",
        Error::NotInterior(_) => "not_interior",
        Error::InvalidInput(_) => "invalid_input",
        Error::Unsupported(_) => "unsupported",
        Error::CompletenessViolation(_) => "completeness_violation",
        Error::ResourceLimit(_) => "resource_limit",
        Error::Parse(_) => "parse",
        Error::Io(_) => "io",
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn dispatch<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let command = cli.command.name();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            let (category, code) = error_category(&e);
            let record = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "error": { "category": category, "kind": error_kind(&e), "message": e.to_string() },
            });
            eprintln!("{record}");
            code
        }
    }
}

fn resolve_config(global: &GlobalArgs) -> Result<RunConfig> {
    let mut config = match &global.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{THREADS_ENV}={v:?} is not a thread count")))?;
        config.threads = Some(n);
    }
    config.m = global.m.or(config.m);
    config.scalar = global.scalar.or(config.scalar);
    config.threads = global.threads.or(config.threads);
    config.seed = global.seed.or(config.seed);
    config.output = global.output.clone().or(config.output);
    config.validate()?;
    Ok(config)
}

/// A subcommand result before the envelope fields are added.
struct Outcome {
    document: Value,
    summary: String,
    scalar: ScalarMode,
    exit_code: i32,
}

impl Outcome {
    fn new(document: Value, summary: String, scalar: ScalarMode) -> Self {
        Outcome {
            document,
            summary,
            scalar,
            exit_code: 0,
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let config = resolve_config(&cli.global)?;
    let name = cli.command.name();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Error::ResourceLimit(format!("thread pool: {e}")))?;
    let outcome = pool.install(|| run_command(&cli.command, &config))?;

    let mut doc = Map::new();
    doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
    doc.insert("command".into(), json!(name));
    doc.insert("m".into(), json!(config.m()));
    doc.insert("scalar".into(), json!(outcome.scalar.name()));
    doc.insert("seed".into(), json!(config.seed()));
    match outcome.document {
        Value::Object(fields) => doc.extend(fields),
        other => {
            doc.insert("result".into(), other);
        }
    }
    let path = config.output.clone().unwrap_or_else(|| PathBuf::from(format!("{name}.json")));
    let mut text = serde_json::to_string_pretty(&Value::Object(doc))?;
    text.push('\n');
    fs::write(&path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    println!("{name}: {}", outcome.summary);
    println!("wrote {}", path.display());
    Ok(outcome.exit_code)
}

fn parse_paravector<T: Scalar>(s: &str, m: usize) -> Result<Paravector<T>> {
    let comps = parse_scalar_list::<T>(s)?;
    if comps.len() != variable_count(m) {
        return Err(Error::DimensionMismatch(format!(
            "{s:?} has {} components, m = {m} needs {}",
            comps.len(),
            variable_count(m)
        )));
    }
    Paravector::new(comps)
}

fn optional_paravector<T: Scalar>(s: &Option<String>, m: usize) -> Result<Paravector<T>> {
    match s {
        Some(s) => parse_paravector(s, m),
        None => Ok(Paravector::zero(m)),
    }
}

/// A function read from a document written by `palpha`, `sbeta` or by hand.
#[derive(Clone, Debug, PartialEq)]
pub enum LoadedFunction {
    Polynomial(MvPolynomial<Rational>),
    Rational(RationalMvFunction<Rational>),
}

impl LoadedFunction {
    pub fn m(&self) -> usize {
        match self {
            LoadedFunction::Polynomial(p) => p.m(),
            LoadedFunction::Rational(f) => f.m(),
        }
    }

    pub fn into_rational(self) -> RationalMvFunction<Rational> {
        match self {
            LoadedFunction::Polynomial(p) => RationalMvFunction::from_polynomial(p),
            LoadedFunction::Rational(f) => f,
        }
    }
}

/// Accepts a bare polynomial or rational-function document, or one nested
/// under a `polynomial` or `function` key.
pub fn load_function(path: &Path) -> Result<LoadedFunction> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)?;
    let inner = value
        .get("polynomial")
        .or_else(|| value.get("function"))
        .unwrap_or(&value)
        .clone();
    if let Ok(doc) = serde_json::from_value::<PolynomialDoc>(inner.clone()) {
        return Ok(LoadedFunction::Polynomial(MvPolynomial::from_doc(&doc)?));
    }
    let doc: RationalDoc = serde_json::from_value(inner)
        .map_err(|e| Error::Parse(format!("{}: not a polynomial or rational function document: {e}", path.display())))?;
    Ok(LoadedFunction::Rational(RationalMvFunction::from_doc(&doc)?))
}

fn check_m(config: &RunConfig, found: usize) -> Result<()> {
    match config.m {
        Some(m) if m != found => Err(Error::DimensionMismatch(format!("input has m = {found}, config has m = {m}"))),
        _ => Ok(()),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PeriodsDoc {
    Table { periods: Vec<Vec<ScalarDoc>> },
    List(Vec<Vec<ScalarDoc>>),
}

/// Periods as rows of scalars, e.g. `{"periods": [["1","0","0","0"], ...]}`
/// in JSON or `periods = [["1","0","0","0"], ...]` in TOML.
pub fn load_lattice<T: Scalar>(path: &Path) -> Result<Lattice<T>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let doc: PeriodsDoc = if path.extension().is_some_and(|e| e == "toml") {
        toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?
    } else {
        serde_json::from_str(&text)?
    };
    let rows = match doc {
        PeriodsDoc::Table { periods } | PeriodsDoc::List(periods) => periods,
    };
    let periods = rows
        .iter()
        .map(|row| Paravector::new(row.iter().map(T::from_doc).collect::<Result<_>>()?))
        .collect::<Result<Vec<_>>>()?;
    Lattice::new(periods)
}

fn lattice_for<T: Scalar>(periods: &Option<PathBuf>, config: &RunConfig) -> Result<Lattice<T>> {
    match periods {
        Some(path) => {
            let lattice = load_lattice(path)?;
            check_m(config, lattice.m())?;
            Ok(lattice)
        }
        None => Ok(Lattice::cubic(config.m())),
    }
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| Error::Parse(format!("bad {what} entry {p:?}"))))
        .collect()
}

fn run_command(command: &Command, config: &RunConfig) -> Result<Outcome> {
    let m = config.m();
    match command {
        Command::Palpha { alpha, shift } => {
            let p = match shift {
                Some(_) => p_alpha_shifted::<Rational>(alpha, &optional_paravector(shift, m)?)?,
                None => p_alpha::<Rational>(alpha, m)?,
            };
            let holomorphic = is_holomorphic_cliffordian(&p);
            let scalar = config.scalar.unwrap_or(ScalarMode::Exact);
            let doc = match scalar {
                ScalarMode::Exact => p.to_doc(),
                ScalarMode::Float => p.to_float().to_doc(),
            };
            Ok(Outcome::new(
                json!({ "alpha": alpha, "degree": p.degree(), "polynomial": doc, "holomorphic": holomorphic }),
                format!("P{alpha} = {p}"),
                scalar,
            ))
        }
        Command::Sbeta { beta } => {
            let f = s_beta::<Rational>(beta, m)?;
            let holomorphic = is_holomorphic_cliffordian(&f);
            let scalar = config.scalar.unwrap_or(ScalarMode::Exact);
            let doc = match scalar {
                ScalarMode::Exact => f.to_doc(),
                ScalarMode::Float => f.to_float().to_doc(),
            };
            Ok(Outcome::new(
                json!({ "beta": beta, "function": doc, "holomorphic": holomorphic }),
                format!("S{beta} = {f}"),
                scalar,
            ))
        }
        Command::Verify { input } => {
            let f = load_function(input)?;
            check_m(config, f.m())?;
            let (kind, zero) = match &f {
                LoadedFunction::Polynomial(p) => ("polynomial", is_holomorphic_cliffordian(p)),
                LoadedFunction::Rational(r) => ("rational", is_holomorphic_cliffordian(r)),
            };
            Ok(Outcome::new(
                json!({ "input": input, "kind": kind, "residual_zero": zero }),
                format!("residual_zero = {zero}"),
                ScalarMode::Exact,
            ))
        }
        Command::SpaceCheck { d, matrix_limit } => {
            let report = solution_space_compare(*d, m, *matrix_limit)?;
            let summary = format!(
                "kernel_dim = {}, span_rank = {}, spans_equal = {}",
                report.kernel_dim, report.span_rank, report.spans_equal
            );
            Ok(Outcome::new(serde_json::to_value(&report)?, summary, ScalarMode::Exact))
        }
        Command::CauchyCheck {
            alpha,
            center,
            radius,
            point,
            level,
            convention,
            lambda,
        } => {
            let ball = Ball::new(optional_paravector(center, m)?, *radius)?;
            let x = parse_paravector::<f64>(point, m)?;
            let f = p_alpha::<Rational>(alpha, m)?;
            let rec = cauchy_reconstruct(&f, &ball, &x, *level, *convention)?;
            let (lambda, source) = match lambda {
                Some(l) => (*l, "given"),
                None => ((m + 1) as f64, "predicted"),
            };
            let defect = relative_defect(&rec.value, &rec.expected, lambda);
            Ok(Outcome::new(
                json!({
                    "alpha": alpha,
                    "point": x,
                    "value": rec.value.to_doc(),
                    "expected": rec.expected.to_doc(),
                    "defect": defect,
                    "lambda": lambda,
                    "lambda_source": source,
                    "level": rec.level,
                    "nodes": rec.nodes,
                    "convention": convention,
                }),
                format!("defect {defect:.3e} with lambda {lambda} at level {level} ({} nodes)", rec.nodes),
                ScalarMode::Float,
            ))
        }
        Command::Calibrate { level, max_order, points } => {
            let functions = acceptance::p_alpha_family(m, *max_order)?;
            let points = match points {
                Some(list) => list.split(';').map(|p| parse_paravector::<f64>(p, m)).collect::<Result<Vec<_>>>()?,
                None if m == 1 => acceptance::cauchy_test_points(),
                None => {
                    let mut rng = sampling::rng(config.seed());
                    (0..5).map(|_| sampling::float_paravector(&mut rng, m, 0.25)).collect()
                }
            };
            let report = calibration_scan(&functions, &points, &Ball::unit(m), *level, &Convention::ALL)?;
            let summary = match (report.accepted, report.lambda) {
                (Some(c), Some(l)) => format!("accepted convention {c}, lambda = {l:.8}"),
                _ => "no convention accepted".into(),
            };
            Ok(Outcome::new(serde_json::to_value(&report)?, summary, ScalarMode::Float))
        }
        Command::TaylorFit { input, center, dmax } => {
            let f = match load_function(input)? {
                LoadedFunction::Polynomial(p) => p,
                LoadedFunction::Rational(r) if r.terms().is_empty() => r.polynomial_part(),
                LoadedFunction::Rational(_) => {
                    return Err(Error::InvalidInput("taylor-fit needs a polynomial input".into()));
                }
            };
            check_m(config, f.m())?;
            let a = optional_paravector::<Rational>(center, f.m())?;
            let fit = taylor_fit(&f, &a, dmax.unwrap_or(f.degree().unwrap_or(0)))?;
            let summary = format!("{} coefficients, residual_zero = {}", fit.coefficients.len(), fit.residual_zero);
            Ok(Outcome::new(serde_json::to_value(&fit)?, summary, ScalarMode::Exact))
        }
        Command::LaurentFit { input, dmax, bmax } => {
            let f = load_function(input)?.into_rational();
            check_m(config, f.m())?;
            let fit = laurent_fit(&f, *dmax, *bmax)?;
            let summary = format!(
                "{} polynomial and {} singular coefficients, residual_zero = {}",
                fit.polynomial_coefficients.len(),
                fit.singular_coefficients.len(),
                fit.residual_zero
            );
            Ok(Outcome::new(serde_json::to_value(&fit)?, summary, ScalarMode::Exact))
        }
        Command::Zeta {
            periods,
            x,
            radius,
            axis,
            order,
        } => match config.scalar.unwrap_or(ScalarMode::Float) {
            ScalarMode::Float => zeta_outcome::<f64>(periods, x, *radius, *axis, *order, config, ScalarMode::Float),
            ScalarMode::Exact => zeta_outcome::<Rational>(periods, x, *radius, *axis, *order, config, ScalarMode::Exact),
        },
        Command::ZetaPeriodicity {
            periods,
            x,
            radii,
            order,
            period_index,
            axis,
        } => {
            let lattice = lattice_for::<f64>(periods, config)?;
            let x = parse_paravector::<f64>(x, lattice.m())?;
            let radii: Vec<f64> = parse_list(radii, "radius")?;
            let study = periodicity_study(&x, &lattice, &radii, *period_index, *axis, *order)?;
            let defect = *study.defects.last().expect("at least one radius");
            let mut doc = serde_json::to_value(&study)?;
            doc["defect"] = json!(defect);
            doc["decay_ratio"] = json!(study.decay_ratios.first());
            let summary = format!("defects {:?}, ratios {:?}", study.defects, study.decay_ratios);
            Ok(Outcome::new(doc, summary, ScalarMode::Float))
        }
        Command::Acceptance { only } => {
            let ids: Vec<u8> = match only {
                Some(list) => parse_list(list, "criterion")?,
                None => CRITERIA.iter().map(|(id, _)| *id).collect(),
            };
            let mut outcomes = Vec::with_capacity(ids.len());
            for id in ids {
                let outcome = acceptance::run(id, config.seed())?;
                println!("{outcome}");
                outcomes.push(outcome);
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            let all = passed == outcomes.len();
            let mut out = Outcome::new(
                json!({ "passed_all": all, "criteria": outcomes }),
                format!("{passed}/{} criteria passed", outcomes.len()),
                ScalarMode::Exact,
            );
            out.exit_code = if all { 0 } else { 1 };
            Ok(out)
        }
    }
}

fn zeta_outcome<T: Scalar>(
    periods: &Option<PathBuf>,
    x: &str,
    radius: f64,
    axis: usize,
    order: u32,
    config: &RunConfig,
    scalar: ScalarMode,
) -> Result<Outcome> {
    let lattice = lattice_for::<T>(periods, config)?;
    let x = parse_paravector::<T>(x, lattice.m())?;
    let z = TruncatedZeta::new(lattice, radius)?.derivative(&x, axis, order)?;
    let summary = format!(
        "{} lattice terms, |value| = {:.6e}, tail estimate {:.3e}",
        z.terms,
        z.value.norm(),
        z.tail_estimate
    );
    Ok(Outcome::new(
        json!({
            "x": x,
            "value": z.value.to_doc(),
            "tail_estimate": z.tail_estimate,
            "radius": z.radius,
            "terms": z.terms,
            "axis": z.axis,
            "order": z.order,
        }),
        summary,
        scalar,
    ))
}
