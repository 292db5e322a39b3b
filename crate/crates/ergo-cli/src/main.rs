//! `ergo` command-line frontend: parse a matrix file, dispatch to the
//! library, and emit a deterministic JSON report on stdout. Progress and
//! wall time go to stderr; stdout is byte-stable for fixed inputs and seeds.
//!
//! Exit codes: 0 success, 1 conjecture violations found, 2 validation or
//! parse error, 3 precondition failure (e.g. tau = 1 for the M-system).

mod io;
mod report;

use std::collections::BTreeMap;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use ergo::{
    self as lib, limits, CoefficientReport, JordanSelection, LimitStudy, Matrix, NormKind,
    StochasticMatrix, Variant,
};
use report::Json;

const EXIT_VIOLATIONS: i32 = 1;
const EXIT_VALIDATION: i32 = 2;
const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser)]
#[command(
    name = "ergo",
    version,
    about = "Ergodicity coefficients, spectral bounds, and stationary vectors"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one ergodicity coefficient of a matrix.
    Coeff(CoeffArgs),
    /// Solve for the stationary vector of a column-stochastic matrix.
    Stationary(StationaryArgs),
    /// Tabulate phi(W, A^k)^(1/k) or tau_{n-1}(S^k) against its limit.
    Limit(LimitArgs),
    /// Fuzz the subset-coefficient eigenvalue conjecture.
    Conjecture(ConjectureArgs),
    /// Report structural predicates and the |lambda_2| bound for a matrix.
    Check(CheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoefName {
    #[value(name = "tau_n1")]
    TauN1,
    #[value(name = "tau_m")]
    TauM,
    #[value(name = "tau_m_min")]
    TauMMin,
    #[value(name = "tau_haviv")]
    TauHaviv,
    Phi,
    Mu,
    #[value(name = "tau_vecnorm")]
    TauVecnorm,
}

#[derive(Args)]
struct CoeffArgs {
    /// Matrix file (.mtx, .csv, or .json).
    matrix: String,
    /// Coefficient to compute.
    #[arg(long, value_enum)]
    coef: CoefName,
    /// Norm for phi/mu/tau_vecnorm: one, two, inf, box, box:one, box:two, box:inf.
    #[arg(long, default_value = "two")]
    norm: String,
    /// Subset size for tau_m / tau_m_min.
    #[arg(long)]
    m: Option<usize>,
    /// Vector file: left eigenvector y for tau_haviv, Perron vector x for
    /// mu/tau_vecnorm (computed by power iteration when omitted).
    #[arg(long)]
    y: Option<String>,
    /// Invariant-basis file W for phi.
    #[arg(long)]
    w: Option<String>,
    /// Monte Carlo sample budget for norms without an exact evaluation.
    #[arg(long, default_value_t = 200_000)]
    budget: u64,
    /// Seed for any sampling fallback.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StationaryMethod {
    Msystem,
    Power,
    Both,
}

#[derive(Args)]
struct StationaryArgs {
    matrix: String,
    #[arg(long, value_enum, default_value = "msystem")]
    method: StationaryMethod,
    /// Residual tolerance for power iteration.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StudyName {
    #[value(name = "tau_n1")]
    TauN1,
    Phi,
}

#[derive(Args)]
struct LimitArgs {
    matrix: String,
    #[arg(long, value_enum)]
    study: StudyName,
    /// Norm for the phi study.
    #[arg(long, default_value = "two")]
    norm: String,
    /// Invariant-basis file W for the phi study.
    #[arg(long)]
    w: Option<String>,
    /// Largest power in the geometric schedule 1, 2, 4, ...
    #[arg(long, default_value_t = 256)]
    kmax: usize,
    /// Convergence tolerance for the root sequence.
    #[arg(long, default_value_t = limits::DEFAULT_LIMIT_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Max,
    Min,
}

#[derive(Args)]
struct ConjectureArgs {
    /// Matrix dimension for the random trials (2..=10).
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "max")]
    variant: VariantArg,
    /// Matrix file to evaluate as trial 0 before the random trials.
    #[arg(long)]
    inject: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    matrix: String,
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let (result, command_echo) = match cli.cmd {
        Cmd::Coeff(a) => (cmd_coeff(&a), "coeff"),
        Cmd::Stationary(a) => (cmd_stationary(&a), "stationary"),
        Cmd::Limit(a) => (cmd_limit(&a), "limit"),
        Cmd::Conjecture(a) => (cmd_conjecture(&a), "conjecture"),
        Cmd::Check(a) => (cmd_check(&a), "check"),
    };
    let code = match result {
        Ok((body, code)) => {
            let mut top = Json::obj();
            top.insert("command".into(), Json::Str(command_echo.into()));
            top.insert(
                "version".into(),
                Json::Str(env!("CARGO_PKG_VERSION").into()),
            );
            for (k, v) in body {
                top.insert(k, v);
            }
            println!("{}", Json::Obj(top).to_string());
            code
        }
        Err(CliError { message, code }) => {
            eprintln!("error: {message}");
            code
        }
    };
    eprintln!(
        "wall time: {:.3} s",
        started.elapsed().as_secs_f64()
    );
    std::process::exit(code);
}

struct CliError {
    message: String,
    code: i32,
}

impl From<lib::Error> for CliError {
    fn from(e: lib::Error) -> Self {
        use lib::Error::*;
        let code = match e {
            TauIsOne
            | ResidualGate { .. }
            | NonPositiveVector { .. }
            | NotScaledStochastic
            | PowerNonConvergence { .. }
            | NonConvergence { .. } => EXIT_PRECONDITION,
            _ => EXIT_VALIDATION,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

fn invalid(message: impl Into<String>) -> CliError {
    CliError {
        message: message.into(),
        code: EXIT_VALIDATION,
    }
}

type CmdResult = Result<(BTreeMap<String, Json>, i32), CliError>;

// ---------------------------------------------------------------------------
// Shared ingestion and serialization helpers.
// ---------------------------------------------------------------------------

fn load_matrix(path: &str) -> Result<(Matrix, Json), CliError> {
    let (m, format, bytes) = io::read_matrix(path).map_err(invalid)?;
    let mut meta = Json::obj();
    meta.insert("path".into(), Json::Str(path.into()));
    meta.insert("format".into(), Json::Str(format.label().into()));
    meta.insert("sha256".into(), Json::Str(sha256_hex(&bytes)));
    meta.insert("rows".into(), Json::Int(m.rows() as i64));
    meta.insert("cols".into(), Json::Int(m.cols() as i64));
    Ok((m, Json::Obj(meta)))
}

fn load_stochastic(path: &str) -> Result<(StochasticMatrix, Json), CliError> {
    let (m, meta) = load_matrix(path)?;
    Ok((StochasticMatrix::new(m)?, meta))
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

fn parse_norm(text: &str) -> Result<NormKind, CliError> {
    use ergo::norms::InnerNorm;
    match text.to_ascii_lowercase().as_str() {
        "one" => Ok(NormKind::One),
        "two" => Ok(NormKind::Two),
        "inf" => Ok(NormKind::Inf),
        // The box norm defaults to the Euclidean inner norm.
        "box" | "box:two" => Ok(NormKind::Box(InnerNorm::Two)),
        "box:one" => Ok(NormKind::Box(InnerNorm::One)),
        "box:inf" => Ok(NormKind::Box(InnerNorm::Inf)),
        other => Err(invalid(format!(
            "unknown norm {other:?}; expected one, two, inf, box[:one|:two|:inf]"
        ))),
    }
}

fn coefficient_json(r: &CoefficientReport) -> Json {
    let mut m = Json::obj();
    m.insert("name".into(), Json::Str(r.name.into()));
    m.insert("value".into(), Json::Float(r.value));
    match r.norm {
        Some(kind) => m.insert("norm".into(), Json::Str(kind.label().into())),
        None => None,
    };
    m.insert("method".into(), Json::Str(r.method.label().into()));
    m.insert("samples".into(), Json::Int(r.samples as i64));
    m.insert("certified_exact".into(), Json::Bool(r.certified_exact));
    Json::Obj(m)
}

fn study_json(s: &LimitStudy) -> Json {
    let mut m = Json::obj();
    m.insert(
        "ks".into(),
        Json::Arr(s.ks.iter().map(|&k| Json::Int(k as i64)).collect()),
    );
    m.insert("values".into(), Json::floats(&s.values));
    m.insert(
        "zero_flags".into(),
        Json::Arr(s.zero_flags.iter().map(|&b| Json::Bool(b)).collect()),
    );
    m.insert("target".into(), Json::Float(s.target));
    m.insert("final_error".into(), Json::Float(s.final_error));
    m.insert("converged".into(), Json::Bool(s.converged));
    m.insert("tolerance".into(), Json::Float(s.tolerance));
    Json::Obj(m)
}

fn matrix_json(m: &Matrix) -> Json {
    let mut obj = Json::obj();
    obj.insert("rows".into(), Json::Int(m.rows() as i64));
    obj.insert("cols".into(), Json::Int(m.cols() as i64));
    let mut data = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let z = m.get(i, j);
            if m.is_real() {
                data.push(Json::Float(z.re));
            } else {
                data.push(Json::Arr(vec![Json::Float(z.re), Json::Float(z.im)]));
            }
        }
    }
    obj.insert("data".into(), Json::Arr(data));
    Json::Obj(obj)
}

fn perron_right(a: &Matrix) -> Result<Vec<f64>, CliError> {
    Ok(ergo::power::dominant_right_eigenvector(a, 1e-13, 200_000)?)
}

// ---------------------------------------------------------------------------
// coeff
// ---------------------------------------------------------------------------

fn cmd_coeff(args: &CoeffArgs) -> CmdResult {
    let (a, input_meta) = load_matrix(&args.matrix)?;
    let kind = parse_norm(&args.norm)?;
    let mut body = Json::obj();
    body.insert("input".into(), input_meta);
    body.insert("seed".into(), Json::Int(args.seed as i64));

    let need_m = || {
        args.m
            .ok_or_else(|| invalid("--m is required for tau_m / tau_m_min"))
    };
    let result = match args.coef {
        CoefName::TauN1 => {
            let s = StochasticMatrix::new(a)?;
            scalar_report("tau_n1", lib::tau_n1(&s))
        }
        CoefName::TauM => {
            let s = StochasticMatrix::new(a)?;
            scalar_report("tau_m", lib::tau_m(&s, need_m()?)?)
        }
        CoefName::TauMMin => {
            let s = StochasticMatrix::new(a)?;
            scalar_report("tau_m_min", lib::tau_m_min_variant(&s, need_m()?)?)
        }
        CoefName::TauHaviv => {
            let y = match &args.y {
                Some(path) => io::read_vector(path).map_err(invalid)?,
                None => {
                    let mut y = ergo::power::dominant_left_eigenvector(&a, 1e-13, 200_000)?;
                    let scale: f64 = y.iter().sum();
                    y.iter_mut().for_each(|v| *v /= scale);
                    y
                }
            };
            scalar_report("tau_haviv", lib::tau_haviv(&a, &y)?)
        }
        CoefName::Phi => {
            let w_path = args
                .w
                .as_ref()
                .ok_or_else(|| invalid("--w is required for phi"))?;
            let (w, _) = load_matrix(w_path)?;
            let sel = JordanSelection::from_invariant_basis(&a, w)?;
            coefficient_json(&lib::phi(&sel, &a, kind, args.budget, args.seed)?)
        }
        CoefName::Mu => {
            let x = vector_or_perron(&args.y, &a)?;
            coefficient_json(&lib::mu(&x, &a, kind, args.budget, args.seed)?)
        }
        CoefName::TauVecnorm => {
            let x = vector_or_perron(&args.y, &a)?;
            coefficient_json(&lib::tau_vecnorm(&x, &a, kind, args.budget, args.seed)?)
        }
    };
    body.insert("coefficient".into(), result);
    Ok((body, 0))
}

fn vector_or_perron(path: &Option<String>, a: &Matrix) -> Result<Vec<f64>, CliError> {
    match path {
        Some(p) => io::read_vector(p).map_err(invalid),
        None => perron_right(a),
    }
}

fn scalar_report(name: &str, value: f64) -> Json {
    let mut m = Json::obj();
    m.insert("name".into(), Json::Str(name.into()));
    m.insert("value".into(), Json::Float(value));
    m.insert("method".into(), Json::Str("closed_form".into()));
    m.insert("certified_exact".into(), Json::Bool(true));
    Json::Obj(m)
}

// ---------------------------------------------------------------------------
// stationary
// ---------------------------------------------------------------------------

fn cmd_stationary(args: &StationaryArgs) -> CmdResult {
    let (s, input_meta) = load_stochastic(&args.matrix)?;
    let mut body = Json::obj();
    body.insert("input".into(), input_meta);
    body.insert("tau_n1".into(), Json::Float(lib::tau_n1(&s)));

    let mut msystem: Option<Vec<f64>> = None;
    let mut power: Option<Vec<f64>> = None;
    if matches!(args.method, StationaryMethod::Msystem | StationaryMethod::Both) {
        let x = lib::stationary_via_msystem(&s)?;
        let mut entry = Json::obj();
        entry.insert("x".into(), Json::floats(&x));
        entry.insert("residual_l1".into(), Json::Float(fixed_residual(&s, &x)));
        body.insert("msystem".into(), Json::Obj(entry));
        msystem = Some(x);
    }
    if matches!(args.method, StationaryMethod::Power | StationaryMethod::Both) {
        let x = lib::stationary_via_power(&s, args.tol, 1_000_000)?;
        let mut entry = Json::obj();
        entry.insert("x".into(), Json::floats(&x));
        entry.insert("residual_l1".into(), Json::Float(fixed_residual(&s, &x)));
        body.insert("power".into(), Json::Obj(entry));
        power = Some(x);
    }
    if let (Some(a), Some(b)) = (&msystem, &power) {
        let gap: f64 = a.iter().zip(b).map(|(u, v)| (u - v).abs()).sum();
        body.insert("discrepancy_l1".into(), Json::Float(gap));
    }
    Ok((body, 0))
}

/// ||Sx - x||_1 for a candidate fixed vector.
fn fixed_residual(s: &StochasticMatrix, x: &[f64]) -> f64 {
    let n = s.n();
    let mut r = 0.0;
    for i in 0..n {
        let mut v = 0.0;
        for j in 0..n {
            v += s.entry(i, j) * x[j];
        }
        r += (v - x[i]).abs();
    }
    r
}

// ---------------------------------------------------------------------------
// limit
// ---------------------------------------------------------------------------

fn cmd_limit(args: &LimitArgs) -> CmdResult {
    let (a, input_meta) = load_matrix(&args.matrix)?;
    if args.kmax == 0 {
        return Err(invalid("--kmax must be at least 1"));
    }
    let mut ks: Vec<usize> = limits::default_ks()
        .into_iter()
        .filter(|&k| k <= args.kmax)
        .collect();
    if ks.last() != Some(&args.kmax) {
        ks.push(args.kmax);
    }
    let study = match args.study {
        StudyName::TauN1 => {
            let s = StochasticMatrix::new(a)?;
            limits::limit_study_tau_n1(&s, &ks, args.tol)?
        }
        StudyName::Phi => {
            let kind = parse_norm(&args.norm)?;
            let w_path = args
                .w
                .as_ref()
                .ok_or_else(|| invalid("--w is required for the phi study"))?;
            let (w, _) = load_matrix(w_path)?;
            let sel = JordanSelection::from_invariant_basis(&a, w)?;
            limits::limit_study_phi(&sel, &a, kind, &ks, args.tol)?
        }
    };
    let mut body = Json::obj();
    body.insert("input".into(), input_meta);
    body.insert(
        "study".into(),
        Json::Str(
            match args.study {
                StudyName::TauN1 => "tau_n1",
                StudyName::Phi => "phi",
            }
            .into(),
        ),
    );
    body.insert("table".into(), study_json(&study));
    Ok((body, 0))
}

// ---------------------------------------------------------------------------
// conjecture
// ---------------------------------------------------------------------------

fn cmd_conjecture(args: &ConjectureArgs) -> CmdResult {
    let variant = match args.variant {
        VariantArg::Max => Variant::Max,
        VariantArg::Min => Variant::Min,
    };
    let mut body = Json::obj();
    body.insert("seed".into(), Json::Int(args.seed as i64));
    body.insert("n".into(), Json::Int(args.n as i64));
    body.insert("trials".into(), Json::Int(args.trials as i64));
    body.insert("variant".into(), Json::Str(variant.label().into()));

    let injected = match &args.inject {
        Some(path) => {
            let (s, meta) = load_stochastic(path)?;
            body.insert("input".into(), meta);
            Some(s)
        }
        None => None,
    };
    let findings =
        lib::fuzz_conjecture(args.n, args.trials, args.seed, variant, injected.as_ref())?;
    let violations = findings.iter().filter(|f| f.violated).count();
    body.insert("findings_total".into(), Json::Int(findings.len() as i64));
    body.insert("violations".into(), Json::Int(violations as i64));
    let listed: Vec<Json> = findings
        .iter()
        .map(|f| {
            let mut m = Json::obj();
            m.insert("trial".into(), Json::Int(f.trial as i64));
            m.insert("seed".into(), Json::Int(f.seed as i64));
            m.insert("n".into(), Json::Int(f.n as i64));
            m.insert("k".into(), Json::Int(f.k as i64));
            m.insert("lambda_k_modulus".into(), Json::Float(f.lambda_k_modulus));
            m.insert("tau_value".into(), Json::Float(f.tau_value));
            m.insert("variant".into(), Json::Str(f.variant.label().into()));
            m.insert("violated".into(), Json::Bool(f.violated));
            if f.violated {
                // Keep reports compact: the witness matrix only for hits.
                m.insert("matrix".into(), matrix_json(f.matrix.matrix()));
            }
            Json::Obj(m)
        })
        .collect();
    body.insert("findings".into(), Json::Arr(listed));
    let code = if violations > 0 { EXIT_VIOLATIONS } else { 0 };
    Ok((body, code))
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

fn cmd_check(args: &CheckArgs) -> CmdResult {
    let (a, input_meta) = load_matrix(&args.matrix)?;
    a.require_square()?;
    a.require_real_nonnegative()?;
    let mut body = Json::obj();
    body.insert("input".into(), input_meta);
    body.insert(
        "irreducible".into(),
        Json::Bool(ergo::graph::is_irreducible(&a)?),
    );
    body.insert(
        "primitive".into(),
        Json::Bool(ergo::graph::is_primitive(&a)?),
    );
    match StochasticMatrix::new(a) {
        Ok(s) => {
            body.insert("stochastic".into(), Json::Bool(true));
            body.insert("max_row_min".into(), Json::Float(s.max_row_min()));
            body.insert("tau_n1".into(), Json::Float(lib::tau_n1(&s)));
            let bound = lib::check_bound_lambda2(&s)?;
            let mut b = Json::obj();
            b.insert("lambda2".into(), Json::Float(bound.lambda2));
            b.insert("tau_n1".into(), Json::Float(bound.tau_n1));
            b.insert("holds".into(), Json::Bool(bound.bound_holds));
            body.insert("lambda2_bound".into(), Json::Obj(b));
            let prim = lib::primitivity_corollary_check(&s)?;
            let mut p = Json::obj();
            p.insert("irreducible".into(), Json::Bool(prim.irreducible));
            p.insert(
                "positive_row_min".into(),
                Json::Bool(prim.positive_row_min),
            );
            p.insert("primitive".into(), Json::Bool(prim.primitive));
            p.insert(
                "corollary_respected".into(),
                Json::Bool(prim.corollary_respected),
            );
            body.insert("primitivity_corollary".into(), Json::Obj(p));
        }
        Err(_) => {
            body.insert("stochastic".into(), Json::Bool(false));
        }
    }
    Ok((body, 0))
}
