//! `cocycle`: evaluate kernel formulas and run verification suites.
//!
//! Exit codes: 0 on success, 1 when a suite fails or an input is rejected as
//! non-generic, 2 on usage errors.

mod inputs;
mod render;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use render::Format;
use sl2_cocycles::harness::{self, Mutation, SuiteInfo, VerificationReport};
use sl2_cocycles::kernel::{beta_a_closed, beta_n_closed, omega_a, omega_n};
use sl2_cocycles::sampling::SamplerConfig;
use sl2_cocycles::sl2::{cross_ratio, project_a, project_n};
use sl2_cocycles::spaces::{generic_pair_of_pairs, generic_vec_pair, GenericityConfig};
use sl2_cocycles::{CocycleError, Field, PairGA, Vec2};

#[derive(Parser)]
#[command(name = "cocycle", version, about = "Kernel cocycles of SL(2) and their randomized verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and report residuals.
    Verify(VerifyArgs),
    /// Evaluate one formula at explicit inputs.
    Eval(EvalArgs),
    /// List the available suites.
    ListSuites(ListArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Field {
        match f {
            FieldArg::Real => Field::Real,
            FieldArg::Complex => Field::Complex,
        }
    }
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "real")]
    field: FieldArg,
    /// Uniform genericity margin for independence and distinctness.
    #[arg(long)]
    margin: Option<f64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, repeatable; `all` runs every suite available for the field.
    #[arg(long = "suite", default_value = "all")]
    suites: Vec<String>,
    #[arg(long, env = "COCYCLE_TRIALS", default_value_t = 10_000)]
    trials: u64,
    #[arg(long, env = "COCYCLE_SEED", default_value_t = 42)]
    seed: u64,
    /// Replace every suite's tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, hide = true, default_value = "none")]
    mutation: Mutation,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Formula {
    #[value(name = "project_N")]
    ProjectN,
    #[value(name = "project_A")]
    ProjectA,
    #[value(name = "cross_ratio")]
    CrossRatio,
    #[value(name = "beta_N")]
    BetaN,
    #[value(name = "beta_A")]
    BetaA,
    #[value(name = "omega_N")]
    OmegaN,
    #[value(name = "omega_A")]
    OmegaA,
}

impl Formula {
    fn name(self) -> &'static str {
        match self {
            Formula::ProjectN => "project_N",
            Formula::ProjectA => "project_A",
            Formula::CrossRatio => "cross_ratio",
            Formula::BetaN => "beta_N",
            Formula::BetaA => "beta_A",
            Formula::OmegaN => "omega_N",
            Formula::OmegaA => "omega_A",
        }
    }
}

#[derive(Args)]
struct EvalArgs {
    #[arg(value_enum)]
    formula: Formula,
    /// Matrix entries `a11,a12,a21,a22`.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    /// Four points of the projective line; `inf` is the point at infinity.
    #[arg(long, num_args = 4, allow_hyphen_values = true)]
    points: Vec<String>,
    /// Functional coefficient `c`, or `c_re,c_im` for the N case over the complex field.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v2: Option<String>,
    /// Pairs of distinct points `p,q`.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ListArgs {
    #[arg(long, value_enum)]
    field: Option<FieldArg>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// A failed command: the message for standard error and its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn rejected(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure { code: 0, message: String::new() };
        }
        Failure::usage(format!("i/o error: {e}"))
    }
}

/// Non-generic inputs exit 1; anything that could not be read as an input exits 2.
fn classify(e: CocycleError) -> Failure {
    use CocycleError::*;
    match e {
        Degenerate(_)
        | NearZeroParameter(_)
        | ZeroVector(_)
        | DependentPair { .. }
        | CoincidentPoints { .. }
        | DegenerateTriple(_)
        | DegenerateConfiguration(_) => Failure::rejected(format!("input rejected as non-generic: {e}")),
        _ => Failure::usage(e.to_string()),
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::usage(format!("cannot create {}: {e}", p.display())))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn margins(margin: Option<f64>) -> Result<Option<GenericityConfig>, Failure> {
    let Some(m) = margin else { return Ok(None) };
    let cfg = GenericityConfig::uniform(m);
    cfg.validate().map_err(|e| Failure::usage(e.to_string()))?;
    Ok(Some(cfg))
}

fn select_suites(names: &[String], field: Field) -> Result<Vec<&'static SuiteInfo>, Failure> {
    let mut out: Vec<&'static SuiteInfo> = Vec::new();
    for name in names {
        if name == "all" {
            out.extend(harness::suites_for(field));
            continue;
        }
        let info = harness::suite_info(name).ok_or_else(|| Failure::usage(format!("unknown suite `{name}`")))?;
        if !info.supports(field) {
            return Err(Failure::usage(format!("suite `{name}` is defined over the real field only")));
        }
        out.push(info);
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|s| seen.insert(s.name));
    Ok(out)
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let field = Field::from(args.common.field);
    let suites = select_suites(&args.suites, field)?;
    let mut cfg = SamplerConfig { seed: args.seed, trials: args.trials, tol: args.tol, ..SamplerConfig::default() };
    if let Some(m) = margins(args.common.margin)? {
        cfg.margins = m;
    }
    cfg.validate().map_err(|e| Failure::usage(e.to_string()))?;

    let mut reports: Vec<VerificationReport> = Vec::with_capacity(suites.len());
    for info in suites {
        let report = harness::run_suite_with(info.name, &cfg, field, args.mutation).map_err(|e| match e {
            CocycleError::SamplingExhausted(_) => Failure::rejected(format!("suite {}: {e}", info.name)),
            e => Failure::usage(e.to_string()),
        })?;
        reports.push(report);
    }

    let mut out = open_output(&args.common.output)?;
    render::write_reports(&mut out, &reports, args.common.format)?;
    out.flush()?;

    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.suite.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::rejected(format!("failed suites: {}", failed.join(", "))))
    }
}

fn required<'a>(value: &'a Option<String>, flag: &str, formula: Formula) -> Result<&'a str, Failure> {
    value.as_deref().ok_or_else(|| Failure::usage(format!("{} needs --{flag}", formula.name())))
}

fn real_only(formula: Formula, field: Field) -> Result<(), Failure> {
    if field == Field::Real {
        Ok(())
    } else {
        Err(Failure::usage(format!("{} is defined over the real field only", formula.name())))
    }
}

fn check_vectors(cfg: &Option<GenericityConfig>, vs: &[(&str, &Vec2)]) -> Result<(), Failure> {
    let Some(cfg) = cfg else { return Ok(()) };
    for (i, (a, u)) in vs.iter().enumerate() {
        for (b, v) in &vs[i + 1..] {
            if !generic_vec_pair(u, v, cfg) {
                return Err(Failure::rejected(format!(
                    "input rejected as non-generic: {a} and {b} violate indep_margin = {}",
                    cfg.indep_margin
                )));
            }
        }
    }
    Ok(())
}

fn check_pairs(cfg: &Option<GenericityConfig>, ps: &[(&str, &PairGA)]) -> Result<(), Failure> {
    let Some(cfg) = cfg else { return Ok(()) };
    for (i, (a, x)) in ps.iter().enumerate() {
        if x.p.distance(&x.q) < cfg.distinct_margin {
            return Err(Failure::rejected(format!(
                "input rejected as non-generic: the points of {a} violate distinct_margin = {}",
                cfg.distinct_margin
            )));
        }
        for (b, y) in &ps[i + 1..] {
            if !generic_pair_of_pairs(x, y, cfg) {
                return Err(Failure::rejected(format!(
                    "input rejected as non-generic: {a} and {b} violate distinct_margin = {}",
                    cfg.distinct_margin
                )));
            }
        }
    }
    Ok(())
}

fn evaluate(args: &EvalArgs) -> Result<Vec<(&'static str, f64)>, Failure> {
    let field = Field::from(args.common.field);
    let f = args.formula;
    let cfg = margins(args.common.margin)?;
    let vector = |flag: &str, value: &Option<String>| -> Result<Vec2, Failure> {
        inputs::vector(required(value, flag, f)?, field).map_err(|e| Failure::usage(format!("--{flag}: {e}")))
    };
    let pair = |flag: &str, value: &Option<String>| -> Result<PairGA, Failure> {
        inputs::pair(required(value, flag, f)?).map_err(|e| match classify(e) {
            Failure { code: 1, message } => Failure::rejected(format!("--{flag}: {message}")),
            Failure { message, .. } => Failure::usage(format!("--{flag}: {message}")),
        })
    };
    let a_functional = || {
        inputs::a_functional(required(&args.alpha, "alpha", f)?).map_err(|e| Failure::usage(format!("--alpha: {e}")))
    };
    let n_functional = || {
        inputs::n_functional(required(&args.alpha, "alpha", f)?, field)
            .map_err(|e| Failure::usage(format!("--alpha: {e}")))
    };

    match f {
        Formula::ProjectN => {
            let g =
                inputs::matrix(required(&args.g, "g", f)?, field).map_err(|e| Failure::usage(format!("--g: {e}")))?;
            let x = project_n(&g);
            Ok(match field {
                Field::Real => vec![("value", x.re())],
                Field::Complex => vec![("re", x.re()), ("im", x.im())],
            })
        }
        Formula::ProjectA => {
            let g =
                inputs::matrix(required(&args.g, "g", f)?, field).map_err(|e| Failure::usage(format!("--g: {e}")))?;
            Ok(vec![("value", project_a(&g).map_err(classify)?)])
        }
        Formula::CrossRatio => {
            real_only(f, field)?;
            if args.points.len() != 4 {
                return Err(Failure::usage("cross_ratio needs --points with four points"));
            }
            let mut p = Vec::with_capacity(4);
            for token in &args.points {
                p.push(inputs::point(token).map_err(|e| Failure::usage(format!("--points: {e}")))?);
            }
            Ok(vec![("value", cross_ratio(&p[0], &p[1], &p[2], &p[3]).map_err(classify)?)])
        }
        Formula::BetaN => {
            let phi = n_functional()?;
            let (u, v) = (vector("u", &args.u)?, vector("v", &args.v)?);
            check_vectors(&cfg, &[("u", &u), ("v", &v)])?;
            Ok(vec![("value", beta_n_closed(&phi, &u, &v).map_err(classify)?)])
        }
        Formula::OmegaN => {
            let phi = n_functional()?;
            let (v0, v1, v2) = (vector("v0", &args.v0)?, vector("v1", &args.v1)?, vector("v2", &args.v2)?);
            check_vectors(&cfg, &[("v0", &v0), ("v1", &v1), ("v2", &v2)])?;
            Ok(vec![("value", omega_n(&phi, &v0, &v1, &v2).map_err(classify)?)])
        }
        Formula::BetaA => {
            real_only(f, field)?;
            let phi = a_functional()?;
            let (x, y) = (pair("x", &args.x)?, pair("y", &args.y)?);
            check_pairs(&cfg, &[("x", &x), ("y", &y)])?;
            Ok(vec![("value", beta_a_closed(&phi, &x, &y).map_err(classify)?)])
        }
        Formula::OmegaA => {
            real_only(f, field)?;
            let phi = a_functional()?;
            let (x, y, z) = (pair("x", &args.x)?, pair("y", &args.y)?, pair("z", &args.z)?);
            check_pairs(&cfg, &[("x", &x), ("y", &y), ("z", &z)])?;
            Ok(vec![("value", omega_a(&phi, &x, &y, &z).map_err(classify)?)])
        }
    }
}

fn eval(args: EvalArgs) -> Result<(), Failure> {
    let values = evaluate(&args)?;
    let mut out = open_output(&args.common.output)?;
    render::write_values(&mut out, args.formula.name(), &values, args.common.format)?;
    out.flush()?;
    Ok(())
}

fn list_suites(args: ListArgs) -> Result<(), Failure> {
    let suites: Vec<&SuiteInfo> = match args.field {
        Some(f) => harness::suites_for(f.into()).collect(),
        None => harness::SUITES.iter().collect(),
    };
    let mut out = io::stdout().lock();
    render::write_suites(&mut out, &suites, args.format)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Eval(a) => eval(a),
        Command::ListSuites(a) => list_suites(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) if f.code == 0 => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("cocycle: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
