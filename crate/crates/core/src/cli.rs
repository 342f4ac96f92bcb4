//! The `ncrat` command line.
//!
//! Exit codes: 0 success, 1 file, configuration or usage error, 2 parse
//! error, 3 domain error, 4 realization verification failure, 5 identity test
//! found a distinguishing tuple, 6 identity test found no common domain point.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::ensembles::{sample, EnsembleKind, EnsembleSpec};
use crate::eval::{evaluate, EvalError};
use crate::expr::Expression;
use crate::formats::{MatrixFile, FORMAT_VERSION};
use crate::idtest::{test_identity, IdentityOptions, Verdict};
use crate::lab::{
    run_convergence, run_outlier_experiment, ConvergenceConfig, ConvergenceConfigFile, OutlierRule, DEFAULT_SEED,
};
use crate::matrix::DEFAULT_TOL;
use crate::parser::{parse, ParseError};
use crate::realization::{realize, verify_realization_at, RealizationJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;
pub const EXIT_DISTINCT: i32 = 5;
pub const EXIT_NO_COMMON_DOMAIN: i32 = 6;

/// Environment variable consulted when no seed is given.
pub const SEED_ENV: &str = "NCRAT_SEED";

#[derive(Debug, Parser)]
#[command(name = "ncrat", version, about = "Non-commutative rational expressions on random matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse an expression and print its syntax tree, level and variables.
    Parse { expr: String },
    /// Evaluate an expression at a tuple of matrices.
    Eval {
        expr: String,
        /// MatrixFile JSON holding x1, x2, ...
        #[arg(long)]
        matrices: Option<PathBuf>,
        /// Matrix size for expressions without variables.
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Build a u A^-1 v realization, optionally checking it on random tuples.
    Realize {
        expr: String,
        /// Number of random tuples to compare on.
        #[arg(long)]
        check: Option<u64>,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Largest accepted relative deviation.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Test whether two expressions define the same rational function.
    Idtest {
        expr1: String,
        expr2: String,
        #[arg(long, default_value_t = IdentityOptions::default().max_size)]
        max_size: usize,
        #[arg(long, default_value_t = IdentityOptions::default().trials_per_size)]
        trials: u64,
        #[arg(long, default_value_t = IdentityOptions::default().tol)]
        tol: f64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run a trace and norm convergence experiment.
    Converge {
        #[command(flatten)]
        experiment: ExperimentArgs,
    },
    /// Run the outlier experiment: Y = diag(rule(n), X).
    Outlier {
        #[command(flatten)]
        experiment: ExperimentArgs,
        /// `reciprocal` (1/(n+1)) or `constant`.
        #[arg(long, default_value = "reciprocal")]
        rule: String,
        /// Value for the constant rule.
        #[arg(long, default_value_t = 1.0)]
        value: f64,
    },
    /// Draw one matrix from an ensemble and print it as MatrixFile JSON.
    Sample {
        /// gue, ginibre, haar, shifted-gue or diagconst.
        #[arg(long)]
        ensemble: String,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long, default_value_t = 0)]
        trial: u64,
        /// Offset (shifted-gue) or diagonal value (diagconst), real part.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        value: f64,
        /// Imaginary part of --value.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        imag: f64,
    },
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// ConvergenceConfig JSON; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    expr: Option<String>,
    /// One per variable, in order: gue, ginibre, haar, shifted-gue:RE[:IM],
    /// diagconst:RE[:IM]. Defaults to gue for every variable.
    #[arg(long = "ensemble")]
    ensembles: Vec<String>,
    /// Comma-separated, strictly increasing.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Writes PREFIX.json and PREFIX.csv.
    #[arg(long)]
    out: PathBuf,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

type Outcome = Result<i32, Failure>;

struct Io<'a> {
    out: &'a mut dyn Write,
    seed_env: Option<String>,
}

impl Io<'_> {
    fn json<T: Serialize>(&mut self, value: &T) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(value).map_err(|e| Failure::input(e.to_string()))?;
        writeln!(self.out, "{text}").map_err(|e| Failure::input(e.to_string()))
    }

    fn seed(&self, flag: Option<u64>, config: Option<u64>) -> Result<u64, Failure> {
        if let Some(s) = flag.or(config) {
            return Ok(s);
        }
        match &self.seed_env {
            Some(text) => {
                text.trim().parse().map_err(|_| Failure::input(format!("{SEED_ENV}={text:?} is not an unsigned integer")))
            }
            None => Ok(DEFAULT_SEED),
        }
    }
}

/// Runs the command line with the process environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_seed_env(args, std::env::var(SEED_ENV).ok(), out, err)
}

/// Runs the command line with an explicit value for the seed fallback.
pub fn run_with_seed_env<I, T>(args: I, seed_env: Option<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut io = Io { out, seed_env };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, io: &mut Io) -> Outcome {
    match command {
        Command::Parse { expr } => cmd_parse(&expr, io),
        Command::Eval { expr, matrices, dim, tol } => cmd_eval(&expr, matrices.as_deref(), dim, tol, io),
        Command::Realize { expr, check, dim, seed, tol } => {
            let seed = io.seed(seed, None)?;
            cmd_realize(&expr, check, dim, seed, tol, io)
        }
        Command::Idtest { expr1, expr2, max_size, trials, tol, seed } => {
            let opts = IdentityOptions {
                max_size,
                trials_per_size: trials,
                tol,
                seed: io.seed(seed, None)?,
                ..IdentityOptions::default()
            };
            cmd_idtest(&expr1, &expr2, &opts, io)
        }
        Command::Converge { experiment } => {
            let cfg = experiment_config(&experiment, io)?;
            let report = run_convergence(&cfg).map_err(|e| Failure::input(e.to_string()))?;
            write_pair(&experiment.out, &report.to_json(), &report.to_csv(), io)
        }
        Command::Outlier { experiment, rule, value } => {
            let rule = match rule.as_str() {
                "reciprocal" => OutlierRule::Reciprocal,
                "constant" => OutlierRule::Constant { value },
                other => return Err(Failure::input(format!("unknown outlier rule {other:?}"))),
            };
            let cfg = experiment_config(&experiment, io)?;
            let report = run_outlier_experiment(&cfg, rule).map_err(|e| Failure::input(e.to_string()))?;
            write_pair(&experiment.out, &report.to_json(), &report.to_csv(), io)
        }
        Command::Sample { ensemble, size, seed, index, trial, value, imag } => {
            let kind = ensemble_kind(&ensemble, Complex64::new(value, imag))?;
            if size == 0 || index == 0 {
                return Err(Failure::input("--size and --index must be positive"));
            }
            let spec = EnsembleSpec::new(kind, size, io.seed(seed, None)?);
            io.json(&MatrixFile::from_matrices(&[sample(&spec, index, trial)]))?;
            Ok(EXIT_OK)
        }
    }
}

fn parse_expr(text: &str) -> Result<Expression, Failure> {
    parse(text).map_err(|e| Failure { code: EXIT_PARSE, message: render_parse_error(text, &e) })
}

/// Parse error with the input and a caret under the offending byte.
pub fn render_parse_error(input: &str, e: &ParseError) -> String {
    let column = input.get(..e.byte_offset).map_or(e.byte_offset, |s| s.chars().count());
    format!("{e}\n  {input}\n  {}^", " ".repeat(column))
}

fn ast_json(e: &Expression) -> Value {
    let node = |op: &str, args: &[&Expression]| json!({ "op": op, "args": args.iter().map(|a| ast_json(a)).collect::<Vec<_>>() });
    match e {
        Expression::ScalarLiteral(c) => json!({ "op": "scalar", "value": [c.re, c.im] }),
        Expression::Variable(i) => json!({ "op": "variable", "index": i, "adjoint": false }),
        Expression::AdjointVariable(i) => json!({ "op": "variable", "index": i, "adjoint": true }),
        Expression::Sum(a, b) => node("sum", &[a, b]),
        Expression::Difference(a, b) => node("difference", &[a, b]),
        Expression::Product(a, b) => node("product", &[a, b]),
        Expression::Negation(a) => node("negation", &[a]),
        Expression::Inverse(a) => node("inverse", &[a]),
    }
}

fn cmd_parse(text: &str, io: &mut Io) -> Outcome {
    let e = parse_expr(text)?;
    let inv = e.inventory();
    let adjoints: Vec<usize> = (1..=inv.num_variables).filter(|&i| inv.adjoint_used(i)).collect();
    io.json(&json!({
        "format_version": FORMAT_VERSION,
        "expression": e.pretty_print(),
        "level": e.level(),
        "variables": inv.num_variables,
        "adjoint_variables": adjoints,
        "ast": ast_json(&e),
    }))?;
    Ok(EXIT_OK)
}

fn cmd_eval(text: &str, matrices: Option<&Path>, dim: usize, tol: f64, io: &mut Io) -> Outcome {
    let e = parse_expr(text)?;
    let tuple = match matrices {
        Some(path) => MatrixFile::read(path)
            .and_then(|f| f.to_tuple())
            .map_err(|err| Failure::input(format!("{}: {err}", path.display())))?,
        None if e.inventory().num_variables == 0 && dim >= 1 => crate::eval::MatrixTuple::constant(dim),
        None => return Err(Failure::input("--matrices is required for expressions with variables")),
    };
    match evaluate(&e, &tuple, tol) {
        Ok(value) => {
            io.json(&MatrixFile::from_matrices(&[value]))?;
            Ok(EXIT_OK)
        }
        Err(EvalError::Domain(d)) => {
            let failing = d.failing_subexpression.as_ref().map(Expression::pretty_print);
            io.json(&json!({
                "format_version": FORMAT_VERSION,
                "in_domain": false,
                "failing_subexpression": failing,
                "sigma_min": d.sigma_min,
                "sigma_max": d.sigma_max,
            }))?;
            Err(Failure { code: EXIT_DOMAIN, message: d.to_string() })
        }
        Err(other) => Err(Failure::input(other.to_string())),
    }
}

fn cmd_realize(text: &str, check: Option<u64>, dim: usize, seed: u64, tol: f64, io: &mut Io) -> Outcome {
    let e = parse_expr(text)?;
    let r = realize(&e);
    let report = match check {
        Some(trials) if dim == 0 => return Err(Failure::input(format!("--dim must be positive (checking {trials} trials)"))),
        Some(trials) => Some(verify_realization_at(&e, &r, trials, dim, seed, DEFAULT_TOL)),
        None => None,
    };
    let passed = report.as_ref().is_none_or(|rep| rep.passed(tol));
    io.json(&json!({
        "format_version": FORMAT_VERSION,
        "expression": e.pretty_print(),
        "realization": RealizationJson::from(&r),
        "verification": report.as_ref().map(|rep| json!({
            "report": rep,
            "tolerance": tol,
            "passed": passed,
        })),
    }))?;
    if passed {
        Ok(EXIT_OK)
    } else {
        Err(Failure { code: EXIT_VERIFICATION, message: format!("realization verification failed at tolerance {tol:e}") })
    }
}

fn cmd_idtest(t1: &str, t2: &str, opts: &IdentityOptions, io: &mut Io) -> Outcome {
    let (e1, e2) = (parse_expr(t1)?, parse_expr(t2)?);
    if opts.max_size == 0 || opts.trials_per_size == 0 {
        return Err(Failure::input("--max-size and --trials must be positive"));
    }
    let v = test_identity(&e1, &e2, opts);
    let mut doc = json!({
        "format_version": FORMAT_VERSION,
        "expr1": e1.pretty_print(),
        "expr2": e2.pretty_print(),
    });
    if let (Value::Object(map), Value::Object(extra)) = (&mut doc, serde_json::to_value(&v).expect("verdict serializes")) {
        map.extend(extra);
    }
    io.json(&doc)?;
    Ok(match v.verdict {
        Verdict::ProbablyEqual { .. } => EXIT_OK,
        Verdict::Distinct { .. } => EXIT_DISTINCT,
        Verdict::NoCommonDomainPoint { .. } => EXIT_NO_COMMON_DOMAIN,
    })
}

/// Parses `name[:re[:im]]`.
fn ensemble_spec_text(text: &str) -> Result<EnsembleKind, Failure> {
    let mut parts = text.split(':');
    let name = parts.next().unwrap_or_default();
    let mut num = |what: &str| -> Result<f64, Failure> {
        parts
            .next()
            .map_or(Ok(0.0), |p| p.parse().map_err(|_| Failure::input(format!("bad {what} in ensemble {text:?}"))))
    };
    let value = Complex64::new(num("real part")?, num("imaginary part")?);
    if parts.next().is_some() {
        return Err(Failure::input(format!("too many fields in ensemble {text:?}")));
    }
    ensemble_kind(name, value)
}

fn ensemble_kind(name: &str, value: Complex64) -> Result<EnsembleKind, Failure> {
    Ok(match name {
        "gue" => EnsembleKind::Gue,
        "ginibre" => EnsembleKind::Ginibre,
        "haar" => EnsembleKind::HaarUnitary,
        "shifted-gue" => EnsembleKind::ShiftedGue { offset: value },
        "diagconst" => EnsembleKind::DiagonalConstant { value },
        other => return Err(Failure::input(format!("unknown ensemble {other:?}"))),
    })
}

fn experiment_config(args: &ExperimentArgs, io: &Io) -> Result<ConvergenceConfig, Failure> {
    let file: Option<ConvergenceConfigFile> = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
            Some(serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?)
        }
        None => None,
    };
    if let Some(f) = &file {
        if f.format_version != FORMAT_VERSION {
            return Err(Failure::input(format!("unsupported format_version {}", f.format_version)));
        }
    }
    let text = args
        .expr
        .clone()
        .or_else(|| file.as_ref().map(|f| f.expression.clone()))
        .ok_or_else(|| Failure::input("an expression is required (--expr or --config)"))?;
    let expression = parse_expr(&text)?;
    let ensembles = if !args.ensembles.is_empty() {
        args.ensembles.iter().map(|s| ensemble_spec_text(s)).collect::<Result<Vec<_>, _>>()?
    } else if let Some(f) = &file {
        f.ensembles.clone()
    } else {
        vec![EnsembleKind::Gue; expression.inventory().num_variables]
    };
    let sizes = args
        .sizes
        .clone()
        .or_else(|| file.as_ref().map(|f| f.sizes.clone()))
        .ok_or_else(|| Failure::input("a size schedule is required (--sizes or --config)"))?;
    let trials = args
        .trials
        .or_else(|| file.as_ref().map(|f| f.trials))
        .ok_or_else(|| Failure::input("a trial count is required (--trials or --config)"))?;
    let cfg = ConvergenceConfig {
        expression,
        ensembles,
        sizes,
        trials,
        seed: io.seed(args.seed, file.as_ref().and_then(|f| f.seed))?,
        tol: args.tol.or_else(|| file.as_ref().and_then(|f| f.tol)).unwrap_or(DEFAULT_TOL),
    };
    cfg.validate().map_err(|e| Failure::input(e.to_string()))?;
    Ok(cfg)
}

fn with_suffix(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn write_pair(prefix: &Path, json_text: &str, csv_text: &str, io: &mut Io) -> Outcome {
    let (json_path, csv_path) = (with_suffix(prefix, "json"), with_suffix(prefix, "csv"));
    for (path, body) in [(&json_path, format!("{json_text}\n")), (&csv_path, csv_text.to_owned())] {
        std::fs::write(path, body).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    io.json(&json!({
        "format_version": FORMAT_VERSION,
        "json": json_path.display().to_string(),
        "csv": csv_path.display().to_string(),
    }))?;
    Ok(EXIT_OK)
}
