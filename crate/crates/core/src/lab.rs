//! Convergence laboratory: normalized traces and operator norms of an
//! expression evaluated at random matrices of growing size, next to the
//! free-probability limits of the semicircle law.
//!
//! Trials run in parallel; rows are collected in `(size, trial)` order and
//! every draw is addressed by `(seed, ensemble, n, variable, trial)`, so a
//! report is a deterministic function of its configuration.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ensembles::{sample_tuple, EnsembleKind, EnsembleSpec};
use crate::eval::{evaluate, evaluate_with_diagnostics, in_domain, MatrixTuple};
use crate::expr::Expression;
use crate::formats::{complex_pair, format_f64, FORMAT_VERSION};
use crate::matrix::{ComplexMatrix, DEFAULT_TOL};
use crate::parser::{parse, ParseError};

pub const DEFAULT_SEED: u64 = 1729;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0} lies on the support [-2, 2] of the semicircle law")]
    OnSupport(Complex64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceConfig {
    pub expression: Expression,
    /// Ensemble of `x_1, x_2, ...`, in order.
    pub ensembles: Vec<EnsembleKind>,
    /// Strictly increasing matrix sizes.
    pub sizes: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
}

impl ConvergenceConfig {
    pub fn new(expression: Expression, ensembles: Vec<EnsembleKind>, sizes: Vec<usize>, trials: u64) -> Self {
        ConvergenceConfig { expression, ensembles, sizes, trials, seed: DEFAULT_SEED, tol: DEFAULT_TOL }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), LabError> {
        if self.sizes.is_empty() {
            return Err(LabError::Config("size schedule is empty".into()));
        }
        if self.sizes[0] == 0 {
            return Err(LabError::Config("sizes must be positive".into()));
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LabError::Config("size schedule must be strictly increasing".into()));
        }
        if self.trials == 0 {
            return Err(LabError::Config("trials must be at least 1".into()));
        }
        let m = self.expression.inventory().num_variables;
        if self.ensembles.len() < m {
            return Err(LabError::Config(format!(
                "expression uses {m} variables but only {} ensembles are assigned",
                self.ensembles.len()
            )));
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return Err(LabError::Config("tolerance must be finite and non-negative".into()));
        }
        Ok(())
    }

    fn tuple(&self, n: usize, trial: u64) -> MatrixTuple {
        if self.ensembles.is_empty() {
            return MatrixTuple::constant(n);
        }
        let specs: Vec<EnsembleSpec> = self.ensembles.iter().map(|k| EnsembleSpec::new(*k, n, self.seed)).collect();
        sample_tuple(&specs, trial).expect("validated uniform dimension")
    }

    fn grid(&self) -> Vec<(usize, u64)> {
        self.sizes.iter().flat_map(|&n| (0..self.trials).map(move |t| (n, t))).collect()
    }
}

/// On-disk form of [`ConvergenceConfig`]; the expression is in the parser
/// grammar.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceConfigFile {
    #[serde(default = "version")]
    pub format_version: u32,
    pub expression: String,
    pub ensembles: Vec<EnsembleKind>,
    pub sizes: Vec<usize>,
    pub trials: u64,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub tol: Option<f64>,
}

fn version() -> u32 {
    FORMAT_VERSION
}

impl ConvergenceConfigFile {
    pub fn into_config(self) -> Result<ConvergenceConfig, LabError> {
        if self.format_version != FORMAT_VERSION {
            return Err(LabError::Config(format!("unsupported format_version {}", self.format_version)));
        }
        let cfg = ConvergenceConfig {
            expression: parse(&self.expression)?,
            ensembles: self.ensembles,
            sizes: self.sizes,
            trials: self.trials,
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            tol: self.tol.unwrap_or(DEFAULT_TOL),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_config(cfg: &ConvergenceConfig) -> Self {
        ConvergenceConfigFile {
            format_version: FORMAT_VERSION,
            expression: cfg.expression.pretty_print(),
            ensembles: cfg.ensembles.clone(),
            sizes: cfg.sizes.clone(),
            trials: cfg.trials,
            seed: Some(cfg.seed),
            tol: Some(cfg.tol),
        }
    }
}

/// One sampled tuple. Numeric fields are `None` outside the domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub size: usize,
    pub trial: u64,
    pub in_domain: bool,
    pub re_trace: Option<f64>,
    pub im_trace: Option<f64>,
    pub norm: Option<f64>,
}

/// Mean and sample standard deviation (0 for a single sample).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
}

impl Stat {
    pub fn of(values: &[f64]) -> Option<Stat> {
        if values.is_empty() {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Some(Stat { mean, std })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub size: usize,
    pub trials: u64,
    pub in_domain: u64,
    pub re_trace: Option<Stat>,
    pub im_trace: Option<Stat>,
    pub norm: Option<Stat>,
}

impl SizeSummary {
    fn from_rows(size: usize, rows: &[&TrialRow]) -> Self {
        let collect = |f: fn(&TrialRow) -> Option<f64>| rows.iter().filter_map(|r| f(r)).collect::<Vec<_>>();
        SizeSummary {
            size,
            trials: rows.len() as u64,
            in_domain: rows.iter().filter(|r| r.in_domain).count() as u64,
            re_trace: Stat::of(&collect(|r| r.re_trace)),
            im_trace: Stat::of(&collect(|r| r.im_trace)),
            norm: Stat::of(&collect(|r| r.norm)),
        }
    }
}

/// Limits `tau(r)` and `||r||` predicted by the semicircle law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleTargets {
    #[serde(with = "complex_pair")]
    pub trace: Complex64,
    pub norm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub format_version: u32,
    pub expression: String,
    pub ensembles: Vec<EnsembleKind>,
    pub seed: u64,
    pub tol: f64,
    pub trials_per_size: u64,
    pub oracle: Option<OracleTargets>,
    pub sizes: Vec<SizeSummary>,
    pub rows: Vec<TrialRow>,
}

impl ConvergenceReport {
    pub fn summary(&self, size: usize) -> Option<&SizeSummary> {
        self.sizes.iter().find(|s| s.size == size)
    }

    /// Recomputes the per-size aggregates from the raw rows.
    pub fn recompute_summaries(&self) -> Vec<SizeSummary> {
        summarize(&self.rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per trial: `size,trial,in_domain,re_trace,im_trace,norm`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("size,trial,in_domain,re_trace,im_trace,norm\n");
        let opt = |x: Option<f64>| x.map(format_f64).unwrap_or_default();
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.size,
                r.trial,
                r.in_domain,
                opt(r.re_trace),
                opt(r.im_trace),
                opt(r.norm)
            ));
        }
        out
    }
}

fn summarize(rows: &[TrialRow]) -> Vec<SizeSummary> {
    let mut sizes: Vec<usize> = rows.iter().map(|r| r.size).collect();
    sizes.dedup();
    sizes
        .into_iter()
        .map(|n| {
            let rs: Vec<&TrialRow> = rows.iter().filter(|r| r.size == n).collect();
            SizeSummary::from_rows(n, &rs)
        })
        .collect()
}

/// Samples every `(size, trial)` of the schedule and records `tr_n` and the
/// operator norm of the evaluated expression. Domain failures are rows with
/// `in_domain = false`.
pub fn run_convergence(cfg: &ConvergenceConfig) -> Result<ConvergenceReport, LabError> {
    cfg.validate()?;
    let rows: Vec<TrialRow> = cfg
        .grid()
        .into_par_iter()
        .map(|(n, trial)| {
            let t = cfg.tuple(n, trial);
            match evaluate(&cfg.expression, &t, cfg.tol) {
                Ok(value) => {
                    let tr = value.normalized_trace();
                    TrialRow {
                        size: n,
                        trial,
                        in_domain: true,
                        re_trace: Some(tr.re),
                        im_trace: Some(tr.im),
                        norm: Some(value.operator_norm()),
                    }
                }
                Err(_) => TrialRow { size: n, trial, in_domain: false, re_trace: None, im_trace: None, norm: None },
            }
        })
        .collect();
    Ok(ConvergenceReport {
        format_version: FORMAT_VERSION,
        expression: cfg.expression.pretty_print(),
        ensembles: cfg.ensembles.clone(),
        seed: cfg.seed,
        tol: cfg.tol,
        trials_per_size: cfg.trials,
        oracle: semicircle_oracle(&cfg.expression, &cfg.ensembles),
        sizes: summarize(&rows),
        rows,
    })
}

/// Cauchy transform of the standard semicircle law,
/// `G(z) = tau((z - s)^-1) = (z - sqrt(z^2 - 4)) / 2` on the branch with
/// `G(z) ~ 1/z` at infinity.
pub fn stieltjes_semicircle(z: Complex64) -> Result<Complex64, LabError> {
    if !(z.re.is_finite() && z.im.is_finite()) || (z.im == 0.0 && z.re.abs() <= 2.0) {
        return Err(LabError::OnSupport(z));
    }
    // sqrt(z - 2) sqrt(z + 2) is analytic off [-2, 2] and ~ z at infinity;
    // the reciprocal form avoids cancellation for large |z|.
    let root = (z - 2.0).sqrt() * (z + 2.0).sqrt();
    Ok(2.0 / (z + root))
}

/// Distance from `w` to the segment `[-2, 2]`.
fn dist_to_support(w: Complex64) -> f64 {
    let nearest = w.re.clamp(-2.0, 2.0);
    Complex64::new(w.re - nearest, w.im).norm()
}

/// `alpha + beta * s` for a semicircular `s`.
#[derive(Debug, Clone, Copy)]
struct Affine {
    alpha: Complex64,
    beta: Complex64,
}

fn affine(e: &Expression, ensembles: &[EnsembleKind], random: &mut Option<usize>) -> Option<Affine> {
    let zero = Complex64::new(0.0, 0.0);
    let letter = |i: usize, adjoint: bool, random: &mut Option<usize>| -> Option<Affine> {
        let conj = |z: Complex64| if adjoint { z.conj() } else { z };
        match ensembles.get(i.checked_sub(1)?)? {
            EnsembleKind::DiagonalConstant { value } => Some(Affine { alpha: conj(*value), beta: zero }),
            kind @ (EnsembleKind::Gue | EnsembleKind::ShiftedGue { .. }) => {
                if random.replace(i).is_some_and(|prev| prev != i) {
                    return None;
                }
                let offset = match kind {
                    EnsembleKind::ShiftedGue { offset } => *offset,
                    _ => zero,
                };
                Some(Affine { alpha: conj(offset), beta: Complex64::new(1.0, 0.0) })
            }
            _ => None,
        }
    };
    match e {
        Expression::ScalarLiteral(c) => Some(Affine { alpha: *c, beta: zero }),
        Expression::Variable(i) => letter(*i, false, random),
        Expression::AdjointVariable(i) => letter(*i, true, random),
        Expression::Sum(a, b) | Expression::Difference(a, b) => {
            let (a, b) = (affine(a, ensembles, random)?, affine(b, ensembles, random)?);
            let sign = if matches!(e, Expression::Sum(..)) { 1.0 } else { -1.0 };
            Some(Affine { alpha: a.alpha + sign * b.alpha, beta: a.beta + sign * b.beta })
        }
        Expression::Negation(a) => {
            let a = affine(a, ensembles, random)?;
            Some(Affine { alpha: -a.alpha, beta: -a.beta })
        }
        Expression::Product(a, b) => {
            let (a, b) = (affine(a, ensembles, random)?, affine(b, ensembles, random)?);
            if a.beta == zero {
                Some(Affine { alpha: a.alpha * b.alpha, beta: a.alpha * b.beta })
            } else if b.beta == zero {
                Some(Affine { alpha: a.alpha * b.alpha, beta: a.beta * b.alpha })
            } else {
                None
            }
        }
        Expression::Inverse(_) => None,
    }
}

/// Analytic limits for expressions of the form `alpha + beta s` or
/// `(alpha + beta s)^-1`, where `s` is the semicircular limit of one GUE (or
/// shifted GUE) variable and all other variables are constant multiples of
/// the identity. Returns `None` for anything else, or when the inverse's
/// argument vanishes on the support.
pub fn semicircle_oracle(e: &Expression, ensembles: &[EnsembleKind]) -> Option<OracleTargets> {
    let mut random = None;
    let zero = Complex64::new(0.0, 0.0);
    let (inner, inverted) = match e {
        Expression::Inverse(inner) => (inner.as_ref(), true),
        other => (other, false),
    };
    let Affine { alpha, beta } = affine(inner, ensembles, &mut random)?;
    if !inverted {
        let norm = (alpha - 2.0 * beta).norm().max((alpha + 2.0 * beta).norm());
        return Some(OracleTargets { trace: alpha, norm });
    }
    if beta == zero {
        if alpha == zero {
            return None;
        }
        return Some(OracleTargets { trace: 1.0 / alpha, norm: 1.0 / alpha.norm() });
    }
    // (alpha + beta s)^-1 = -beta^-1 (w - s)^-1 with w = -alpha / beta.
    let w = -alpha / beta;
    let g = stieltjes_semicircle(w).ok()?;
    Some(OracleTargets { trace: -g / beta, norm: 1.0 / (beta.norm() * dist_to_support(w)) })
}

/// Domain-membership frequency at one size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainPoint {
    pub size: usize,
    pub trials: u64,
    pub in_domain: u64,
    pub fraction: f64,
    /// Mean over trials of the smallest relative inverse margin
    /// `sigma_min / max(sigma_max, magnitude)`; `None` for polynomials.
    pub mean_min_margin: Option<f64>,
}

/// Fraction of sampled tuples lying in the domain, per size. Uses the same
/// draws as [`run_convergence`].
pub fn eventual_domain_curve(cfg: &ConvergenceConfig) -> Result<Vec<DomainPoint>, LabError> {
    cfg.validate()?;
    let outcomes: Vec<(usize, bool, Option<f64>)> = cfg
        .grid()
        .into_par_iter()
        .map(|(n, trial)| {
            let r = in_domain(&cfg.expression, &cfg.tuple(n, trial), cfg.tol);
            (n, r.in_domain, r.min_relative_margin())
        })
        .collect();
    Ok(cfg
        .sizes
        .iter()
        .map(|&n| {
            let at: Vec<_> = outcomes.iter().filter(|o| o.0 == n).collect();
            let ok = at.iter().filter(|o| o.1).count() as u64;
            let margins: Vec<f64> = at.iter().filter_map(|o| o.2).collect();
            DomainPoint {
                size: n,
                trials: cfg.trials,
                in_domain: ok,
                fraction: ok as f64 / cfg.trials as f64,
                mean_min_margin: Stat::of(&margins).map(|s| s.mean),
            }
        })
        .collect())
}

/// Value placed in the extra `1 x 1` block as a function of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum OutlierRule {
    /// `1 / (n + 1)`: an eigenvalue escaping toward 0.
    Reciprocal,
    Constant { value: f64 },
}

impl OutlierRule {
    pub fn value(&self, n: usize) -> f64 {
        match self {
            OutlierRule::Reciprocal => 1.0 / (n as f64 + 1.0),
            OutlierRule::Constant { value } => *value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutlierRow {
    pub size: usize,
    pub trial: u64,
    pub in_domain: bool,
    /// `tr_n(X^-1)`.
    pub base_trace: Option<f64>,
    /// `||X^-1||`.
    pub base_inverse_norm: Option<f64>,
    /// `tr_{n+1}(Y^-1)` with `Y = diag(outlier, X)`.
    pub outlier_trace: Option<f64>,
    /// `||Y^-1||`.
    pub outlier_inverse_norm: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutlierSummary {
    pub size: usize,
    pub outlier_value: f64,
    pub in_domain: u64,
    pub base_trace: Option<Stat>,
    pub base_inverse_norm: Option<Stat>,
    pub outlier_trace: Option<Stat>,
    pub outlier_inverse_norm: Option<Stat>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutlierReport {
    pub format_version: u32,
    pub expression: String,
    pub rule: OutlierRule,
    pub seed: u64,
    /// Limit of `tr_n(X^-1)` when known from the semicircle oracle.
    pub base_trace_limit: Option<f64>,
    pub sizes: Vec<OutlierSummary>,
    pub rows: Vec<OutlierRow>,
}

impl OutlierReport {
    pub fn summary(&self, size: usize) -> Option<&OutlierSummary> {
        self.sizes.iter().find(|s| s.size == size)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("size,trial,in_domain,base_trace,base_inverse_norm,outlier_trace,outlier_inverse_norm\n");
        let opt = |x: Option<f64>| x.map(format_f64).unwrap_or_default();
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.size,
                r.trial,
                r.in_domain,
                opt(r.base_trace),
                opt(r.base_inverse_norm),
                opt(r.outlier_trace),
                opt(r.outlier_inverse_norm)
            ));
        }
        out
    }
}

/// For each sample `X` of the base expression, forms `Y = diag(rule(n), X)`
/// of size `n + 1` and records traces and norms of `X^-1` and `Y^-1`.
pub fn run_outlier_experiment(base: &ConvergenceConfig, rule: OutlierRule) -> Result<OutlierReport, LabError> {
    base.validate()?;
    let rows: Vec<OutlierRow> = base
        .grid()
        .into_par_iter()
        .map(|(n, trial)| {
            let empty = OutlierRow {
                size: n,
                trial,
                in_domain: false,
                base_trace: None,
                base_inverse_norm: None,
                outlier_trace: None,
                outlier_inverse_norm: None,
            };
            let Ok(x) = evaluate(&base.expression, &base.tuple(n, trial), base.tol) else {
                return empty;
            };
            let y = ComplexMatrix::block_diag(&ComplexMatrix::scalar(1, Complex64::new(rule.value(n), 0.0)), &x);
            match (x.invert(base.tol), y.invert(base.tol)) {
                (Ok(xi), Ok(yi)) => OutlierRow {
                    size: n,
                    trial,
                    in_domain: true,
                    base_trace: Some(xi.inverse.normalized_trace().re),
                    base_inverse_norm: Some(xi.inverse.operator_norm()),
                    outlier_trace: Some(yi.inverse.normalized_trace().re),
                    outlier_inverse_norm: Some(yi.inverse.operator_norm()),
                },
                _ => empty,
            }
        })
        .collect();
    let sizes = base
        .sizes
        .iter()
        .map(|&n| {
            let rs: Vec<&OutlierRow> = rows.iter().filter(|r| r.size == n).collect();
            let col = |f: fn(&OutlierRow) -> Option<f64>| Stat::of(&rs.iter().filter_map(|r| f(r)).collect::<Vec<_>>());
            OutlierSummary {
                size: n,
                outlier_value: rule.value(n),
                in_domain: rs.iter().filter(|r| r.in_domain).count() as u64,
                base_trace: col(|r| r.base_trace),
                base_inverse_norm: col(|r| r.base_inverse_norm),
                outlier_trace: col(|r| r.outlier_trace),
                outlier_inverse_norm: col(|r| r.outlier_inverse_norm),
            }
        })
        .collect();
    let limit = semicircle_oracle(&base.expression.clone().inv(), &base.ensembles).map(|o| o.trace.re);
    Ok(OutlierReport {
        format_version: FORMAT_VERSION,
        expression: base.expression.pretty_print(),
        rule,
        seed: base.seed,
        base_trace_limit: limit,
        sizes,
        rows,
    })
}

/// Evaluates once and reports value plus smallest inverse margin; used by the
/// examples to show how close a sample is to the domain boundary.
pub fn probe(e: &Expression, t: &MatrixTuple, tol: f64) -> (Option<ComplexMatrix>, Option<f64>) {
    let (report, value) = evaluate_with_diagnostics(e, t, tol);
    (value, report.min_relative_margin())
}

/// Named, versioned experiment expressions.
pub mod fixtures {
    use crate::expr::Expression;
    use crate::parser::parse;

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub struct Fixture {
        pub name: &'static str,
        pub text: &'static str,
        pub level: usize,
    }

    impl Fixture {
        pub fn expression(&self) -> Expression {
            parse(self.text).expect("fixture parses")
        }
    }

    pub const RESOLVENT_AT_3: Fixture = Fixture { name: "resolvent_at_3", text: "(3 - x1)^-1", level: 1 };
    pub const GRAM: Fixture = Fixture { name: "gram", text: "x1 * x1'", level: 0 };
    pub const PRODUCT_INVERSE_TIMES_X1: Fixture =
        Fixture { name: "product_inverse_times_x1", text: "(x1 * x2)^-1 * x1", level: 1 };
    pub const HUA_ZERO: Fixture =
        Fixture { name: "hua_zero", text: "y^-1 * (x^-1 + y^-1)^-1 * x^-1 - (x + y)^-1", level: 2 };
    pub const EMPTY_DOMAIN: Fixture =
        Fixture { name: "empty_domain", text: "(1 - x2 * (x1 * x2)^-1 * x1)^-1", level: 2 };
    /// Base of the outlier pair: `X = 3 + GUE`.
    pub const OUTLIER_BASE: Fixture = Fixture { name: "outlier_base", text: "3 + x1", level: 0 };

    /// Expressions spanning levels 0 to 2 used for realization checks.
    pub fn realization_catalog() -> Vec<Fixture> {
        vec![
            Fixture { name: "poly_mixed", text: "x1 + x2 * x1", level: 0 },
            GRAM,
            Fixture { name: "poly_complex_coefficients", text: "3 - 2i * x1 + x2' * x2", level: 0 },
            Fixture { name: "product_inverse", text: "(x1 * x2)^-1", level: 1 },
            PRODUCT_INVERSE_TIMES_X1,
            RESOLVENT_AT_3,
            Fixture { name: "stable_finiteness", text: "x2 * (x1 * x2)^-1 * x1", level: 1 },
            Fixture { name: "negated_inverse_sum", text: "-(x1 + x2')^-1 - x1", level: 1 },
            HUA_ZERO,
            Fixture { name: "harmonic_three", text: "(x1^-1 + x2^-1 + x3^-1)^-1", level: 2 },
        ]
    }
}
