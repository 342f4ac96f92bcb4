//! Evaluation of expressions at tuples of square matrices.
//!
//! `x_i` maps to the i-th matrix of the tuple, `x_i'` to its adjoint, scalars
//! to multiples of the identity. Nodes are evaluated in post-order, left to
//! right; the first inverse whose argument fails the invertibility test stops
//! evaluation and is reported as a [`DomainError`].
//!
//! The invertibility test at an inverse node is
//! `sigma_min > tol * max(sigma_max, magnitude)` where `magnitude` is a running
//! estimate of the size of the terms the argument was built from (RMS singular
//! value for variables, `|c|` for scalars, sums add, products multiply, an
//! inverse contributes `1 / sigma_min`). A value that is zero only up to
//! cancellation, such as `1 - y (x y)^-1 x`, therefore fails the test instead of
//! being inverted as rounding noise.

use num_complex::Complex64;
use thiserror::Error;

use crate::expr::Expression;
use crate::matrix::{self, ComplexMatrix, MatrixError, DEFAULT_TOL};

/// One matrix per variable `x_1..x_m`, all of a common dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixTuple {
    matrices: Vec<ComplexMatrix>,
    dim: usize,
}

impl MatrixTuple {
    pub fn new(matrices: Vec<ComplexMatrix>) -> Result<Self, MatrixError> {
        let dim = matrices.first().map(ComplexMatrix::dim).ok_or_else(|| MatrixError::Shape("empty tuple".into()))?;
        if let Some(bad) = matrices.iter().find(|m| m.dim() != dim) {
            return Err(MatrixError::DimensionMismatch { op: "tuple", left: (dim, dim), right: (bad.dim(), bad.dim()) });
        }
        Ok(MatrixTuple { matrices, dim })
    }

    /// A tuple with no variables, for evaluating constant expressions.
    pub fn constant(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        MatrixTuple { matrices: Vec::new(), dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// Matrix for `x_index` (1-based).
    pub fn get(&self, index: usize) -> Option<&ComplexMatrix> {
        index.checked_sub(1).and_then(|i| self.matrices.get(i))
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.matrices
    }
}

/// The expression is not defined at the tuple: an inverse node's argument is
/// singular at the requested tolerance.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("not in domain: {} is not invertible (sigma_min = {sigma_min:e}, sigma_max = {sigma_max:e})", describe(.failing_subexpression))]
pub struct DomainError {
    /// The failing inverse node; `None` when the failure is in a realization
    /// pencil rather than in a node of an expression.
    pub failing_subexpression: Option<Expression>,
    pub sigma_min: f64,
    pub sigma_max: f64,
}

fn describe(e: &Option<Expression>) -> String {
    match e {
        Some(e) => format!("the argument of {e}"),
        None => "the realization pencil".into(),
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("variable x{index} is not covered by a tuple of {available} matrices")]
    MissingVariable { index: usize, available: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

impl EvalError {
    pub fn as_domain(&self) -> Option<&DomainError> {
        match self {
            EvalError::Domain(d) => Some(d),
            _ => None,
        }
    }
}

/// Invertibility margins of one inverse node.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseDiagnostic {
    pub subexpression: Expression,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub reference_scale: f64,
    /// `sigma_min / max(sigma_max, reference_scale)`; the node passes when this
    /// exceeds `tol`.
    pub relative_margin: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomainReport {
    pub in_domain: bool,
    /// Inverse nodes in evaluation order, up to and including the first
    /// failure.
    pub diagnostics: Vec<InverseDiagnostic>,
    pub error: Option<EvalError>,
}

impl DomainReport {
    pub fn min_relative_margin(&self) -> Option<f64> {
        self.diagnostics.iter().map(|d| d.relative_margin).reduce(f64::min)
    }
}

struct Evaluator<'a> {
    tuple: &'a MatrixTuple,
    tol: f64,
    diagnostics: Option<Vec<InverseDiagnostic>>,
}

impl Evaluator<'_> {
    fn leaf(&self, index: usize) -> Result<&ComplexMatrix, EvalError> {
        self.tuple
            .get(index)
            .ok_or(EvalError::MissingVariable { index, available: self.tuple.len() })
    }

    fn rms(m: &ComplexMatrix) -> f64 {
        m.frobenius_norm() / (m.dim() as f64).sqrt()
    }

    /// Value and magnitude estimate.
    fn eval(&mut self, e: &Expression) -> Result<(ComplexMatrix, f64), EvalError> {
        Ok(match e {
            Expression::ScalarLiteral(c) => (ComplexMatrix::scalar(self.tuple.dim(), *c), c.norm()),
            Expression::Variable(i) => {
                let m = self.leaf(*i)?;
                (m.clone(), Self::rms(m))
            }
            Expression::AdjointVariable(i) => {
                let m = self.leaf(*i)?;
                (m.adjoint(), Self::rms(m))
            }
            Expression::Sum(a, b) => {
                let (va, ma) = self.eval(a)?;
                let (vb, mb) = self.eval(b)?;
                (va.add(&vb)?, ma + mb)
            }
            Expression::Difference(a, b) => {
                let (va, ma) = self.eval(a)?;
                let (vb, mb) = self.eval(b)?;
                (va.sub(&vb)?, ma + mb)
            }
            Expression::Product(a, b) => {
                let (va, ma) = self.eval(a)?;
                let (vb, mb) = self.eval(b)?;
                (va.mul(&vb)?, ma * mb)
            }
            Expression::Negation(a) => {
                let (va, ma) = self.eval(a)?;
                (va.neg(), ma)
            }
            Expression::Inverse(a) => {
                let (va, ma) = self.eval(a)?;
                let outcome = va.invert_with_reference(self.tol, ma);
                let (sigma_min, sigma_max) = match &outcome {
                    Ok(r) => (r.smallest_singular_value, r.largest_singular_value),
                    Err(s) => (s.sigma_min, s.sigma_max),
                };
                if let Some(diag) = self.diagnostics.as_mut() {
                    let reference = sigma_max.max(ma);
                    diag.push(InverseDiagnostic {
                        subexpression: e.clone(),
                        sigma_min,
                        sigma_max,
                        reference_scale: ma,
                        relative_margin: if reference > 0.0 { sigma_min / reference } else { 0.0 },
                        passed: outcome.is_ok(),
                    });
                }
                match outcome {
                    Ok(r) => {
                        let mag = 1.0 / r.smallest_singular_value;
                        (r.inverse, mag)
                    }
                    Err(s) => {
                        return Err(DomainError {
                            failing_subexpression: Some(e.clone()),
                            sigma_min: s.sigma_min,
                            sigma_max: s.sigma_max,
                        }
                        .into())
                    }
                }
            }
        })
    }
}

/// Evaluates `e` at `t`, inverting with relative threshold `tol`.
pub fn evaluate(e: &Expression, t: &MatrixTuple, tol: f64) -> Result<ComplexMatrix, EvalError> {
    let mut ev = Evaluator { tuple: t, tol, diagnostics: None };
    ev.eval(e).map(|(v, _)| v)
}

/// Evaluates and returns the value together with the magnitude estimate used
/// for the cancellation-aware inverse threshold.
pub fn evaluate_with_magnitude(e: &Expression, t: &MatrixTuple, tol: f64) -> Result<(ComplexMatrix, f64), EvalError> {
    let mut ev = Evaluator { tuple: t, tol, diagnostics: None };
    ev.eval(e)
}

/// Domain membership with per-inverse margins.
pub fn in_domain(e: &Expression, t: &MatrixTuple, tol: f64) -> DomainReport {
    let (report, _) = evaluate_with_diagnostics(e, t, tol);
    report
}

/// Evaluates once, returning both the domain report and the value when
/// defined.
pub fn evaluate_with_diagnostics(e: &Expression, t: &MatrixTuple, tol: f64) -> (DomainReport, Option<ComplexMatrix>) {
    let mut ev = Evaluator { tuple: t, tol, diagnostics: Some(Vec::new()) };
    let result = ev.eval(e);
    let diagnostics = ev.diagnostics.take().unwrap_or_default();
    match result {
        Ok((v, _)) => (DomainReport { in_domain: true, diagnostics, error: None }, Some(v)),
        Err(err) => (DomainReport { in_domain: false, diagnostics, error: Some(err) }, None),
    }
}

/// `||e(t)^-1||` through the identity
/// `||r^-1|| = sqrt(1 / (R - ||R I - r r*||))` with `R = ||r r*||`, using only
/// operator norms.
pub fn inverse_norm_via_gap(e: &Expression, t: &MatrixTuple) -> Result<f64, EvalError> {
    let r = evaluate(e, t, DEFAULT_TOL)?;
    let not_invertible = |sigma_min: f64, sigma_max: f64| DomainError {
        failing_subexpression: Some(e.clone().inv()),
        sigma_min,
        sigma_max,
    };
    if let Err(s) = r.invert(DEFAULT_TOL) {
        return Err(not_invertible(s.sigma_min, s.sigma_max).into());
    }
    let gram = r.mul(&r.adjoint())?;
    let radius = gram.hermitian_part().operator_norm();
    let gap = matrix::smallest_spectral_point_psd(&gram)?;
    if !(gap > DEFAULT_TOL * DEFAULT_TOL * radius) {
        return Err(not_invertible(gap.max(0.0).sqrt(), radius.sqrt()).into());
    }
    Ok((1.0 / gap).sqrt())
}

/// Convenience: a tuple of scalar `1 x 1` matrices, i.e. commutative
/// evaluation.
pub fn scalar_tuple(values: &[Complex64]) -> MatrixTuple {
    MatrixTuple::new(values.iter().map(|v| ComplexMatrix::scalar(1, *v)).collect()).expect("non-empty scalar tuple")
}
