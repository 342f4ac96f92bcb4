//! Realizations `r = u A^-1 v` with polynomial entries.
//!
//! [`realize`] works by structural recursion on the expression:
//!
//! | node            | u              | A                           | v              | d         |
//! |-----------------|----------------|-----------------------------|----------------|-----------|
//! | scalar `c`      | `[1]`          | `[1]`                       | `[c]`          | 1         |
//! | letter `x`      | `[1]`          | `[1]`                       | `[x]`          | 1         |
//! | `r1 + r2`       | `[u1 u2]`      | `diag(A1, A2)`              | `[v1; v2]`     | d1 + d2   |
//! | `r1 r2`         | `[u1 0]`       | `[[A1, -v1 u2], [0, A2]]`   | `[0; v2]`      | d1 + d2   |
//! | `r1^-1`         | `[0 .. 0 -1]`  | `[[A1, v1], [u1, 0]]`       | `[0 .. 0; 1]`  | d1 + 1    |
//! | `-r1`           | `u1`           | `A1`                        | `-v1`          | d1        |
//!
//! The inverse rule rests on the Schur complement of the zero corner block,
//! `0 - u1 A1^-1 v1 = -r1`. No entry ever contains a formal inverse; `u` stays
//! scalar and entries of `A` and `v` have degree at most one.

use std::collections::BTreeMap;

use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ensembles::ginibre_tuple;
use crate::eval::{evaluate, DomainError, EvalError, MatrixTuple};
use crate::expr::{Expression, Letter};
use crate::matrix::{relative_deviation, ComplexMatrix};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Non-commutative polynomial: coefficients indexed by words over the letters
/// `x_i`, `x_i'`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Vec<Letter>, Complex64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn letter(l: Letter) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![l], ONE);
        p
    }

    fn add_term(&mut self, word: Vec<Letter>, c: Complex64) {
        if c == ZERO {
            return;
        }
        let entry = self.terms.entry(word).or_insert(ZERO);
        *entry += c;
        if *entry == ZERO {
            self.terms.retain(|_, v| *v != ZERO);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Letter], Complex64)> {
        self.terms.iter().map(|(w, c)| (w.as_slice(), *c))
    }

    /// Longest word length; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        Polynomial { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    fn max_index(&self) -> usize {
        self.terms.keys().flatten().map(|l| l.index).max().unwrap_or(0)
    }

    fn evaluate(&self, letters: &LetterValues) -> ComplexMatrix {
        let n = letters.dim;
        let mut acc = ComplexMatrix::zeros(n);
        for (word, c) in &self.terms {
            let mut term = ComplexMatrix::scalar(n, *c);
            for l in word {
                term = term.mul(letters.get(*l)).expect("uniform dimension");
            }
            acc = acc.add(&term).expect("uniform dimension");
        }
        acc
    }
}

/// Dense `rows x cols` matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Polynomial::zero(); rows * cols] }
    }

    fn single(p: Polynomial) -> Self {
        PolyMatrix { rows: 1, cols: 1, entries: vec![p] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.cols + j] = p;
    }

    /// Copies `block` with its top-left corner at `(r0, c0)`.
    fn paste(&mut self, r0: usize, c0: usize, block: &PolyMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    fn neg(&self) -> Self {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(Polynomial::neg).collect() }
    }

    fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero();
                for k in 0..self.cols {
                    for (w, c) in self.get(i, k).mul(other.get(k, j)).terms.into_iter() {
                        acc.add_term(w, c);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Nonzero entries as `(row, col, polynomial)`.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Polynomial)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(move |(k, p)| (k / self.cols, k % self.cols, p))
    }

    pub fn max_degree(&self) -> usize {
        self.entries.iter().map(Polynomial::degree).max().unwrap_or(0)
    }

    fn max_index(&self) -> usize {
        self.entries.iter().map(Polynomial::max_index).max().unwrap_or(0)
    }

    /// Substitutes the tuple: each entry becomes an `n x n` block.
    fn instantiate(&self, letters: &LetterValues) -> Mat<Complex64> {
        let n = letters.dim;
        let mut out = Mat::<Complex64>::zeros(self.rows * n, self.cols * n);
        for (i, j, p) in self.nonzero_entries() {
            let block = p.evaluate(letters);
            for bi in 0..n {
                for bj in 0..n {
                    out[(i * n + bi, j * n + bj)] = block.get(bi, bj);
                }
            }
        }
        out
    }
}

/// Matrices (and adjoints) for every letter in use.
struct LetterValues {
    dim: usize,
    plain: Vec<ComplexMatrix>,
    adjoint: Vec<ComplexMatrix>,
}

impl LetterValues {
    fn new(t: &MatrixTuple, needed: usize) -> Result<Self, EvalError> {
        if needed > t.len() {
            return Err(EvalError::MissingVariable { index: needed, available: t.len() });
        }
        let plain: Vec<ComplexMatrix> = t.matrices()[..needed].to_vec();
        let adjoint = plain.iter().map(ComplexMatrix::adjoint).collect();
        Ok(LetterValues { dim: t.dim(), plain, adjoint })
    }

    fn get(&self, l: Letter) -> &ComplexMatrix {
        if l.adjoint {
            &self.adjoint[l.index - 1]
        } else {
            &self.plain[l.index - 1]
        }
    }
}

/// `r = u A^-1 v` with `u` of size `1 x d`, `A` of size `d x d`, `v` of size `d x 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub u: PolyMatrix,
    pub a: PolyMatrix,
    pub v: PolyMatrix,
}

impl Realization {
    pub fn dim(&self) -> usize {
        self.a.rows
    }

    fn leaf(p: Polynomial) -> Self {
        Realization {
            u: PolyMatrix::single(Polynomial::constant(ONE)),
            a: PolyMatrix::single(Polynomial::constant(ONE)),
            v: PolyMatrix::single(p),
        }
    }

    fn sum(r1: Realization, r2: Realization) -> Self {
        let (d1, d2) = (r1.dim(), r2.dim());
        let d = d1 + d2;
        let mut u = PolyMatrix::zeros(1, d);
        u.paste(0, 0, &r1.u);
        u.paste(0, d1, &r2.u);
        let mut a = PolyMatrix::zeros(d, d);
        a.paste(0, 0, &r1.a);
        a.paste(d1, d1, &r2.a);
        let mut v = PolyMatrix::zeros(d, 1);
        v.paste(0, 0, &r1.v);
        v.paste(d1, 0, &r2.v);
        Realization { u, a, v }
    }

    fn product(r1: Realization, r2: Realization) -> Self {
        let (d1, d2) = (r1.dim(), r2.dim());
        let d = d1 + d2;
        let mut u = PolyMatrix::zeros(1, d);
        u.paste(0, 0, &r1.u);
        let mut a = PolyMatrix::zeros(d, d);
        a.paste(0, 0, &r1.a);
        a.paste(0, d1, &r1.v.mul(&r2.u).neg());
        a.paste(d1, d1, &r2.a);
        let mut v = PolyMatrix::zeros(d, 1);
        v.paste(d1, 0, &r2.v);
        Realization { u, a, v }
    }

    fn inverse(r1: Realization) -> Self {
        let d1 = r1.dim();
        let d = d1 + 1;
        let mut u = PolyMatrix::zeros(1, d);
        u.set(0, d1, Polynomial::constant(-ONE));
        let mut a = PolyMatrix::zeros(d, d);
        a.paste(0, 0, &r1.a);
        a.paste(0, d1, &r1.v);
        a.paste(d1, 0, &r1.u);
        let mut v = PolyMatrix::zeros(d, 1);
        v.set(d1, 0, Polynomial::constant(ONE));
        Realization { u, a, v }
    }

    fn negate(r1: Realization) -> Self {
        Realization { v: r1.v.neg(), ..r1 }
    }

    /// Highest variable index mentioned by any entry.
    pub fn num_variables(&self) -> usize {
        self.u.max_index().max(self.a.max_index()).max(self.v.max_index())
    }
}

/// Builds a realization of `e` by structural recursion.
pub fn realize(e: &Expression) -> Realization {
    match e {
        Expression::ScalarLiteral(c) => Realization::leaf(Polynomial::constant(*c)),
        Expression::Variable(i) => Realization::leaf(Polynomial::letter(Letter::new(*i, false))),
        Expression::AdjointVariable(i) => Realization::leaf(Polynomial::letter(Letter::new(*i, true))),
        Expression::Sum(a, b) => Realization::sum(realize(a), realize(b)),
        Expression::Difference(a, b) => Realization::sum(realize(a), Realization::negate(realize(b))),
        Expression::Product(a, b) => Realization::product(realize(a), realize(b)),
        Expression::Negation(a) => Realization::negate(realize(a)),
        Expression::Inverse(a) => Realization::inverse(realize(a)),
    }
}

/// The pencil `A(t)` as a `(d n) x (d n)` matrix.
pub fn instantiate_pencil(r: &Realization, t: &MatrixTuple) -> Result<ComplexMatrix, EvalError> {
    let letters = LetterValues::new(t, r.num_variables())?;
    Ok(ComplexMatrix::from_faer(r.a.instantiate(&letters)))
}

/// `u(t) A(t)^-1 v(t)`; fails when `A(t)` is singular at `tol`.
pub fn evaluate_realization(r: &Realization, t: &MatrixTuple, tol: f64) -> Result<ComplexMatrix, EvalError> {
    let letters = LetterValues::new(t, r.num_variables())?;
    let pencil = ComplexMatrix::from_faer(r.a.instantiate(&letters));
    let inv = pencil.invert(tol).map_err(|s| DomainError {
        failing_subexpression: None,
        sigma_min: s.sigma_min,
        sigma_max: s.sigma_max,
    })?;
    let u = r.u.instantiate(&letters);
    let v = r.v.instantiate(&letters);
    Ok(ComplexMatrix::from_faer(&u * inv.inverse.as_faer() * &v))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub trials: u64,
    pub dim: usize,
    pub seed: u64,
    /// Tuples where both the expression and the realization are defined.
    pub common_domain_points: u64,
    /// Tuples where neither is defined.
    pub both_undefined: u64,
    /// Trial numbers where exactly one side is defined.
    pub domain_mismatches: Vec<u64>,
    pub max_relative_error: f64,
}

impl VerificationReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.domain_mismatches.is_empty() && self.max_relative_error <= tol
    }
}

/// Compares `evaluate(e)` with `evaluate_realization(r)` on `trials` seeded
/// Ginibre tuples of size `n`.
pub fn verify_realization(e: &Expression, r: &Realization, trials: u64, n: usize, seed: u64) -> VerificationReport {
    verify_realization_at(e, r, trials, n, seed, crate::matrix::DEFAULT_TOL)
}

pub fn verify_realization_at(
    e: &Expression,
    r: &Realization,
    trials: u64,
    n: usize,
    seed: u64,
    tol: f64,
) -> VerificationReport {
    let m = e.inventory().num_variables.max(r.num_variables()).max(1);
    let mut report = VerificationReport {
        trials,
        dim: n,
        seed,
        common_domain_points: 0,
        both_undefined: 0,
        domain_mismatches: Vec::new(),
        max_relative_error: 0.0,
    };
    for trial in 0..trials {
        let t = ginibre_tuple(m, n, seed, trial);
        match (evaluate(e, &t, tol), evaluate_realization(r, &t, tol)) {
            (Ok(x), Ok(y)) => {
                report.common_domain_points += 1;
                let dev = relative_deviation(&x, &y).unwrap_or(f64::INFINITY);
                report.max_relative_error = report.max_relative_error.max(dev);
            }
            (Err(_), Err(_)) => report.both_undefined += 1,
            _ => report.domain_mismatches.push(trial),
        }
    }
    report
}

/// JSON shape of a realization: sparse entries with `[re, im]` coefficients
/// and words spelled as letter names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealizationJson {
    pub d: usize,
    pub u: Vec<SparseEntry>,
    pub a: Vec<SparseEntry>,
    pub v: Vec<SparseEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseEntry {
    pub row: usize,
    pub col: usize,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: [f64; 2],
    pub word: Vec<String>,
}

impl From<&Realization> for RealizationJson {
    fn from(r: &Realization) -> Self {
        fn sparse(m: &PolyMatrix) -> Vec<SparseEntry> {
            m.nonzero_entries()
                .map(|(row, col, p)| SparseEntry {
                    row,
                    col,
                    terms: p
                        .terms()
                        .map(|(w, c)| Term { coeff: [c.re, c.im], word: w.iter().map(Letter::to_string).collect() })
                        .collect(),
                })
                .collect()
        }
        RealizationJson { d: r.dim(), u: sparse(&r.u), a: sparse(&r.a), v: sparse(&r.v) }
    }
}
