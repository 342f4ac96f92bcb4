//! Dense complex matrices: arithmetic, guarded inversion, spectral norms and
//! block inversion through the Schur complement.
//!
//! Heavy kernels (LU, SVD, Hermitian eigenvalues, products) run on `faer`.
//! Up to [`DENSE_SPECTRAL_LIMIT`] the spectral quantities come from a full
//! decomposition; beyond it from seeded power iteration.

use faer::linalg::solvers::DenseSolveCore;
use faer::{Mat, MatRef, Side};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Largest dimension for which spectral quantities use a full decomposition.
pub const DENSE_SPECTRAL_LIMIT: usize = 512;
/// Default relative invertibility threshold: `sigma_min > tol * sigma_max`.
pub const DEFAULT_TOL: f64 = 1e-8;

const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITER: usize = 10_000;
const HERMITIAN_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("matrix is not invertible at the requested tolerance (sigma_min = {sigma_min:e}, sigma_max = {sigma_max:e})")]
pub struct SingularError {
    pub sigma_min: f64,
    pub sigma_max: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix must be non-empty and rectangular, got {0}")]
    Shape(String),
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is not Hermitian (relative defect {defect:e})")]
    NotHermitian { defect: f64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchurError {
    #[error(transparent)]
    Shape(#[from] MatrixError),
    #[error("lower-right block is singular: {0}")]
    SingularPivot(SingularError),
    #[error("Schur complement is singular: {0}")]
    SingularComplement(SingularError),
}

/// Square `n x n` complex matrix, `n >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: Mat<Complex64>,
}

/// Rectangular complex matrix, used for the off-diagonal Schur blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct RectMatrix {
    inner: Mat<Complex64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InversionResult {
    pub inverse: ComplexMatrix,
    pub smallest_singular_value: f64,
    pub largest_singular_value: f64,
    /// `sigma_min / sigma_max`, in `[0, 1]`.
    pub reciprocal_condition: f64,
}

impl ComplexMatrix {
    pub(crate) fn from_faer(inner: Mat<Complex64>) -> Self {
        debug_assert_eq!(inner.nrows(), inner.ncols());
        debug_assert!(inner.nrows() >= 1);
        ComplexMatrix { inner }
    }

    pub(crate) fn as_faer(&self) -> MatRef<'_, Complex64> {
        self.inner.as_ref()
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        Self::from_faer(Mat::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        Self::from_faer(Mat::identity(n, n))
    }

    /// `value * I_n`.
    pub fn scalar(n: usize, value: Complex64) -> Self {
        Self::from_fn(n, |i, j| if i == j { value } else { ZERO })
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        Self::from_faer(Mat::from_fn(n, n, f))
    }

    pub fn diag(values: &[Complex64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { ZERO })
    }

    pub fn diag_real(values: &[f64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { Complex64::new(values[i], 0.0) } else { ZERO })
    }

    /// Builds a matrix from row-major rows, checking squareness and finiteness.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, MatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(MatrixError::Shape("0 rows".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(MatrixError::Shape(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, z) in row.iter().enumerate() {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(MatrixError::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim()).map(|i| (0..self.dim()).map(|j| self.inner[(i, j)]).collect()).collect()
    }

    pub fn is_finite(&self) -> bool {
        let n = self.dim();
        (0..n).all(|j| (0..n).all(|i| self.inner[(i, j)].is_finite()))
    }

    fn check_same_dim(&self, other: &Self, op: &'static str) -> Result<(), MatrixError> {
        if self.dim() != other.dim() {
            return Err(MatrixError::DimensionMismatch {
                op,
                left: (self.dim(), self.dim()),
                right: (other.dim(), other.dim()),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_dim(other, "add")?;
        Ok(Self::from_faer(&self.inner + &other.inner))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_dim(other, "sub")?;
        Ok(Self::from_faer(&self.inner - &other.inner))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_dim(other, "mul")?;
        Ok(Self::from_faer(&self.inner * &other.inner))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let n = self.dim();
        Self::from_faer(Mat::from_fn(n, n, |i, j| c * self.inner[(i, j)]))
    }

    pub fn neg(&self) -> Self {
        let n = self.dim();
        Self::from_faer(Mat::from_fn(n, n, |i, j| -self.inner[(i, j)]))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_faer(self.inner.adjoint().to_owned())
    }

    /// `self + c * I`.
    pub fn shift(&self, c: Complex64) -> Self {
        let mut m = self.inner.clone();
        for i in 0..self.dim() {
            m[(i, i)] += c;
        }
        Self::from_faer(m)
    }

    /// Block diagonal `[[a, 0], [0, b]]`.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let k = a.dim();
        Self::from_fn(k + b.dim(), |i, j| match (i < k, j < k) {
            (true, true) => a.inner[(i, j)],
            (false, false) => b.inner[(i - k, j - k)],
            _ => ZERO,
        })
    }

    /// Exact Hermitian symmetry, entry by entry.
    pub fn is_hermitian(&self) -> bool {
        let n = self.dim();
        (0..n).all(|j| (j..n).all(|i| self.inner[(i, j)] == self.inner[(j, i)].conj()))
    }

    /// `||a - a*||_F / ||a||_F` (0 for the zero matrix).
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let mut defect = 0.0;
        for j in 0..n {
            for i in 0..n {
                defect += (self.inner[(i, j)] - self.inner[(j, i)].conj()).norm_sqr();
            }
        }
        let norm = self.frobenius_norm();
        if norm == 0.0 {
            0.0
        } else {
            defect.sqrt() / norm
        }
    }

    /// `(a + a*) / 2`, exactly Hermitian.
    pub fn hermitian_part(&self) -> Self {
        let n = self.dim();
        Self::from_fn(n, |i, j| (self.inner[(i, j)] + self.inner[(j, i)].conj()).scale(0.5))
    }

    pub fn frobenius_norm(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for j in 0..n {
            for i in 0..n {
                acc += self.inner[(i, j)].norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `(1/n) * sum of diagonal entries`.
    pub fn normalized_trace(&self) -> Complex64 {
        let n = self.dim();
        let sum: Complex64 = (0..n).map(|i| self.inner[(i, i)]).sum();
        sum / n as f64
    }

    /// Eigenvalues of a Hermitian matrix in nondecreasing order. Only the lower
    /// triangle is read; the caller guarantees symmetry.
    fn hermitian_eigenvalues_unchecked(&self) -> Vec<f64> {
        match self.inner.self_adjoint_eigenvalues(Side::Lower) {
            Ok(v) => v,
            Err(_) => vec![f64::NAN; self.dim()],
        }
    }

    /// Eigenvalues in nondecreasing order; rejects non-Hermitian input.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>, MatrixError> {
        let defect = self.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(MatrixError::NotHermitian { defect });
        }
        Ok(self.hermitian_part().hermitian_eigenvalues_unchecked())
    }

    /// All singular values, nonincreasing.
    pub fn singular_values(&self) -> Vec<f64> {
        if self.is_hermitian() {
            let mut sv: Vec<f64> = self.hermitian_eigenvalues_unchecked().iter().map(|x| x.abs()).collect();
            sv.sort_by(|a, b| b.total_cmp(a));
            return sv;
        }
        match self.inner.singular_values() {
            Ok(v) => v,
            Err(_) => vec![f64::NAN; self.dim()],
        }
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        let n = self.dim();
        if n <= DENSE_SPECTRAL_LIMIT {
            if self.is_hermitian() {
                return self
                    .hermitian_eigenvalues_unchecked()
                    .iter()
                    .fold(0.0_f64, |m, x| m.max(x.abs()));
            }
            let gram = Self::from_faer(self.inner.adjoint() * &self.inner);
            let top = gram.hermitian_eigenvalues_unchecked().last().copied().unwrap_or(0.0);
            top.max(0.0).sqrt()
        } else {
            self.operator_norm_power()
        }
    }

    /// Power iteration on `a* a` from a seeded start vector. Stops when the
    /// estimate changes by less than `1e-12` relative, or after 10000 steps;
    /// converges slowly when the top singular values are clustered.
    pub fn operator_norm_power(&self) -> f64 {
        let n = self.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(0x6e6f_726d ^ n as u64);
        let mut x = Mat::<Complex64>::from_fn(n, 1, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        let mut lambda = 0.0_f64;
        for _ in 0..POWER_MAX_ITER {
            let norm_x = col_norm(&x);
            if norm_x == 0.0 {
                return 0.0;
            }
            x = Mat::from_fn(n, 1, |i, _| x[(i, 0)] / norm_x);
            let ax = &self.inner * &x;
            let next = col_norm(&ax).powi(2);
            let done = (next - lambda).abs() <= POWER_TOL * next;
            lambda = next;
            if done || lambda == 0.0 {
                break;
            }
            x = self.inner.adjoint() * &ax;
        }
        lambda.sqrt()
    }

    /// Inverts when `sigma_min > tol * sigma_max`.
    pub fn invert(&self, tol: f64) -> Result<InversionResult, SingularError> {
        self.invert_with_reference(tol, 0.0)
    }

    /// Like [`invert`](Self::invert) but with threshold
    /// `sigma_min > tol * max(sigma_max, reference_scale)`. The reference scale
    /// is the magnitude of the terms the matrix was computed from; it catches
    /// results that are zero up to cancellation error.
    pub fn invert_with_reference(&self, tol: f64, reference_scale: f64) -> Result<InversionResult, SingularError> {
        let n = self.dim();
        let (sigma_min, sigma_max, inverse) = if n <= DENSE_SPECTRAL_LIMIT {
            let sv = self.singular_values();
            let sigma_max = sv.first().copied().unwrap_or(0.0);
            let sigma_min = sv.last().copied().unwrap_or(0.0);
            if !(sigma_min > tol * sigma_max.max(reference_scale)) {
                return Err(SingularError { sigma_min, sigma_max });
            }
            let inverse = self.inner.partial_piv_lu().inverse();
            (sigma_min, sigma_max, inverse)
        } else {
            let sigma_max = self.operator_norm();
            let inverse = self.inner.partial_piv_lu().inverse();
            let candidate = ComplexMatrix::from_faer(inverse);
            let sigma_min = if candidate.is_finite() {
                let inv_norm = candidate.operator_norm();
                if inv_norm > 0.0 { 1.0 / inv_norm } else { 0.0 }
            } else {
                0.0
            };
            if !(sigma_min > tol * sigma_max.max(reference_scale)) {
                return Err(SingularError { sigma_min, sigma_max });
            }
            (sigma_min, sigma_max, candidate.inner)
        };
        let inverse = ComplexMatrix::from_faer(inverse);
        if !inverse.is_finite() {
            return Err(SingularError { sigma_min: 0.0, sigma_max });
        }
        Ok(InversionResult {
            inverse,
            smallest_singular_value: sigma_min,
            largest_singular_value: sigma_max,
            reciprocal_condition: if sigma_max > 0.0 { (sigma_min / sigma_max).min(1.0) } else { 0.0 },
        })
    }
}

fn col_norm(x: &Mat<Complex64>) -> f64 {
    (0..x.nrows()).map(|i| x[(i, 0)].norm_sqr()).sum::<f64>().sqrt()
}

impl RectMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RectMatrix { inner: Mat::zeros(rows, cols) }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        RectMatrix { inner: Mat::from_fn(rows, cols, f) }
    }

    pub fn nrows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }
}

/// `||a - b||_F / max(1, ||a||_F, ||b||_F)`.
pub fn relative_deviation(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64, MatrixError> {
    let diff = a.sub(b)?;
    let scale = 1.0_f64.max(a.frobenius_norm()).max(b.frobenius_norm());
    Ok(diff.frobenius_norm() / scale)
}

/// Inverse of the block matrix `[[a, b], [c, d]]` assembled from the factored
/// form
///
/// ```text
/// [[1, 0], [-D^-1 C, 1]] * diag((A - B D^-1 C)^-1, D^-1) * [[1, -B D^-1], [0, 1]]
/// ```
///
/// Fails when `d` or the Schur complement `a - b d^-1 c` is singular at `tol`.
pub fn schur_block_inverse(
    a: &ComplexMatrix,
    b: &RectMatrix,
    c: &RectMatrix,
    d: &ComplexMatrix,
    tol: f64,
) -> Result<ComplexMatrix, SchurError> {
    let k = a.dim();
    let l = d.dim();
    if b.nrows() != k || b.ncols() != l {
        return Err(MatrixError::DimensionMismatch { op: "schur (B)", left: (k, l), right: (b.nrows(), b.ncols()) }.into());
    }
    if c.nrows() != l || c.ncols() != k {
        return Err(MatrixError::DimensionMismatch { op: "schur (C)", left: (l, k), right: (c.nrows(), c.ncols()) }.into());
    }
    let d_inv = d.invert(tol).map_err(SchurError::SingularPivot)?.inverse;
    let d_inv_c = d_inv.as_faer() * &c.inner;
    let b_d_inv = &b.inner * d_inv.as_faer();
    let complement = ComplexMatrix::from_faer(a.as_faer() - &b.inner * &d_inv_c);
    let s_inv = complement.invert(tol).map_err(SchurError::SingularComplement)?.inverse;

    let m = k + l;
    let lower = Mat::from_fn(m, m, |i, j| match (i < k, j < k) {
        (true, true) | (false, false) => if i == j { ONE } else { ZERO },
        (false, true) => -d_inv_c[(i - k, j)],
        (true, false) => ZERO,
    });
    let middle = ComplexMatrix::block_diag(&s_inv, &d_inv);
    let upper = Mat::from_fn(m, m, |i, j| match (i < k, j < k) {
        (true, true) | (false, false) => if i == j { ONE } else { ZERO },
        (true, false) => -b_d_inv[(i, j - k)],
        (false, true) => ZERO,
    });
    Ok(ComplexMatrix::from_faer(&lower * middle.as_faer() * &upper))
}

/// Assembles `[[a, b], [c, d]]`.
pub fn assemble_blocks(
    a: &ComplexMatrix,
    b: &RectMatrix,
    c: &RectMatrix,
    d: &ComplexMatrix,
) -> Result<ComplexMatrix, MatrixError> {
    let k = a.dim();
    let l = d.dim();
    if b.nrows() != k || b.ncols() != l || c.nrows() != l || c.ncols() != k {
        return Err(MatrixError::DimensionMismatch { op: "assemble", left: (k, l), right: (b.nrows(), c.nrows()) });
    }
    Ok(ComplexMatrix::from_fn(k + l, |i, j| match (i < k, j < k) {
        (true, true) => a.get(i, j),
        (true, false) => b.get(i, j - k),
        (false, true) => c.get(i - k, j),
        (false, false) => d.get(i - k, j - k),
    }))
}

/// Minimum of the spectrum of a Hermitian matrix computed with two norm
/// evaluations: with `R = ||p||`, `min sigma(p) = R - ||R I - p||`.
pub fn smallest_spectral_point_psd(p: &ComplexMatrix) -> Result<f64, MatrixError> {
    let defect = p.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(MatrixError::NotHermitian { defect });
    }
    let h = p.hermitian_part();
    let radius = h.operator_norm();
    let gap = h.neg().shift(Complex64::new(radius, 0.0)).operator_norm();
    Ok(radius - gap)
}
