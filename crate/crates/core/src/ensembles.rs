//! Seeded random-matrix ensembles.
//!
//! Every sample is a pure function of `(seed, ensemble family, n, index,
//! trial)`: the tuple is hashed into a 256-bit ChaCha key, so draws do not
//! depend on the order in which trials or variables are sampled. Gaussians
//! come from Box-Muller on the ChaCha stream.
//!
//! Normalizations put the GUE spectrum on `[-2, 2]` (`tr_n(X^2) -> 1`) and give
//! Ginibre entries variance `1/n`.

use faer::Mat;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eval::MatrixTuple;
use crate::formats::complex_pair;
use crate::matrix::ComplexMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnsembleKind {
    Gue,
    Ginibre,
    HaarUnitary,
    /// `offset * I + GUE`; shares its random stream with [`EnsembleKind::Gue`].
    ShiftedGue {
        #[serde(with = "complex_pair")]
        offset: Complex64,
    },
    DiagonalConstant {
        #[serde(with = "complex_pair")]
        value: Complex64,
    },
}

impl EnsembleKind {
    /// Short name used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            EnsembleKind::Gue => "gue",
            EnsembleKind::Ginibre => "ginibre",
            EnsembleKind::HaarUnitary => "haar",
            EnsembleKind::ShiftedGue { .. } => "shifted-gue",
            EnsembleKind::DiagonalConstant { .. } => "diagconst",
        }
    }

    pub fn is_hermitian(&self) -> bool {
        match self {
            EnsembleKind::Gue => true,
            EnsembleKind::ShiftedGue { offset } => offset.im == 0.0,
            EnsembleKind::DiagonalConstant { value } => value.im == 0.0,
            EnsembleKind::Ginibre | EnsembleKind::HaarUnitary => false,
        }
    }

    fn family_tag(&self) -> u64 {
        match self {
            EnsembleKind::Gue | EnsembleKind::ShiftedGue { .. } => 1,
            EnsembleKind::Ginibre => 2,
            EnsembleKind::HaarUnitary => 3,
            EnsembleKind::DiagonalConstant { .. } => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    #[serde(flatten)]
    pub kind: EnsembleKind,
    pub dim: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, dim: usize, seed: u64) -> Self {
        assert!(dim >= 1, "ensemble dimension must be positive");
        EnsembleSpec { kind, dim, seed }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnsembleError {
    #[error("ensemble dimensions differ: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("an ensemble tuple needs at least one entry")]
    Empty,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Key of the substream for one matrix draw.
pub fn stream_key(seed: u64, kind: &EnsembleKind, n: usize, index: usize, trial: u64) -> [u8; 32] {
    let mut state = 0x6e63_7261_745f_7631;
    for word in [seed, kind.family_tag(), n as u64, index as u64, trial] {
        state ^= word;
        splitmix64(&mut state);
    }
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    key
}

/// Standard normals by Box-Muller.
struct Gaussian {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl Gaussian {
    fn new(key: [u8; 32]) -> Self {
        Gaussian { rng: ChaCha8Rng::from_seed(key), spare: None }
    }

    fn next(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.rng.random::<f64>();
        let u2 = self.rng.random::<f64>();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }
}

fn gue(n: usize, g: &mut Gaussian) -> ComplexMatrix {
    let off = 1.0 / (2.0 * n as f64).sqrt();
    let diag = 1.0 / (n as f64).sqrt();
    let mut m = Mat::<Complex64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(g.next() * diag, 0.0);
        for j in i + 1..n {
            let z = Complex64::new(g.next() * off, g.next() * off);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    ComplexMatrix::from_faer(m)
}

fn ginibre(n: usize, g: &mut Gaussian) -> Mat<Complex64> {
    let s = 1.0 / (2.0 * n as f64).sqrt();
    let mut m = Mat::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = Complex64::new(g.next() * s, g.next() * s);
        }
    }
    m
}

fn haar_unitary(n: usize, g: &mut Gaussian) -> ComplexMatrix {
    let z = ginibre(n, g);
    let qr = z.qr();
    let mut q = qr.compute_Q();
    let r = qr.R();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::from_faer(q)
}

/// Draws matrix number `index` of trial `trial`.
pub fn sample(spec: &EnsembleSpec, index: usize, trial: u64) -> ComplexMatrix {
    let n = spec.dim;
    let mut g = Gaussian::new(stream_key(spec.seed, &spec.kind, n, index, trial));
    match spec.kind {
        EnsembleKind::Gue => gue(n, &mut g),
        EnsembleKind::ShiftedGue { offset } => gue(n, &mut g).shift(offset),
        EnsembleKind::Ginibre => ComplexMatrix::from_faer(ginibre(n, &mut g)),
        EnsembleKind::HaarUnitary => haar_unitary(n, &mut g),
        EnsembleKind::DiagonalConstant { value } => ComplexMatrix::scalar(n, value),
    }
}

/// Samples one matrix per spec; entry `i` (0-based) is variable `x_{i+1}` and
/// uses substream index `i + 1`.
pub fn sample_tuple(specs: &[EnsembleSpec], trial: u64) -> Result<MatrixTuple, EnsembleError> {
    let first = specs.first().ok_or(EnsembleError::Empty)?;
    if let Some(bad) = specs.iter().find(|s| s.dim != first.dim) {
        return Err(EnsembleError::DimensionMismatch(first.dim, bad.dim));
    }
    let matrices = specs.iter().enumerate().map(|(i, s)| sample(s, i + 1, trial)).collect();
    Ok(MatrixTuple::new(matrices).expect("dimensions checked above"))
}

/// `m` independent Ginibre matrices of size `n`.
pub fn ginibre_tuple(m: usize, n: usize, seed: u64, trial: u64) -> MatrixTuple {
    let specs = vec![EnsembleSpec::new(EnsembleKind::Ginibre, n, seed); m.max(1)];
    sample_tuple(&specs, trial).expect("uniform dimensions")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_constant_is_scalar_matrix() {
        let v = Complex64::new(3.0, -1.0);
        let m = sample(&EnsembleSpec::new(EnsembleKind::DiagonalConstant { value: v }, 3, 1), 1, 0);
        assert_eq!(m, ComplexMatrix::scalar(3, v));
    }

    #[test]
    fn gue_is_exactly_hermitian() {
        let m = sample(&EnsembleSpec::new(EnsembleKind::Gue, 17, 5), 1, 3);
        assert!(m.is_hermitian());
        assert_eq!(m.sub(&m.adjoint()).unwrap().frobenius_norm(), 0.0);
    }

    #[test]
    fn shifted_gue_shares_the_gue_stream() {
        let offset = Complex64::new(3.0, 0.0);
        let base = sample(&EnsembleSpec::new(EnsembleKind::Gue, 8, 11), 1, 2);
        let shifted = sample(&EnsembleSpec::new(EnsembleKind::ShiftedGue { offset }, 8, 11), 1, 2);
        assert_eq!(shifted, base.shift(offset));
    }

    #[test]
    fn haar_is_unitary() {
        for n in [1, 2, 8, 33] {
            let u = sample(&EnsembleSpec::new(EnsembleKind::HaarUnitary, n, 4), 1, 0);
            let defect = u.adjoint().mul(&u).unwrap().sub(&ComplexMatrix::identity(n)).unwrap().operator_norm();
            assert!(defect <= 1e-12, "n={n}: {defect:e}");
        }
    }

    #[test]
    fn substreams_are_distinct_and_reproducible() {
        let spec = EnsembleSpec::new(EnsembleKind::Gue, 6, 42);
        let t = sample_tuple(&[spec, spec], 0).unwrap();
        assert_ne!(t.get(1), t.get(2));
        let again = sample_tuple(&[spec, spec], 0).unwrap();
        assert_eq!(t, again);
        assert_ne!(sample(&spec, 1, 0), sample(&spec, 1, 1));
    }

    #[test]
    fn tuple_dimension_mismatch() {
        let a = EnsembleSpec::new(EnsembleKind::Gue, 4, 1);
        let b = EnsembleSpec::new(EnsembleKind::Gue, 5, 1);
        assert_eq!(sample_tuple(&[a, b], 0).unwrap_err(), EnsembleError::DimensionMismatch(4, 5));
        assert_eq!(sample_tuple(&[], 0).unwrap_err(), EnsembleError::Empty);
    }

    #[test]
    fn kind_json_shape() {
        let k = EnsembleKind::ShiftedGue { offset: Complex64::new(3.0, 0.5) };
        let s = serde_json::to_string(&k).unwrap();
        assert_eq!(s, r#"{"kind":"shifted_gue","offset":[3.0,0.5]}"#);
        let spec: EnsembleSpec = serde_json::from_str(r#"{"kind":"gue","dim":4,"seed":7}"#).unwrap();
        assert_eq!(spec, EnsembleSpec::new(EnsembleKind::Gue, 4, 7));
    }
}
