//! File formats shared by the library and the command line.
//!
//! Complex numbers are `[re, im]` pairs everywhere. Every top-level JSON
//! document carries `"format_version": 1`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eval::MatrixTuple;
use crate::matrix::{ComplexMatrix, MatrixError};

pub const FORMAT_VERSION: u32 = 1;

/// Serde adapter: `Complex64` as `[re, im]`.
pub mod complex_pair {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(Complex64::new(re, im))
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format_version {0}")]
    Version(u32),
    #[error("invalid matrix file: {0}")]
    Shape(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `{format_version, n, matrices: [[[ [re, im], ... ], ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(default = "default_version")]
    pub format_version: u32,
    pub n: usize,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

impl MatrixFile {
    pub fn from_matrices(ms: &[ComplexMatrix]) -> Self {
        let n = ms.first().map(ComplexMatrix::dim).unwrap_or(0);
        MatrixFile {
            format_version: FORMAT_VERSION,
            n,
            matrices: ms
                .iter()
                .map(|m| m.rows().into_iter().map(|row| row.into_iter().map(|z| [z.re, z.im]).collect()).collect())
                .collect(),
        }
    }

    pub fn to_matrices(&self) -> Result<Vec<ComplexMatrix>, FormatError> {
        if self.format_version != FORMAT_VERSION {
            return Err(FormatError::Version(self.format_version));
        }
        self.matrices
            .iter()
            .enumerate()
            .map(|(k, grid)| {
                if grid.len() != self.n || grid.iter().any(|r| r.len() != self.n) {
                    return Err(FormatError::Shape(format!("matrix {k} is not {n}x{n}", n = self.n)));
                }
                let rows: Vec<Vec<Complex64>> =
                    grid.iter().map(|r| r.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()).collect();
                Ok(ComplexMatrix::from_rows(&rows)?)
            })
            .collect()
    }

    pub fn to_tuple(&self) -> Result<MatrixTuple, FormatError> {
        if self.matrices.is_empty() {
            if self.n == 0 {
                return Err(FormatError::Shape("n must be positive".into()));
            }
            return Ok(MatrixTuple::constant(self.n));
        }
        Ok(MatrixTuple::new(self.to_matrices()?)?)
    }

    pub fn read(path: &std::path::Path) -> Result<Self, FormatError> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Formats a float with 17 significant digits, round-trippable.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_file_round_trip() {
        let m = ComplexMatrix::from_fn(2, |i, j| Complex64::new(i as f64, j as f64 - 0.5));
        let file = MatrixFile::from_matrices(std::slice::from_ref(&m));
        let json = serde_json::to_string(&file).unwrap();
        assert!(json.starts_with(r#"{"format_version":1,"n":2,"#));
        let back: MatrixFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_matrices().unwrap(), vec![m]);
    }

    #[test]
    fn ragged_matrix_file_is_rejected() {
        let file: MatrixFile = serde_json::from_str(r#"{"n":2,"matrices":[[[[1,0],[0,0]],[[0,0]]]]}"#).unwrap();
        assert!(matches!(file.to_matrices(), Err(FormatError::Shape(_))));
    }

    #[test]
    fn seventeen_significant_digits() {
        let x = 0.1 + 0.2;
        let s = format_f64(x);
        assert_eq!(s, "3.0000000000000004e-1");
        assert_eq!(s.parse::<f64>().unwrap(), x);
    }
}
