//! JSON matrix files: `{"rows": r, "cols": c, "data": [[re, im], ...]}`, row-major.

use std::fs;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numlin::Matrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &Matrix<f64>) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix<f64>> {
        if self.data.len() != self.rows * self.cols {
            return Err(Error::Format(format!(
                "expected {}x{} = {} entries, found {}",
                self.rows,
                self.cols,
                self.rows * self.cols,
                self.data.len()
            )));
        }
        if let Some(k) = self.data.iter().position(|[re, im]| !re.is_finite() || !im.is_finite()) {
            return Err(Error::NonFinite { index: k });
        }
        Matrix::from_vec(self.rows, self.cols, self.data.iter().map(|&[re, im]| Complex::new(re, im)).collect())
    }
}

/// Compact JSON followed by a newline.
pub fn matrix_to_string(m: &Matrix<f64>) -> Result<String> {
    if let Some(k) = m.data().iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite { index: k });
    }
    let mut s = serde_json::to_string(&MatrixFile::from_matrix(m)).map_err(|e| Error::Format(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn matrix_from_str(s: &str) -> Result<Matrix<f64>> {
    let file: MatrixFile = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
    file.to_matrix()
}

pub fn write_matrix(path: impl AsRef<Path>, m: &Matrix<f64>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, matrix_to_string(m)?).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<Matrix<f64>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    matrix_from_str(&text)
}
