//! Certified Hermitian matrices, zero padding and the JSON matrix file format.
//!
//! A [`HermitianMatrix`] can only be built through [`validate_hermitian`] (or the
//! infallible constructors for inputs that are Hermitian by construction), so
//! every downstream stage may assume `M = M^H` holds exactly.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Default relative tolerance for the Hermiticity check.
pub const DEFAULT_ATOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    inner: CMatrix,
    original_dim: usize,
}

impl HermitianMatrix {
    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Dimension before zero padding.
    pub fn original_dim(&self) -> usize {
        self.original_dim
    }

    pub fn is_padded(&self) -> bool {
        self.original_dim < self.dim()
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.inner
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    pub fn identity(dim: usize) -> Self {
        HermitianMatrix { inner: CMatrix::identity(dim), original_dim: dim }
    }

    pub fn zeros(dim: usize) -> Self {
        HermitianMatrix { inner: CMatrix::zeros(dim), original_dim: dim }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        HermitianMatrix { inner: CMatrix::from_diagonal(&d), original_dim: diag.len() }
    }

    /// Wraps a matrix that is Hermitian by construction (e.g. `V diag(λ) V^H`),
    /// averaging with its adjoint to remove rounding asymmetry.
    pub fn from_hermitian_parts(m: &CMatrix) -> Self {
        let n = m.dim();
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            }
        }
        HermitianMatrix { inner: out, original_dim: n }
    }

    pub fn neg(&self) -> Self {
        HermitianMatrix { inner: self.inner.scale(Complex64::new(-1.0, 0.0)), original_dim: self.original_dim }
    }

    /// Leading `original_dim` block, i.e. the matrix with padding stripped.
    pub fn unpadded(&self) -> Self {
        if !self.is_padded() {
            return self.clone();
        }
        let d = self.original_dim;
        let mut m = CMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = self.inner[(i, j)];
            }
        }
        HermitianMatrix { inner: m, original_dim: d }
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim()).map(|i| self.inner.row(i).to_vec()).collect()
    }
}

/// Checks `entries` for squareness and Hermiticity and returns the certified matrix.
///
/// The deviation `max |M_ij - conj(M_ji)|` must not exceed `atol * max |M_ij|`.
/// The returned matrix is the Hermitian part `(M + M^H) / 2`.
pub fn validate_hermitian(entries: &[Vec<Complex64>], atol: f64) -> Result<HermitianMatrix> {
    if atol.is_nan() || atol <= 0.0 {
        return Err(Error::InvalidArgument(format!("atol must be positive, got {atol}")));
    }
    let dim = entries.len();
    if dim == 0 {
        return Err(Error::Empty);
    }
    for (row, r) in entries.iter().enumerate() {
        if r.len() != dim {
            return Err(Error::NonSquare { row, len: r.len(), dim });
        }
    }
    let mut scale = 0.0f64;
    let mut deviation = 0.0f64;
    for (i, row) in entries.iter().enumerate() {
        for (j, &a) in row.iter().enumerate() {
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::InvalidArgument(format!("non-finite entry at ({i}, {j})")));
            }
            scale = scale.max(a.norm());
            deviation = deviation.max((a - entries[j][i].conj()).norm());
        }
    }
    let threshold = atol * scale;
    if deviation > threshold {
        return Err(Error::NotHermitian { deviation, threshold });
    }
    let flat: Vec<Complex64> = entries.iter().flatten().copied().collect();
    Ok(HermitianMatrix::from_hermitian_parts(&CMatrix::from_row_major(dim, flat)))
}

/// Embeds `m` in the next power-of-two dimension with zero rows and columns.
pub fn pad_to_power_of_two(m: &HermitianMatrix) -> HermitianMatrix {
    let d = m.dim();
    let n = d.next_power_of_two();
    if n == d {
        return m.clone();
    }
    let mut out = CMatrix::zeros(n);
    for i in 0..d {
        for j in 0..d {
            out[(i, j)] = m.get(i, j);
        }
    }
    HermitianMatrix { inner: out, original_dim: m.original_dim.min(d) }
}

/// On-disk representation: `{ "dim": d, "entries": [[[re, im], ...], ...], "label": "..." }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl MatrixRecord {
    pub fn from_matrix(m: &HermitianMatrix, label: Option<String>) -> Self {
        MatrixRecord {
            dim: m.dim(),
            entries: m.rows().into_iter().map(|r| r.into_iter().map(|z| [z.re, z.im]).collect()).collect(),
            label,
        }
    }

    pub fn complex_rows(&self) -> Result<Vec<Vec<Complex64>>> {
        if self.entries.len() != self.dim {
            return Err(Error::Parse(format!("\"dim\" is {} but {} rows were given", self.dim, self.entries.len())));
        }
        Ok(self.entries.iter().map(|r| r.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()).collect())
    }

    pub fn to_matrix(&self, atol: f64) -> Result<HermitianMatrix> {
        validate_hermitian(&self.complex_rows()?, atol)
    }
}

pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<MatrixRecord> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_sample_file(path: impl AsRef<Path>) -> Result<Vec<MatrixRecord>> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_sample_file(path: impl AsRef<Path>, records: &[MatrixRecord]) -> Result<()> {
    let mut text = serde_json::to_string(records)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
