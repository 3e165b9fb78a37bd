//! Trace-based bounds on the extreme eigenvalues and the O(N^2) definiteness test.
//!
//! With `r = Tr(M)/N` and `s^2 = Tr(M^2)/N - r^2`,
//!
//! ```text
//! r - s sqrt(N-1) <= λ_low  <= r - s / sqrt(N-1)
//! r + s / sqrt(N-1) <= λ_high <= r + s sqrt(N-1)
//! ```

use serde::{Deserialize, Serialize};

use crate::class::DefinitenessClass;
use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;

/// `(r, s)`: mean eigenvalue and eigenvalue spread, from traces only.
///
/// `Tr(M^2)` is accumulated as `Σ_ij M_ij M_ji`, never forming `M^2`.
pub fn trace_moments(m: &HermitianMatrix) -> (f64, f64) {
    let n = m.dim();
    let mut trace = 0.0;
    let mut trace_sq = 0.0;
    for i in 0..n {
        trace += m.get(i, i).re;
        for j in 0..n {
            trace_sq += (m.get(i, j) * m.get(j, i)).re;
        }
    }
    let nf = n as f64;
    let r = trace / nf;
    let s = (trace_sq / nf - r * r).max(0.0).sqrt();
    (r, s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralBounds {
    pub dim: usize,
    pub r: f64,
    pub s: f64,
    pub low_min: f64,
    pub low_max: f64,
    pub high_min: f64,
    pub high_max: f64,
}

impl SpectralBounds {
    pub fn from_moments(dim: usize, r: f64, s: f64) -> Self {
        if dim < 2 {
            // A 1x1 matrix has the single eigenvalue r.
            return SpectralBounds { dim, r, s, low_min: r, low_max: r, high_min: r, high_max: r };
        }
        let k = ((dim - 1) as f64).sqrt();
        SpectralBounds { dim, r, s, low_min: r - s * k, low_max: r - s / k, high_min: r + s / k, high_max: r + s * k }
    }

    pub fn negated(&self) -> Self {
        SpectralBounds {
            dim: self.dim,
            r: -self.r,
            s: self.s,
            low_min: -self.high_max,
            low_max: -self.high_min,
            high_min: -self.low_max,
            high_max: -self.low_min,
        }
    }
}

pub fn eigenvalue_bounds(m: &HermitianMatrix) -> SpectralBounds {
    let (r, s) = trace_moments(m);
    SpectralBounds::from_moments(m.dim(), r, s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalVerdict {
    pub class: DefinitenessClass,
    pub bounds: SpectralBounds,
}

impl ClassicalVerdict {
    pub fn is_conclusive(&self) -> bool {
        self.class != DefinitenessClass::Unclassified
    }

    /// Semi-definite outcomes are only candidates for their class.
    pub fn is_candidate(&self) -> bool {
        self.class.is_candidate()
    }
}

/// Decision cascade over precomputed bounds; zero comparisons use a `ztol` band.
pub fn classify_bounds(bounds: &SpectralBounds, ztol: f64) -> DefinitenessClass {
    let b = bounds;
    if b.high_max < -ztol {
        DefinitenessClass::NegativeDefinite
    } else if b.high_max <= ztol {
        DefinitenessClass::NegativeSemiDefinite
    } else if b.low_min > ztol {
        DefinitenessClass::PositiveDefinite
    } else if b.low_min >= -ztol {
        DefinitenessClass::PositiveSemiDefinite
    } else if b.low_max < -ztol && b.high_min > ztol {
        DefinitenessClass::Indefinite
    } else {
        DefinitenessClass::Unclassified
    }
}

pub fn classify_classical(m: &HermitianMatrix, ztol: f64) -> ClassicalVerdict {
    let bounds = eigenvalue_bounds(m);
    ClassicalVerdict { class: classify_bounds(&bounds, ztol), bounds }
}

/// `C = guard * 2 max(|low_min|, |high_max|)`, so every `|λ / C| <= 0.5 / guard`.
pub fn scale_constant(bounds: &SpectralBounds, guard: f64) -> Result<f64> {
    if guard.is_nan() || guard < 1.0 {
        return Err(Error::InvalidArgument(format!("guard must be >= 1, got {guard}")));
    }
    let c = guard * 2.0 * bounds.low_min.abs().max(bounds.high_max.abs());
    if c == 0.0 {
        return Err(Error::ZeroMatrix);
    }
    Ok(c)
}
