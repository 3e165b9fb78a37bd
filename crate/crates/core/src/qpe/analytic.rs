//! Closed-form outcome statistics of phase estimation.
//!
//! For a single eigenphase `θ` and `n` ancilla qubits the register reads `x`
//! with probability
//!
//! ```text
//! p_n(x, θ) = 4^{-n} | sin(π(2^n θ - x)) / sin(π(2^n θ - x) / 2^n) |^2
//! ```
//!
//! which collapses to a Kronecker delta when `2^n θ` is an integer. An
//! ensemble of eigenphases mixes these distributions with the squared
//! overlaps of the initial vector.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Tolerance for treating `2^n θ` as an integer.
pub const INTEGER_PHASE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseEnsemble {
    phases: Vec<f64>,
    weights: Vec<f64>,
}

impl PhaseEnsemble {
    /// Weights are normalized here; they must be nonnegative with a positive sum.
    pub fn new(phases: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if phases.len() != weights.len() {
            return Err(Error::DimensionMismatch(format!("{} phases but {} weights", phases.len(), weights.len())));
        }
        if weights.iter().any(|&w| w.is_nan() || w < 0.0) {
            return Err(Error::InvalidArgument("weights must be nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if total.is_nan() || total <= 0.0 {
            return Err(Error::InvalidArgument("weights sum to zero".into()));
        }
        Ok(PhaseEnsemble { phases, weights: weights.into_iter().map(|w| w / total).collect() })
    }

    pub fn single(theta: f64) -> Self {
        PhaseEnsemble { phases: vec![theta], weights: vec![1.0] }
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn negated(&self) -> Self {
        PhaseEnsemble { phases: self.phases.iter().map(|t| -t).collect(), weights: self.weights.clone() }
    }
}

/// Probability vector over ancilla outcomes `0..2^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct AncillaDistribution {
    n: u32,
    p: Vec<f64>,
}

impl AncillaDistribution {
    pub fn from_probabilities(n: u32, p: Vec<f64>) -> Result<Self> {
        if p.len() != 1usize << n {
            return Err(Error::DimensionMismatch(format!("{} probabilities for {} ancilla qubits", p.len(), n)));
        }
        Ok(AncillaDistribution { n, p })
    }

    pub fn qubits(&self) -> u32 {
        self.n
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    /// Mass on outcomes whose most significant bit is 0 and 1.
    pub fn msb_marginal(&self) -> (f64, f64) {
        let half = self.p.len() / 2;
        let p0: f64 = self.p[..half].iter().sum();
        let p1: f64 = self.p[half..].iter().sum();
        (p0, p1)
    }

    /// Half the L1 distance.
    pub fn total_variation(&self, other: &AncillaDistribution) -> f64 {
        assert_eq!(self.p.len(), other.p.len());
        0.5 * self.p.iter().zip(&other.p).map(|(a, b)| (a - b).abs()).sum::<f64>()
    }
}

fn dim_for(n: u32) -> usize {
    assert!((1..=30).contains(&n), "ancilla count {n} outside 1..=30");
    1usize << n
}

/// Closed-form `p_n(x, θ)` for any integer `x`; periodic in `x` with period `2^n`.
pub fn phase_probability(theta: f64, n: u32, x: i64) -> f64 {
    let size = dim_for(n) as f64;
    let scaled = size * theta.rem_euclid(1.0);
    let nearest = scaled.round();
    if (scaled - nearest).abs() < INTEGER_PHASE_TOL {
        let peak = (nearest as i64).rem_euclid(size as i64);
        return if x.rem_euclid(size as i64) == peak { 1.0 } else { 0.0 };
    }
    let d = scaled - x as f64;
    let ratio = (PI * d).sin() / (PI * d / size).sin();
    ratio * ratio / (size * size)
}

pub fn single_phase_distribution(theta: f64, n: u32) -> AncillaDistribution {
    let size = dim_for(n);
    AncillaDistribution { n, p: (0..size as i64).map(|x| phase_probability(theta, n, x)).collect() }
}

pub fn ensemble_distribution(ensemble: &PhaseEnsemble, n: u32) -> AncillaDistribution {
    let size = dim_for(n);
    let mut p = vec![0.0; size];
    for (&theta, &w) in ensemble.phases.iter().zip(&ensemble.weights) {
        if w == 0.0 {
            continue;
        }
        for (x, px) in p.iter_mut().enumerate() {
            *px += w * phase_probability(theta, n, x as i64);
        }
    }
    let total: f64 = p.iter().sum();
    for px in p.iter_mut() {
        *px /= total;
    }
    AncillaDistribution { n, p }
}

/// `<σ_z>` on the most significant ancilla qubit: `P(msb = 0) - P(msb = 1)`.
pub fn sigma_z_expectation(dist: &AncillaDistribution) -> f64 {
    let (p0, p1) = dist.msb_marginal();
    p0 - p1
}
