//! Quantum definiteness test: repeated phase-estimation trials, shot-averaged
//! `<σ_z>` on the most significant ancilla qubit, and a symmetric threshold.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{scale_constant, SpectralBounds};
use crate::class::DefinitenessClass;
use crate::eigen::eigen_decompose;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::HermitianMatrix;
use crate::qpe::{ensemble_distribution, marginal_msb, sample_sigma_z, sigma_z_expectation, PhaseEnsemble, QpeCircuit};
use crate::rng::{substream, Rng, TAG_SHOTS, TAG_TRIAL};
use crate::sample::complex_gaussian;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum InitStrategy {
    /// Fresh complex Gaussian vector per trial.
    #[default]
    #[value(name = "random")]
    #[serde(rename = "random")]
    RandomComplex,
    /// `|0..0>`, `|1..1>` and the uniform superposition, cycled.
    #[value(name = "triple")]
    #[serde(rename = "triple")]
    FixedTriple,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuantumConfig {
    pub n: u32,
    pub trials: u32,
    pub shots: u32,
    pub delta: f64,
    pub guard: f64,
    pub init: InitStrategy,
    pub seed: u64,
}

impl Default for QuantumConfig {
    fn default() -> Self {
        QuantumConfig {
            n: 14,
            trials: 5,
            shots: 100,
            delta: 0.98,
            guard: 1.0,
            init: InitStrategy::RandomComplex,
            seed: 0,
        }
    }
}

impl QuantumConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=24).contains(&self.n) {
            return Err(Error::InvalidArgument(format!("n = {} outside 1..=24", self.n)));
        }
        if self.trials == 0 || self.shots == 0 {
            return Err(Error::InvalidArgument("trials and shots must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.delta) {
            return Err(Error::InvalidArgument(format!("delta = {} outside [0, 1]", self.delta)));
        }
        if self.guard.is_nan() || self.guard < 1.0 {
            return Err(Error::InvalidArgument(format!("guard = {} below 1", self.guard)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumVerdict {
    pub class: DefinitenessClass,
    pub mean_sigma: f64,
    pub per_trial_sigma: Vec<f64>,
}

/// Threshold rule, inclusive at `±delta`.
pub fn decide(mean_sigma: f64, delta: f64) -> DefinitenessClass {
    if mean_sigma >= delta {
        DefinitenessClass::PositiveSemiDefinite
    } else if mean_sigma <= -delta {
        DefinitenessClass::NegativeDefinite
    } else {
        DefinitenessClass::Indefinite
    }
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Unit vector with Gaussian entries in the first `original_dim` slots and
/// exact zeros in the padding.
pub fn random_b(dim: usize, original_dim: usize, rng: &mut Rng) -> Vec<Complex64> {
    assert!(1 <= original_dim && original_dim <= dim, "need 1 <= d <= N");
    loop {
        let mut b = vec![Complex64::new(0.0, 0.0); dim];
        for z in b.iter_mut().take(original_dim) {
            *z = complex_gaussian(rng);
        }
        let nrm = linalg::norm(&b);
        if nrm > 1e-150 {
            for z in b.iter_mut() {
                *z /= nrm;
            }
            return b;
        }
    }
}

/// `|0..0>`, `|1..1>` and `H^{⊗m}|0..0>` on `m` system qubits.
pub fn fixed_b_triple(m: u32, original_dim: usize) -> Result<[Vec<Complex64>; 3]> {
    let dim = 1usize << m;
    if original_dim != dim {
        return Err(Error::PaddedUnsupported { dim, original_dim });
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut first = vec![zero; dim];
    first[0] = Complex64::new(1.0, 0.0);
    let mut last = vec![zero; dim];
    last[dim - 1] = Complex64::new(1.0, 0.0);
    let uniform = vec![Complex64::new(1.0 / (dim as f64).sqrt(), 0.0); dim];
    Ok([first, last, uniform])
}

/// Initial vector for trial `trial`. Each trial owns an independent substream
/// of `cfg.seed`, so adding trials never changes earlier ones.
pub fn initial_vector(cfg: &QuantumConfig, trial: u32, matrix: &HermitianMatrix) -> Vec<Complex64> {
    let dim = matrix.dim();
    let d = matrix.original_dim();
    if cfg.init == InitStrategy::FixedTriple && dim.is_power_of_two() {
        if let Ok(triple) = fixed_b_triple(dim.trailing_zeros(), d) {
            return triple[trial as usize % 3].clone();
        }
    }
    let mut rng = substream(cfg.seed, &[TAG_TRIAL, trial as u64]);
    random_b(dim, d, &mut rng)
}

/// Shot-averaged `<σ_z>` of every trial, before thresholding.
pub fn estimate_trials(matrix: &HermitianMatrix, bounds: &SpectralBounds, cfg: &QuantumConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let scale = scale_constant(bounds, cfg.guard)?;
    let circuit = QpeCircuit::new(matrix, scale, cfg.n)?;
    (0..cfg.trials)
        .map(|t| {
            let b = initial_vector(cfg, t, matrix);
            let state = circuit.run(&b)?;
            let (_, p1) = marginal_msb(&state);
            let mut shots_rng = substream(cfg.seed, &[TAG_SHOTS, t as u64]);
            Ok(sample_sigma_z(p1, cfg.shots, &mut shots_rng))
        })
        .collect()
}

/// Runs the quantum test on a power-of-two (padded) matrix.
///
/// A zero matrix short-circuits to positive semi-definite with `<σ_z> = 1`.
pub fn classify_quantum(
    matrix: &HermitianMatrix,
    bounds: &SpectralBounds,
    cfg: &QuantumConfig,
) -> Result<QuantumVerdict> {
    let per_trial_sigma = match estimate_trials(matrix, bounds, cfg) {
        Ok(v) => v,
        Err(Error::ZeroMatrix) => vec![1.0; cfg.trials as usize],
        Err(e) => return Err(e),
    };
    let mean_sigma = mean(&per_trial_sigma);
    Ok(QuantumVerdict { class: decide(mean_sigma, cfg.delta), mean_sigma, per_trial_sigma })
}

/// Infinite-shot `<σ_z>` for initial vector `b`, from the eigendecomposition
/// and the closed-form outcome distribution.
pub fn expected_sigma_exact(matrix: &HermitianMatrix, scale: f64, n: u32, b: &[Complex64]) -> Result<f64> {
    Ok(sigma_z_expectation(&ensemble_distribution(&phase_ensemble(matrix, scale, b)?, n)))
}

/// Eigenphases `λ_i / C` weighted by `|<v_i|b>|^2`.
pub fn phase_ensemble(matrix: &HermitianMatrix, scale: f64, b: &[Complex64]) -> Result<PhaseEnsemble> {
    if b.len() != matrix.dim() {
        return Err(Error::DimensionMismatch(format!(
            "initial vector has length {}, matrix dimension is {}",
            b.len(),
            matrix.dim()
        )));
    }
    let spectrum = eigen_decompose(matrix)?;
    let phases = spectrum.eigenvalues.iter().map(|l| l / scale).collect();
    let weights = (0..spectrum.dim()).map(|i| linalg::inner(&spectrum.eigenvector(i), b).norm_sqr()).collect();
    PhaseEnsemble::new(phases, weights)
}
