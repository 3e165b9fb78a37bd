//! Phase-estimation outcome statistics: the closed-form distributions, a
//! gate-level statevector simulation of the same circuit, and shot sampling.

pub mod analytic;
pub mod shots;
pub mod statevector;

pub use analytic::{
    ensemble_distribution, phase_probability, sigma_z_expectation, single_phase_distribution, AncillaDistribution,
    PhaseEnsemble,
};
pub use shots::sample_sigma_z;
pub use statevector::{marginal_msb, run_qpe_statevector, QpeCircuit, Statevector};
