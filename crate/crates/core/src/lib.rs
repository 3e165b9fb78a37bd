//! Definiteness classification of Hermitian matrices.
//!
//! A cheap classical test built from `Tr(M)` and `Tr(M^2)` settles matrices
//! whose spectrum is concentrated. The rest go to a simulated phase estimation
//! routine that reads the sign of the eigenvalues off the most significant
//! ancilla qubit.
//!
//! ```
//! use hermsign::{classify_hybrid_matrix, DefinitenessClass, HermitianMatrix, QuantumConfig, DEFAULT_ZTOL};
//!
//! let m = HermitianMatrix::from_real_diagonal(&[1.0, 2.0, 3.0, 4.0]);
//! let v = classify_hybrid_matrix(&m, &QuantumConfig::default(), DEFAULT_ZTOL).unwrap();
//! assert_eq!(v.class, DefinitenessClass::PositiveDefinite);
//! ```

pub mod bounds;
pub mod class;
pub mod eigen;
pub mod error;
pub mod experiment;
pub mod hybrid;
pub mod linalg;
pub mod matrix;
pub mod qpe;
pub mod quantum;
pub mod rng;
pub mod sample;

pub use bounds::{
    classify_bounds, classify_classical, eigenvalue_bounds, scale_constant, ClassicalVerdict, SpectralBounds,
};
pub use class::{ground_truth_class, CanonicalClass, DefinitenessClass, DEFAULT_ZTOL};
pub use eigen::{eigen_decompose, Spectrum};
pub use error::{Error, Result};
pub use hybrid::{
    classify_hybrid, classify_hybrid_matrix, classify_hybrid_refined, score, HybridVerdict, Metrics, Scored, Stage,
};
pub use linalg::CMatrix;
pub use matrix::{pad_to_power_of_two, validate_hermitian, HermitianMatrix, MatrixRecord, DEFAULT_ATOL};
pub use quantum::{classify_quantum, InitStrategy, QuantumConfig, QuantumVerdict};
pub use sample::{generate_balanced, generate_sample, LabeledMatrix, SampleSpec};
