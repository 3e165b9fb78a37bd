//! Two-stage classification: the trace test first, phase estimation only for
//! matrices the trace test cannot decide.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::{classify_classical, eigenvalue_bounds, ClassicalVerdict};
use crate::class::{CanonicalClass, DefinitenessClass};
use crate::error::{Error, Result};
use crate::matrix::{pad_to_power_of_two, validate_hermitian, HermitianMatrix};
use crate::quantum::{classify_quantum, QuantumConfig, QuantumVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Classical,
    Quantum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HybridVerdict {
    pub class: DefinitenessClass,
    pub stage: Stage,
    pub classical: ClassicalVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantum: Option<QuantumVerdict>,
    /// Set when the positive / positive semi-definite split was resolved by a second run on `-M`.
    #[serde(default)]
    pub refined: bool,
}

/// Validates `rows` and runs [`classify_hybrid_matrix`].
pub fn classify_hybrid(rows: &[Vec<Complex64>], cfg: &QuantumConfig, atol: f64, ztol: f64) -> Result<HybridVerdict> {
    let m = validate_hermitian(rows, atol)?;
    classify_hybrid_matrix(&m, cfg, ztol)
}

/// The classical verdict always comes from the unpadded matrix; the quantum
/// stage runs on the power-of-two padding with bounds recomputed at that size.
pub fn classify_hybrid_matrix(m: &HermitianMatrix, cfg: &QuantumConfig, ztol: f64) -> Result<HybridVerdict> {
    cfg.validate()?;
    let classical = classify_classical(&m.unpadded(), ztol);
    if classical.is_conclusive() {
        return Ok(HybridVerdict {
            class: classical.class,
            stage: Stage::Classical,
            classical,
            quantum: None,
            refined: false,
        });
    }
    let quantum = quantum_stage(m, &classical, cfg)?;
    Ok(HybridVerdict { class: quantum.class, stage: Stage::Quantum, classical, quantum: Some(quantum), refined: false })
}

/// Quantum stage only, reusing `classical` bounds for the scale when no padding is needed.
pub fn quantum_stage(m: &HermitianMatrix, classical: &ClassicalVerdict, cfg: &QuantumConfig) -> Result<QuantumVerdict> {
    let base = m.unpadded();
    let padded = pad_to_power_of_two(&base);
    let bounds = if padded.dim() == base.dim() { classical.bounds } else { eigenvalue_bounds(&padded) };
    classify_quantum(&padded, &bounds, cfg)
}

/// Splits a quantum positive semi-definite verdict by classifying `-M` with
/// the same configuration (and therefore the same initial vectors).
pub fn refine_positive(m: &HermitianMatrix, cfg: &QuantumConfig) -> Result<DefinitenessClass> {
    let padded = pad_to_power_of_two(&m.unpadded());
    if padded.as_matrix().max_abs() == 0.0 {
        return Ok(DefinitenessClass::PositiveSemiDefinite);
    }
    let negated = padded.neg();
    let v = classify_quantum(&negated, &eigenvalue_bounds(&negated), cfg)?;
    match v.class {
        DefinitenessClass::NegativeDefinite => Ok(DefinitenessClass::PositiveDefinite),
        DefinitenessClass::Indefinite => Ok(DefinitenessClass::PositiveSemiDefinite),
        _ => Err(Error::InconsistentRefinement),
    }
}

/// [`classify_hybrid_matrix`] followed by [`refine_positive`] on quantum
/// positive semi-definite verdicts.
pub fn classify_hybrid_refined(m: &HermitianMatrix, cfg: &QuantumConfig, ztol: f64) -> Result<HybridVerdict> {
    let mut v = classify_hybrid_matrix(m, cfg, ztol)?;
    if v.stage == Stage::Quantum && v.class == DefinitenessClass::PositiveSemiDefinite {
        v.class = refine_positive(m, cfg)?;
        v.refined = true;
    }
    Ok(v)
}

/// One scored prediction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scored {
    pub truth: CanonicalClass,
    pub predicted: DefinitenessClass,
    pub stage: Stage,
}

impl Scored {
    pub fn from_verdict(truth: CanonicalClass, v: &HybridVerdict) -> Self {
        Scored { truth, predicted: v.class, stage: v.stage }
    }
}

/// Column index of a prediction in [`Metrics::confusion`]; column 3 is "unclassified".
fn predicted_column(c: DefinitenessClass) -> usize {
    c.canonical().map_or(3, CanonicalClass::index)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    /// Rows: true class (positive, negative, indefinite). Columns: predicted
    /// canonical class plus a trailing unclassified column.
    pub confusion: [[u64; 4]; 3],
    pub recall: [f64; 3],
    pub accuracy: f64,
    pub classical_coverage: [f64; 3],
    pub total: u64,
}

impl Metrics {
    pub fn recall_of(&self, c: CanonicalClass) -> f64 {
        self.recall[c.index()]
    }

    pub fn coverage_of(&self, c: CanonicalClass) -> f64 {
        self.classical_coverage[c.index()]
    }

    pub fn correct(&self) -> u64 {
        (0..3).map(|i| self.confusion[i][i]).sum()
    }
}

/// Recall and accuracy over the canonical three-class projection. A class with
/// no true members reports recall and coverage 0.
pub fn score<'a>(records: impl IntoIterator<Item = &'a Scored>) -> Metrics {
    let mut confusion = [[0u64; 4]; 3];
    let mut classical = [0u64; 3];
    for r in records {
        let t = r.truth.index();
        confusion[t][predicted_column(r.predicted)] += 1;
        if r.stage == Stage::Classical {
            classical[t] += 1;
        }
    }
    let row_total = |t: usize| confusion[t].iter().sum::<u64>();
    let ratio = |a: u64, b: u64| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    let total: u64 = (0..3).map(row_total).sum();
    let correct: u64 = (0..3).map(|i| confusion[i][i]).sum();
    Metrics {
        confusion,
        recall: [0, 1, 2].map(|t| ratio(confusion[t][t], row_total(t))),
        accuracy: ratio(correct, total),
        classical_coverage: [0, 1, 2].map(|t| ratio(classical[t], row_total(t))),
        total,
    }
}
