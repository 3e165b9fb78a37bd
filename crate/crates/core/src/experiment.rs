//! Benchmark driver: evaluates a labelled sample over grids of ancilla sizes,
//! thresholds and trial counts, and writes result tables as CSV.
//!
//! Every matrix is evaluated once per ancilla size. Classical verdicts and
//! per-trial `<σ_z>` estimates are stored, and all modes, thresholds and
//! trial prefixes are scored from those same numbers.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{classify_classical, ClassicalVerdict};
use crate::class::{CanonicalClass, DefinitenessClass, DEFAULT_ZTOL};
use crate::error::{Error, Result};
use crate::hybrid::{quantum_stage, score, Metrics, Scored, Stage};
use crate::matrix::{read_sample_file, write_sample_file, MatrixRecord, DEFAULT_ATOL};
use crate::quantum::{decide, mean, InitStrategy, QuantumConfig};
use crate::rng::{derive_seed, TAG_MATRIX};
use crate::sample::{generate_balanced, LabeledMatrix, SampleSpec};

pub const DEFAULT_N_GRID: [u32; 6] = [4, 6, 8, 10, 12, 14];
pub const DEFAULT_DELTA_GRID: [f64; 9] = [0.80, 0.85, 0.90, 0.95, 0.96, 0.97, 0.98, 0.99, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Trace test first, quantum stage for the rest.
    Hybrid,
    /// Every matrix through the quantum stage.
    Quantum,
    /// Trace test only; undecided matrices count as misclassified.
    Classical,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Hybrid => "hybrid",
            Mode::Quantum => "quantum",
            Mode::Classical => "classical",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub sample: SampleSpec,
    pub n_grid: Vec<u32>,
    pub delta_grid: Vec<f64>,
    /// Trial counts for the trial sweep; the benchmark uses `quantum.trials`.
    pub trials_grid: Vec<u32>,
    pub modes: Vec<Mode>,
    /// Template for the quantum stage. `n` and `delta` are taken from the
    /// grids and `seed` is the root of the per-matrix seeds.
    pub quantum: QuantumConfig,
    pub ztol: f64,
    /// Worker threads; `None` lets rayon decide. Results do not depend on it.
    pub workers: Option<usize>,
}

impl ExperimentPlan {
    pub fn new(sample: SampleSpec) -> Self {
        ExperimentPlan {
            sample,
            n_grid: DEFAULT_N_GRID.to_vec(),
            delta_grid: DEFAULT_DELTA_GRID.to_vec(),
            trials_grid: (1..=5).collect(),
            modes: vec![Mode::Hybrid, Mode::Quantum],
            quantum: QuantumConfig::default(),
            ztol: DEFAULT_ZTOL,
            workers: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_grid.is_empty() || self.delta_grid.is_empty() || self.modes.is_empty() {
            return Err(Error::InvalidArgument("n, delta and mode grids must be nonempty".into()));
        }
        if self.sample.count_per_class == 0 {
            return Err(Error::InvalidArgument("count per class must be at least 1".into()));
        }
        if self.trials_grid.contains(&0) {
            return Err(Error::InvalidArgument("trial counts must be positive".into()));
        }
        for &n in &self.n_grid {
            for &delta in &self.delta_grid {
                QuantumConfig { n, delta, ..self.quantum }.validate()?;
            }
        }
        Ok(())
    }
}

fn worker_pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        b = b.num_threads(w.max(1));
    }
    b.build().map_err(|e| Error::InvalidArgument(format!("cannot build worker pool: {e}")))
}

/// Everything needed to score one matrix at one ancilla size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixEvaluation {
    pub id: usize,
    pub truth: CanonicalClass,
    pub classical: ClassicalVerdict,
    pub per_trial_sigma: Vec<f64>,
    pub n: u32,
    pub seed: u64,
}

impl MatrixEvaluation {
    /// Prediction with the first `trials` trials at threshold `delta`.
    pub fn predict(&self, mode: Mode, delta: f64, trials: usize) -> (DefinitenessClass, Stage) {
        let quantum = || decide(mean(&self.per_trial_sigma[..trials]), delta);
        match mode {
            Mode::Quantum => (quantum(), Stage::Quantum),
            Mode::Classical => (self.classical.class, Stage::Classical),
            Mode::Hybrid if self.classical.is_conclusive() => (self.classical.class, Stage::Classical),
            Mode::Hybrid => (quantum(), Stage::Quantum),
        }
    }

    pub fn scored(&self, mode: Mode, delta: f64, trials: usize) -> Scored {
        let (predicted, stage) = self.predict(mode, delta, trials);
        Scored { truth: self.truth, predicted, stage }
    }
}

pub fn matrix_seed(root: u64, id: usize) -> u64 {
    derive_seed(root, &[TAG_MATRIX, id as u64])
}

fn evaluate_one(lm: &LabeledMatrix, cfg: &QuantumConfig, ztol: f64) -> Result<MatrixEvaluation> {
    let cfg = QuantumConfig { seed: matrix_seed(cfg.seed, lm.id), ..*cfg };
    let classical = classify_classical(&lm.matrix.unpadded(), ztol);
    let quantum = quantum_stage(&lm.matrix, &classical, &cfg)?;
    Ok(MatrixEvaluation {
        id: lm.id,
        truth: lm.label,
        classical,
        per_trial_sigma: quantum.per_trial_sigma,
        n: cfg.n,
        seed: cfg.seed,
    })
}

/// Runs the classical test and `cfg.trials` quantum trials on every matrix,
/// in parallel, returning results in sample order.
pub fn evaluate_sample(
    sample: &[LabeledMatrix],
    cfg: &QuantumConfig,
    ztol: f64,
    workers: Option<usize>,
) -> Result<Vec<MatrixEvaluation>> {
    worker_pool(workers)?.install(|| sample.par_iter().map(|lm| evaluate_one(lm, cfg, ztol)).collect())
}

pub fn metrics_for(evals: &[MatrixEvaluation], mode: Mode, delta: f64, trials: usize) -> Metrics {
    let scored: Vec<Scored> = evals.iter().map(|e| e.scored(mode, delta, trials)).collect();
    score(&scored)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub mode: Mode,
    pub n: u32,
    pub delta: f64,
    pub recall_pos: f64,
    pub recall_neg: f64,
    pub recall_indef: f64,
    pub accuracy: f64,
    pub coverage_pos: f64,
    pub coverage_neg: f64,
    pub coverage_indef: f64,
    pub seconds: f64,
}

impl ResultRow {
    pub fn from_metrics(mode: Mode, n: u32, delta: f64, m: &Metrics, seconds: f64) -> Self {
        ResultRow {
            mode,
            n,
            delta,
            recall_pos: m.recall[0],
            recall_neg: m.recall[1],
            recall_indef: m.recall[2],
            accuracy: m.accuracy,
            coverage_pos: m.classical_coverage[0],
            coverage_neg: m.classical_coverage[1],
            coverage_indef: m.classical_coverage[2],
            seconds,
        }
    }

    /// Same row with the wall-time column zeroed, for reproducibility checks.
    pub fn without_time(&self) -> Self {
        ResultRow { seconds: 0.0, ..self.clone() }
    }
}

/// One row per `(mode, n, delta)` grid point.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
}

impl ResultTable {
    pub fn row(&self, mode: Mode, n: u32, delta: f64) -> Option<&ResultRow> {
        self.rows.iter().find(|r| r.mode == mode && r.n == n && r.delta == delta)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        write_csv_rows(w, &self.rows)
    }

    pub fn read_csv<R: std::io::Read>(r: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let rows = rdr.deserialize().collect::<std::result::Result<Vec<ResultRow>, _>>()?;
        Ok(ResultTable { rows })
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn write_csv_rows<W: Write, T: Serialize>(w: W, rows: &[T]) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w);
    for r in rows {
        wtr.serialize(r)?;
    }
    wtr.flush()?;
    Ok(())
}

/// Per-matrix verdict line of the benchmark record stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub id: usize,
    pub mode: Mode,
    pub true_class: CanonicalClass,
    pub predicted_class: DefinitenessClass,
    pub stage: Stage,
    pub mean_sigma: Option<f64>,
    pub per_trial_sigma: Vec<f64>,
    pub n: u32,
    pub delta: f64,
    pub seed: u64,
}

impl VerdictRecord {
    pub fn new(e: &MatrixEvaluation, mode: Mode, delta: f64) -> Self {
        let trials = e.per_trial_sigma.len();
        let (predicted_class, stage) = e.predict(mode, delta, trials);
        let quantum_used = stage == Stage::Quantum;
        VerdictRecord {
            id: e.id,
            mode,
            true_class: e.truth,
            predicted_class,
            stage,
            mean_sigma: quantum_used.then(|| mean(&e.per_trial_sigma)),
            per_trial_sigma: if quantum_used { e.per_trial_sigma.clone() } else { Vec::new() },
            n: e.n,
            delta,
            seed: e.seed,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchmarkOutput {
    pub table: ResultTable,
    pub records: Vec<VerdictRecord>,
}

/// Evaluates `sample` at every `n` of the plan and scores every `(mode, delta)`.
pub fn run_benchmark(plan: &ExperimentPlan, sample: &[LabeledMatrix]) -> Result<BenchmarkOutput> {
    plan.validate()?;
    let mut table = ResultTable::default();
    let mut records = Vec::new();
    for &n in &plan.n_grid {
        let cfg = QuantumConfig { n, ..plan.quantum };
        let start = Instant::now();
        let evals = evaluate_sample(sample, &cfg, plan.ztol, plan.workers)?;
        let seconds = start.elapsed().as_secs_f64();
        let trials = cfg.trials as usize;
        for &mode in &plan.modes {
            for &delta in &plan.delta_grid {
                let m = metrics_for(&evals, mode, delta, trials);
                table.rows.push(ResultRow::from_metrics(mode, n, delta, &m, seconds));
                records.extend(evals.iter().map(|e| VerdictRecord::new(e, mode, delta)));
            }
        }
    }
    Ok(BenchmarkOutput { table, records })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub init: InitStrategy,
    pub trials: u32,
    pub mode: Mode,
    pub n: u32,
    pub delta: f64,
    pub recall_pos: f64,
    pub recall_neg: f64,
    pub recall_indef: f64,
    pub accuracy: f64,
}

/// Recall versus trial count. Runs the largest trial count once and scores
/// prefixes, which is exact because trials draw from independent substreams.
pub fn run_trial_sweep(plan: &ExperimentPlan, sample: &[LabeledMatrix]) -> Result<Vec<SweepRow>> {
    plan.validate()?;
    let max_trials =
        plan.trials_grid.iter().copied().max().ok_or_else(|| Error::InvalidArgument("trials grid is empty".into()))?;
    let mut rows = Vec::new();
    for &n in &plan.n_grid {
        let cfg = QuantumConfig { n, trials: max_trials, ..plan.quantum };
        let evals = evaluate_sample(sample, &cfg, plan.ztol, plan.workers)?;
        for &trials in &plan.trials_grid {
            for &mode in &plan.modes {
                for &delta in &plan.delta_grid {
                    let m = metrics_for(&evals, mode, delta, trials as usize);
                    rows.push(SweepRow {
                        init: cfg.init,
                        trials,
                        mode,
                        n,
                        delta,
                        recall_pos: m.recall[0],
                        recall_neg: m.recall[1],
                        recall_indef: m.recall[2],
                        accuracy: m.accuracy,
                    });
                }
            }
        }
    }
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(w: W, rows: &[SweepRow]) -> Result<()> {
    write_csv_rows(w, rows)
}

pub fn write_records_jsonl<W: Write>(mut w: W, records: &[VerdictRecord]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// Generates the plan's sample, or loads one from a JSON sample file.
pub fn load_or_generate(plan: &ExperimentPlan, path: Option<&Path>) -> Result<Vec<LabeledMatrix>> {
    match path {
        None => Ok(generate_balanced(&plan.sample)),
        Some(p) => sample_from_records(&read_sample_file(p)?),
    }
}

pub fn sample_from_records(records: &[MatrixRecord]) -> Result<Vec<LabeledMatrix>> {
    records
        .iter()
        .enumerate()
        .map(|(id, rec)| {
            let label =
                rec.label.as_deref().ok_or_else(|| Error::Parse(format!("sample entry {id} has no label")))?.parse()?;
            Ok(LabeledMatrix { id, label, matrix: rec.to_matrix(DEFAULT_ATOL)? })
        })
        .collect()
}

pub fn write_sample(path: impl AsRef<Path>, sample: &[LabeledMatrix]) -> Result<()> {
    let records: Vec<MatrixRecord> = sample.iter().map(LabeledMatrix::to_record).collect();
    write_sample_file(path, &records)
}
