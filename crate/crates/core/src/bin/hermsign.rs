use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hermsign::experiment::{
    load_or_generate, run_benchmark, run_trial_sweep, write_records_jsonl, write_sample, write_sweep_csv,
    ExperimentPlan, Mode, DEFAULT_DELTA_GRID, DEFAULT_N_GRID,
};
use hermsign::hybrid::{quantum_stage, refine_positive};
use hermsign::matrix::read_matrix_file;
use hermsign::sample::{generate_balanced, SampleSpec, ZeroPlacement, DEFAULT_ZERO_FRACTION};
use hermsign::{
    classify_classical, classify_hybrid_matrix, DefinitenessClass, Error, HybridVerdict, InitStrategy, QuantumConfig,
    Stage, DEFAULT_ATOL, DEFAULT_ZTOL,
};

/// Classify Hermitian matrices as positive, negative or indefinite.
#[derive(Parser, Debug)]
#[command(name = "hermsign", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a labelled, class-balanced sample of random Hermitian matrices.
    Generate(GenerateArgs),
    /// Classify one matrix file and print the verdict as JSON.
    Classify(ClassifyArgs),
    /// Score a sample over a grid of ancilla sizes and thresholds.
    Benchmark(BenchmarkArgs),
    /// Score a sample against the number of trials.
    SweepTrials(SweepArgs),
}

#[derive(Args, Debug, Clone)]
struct SampleArgs {
    /// Matrices per class.
    #[arg(long, env = "HERMSIGN_COUNT", default_value_t = 600)]
    count: usize,
    /// Matrix dimension.
    #[arg(long, env = "HERMSIGN_DIM", default_value_t = 4)]
    dim: usize,
    /// Fraction of positive matrices given one zero eigenvalue.
    #[arg(long, env = "HERMSIGN_ZERO_FRACTION", default_value_t = DEFAULT_ZERO_FRACTION)]
    zero_fraction: f64,
    /// Which eigenvalue is set to zero in those matrices.
    #[arg(long, env = "HERMSIGN_ZERO_PLACEMENT", value_enum, default_value_t = ZeroPlacement::Random)]
    zero_placement: ZeroPlacement,
}

impl SampleArgs {
    fn spec(&self, seed: u64) -> SampleSpec {
        SampleSpec {
            count_per_class: self.count,
            dim: self.dim,
            zero_fraction: self.zero_fraction,
            zero_placement: self.zero_placement,
            seed,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct QuantumArgs {
    /// Trials per matrix.
    #[arg(long, env = "HERMSIGN_TRIALS", default_value_t = 5)]
    trials: u32,
    /// Shots per trial.
    #[arg(long, env = "HERMSIGN_SHOTS", default_value_t = 100)]
    shots: u32,
    /// Root seed.
    #[arg(long, env = "HERMSIGN_SEED", default_value_t = 42)]
    seed: u64,
    /// Safety factor on the scale constant (at least 1).
    #[arg(long, env = "HERMSIGN_GUARD", default_value_t = 1.0)]
    guard: f64,
    /// Initial system vectors.
    #[arg(long, env = "HERMSIGN_INIT", value_enum, default_value_t = InitStrategy::RandomComplex)]
    init: InitStrategy,
    /// Tolerance around zero for the trace test and ground truth.
    #[arg(long, env = "HERMSIGN_ZTOL", default_value_t = DEFAULT_ZTOL)]
    ztol: f64,
}

impl QuantumArgs {
    fn config(&self, n: u32, delta: f64) -> QuantumConfig {
        QuantumConfig {
            n,
            trials: self.trials,
            shots: self.shots,
            delta,
            guard: self.guard,
            init: self.init,
            seed: self.seed,
        }
    }
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    sample: SampleArgs,
    #[arg(long, env = "HERMSIGN_SEED", default_value_t = 42)]
    seed: u64,
    /// Output sample file.
    #[arg(long, env = "HERMSIGN_OUT")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Matrix JSON file.
    file: PathBuf,
    /// Ancilla qubits.
    #[arg(long, env = "HERMSIGN_N", default_value_t = 14)]
    n: u32,
    /// Threshold on the mean `<σ_z>`.
    #[arg(long, env = "HERMSIGN_DELTA", default_value_t = 0.98)]
    delta: f64,
    #[arg(long, env = "HERMSIGN_MODE", value_enum, default_value_t = Mode::Hybrid)]
    mode: Mode,
    /// Split a quantum positive semi-definite verdict by also classifying -M.
    #[arg(long, env = "HERMSIGN_REFINE")]
    refine: bool,
    /// Hermiticity tolerance relative to the largest entry.
    #[arg(long, env = "HERMSIGN_ATOL", default_value_t = DEFAULT_ATOL)]
    atol: f64,
    #[command(flatten)]
    quantum: QuantumArgs,
}

#[derive(Args, Debug)]
struct PlanArgs {
    #[command(flatten)]
    sample: SampleArgs,
    #[command(flatten)]
    quantum: QuantumArgs,
    /// Ancilla sizes, comma separated.
    #[arg(long, env = "HERMSIGN_N", value_delimiter = ',', default_values_t = DEFAULT_N_GRID)]
    n: Vec<u32>,
    /// Thresholds, comma separated.
    #[arg(long, env = "HERMSIGN_DELTA", value_delimiter = ',', default_values_t = DEFAULT_DELTA_GRID)]
    delta: Vec<f64>,
    /// Scoring modes, comma separated.
    #[arg(long, env = "HERMSIGN_MODE", value_enum, value_delimiter = ',', default_values_t = [Mode::Hybrid, Mode::Quantum])]
    mode: Vec<Mode>,
    /// Existing sample file; generated from the seed when absent.
    #[arg(long = "sample", env = "HERMSIGN_SAMPLE")]
    sample_file: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, env = "HERMSIGN_WORKERS")]
    workers: Option<usize>,
    /// CSV output; standard output when absent.
    #[arg(long, env = "HERMSIGN_OUT")]
    out: Option<PathBuf>,
}

impl PlanArgs {
    fn plan(&self) -> ExperimentPlan {
        let mut plan = ExperimentPlan::new(self.sample.spec(self.quantum.seed));
        plan.n_grid = self.n.clone();
        plan.delta_grid = self.delta.clone();
        plan.modes = self.mode.clone();
        plan.quantum = self.quantum.config(plan.n_grid.first().copied().unwrap_or(14), 0.98);
        plan.ztol = self.quantum.ztol;
        plan.workers = self.workers;
        plan
    }
}

#[derive(Args, Debug)]
struct BenchmarkArgs {
    #[command(flatten)]
    plan: PlanArgs,
    /// Per-matrix verdicts as JSON lines.
    #[arg(long, env = "HERMSIGN_RECORDS")]
    records: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    plan: PlanArgs,
    /// Trial counts, comma separated.
    #[arg(long = "trials-grid", env = "HERMSIGN_TRIALS_GRID", value_delimiter = ',', default_values_t = [1u32, 2, 3, 4, 5])]
    trials_grid: Vec<u32>,
}

fn output(path: Option<&Path>) -> hermsign::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn classify(args: &ClassifyArgs) -> hermsign::Result<HybridVerdict> {
    let m = read_matrix_file(&args.file)?.to_matrix(args.atol)?;
    let cfg = args.quantum.config(args.n, args.delta);
    cfg.validate()?;
    let ztol = args.quantum.ztol;
    let mut v = match args.mode {
        Mode::Hybrid => classify_hybrid_matrix(&m, &cfg, ztol)?,
        Mode::Classical => {
            let classical = classify_classical(&m, ztol);
            HybridVerdict { class: classical.class, stage: Stage::Classical, classical, quantum: None, refined: false }
        }
        Mode::Quantum => {
            let classical = classify_classical(&m, ztol);
            let q = quantum_stage(&m, &classical, &cfg)?;
            HybridVerdict { class: q.class, stage: Stage::Quantum, classical, quantum: Some(q), refined: false }
        }
    };
    if args.refine && v.stage == Stage::Quantum && v.class == DefinitenessClass::PositiveSemiDefinite {
        v.class = refine_positive(&m, &cfg)?;
        v.refined = true;
    }
    Ok(v)
}

fn run(cli: Cli) -> hermsign::Result<()> {
    match cli.command {
        Command::Generate(a) => {
            let sample = generate_balanced(&a.sample.spec(a.seed));
            write_sample(&a.out, &sample)?;
            eprintln!("wrote {} matrices to {}", sample.len(), a.out.display());
        }
        Command::Classify(a) => {
            let v = classify(&a)?;
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Command::Benchmark(a) => {
            let plan = a.plan.plan();
            let sample = load_or_generate(&plan, a.plan.sample_file.as_deref())?;
            let result = run_benchmark(&plan, &sample)?;
            let mut w = output(a.plan.out.as_deref())?;
            result.table.write_csv(&mut w)?;
            w.flush()?;
            if let Some(p) = &a.records {
                let mut w = BufWriter::new(File::create(p)?);
                write_records_jsonl(&mut w, &result.records)?;
                w.flush()?;
            }
        }
        Command::SweepTrials(a) => {
            let mut plan = a.plan.plan();
            plan.trials_grid = a.trials_grid.clone();
            let sample = load_or_generate(&plan, a.plan.sample_file.as_deref())?;
            let rows = run_trial_sweep(&plan, &sample)?;
            let mut w = output(a.plan.out.as_deref())?;
            write_sweep_csv(&mut w, &rows)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hermsign: {e}");
            match e {
                Error::Parse(_) | Error::NotHermitian { .. } | Error::NonSquare { .. } | Error::Empty => {
                    ExitCode::from(2)
                }
                _ => ExitCode::FAILURE,
            }
        }
    }
}
