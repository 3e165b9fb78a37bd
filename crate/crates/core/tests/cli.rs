use std::path::Path;
use std::process::{Command, Output};

use hermsign::class::{ground_truth_class, CanonicalClass, DEFAULT_ZTOL};
use hermsign::experiment::{sample_from_records, ResultTable};
use hermsign::matrix::{read_sample_file, MatrixRecord};
use hermsign::rng::substream;
use hermsign::sample::conjugated_diagonal;
use serde_json::Value;

fn hermsign(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermsign")).args(args).env_clear().output().expect("spawn hermsign")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn generate_is_labelled_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        stdout(&hermsign(&["generate", "--count", "5", "--seed", "42", "--out", p.to_str().unwrap()]));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let sample = sample_from_records(&read_sample_file(&a).unwrap()).unwrap();
    assert_eq!(sample.len(), 15);
    for lm in &sample {
        let truth = ground_truth_class(&lm.matrix, DEFAULT_ZTOL).unwrap().canonical();
        assert_eq!(truth, Some(lm.label));
    }
}

#[test]
fn generate_one_per_class() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.json");
    stdout(&hermsign(&["generate", "--count", "1", "--dim", "3", "--out", p.to_str().unwrap()]));
    let recs = read_sample_file(&p).unwrap();
    let labels: Vec<_> = recs.iter().map(|r| r.label.clone().unwrap()).collect();
    assert_eq!(labels, ["positive", "negative", "indefinite"]);
    assert!(recs.iter().all(|r| r.dim == 3));
}

#[test]
fn classify_identity() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "id.json", r#"{"dim":2,"entries":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#);
    let v: Value = serde_json::from_str(&stdout(&hermsign(&["classify", &f]))).unwrap();
    assert_eq!(v["class"], "positive_definite");
    assert_eq!(v["stage"], "classical");
    assert!(v.get("quantum").is_none());
}

#[test]
fn classify_rejects_bad_input_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let skew = write(dir.path(), "skew.json", r#"{"dim":2,"entries":[[[1,0],[0,1]],[[0,1],[1,0]]]}"#);
    let garbage = write(dir.path(), "bad.json", "{not json");
    let ragged = write(dir.path(), "ragged.json", r#"{"dim":2,"entries":[[[1,0]],[[0,0],[1,0]]]}"#);
    for (f, needle) in [(skew, "not Hermitian"), (garbage, "parse"), (ragged, "")] {
        let o = hermsign(&["classify", &f]);
        assert_eq!(o.status.code(), Some(2), "{f}");
        assert!(o.stdout.is_empty());
        assert!(String::from_utf8_lossy(&o.stderr).contains(needle));
    }
}

#[test]
fn classify_pads_three_by_three() {
    let dir = tempfile::tempdir().unwrap();
    let m = conjugated_diagonal(&[0.02, 0.5, 0.9], &mut substream(12, &[]));
    let rec = MatrixRecord::from_matrix(&m, None);
    let f = write(dir.path(), "m.json", &serde_json::to_string(&rec).unwrap());
    let v: Value = serde_json::from_str(&stdout(&hermsign(&["classify", &f]))).unwrap();
    assert_eq!(v["stage"], "quantum");
    assert_eq!(v["classical"]["bounds"]["dim"], 3);
    let class: String = serde_json::from_value(v["class"].clone()).unwrap();
    assert!(class.starts_with("positive"), "{class}");
    assert_eq!(ground_truth_class(&m, DEFAULT_ZTOL).unwrap().canonical(), Some(CanonicalClass::Positive));
}

fn classify_json(file: &str, extra: &[&str]) -> Value {
    let mut args = vec!["classify", file];
    args.extend_from_slice(extra);
    serde_json::from_str(&stdout(&hermsign(&args))).unwrap()
}

#[test]
fn classify_modes_and_refine() {
    let dir = tempfile::tempdir().unwrap();
    let m = hermsign::HermitianMatrix::from_real_diagonal(&[0.1, 0.3, 0.6, 0.9]);
    let f = write(dir.path(), "d.json", &serde_json::to_string(&MatrixRecord::from_matrix(&m, None)).unwrap());
    assert_eq!(classify_json(&f, &["--mode", "classical"])["stage"], "classical");
    let q = classify_json(&f, &["--mode", "quantum", "--n", "10", "--init", "triple"]);
    assert_eq!(q["stage"], "quantum");
    assert_eq!(q["quantum"]["per_trial_sigma"].as_array().unwrap().len(), 5);
    let r = classify_json(&f, &["--mode", "quantum", "--refine"]);
    assert_eq!(r["class"], "positive_definite");
    assert_eq!(r["refined"], true);
}

// For 2x2 input the trace bounds are exact, so the largest eigenvalue sits at
// phase +1/2 and reads as negative unless the guard widens the scale.
#[test]
fn two_by_two_quantum_mode_needs_guard() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "d.json", r#"{"dim":2,"entries":[[[0.1,0],[0,0]],[[0,0],[0.9,0]]]}"#);
    assert_eq!(classify_json(&f, &["--mode", "quantum"])["class"], "indefinite");
    assert_eq!(classify_json(&f, &["--mode", "quantum", "--guard", "1.5"])["class"], "positive_semi_definite");
    assert_eq!(classify_json(&f, &[])["class"], "positive_definite");
}

#[test]
fn env_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "d.json", r#"{"dim":2,"entries":[[[0.1,0],[0,0]],[[0,0],[0.9,0]]]}"#);
    let o = Command::new(env!("CARGO_BIN_EXE_hermsign"))
        .args(["classify", &f])
        .env_clear()
        .env("HERMSIGN_MODE", "quantum")
        .env("HERMSIGN_TRIALS", "2")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["quantum"]["per_trial_sigma"].as_array().unwrap().len(), 2);
}

#[test]
fn benchmark_writes_csv_and_records() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let jsonl = dir.path().join("r.jsonl");
    stdout(&hermsign(&[
        "benchmark",
        "--count",
        "4",
        "--n",
        "6",
        "--delta",
        "0.9,0.98",
        "--out",
        csv.to_str().unwrap(),
        "--records",
        jsonl.to_str().unwrap(),
    ]));
    let table = ResultTable::read_csv(std::fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(table.rows.len(), 4);
    for r in &table.rows {
        for x in [r.recall_pos, r.recall_neg, r.recall_indef, r.accuracy, r.coverage_pos] {
            assert!((0.0..=1.0).contains(&x));
        }
    }
    let lines: Vec<Value> =
        std::fs::read_to_string(&jsonl).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 4 * 12);
    for key in ["id", "true_class", "predicted_class", "stage", "mean_sigma", "per_trial_sigma", "n", "delta", "seed"] {
        assert!(lines[0].get(key).is_some(), "{key}");
    }
}

#[test]
fn benchmark_single_matrix_rates_are_binary() {
    let dir = tempfile::tempdir().unwrap();
    let f =
        write(dir.path(), "one.json", r#"[{"dim":2,"entries":[[[0.1,0],[0,0]],[[0,0],[0.9,0]]],"label":"positive"}]"#);
    let out = stdout(&hermsign(&["benchmark", "--sample", &f, "--n", "8", "--delta", "0.98", "--mode", "quantum"]));
    let table = ResultTable::read_csv(out.as_bytes()).unwrap();
    assert_eq!(table.rows.len(), 1);
    let r = &table.rows[0];
    assert!([0.0, 1.0].contains(&r.accuracy));
    assert_eq!((r.recall_neg, r.recall_indef), (0.0, 0.0));
}

#[test]
fn sweep_trials_rows() {
    let out = stdout(&hermsign(&[
        "sweep-trials",
        "--count",
        "3",
        "--n",
        "6",
        "--delta",
        "0.98",
        "--mode",
        "quantum",
        "--trials-grid",
        "1,3,5",
        "--init",
        "triple",
    ]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("init,trials,mode,n,delta,recall_pos,recall_neg,recall_indef,accuracy"));
    let trials: Vec<&str> = lines.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(trials, ["1", "3", "5"]);
    assert!(!out.contains('\r'));
}

#[test]
fn invalid_arguments_fail() {
    let o = hermsign(&["benchmark", "--count", "0"]);
    assert!(!o.status.success());
    let o = hermsign(&["benchmark", "--count", "1", "--n", "30"]);
    assert!(!o.status.success());
}
