use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use hermsign_ffi::*;

fn new_matrix(dim: usize, entries: &[f64]) -> (HsStatus, *mut HsMatrix) {
    let mut m = ptr::null_mut();
    let s = unsafe { hs_matrix_new(dim, entries.as_ptr(), 1e-10, &mut m) };
    (s, m)
}

fn diag(values: &[f64]) -> Vec<f64> {
    let d = values.len();
    let mut e = vec![0.0; 2 * d * d];
    for (i, v) in values.iter().enumerate() {
        e[2 * (i * d + i)] = *v;
    }
    e
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(hs_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn classical_and_hybrid_verdicts() {
    let (s, m) = new_matrix(4, &diag(&[1.0, 2.0, 3.0, 4.0]));
    assert_eq!(s, HsStatus::Ok);
    assert_eq!(unsafe { hs_matrix_dim(m) }, 4);

    let mut c = HsClass::Unclassified;
    assert_eq!(unsafe { hs_classify_classical(m, 1e-10, &mut c) }, HsStatus::Ok);
    assert_eq!(c, HsClass::PositiveDefinite);

    let cfg = hs_config_default();
    let mut v =
        HsVerdict { definiteness: HsClass::Unclassified, stage: HsStage::Quantum, mean_sigma: 0.0, refined: false };
    assert_eq!(unsafe { hs_classify_hybrid(m, &cfg, false, &mut v) }, HsStatus::Ok);
    assert_eq!((v.definiteness, v.stage), (HsClass::PositiveDefinite, HsStage::Classical));
    assert!(v.mean_sigma.is_nan());
    unsafe { hs_matrix_free(m) };
}

#[test]
fn quantum_stage_with_refinement() {
    let (_, m) = new_matrix(4, &diag(&[0.1, 0.3, 0.6, 0.9]));
    let cfg = hs_config_default();
    let mut v =
        HsVerdict { definiteness: HsClass::Unclassified, stage: HsStage::Classical, mean_sigma: 0.0, refined: false };
    assert_eq!(unsafe { hs_classify_hybrid(m, &cfg, true, &mut v) }, HsStatus::Ok);
    assert_eq!(v.stage, HsStage::Quantum);
    assert_eq!(v.definiteness, HsClass::PositiveDefinite);
    assert!(v.refined);
    assert!(v.mean_sigma > cfg.delta);
    unsafe { hs_matrix_free(m) };
}

#[test]
fn bounds_match_moments() {
    let (_, m) = new_matrix(2, &diag(&[-1.0, 3.0]));
    let mut b = HsBounds { r: 0.0, s: 0.0, low_min: 0.0, low_max: 0.0, high_min: 0.0, high_max: 0.0 };
    assert_eq!(unsafe { hs_bounds(m, &mut b) }, HsStatus::Ok);
    assert_eq!((b.r, b.s), (1.0, 2.0));
    assert_eq!((b.low_min, b.high_max), (-1.0, 3.0));
    unsafe { hs_matrix_free(m) };
}

#[test]
fn errors_are_reported() {
    let (s, m) = new_matrix(2, &[0.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0]);
    assert_eq!(s, HsStatus::NotHermitian);
    assert!(m.is_null());
    assert!(last_error().contains("not Hermitian"));

    let (s, _) = new_matrix(0, &[]);
    assert_eq!(s, HsStatus::InvalidArgument);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { hs_matrix_new(2, ptr::null(), 1e-10, &mut out) }, HsStatus::NullPointer);
    let mut c = HsClass::Unclassified;
    assert_eq!(unsafe { hs_classify_classical(ptr::null(), 1e-10, &mut c) }, HsStatus::NullPointer);
    assert_eq!(unsafe { hs_matrix_dim(ptr::null()) }, 0);
    unsafe { hs_matrix_free(ptr::null_mut()) };

    let (_, z) = new_matrix(2, &diag(&[0.0, 0.0]));
    let mut cfg = hs_config_default();
    cfg.n = 0;
    let mut v =
        HsVerdict { definiteness: HsClass::Unclassified, stage: HsStage::Classical, mean_sigma: 0.0, refined: false };
    assert_eq!(unsafe { hs_classify_hybrid(z, &cfg, false, &mut v) }, HsStatus::InvalidArgument);
    assert!(last_error().contains("outside"));
    unsafe { hs_matrix_free(z) };
}

#[test]
fn phase_distribution_buffer() {
    let mut p = vec![0.0; 16];
    assert_eq!(unsafe { hs_single_phase_distribution(0.25, 4, p.as_mut_ptr(), p.len()) }, HsStatus::Ok);
    assert_eq!(p[4], 1.0);
    assert_eq!(last_error(), "");
    assert_eq!(unsafe { hs_single_phase_distribution(0.25, 5, p.as_mut_ptr(), p.len()) }, HsStatus::BufferTooSmall);
    assert_eq!(unsafe { hs_single_phase_distribution(0.25, 0, p.as_mut_ptr(), p.len()) }, HsStatus::InvalidArgument);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(hs_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

/// Compiles `tests/c/smoke.c` against the generated header and the static
/// library from this build, then runs it.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // Test binaries live in target/<profile>/deps next to the library artifacts.
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    let lib = [deps.to_path_buf(), deps.parent().unwrap().to_path_buf()]
        .into_iter()
        .map(|d| d.join("libhermsign_ffi.a"))
        .find(|p| p.exists())
        .expect("static library missing from the build directory");
    let out_dir = tempfile_dir();
    let bin = out_dir.join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("run cc");
    assert!(status.success());
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert!(String::from_utf8_lossy(&run.stdout).starts_with("ok "));
}

fn tempfile_dir() -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c-smoke");
    std::fs::create_dir_all(&d).unwrap();
    d
}
