//! C interface to `hermsign`.
//!
//! Matrices cross the boundary as opaque `HsMatrix` handles built from
//! row-major interleaved `(re, im)` doubles. Every fallible call returns an
//! `HsStatus`; on failure `hs_last_error_message` describes the error for the
//! calling thread. Panics never unwind into C; they surface as `HS_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;

use hermsign::bounds::{classify_classical, eigenvalue_bounds};
use hermsign::hybrid::{classify_hybrid_matrix, classify_hybrid_refined, Stage};
use hermsign::qpe::single_phase_distribution;
use hermsign::{DefinitenessClass, Error, HermitianMatrix, InitStrategy, QuantumConfig, SpectralBounds};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotHermitian = 3,
    ZeroMatrix = 4,
    NoConvergence = 5,
    Inconsistent = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsClass {
    PositiveDefinite = 0,
    PositiveSemiDefinite = 1,
    NegativeDefinite = 2,
    NegativeSemiDefinite = 3,
    Indefinite = 4,
    Unclassified = 5,
}

impl From<DefinitenessClass> for HsClass {
    fn from(c: DefinitenessClass) -> Self {
        match c {
            DefinitenessClass::PositiveDefinite => HsClass::PositiveDefinite,
            DefinitenessClass::PositiveSemiDefinite => HsClass::PositiveSemiDefinite,
            DefinitenessClass::NegativeDefinite => HsClass::NegativeDefinite,
            DefinitenessClass::NegativeSemiDefinite => HsClass::NegativeSemiDefinite,
            DefinitenessClass::Indefinite => HsClass::Indefinite,
            DefinitenessClass::Unclassified => HsClass::Unclassified,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsInit {
    Random = 0,
    Triple = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsStage {
    Classical = 0,
    Quantum = 1,
}

/// Quantum stage settings; obtain defaults from `hs_config_default`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsConfig {
    pub n: u32,
    pub trials: u32,
    pub shots: u32,
    pub delta: f64,
    pub guard: f64,
    pub init: HsInit,
    pub seed: u64,
    pub ztol: f64,
}

impl From<&HsConfig> for QuantumConfig {
    fn from(c: &HsConfig) -> Self {
        QuantumConfig {
            n: c.n,
            trials: c.trials,
            shots: c.shots,
            delta: c.delta,
            guard: c.guard,
            init: match c.init {
                HsInit::Random => InitStrategy::RandomComplex,
                HsInit::Triple => InitStrategy::FixedTriple,
            },
            seed: c.seed,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsBounds {
    pub r: f64,
    pub s: f64,
    pub low_min: f64,
    pub low_max: f64,
    pub high_min: f64,
    pub high_max: f64,
}

impl From<SpectralBounds> for HsBounds {
    fn from(b: SpectralBounds) -> Self {
        HsBounds { r: b.r, s: b.s, low_min: b.low_min, low_max: b.low_max, high_min: b.high_min, high_max: b.high_max }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsVerdict {
    pub definiteness: HsClass,
    pub stage: HsStage,
    /// Mean `<σ_z>` over trials; NaN when the classical stage decided.
    pub mean_sigma: f64,
    pub refined: bool,
}

/// Opaque Hermitian matrix.
pub struct HsMatrix(HermitianMatrix);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HsStatus {
    match e {
        Error::NotHermitian { .. } => HsStatus::NotHermitian,
        Error::ZeroMatrix => HsStatus::ZeroMatrix,
        Error::NoConvergence { .. } => HsStatus::NoConvergence,
        Error::InconsistentRefinement => HsStatus::Inconsistent,
        _ => HsStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (HsStatus, String)>) -> HsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HsStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HsStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (HsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (HsStatus, String) {
    (HsStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `m` must be null or a live handle from `hs_matrix_new`.
unsafe fn matrix_ref<'a>(m: *const HsMatrix) -> Result<&'a HermitianMatrix, (HsStatus, String)> {
    unsafe { m.as_ref() }.map(|h| &h.0).ok_or_else(|| null("matrix"))
}

/// Builds a matrix from `dim * dim * 2` doubles in row-major `(re, im)` order.
/// The input is validated for Hermiticity with relative tolerance `atol`.
///
/// # Safety
/// `entries` must point to `2 * dim * dim` readable doubles and `out` to a
/// writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn hs_matrix_new(
    dim: usize,
    entries: *const f64,
    atol: f64,
    out: *mut *mut HsMatrix,
) -> HsStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null("entries"));
        }
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = ptr::null_mut();
        let len = dim
            .checked_mul(dim)
            .and_then(|x| x.checked_mul(2))
            .ok_or((HsStatus::InvalidArgument, "dimension overflows".to_string()))?;
        let raw = unsafe { std::slice::from_raw_parts(entries, len) };
        let rows: Vec<Vec<Complex64>> = raw
            .chunks_exact(2 * dim.max(1))
            .map(|row| row.chunks_exact(2).map(|z| Complex64::new(z[0], z[1])).collect())
            .collect();
        let m = hermsign::validate_hermitian(&rows, atol).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(HsMatrix(m)));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle from `hs_matrix_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hs_matrix_free(m: *mut HsMatrix) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Dimension of the matrix, or 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hs_matrix_dim(m: *const HsMatrix) -> usize {
    unsafe { m.as_ref() }.map_or(0, |h| h.0.dim())
}

#[no_mangle]
pub extern "C" fn hs_config_default() -> HsConfig {
    let q = QuantumConfig::default();
    HsConfig {
        n: q.n,
        trials: q.trials,
        shots: q.shots,
        delta: q.delta,
        guard: q.guard,
        init: HsInit::Random,
        seed: q.seed,
        ztol: hermsign::DEFAULT_ZTOL,
    }
}

/// Trace bounds on the extreme eigenvalues.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_bounds(m: *const HsMatrix, out: *mut HsBounds) -> HsStatus {
    guard(|| {
        let m = unsafe { matrix_ref(m) }?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = eigenvalue_bounds(m).into();
        Ok(())
    })
}

/// Trace test only; may return `HS_CLASS_UNCLASSIFIED`.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_classify_classical(m: *const HsMatrix, ztol: f64, out: *mut HsClass) -> HsStatus {
    guard(|| {
        let m = unsafe { matrix_ref(m) }?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = classify_classical(m, ztol).class.into();
        Ok(())
    })
}

/// Trace test, then phase estimation when the trace test is inconclusive.
/// With `refine`, a quantum positive semi-definite verdict is split by also
/// classifying `-M`.
///
/// # Safety
/// `m` and `cfg` must be valid pointers and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hs_classify_hybrid(
    m: *const HsMatrix,
    cfg: *const HsConfig,
    refine: bool,
    out: *mut HsVerdict,
) -> HsStatus {
    guard(|| {
        let m = unsafe { matrix_ref(m) }?;
        let cfg = unsafe { cfg.as_ref() }.ok_or_else(|| null("config"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        let q = QuantumConfig::from(cfg);
        let v = if refine { classify_hybrid_refined(m, &q, cfg.ztol) } else { classify_hybrid_matrix(m, &q, cfg.ztol) }
            .map_err(lib_err)?;
        *out = HsVerdict {
            definiteness: v.class.into(),
            stage: match v.stage {
                Stage::Classical => HsStage::Classical,
                Stage::Quantum => HsStage::Quantum,
            },
            mean_sigma: v.quantum.as_ref().map_or(f64::NAN, |q| q.mean_sigma),
            refined: v.refined,
        };
        Ok(())
    })
}

/// Writes the `2^n` outcome probabilities for a single phase `theta`.
///
/// # Safety
/// `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn hs_single_phase_distribution(theta: f64, n: u32, out: *mut f64, len: usize) -> HsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if !(1..=24).contains(&n) || !theta.is_finite() {
            return Err((HsStatus::InvalidArgument, format!("need finite theta and n in 1..=24, got n = {n}")));
        }
        let size = 1usize << n;
        if len < size {
            return Err((HsStatus::BufferTooSmall, format!("buffer holds {len}, need {size}")));
        }
        let d = single_phase_distribution(theta, n);
        let dst = unsafe { std::slice::from_raw_parts_mut(out, size) };
        dst.copy_from_slice(d.probabilities());
        Ok(())
    })
}

/// Message describing the outcome of the most recent call on this thread;
/// empty after a success. Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
