//! Gate-level statevector simulation of the phase-estimation circuit.
//!
//! Layout: `n` ancilla qubits above `m` system qubits. Amplitude index
//! `x * 2^m + j`, where `x` is the ancilla integer (ancilla qubit `k` is bit
//! `k` of `x`, qubit `n-1` the most significant) and `j` the system index.
//! Global qubit `q` is bit `q` of the amplitude index, so ancilla qubit `k`
//! is global qubit `m + k`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::eigen::{eigen_decompose, Spectrum};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::matrix::HermitianMatrix;
use crate::qpe::analytic::AncillaDistribution;

pub const NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n: u32,
    m: u32,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0>^n ⊗ |b>`. `b` must have length `2^m` and unit norm.
    pub fn with_system(n: u32, b: &[Complex64]) -> Result<Self> {
        if !b.len().is_power_of_two() {
            return Err(Error::DimensionMismatch(format!("system vector length {} is not a power of two", b.len())));
        }
        let nrm = linalg::norm(b);
        if (nrm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidArgument(format!("initial vector has norm {nrm}")));
        }
        let m = b.len().trailing_zeros();
        if n == 0 || n + m > 40 {
            return Err(Error::InvalidArgument(format!("unsupported register size n={n}, m={m}")));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << (n + m)];
        amps[..b.len()].copy_from_slice(b);
        Ok(Statevector { n, m, amps })
    }

    pub fn from_amplitudes(n: u32, m: u32, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1usize << (n + m) {
            return Err(Error::DimensionMismatch(format!("{} amplitudes for {} qubits", amps.len(), n + m)));
        }
        Ok(Statevector { n, m, amps })
    }

    pub fn ancilla_qubits(&self) -> u32 {
        self.n
    }

    pub fn system_qubits(&self) -> u32 {
        self.m
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.amps)
    }

    fn system_dim(&self) -> usize {
        1usize << self.m
    }

    pub fn apply_hadamard(&mut self, qubit: u32) {
        let bit = 1usize << qubit;
        let h = FRAC_1_SQRT_2;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let a = self.amps[i];
                let b = self.amps[i | bit];
                self.amps[i] = (a + b) * h;
                self.amps[i | bit] = (a - b) * h;
            }
        }
    }

    /// Diagonal controlled phase: multiplies amplitudes with both bits set by `e^{iφ}`.
    pub fn apply_controlled_phase(&mut self, a: u32, b: u32, angle: f64) {
        let mask = (1usize << a) | (1usize << b);
        let phase = Complex64::from_polar(1.0, angle);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *amp *= phase;
            }
        }
    }

    pub fn apply_swap(&mut self, a: u32, b: u32) {
        if a == b {
            return;
        }
        let (ba, bb) = (1usize << a, 1usize << b);
        for i in 0..self.amps.len() {
            if i & ba != 0 && i & bb == 0 {
                self.amps.swap(i, (i & !ba) | bb);
            }
        }
    }

    /// Applies `u` to the system register on every branch where ancilla qubit `k` is 1.
    pub fn apply_controlled_system_unitary(&mut self, k: u32, u: &CMatrix) {
        let sd = self.system_dim();
        assert_eq!(u.dim(), sd, "system unitary has wrong dimension");
        let mut scratch = vec![Complex64::new(0.0, 0.0); sd];
        for x in 0..1usize << self.n {
            if (x >> k) & 1 == 1 {
                let block = &mut self.amps[x * sd..(x + 1) * sd];
                u.mul_vec_into(block, &mut scratch);
                block.copy_from_slice(&scratch);
            }
        }
    }

    /// Forward QFT on `count` qubits starting at global qubit `first`,
    /// `|y> -> 2^{-count/2} Σ_x e^{2πi xy / 2^count} |x>`.
    pub fn qft(&mut self, first: u32, count: u32) {
        for i in (0..count).rev() {
            self.apply_hadamard(first + i);
            for j in (0..i).rev() {
                self.apply_controlled_phase(first + i, first + j, PI / (1u64 << (i - j)) as f64);
            }
        }
        for i in 0..count / 2 {
            self.apply_swap(first + i, first + count - 1 - i);
        }
    }

    /// Inverse QFT with the swap network applied last, so the register ends in
    /// natural order (qubit `first + count - 1` holds the most significant bit).
    pub fn inverse_qft(&mut self, first: u32, count: u32) {
        for i in (0..count).rev() {
            for j in (i + 1..count).rev() {
                self.apply_controlled_phase(first + i, first + j, -PI / (1u64 << (j - i)) as f64);
            }
            self.apply_hadamard(first + i);
        }
        for i in 0..count / 2 {
            self.apply_swap(first + i, first + count - 1 - i);
        }
    }

    /// Marginal distribution of the ancilla register.
    pub fn ancilla_distribution(&self) -> AncillaDistribution {
        let sd = self.system_dim();
        let p = self.amps.chunks_exact(sd).map(|block| block.iter().map(|z| z.norm_sqr()).sum()).collect();
        AncillaDistribution::from_probabilities(self.n, p).expect("register sizes are consistent")
    }
}

/// `(P(msb = 0), P(msb = 1))` for the most significant ancilla qubit.
pub fn marginal_msb(state: &Statevector) -> (f64, f64) {
    let half = state.amps.len() / 2;
    let p0: f64 = state.amps[..half].iter().map(|z| z.norm_sqr()).sum();
    let p1: f64 = state.amps[half..].iter().map(|z| z.norm_sqr()).sum();
    (p0, p1)
}

/// Phase estimation of `exp(2πi M / C)` with `n` ancilla qubits.
///
/// The controlled powers `U^{2^k}` are built from the eigendecomposition as
/// `V diag(e^{2πi frac(2^k λ/C)}) V^H`, so each eigenphase is exactly `λ/C`.
#[derive(Debug, Clone)]
pub struct QpeCircuit {
    n: u32,
    m: u32,
    powers: Vec<CMatrix>,
}

impl QpeCircuit {
    pub fn new(matrix: &HermitianMatrix, scale: f64, n: u32) -> Result<Self> {
        let spectrum = eigen_decompose(matrix)?;
        Self::from_spectrum(&spectrum, scale, n)
    }

    pub fn from_spectrum(spectrum: &Spectrum, scale: f64, n: u32) -> Result<Self> {
        let dim = spectrum.dim();
        if !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimension {dim} is not a power of two; pad it first"
            )));
        }
        if !scale.is_finite() || scale <= 0.0 {
            return Err(Error::InvalidArgument(format!("scale constant must be positive, got {scale}")));
        }
        if !(1..=24).contains(&n) {
            return Err(Error::InvalidArgument(format!("ancilla count {n} outside 1..=24")));
        }
        let powers = (0..n)
            .map(|k| {
                let factor = (1u64 << k) as f64;
                spectrum.map_diagonal(|l| {
                    let turns = (factor * (l / scale)).rem_euclid(1.0);
                    Complex64::from_polar(1.0, 2.0 * PI * turns)
                })
            })
            .collect();
        Ok(QpeCircuit { n, m: dim.trailing_zeros(), powers })
    }

    pub fn ancilla_qubits(&self) -> u32 {
        self.n
    }

    pub fn run(&self, b: &[Complex64]) -> Result<Statevector> {
        if b.len() != 1usize << self.m {
            return Err(Error::DimensionMismatch(format!(
                "initial vector has length {}, matrix dimension is {}",
                b.len(),
                1usize << self.m
            )));
        }
        let mut state = Statevector::with_system(self.n, b)?;
        let m = self.m;
        for k in 0..self.n {
            state.apply_hadamard(m + k);
        }
        for (k, u) in self.powers.iter().enumerate() {
            state.apply_controlled_system_unitary(k as u32, u);
        }
        state.inverse_qft(m, self.n);
        Ok(state)
    }
}

pub fn run_qpe_statevector(matrix: &HermitianMatrix, scale: f64, n: u32, b: &[Complex64]) -> Result<Statevector> {
    if b.len() != matrix.dim() {
        return Err(Error::DimensionMismatch(format!(
            "initial vector has length {}, matrix dimension is {}",
            b.len(),
            matrix.dim()
        )));
    }
    QpeCircuit::new(matrix, scale, n)?.run(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn basis(n: u32, x: usize) -> Statevector {
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        amps[x] = c(1.0, 0.0);
        Statevector::from_amplitudes(n, 0, amps).unwrap()
    }

    #[test]
    fn single_qubit_inverse_qft_is_hadamard() {
        let mut a = basis(1, 1);
        a.inverse_qft(0, 1);
        let mut b = basis(1, 1);
        b.apply_hadamard(0);
        assert_eq!(a, b);
    }

    #[test]
    fn inverse_qft_matches_dft_matrix() {
        for n in 1..=5u32 {
            let size = 1usize << n;
            for y in 0..size {
                let mut s = basis(n, y);
                s.inverse_qft(0, n);
                for x in 0..size {
                    let want =
                        Complex64::from_polar(1.0 / (size as f64).sqrt(), -2.0 * PI * (x * y) as f64 / size as f64);
                    assert!((s.amplitudes()[x] - want).norm() < 1e-12, "n={n} y={y} x={x}");
                }
            }
        }
    }

    #[test]
    fn uniform_state_maps_to_zero() {
        let n = 4;
        let size = 1usize << n;
        let amps = vec![c(1.0 / (size as f64).sqrt(), 0.0); size];
        let mut s = Statevector::from_amplitudes(n, 0, amps).unwrap();
        s.inverse_qft(0, n);
        assert!((s.amplitudes()[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn qft_round_trip() {
        let n = 5;
        let size = 1usize << n;
        let amps: Vec<Complex64> = (0..size).map(|i| c((i as f64).sin(), (i as f64 * 0.3).cos())).collect();
        let nrm = linalg::norm(&amps);
        let amps: Vec<Complex64> = amps.into_iter().map(|z| z / nrm).collect();
        let mut s = Statevector::from_amplitudes(n, 0, amps.clone()).unwrap();
        s.qft(0, n);
        assert!((s.norm() - 1.0).abs() < 1e-12);
        s.inverse_qft(0, n);
        for (a, b) in s.amplitudes().iter().zip(&amps) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn msb_of_deltas() {
        let s = basis(3, 0);
        assert_eq!(marginal_msb(&s), (1.0, 0.0));
        let s = basis(3, 4);
        assert_eq!(marginal_msb(&s), (0.0, 1.0));
    }

    #[test]
    fn exact_phases_on_two_level_system() {
        let cval = 3.0;
        let m = HermitianMatrix::from_real_diagonal(&[0.25 * cval, -0.25 * cval]);
        let up = run_qpe_statevector(&m, cval, 3, &[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let (p0, p1) = marginal_msb(&up);
        assert!((p0 - 1.0).abs() < 1e-12 && p1 < 1e-12);
        assert!((up.ancilla_distribution().probabilities()[2] - 1.0).abs() < 1e-12);

        let down = run_qpe_statevector(&m, cval, 3, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let (p0, p1) = marginal_msb(&down);
        assert!((p1 - 1.0).abs() < 1e-12 && p0 < 1e-12);
        assert!((down.ancilla_distribution().probabilities()[6] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dimension_checks() {
        let m = HermitianMatrix::from_real_diagonal(&[1.0, 2.0, 3.0]);
        let b = vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(run_qpe_statevector(&m, 6.0, 3, &b), Err(Error::DimensionMismatch(_))));
        let m = HermitianMatrix::identity(2);
        assert!(matches!(run_qpe_statevector(&m, 2.0, 3, &[c(1.0, 0.0)]), Err(Error::DimensionMismatch(_))));
        assert!(run_qpe_statevector(&m, 0.0, 3, &[c(1.0, 0.0), c(0.0, 0.0)]).is_err());
    }
}
