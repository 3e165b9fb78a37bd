//! Finite-shot estimates of the most-significant-qubit `<σ_z>`.

use rand::distr::{Bernoulli, Distribution};

use crate::rng::Rng;

/// Draws `shots` Bernoulli(`p1`) readouts of the most significant ancilla
/// qubit and returns `(count0 - count1) / shots`.
///
/// `p1` is clamped to `[0, 1]` to absorb rounding in marginals.
pub fn sample_sigma_z(p1: f64, shots: u32, rng: &mut Rng) -> f64 {
    assert!(shots >= 1, "at least one shot is required");
    let p1 = if p1.is_nan() { 0.0 } else { p1.clamp(0.0, 1.0) };
    let coin = Bernoulli::new(p1).expect("probability clamped to [0, 1]");
    let ones = coin.sample_iter(rng).take(shots as usize).filter(|&b| b).count() as f64;
    let shots = shots as f64;
    (shots - 2.0 * ones) / shots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;

    #[test]
    fn certain_outcomes() {
        let mut rng = substream(1, &[]);
        assert_eq!(sample_sigma_z(0.0, 100, &mut rng), 1.0);
        assert_eq!(sample_sigma_z(1.0, 100, &mut rng), -1.0);
        assert_eq!(sample_sigma_z(1e-30, 1000, &mut rng), 1.0);
    }

    #[test]
    fn fair_coin_concentrates() {
        let mut rng = substream(2, &[]);
        let est = sample_sigma_z(0.5, 100_000, &mut rng);
        assert!(est.abs() < 0.02, "{est}");
    }

    #[test]
    fn deterministic_and_quantized() {
        let a = sample_sigma_z(0.3, 100, &mut substream(5, &[1]));
        let b = sample_sigma_z(0.3, 100, &mut substream(5, &[1]));
        assert_eq!(a, b);
        // (100 - 2k) / 100 is a multiple of 0.02
        let k = (100.0 - a * 100.0) / 2.0;
        assert!((k - k.round()).abs() < 1e-9);
    }
}
