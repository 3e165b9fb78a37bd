//! Class-labelled random Hermitian matrices `V diag(λ) V^H`.

use num_complex::Complex64;
use rand::seq::index;
use rand::Rng as _;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::class::{ground_truth_class, CanonicalClass, DEFAULT_ZTOL};
use crate::linalg::{self, CMatrix};
use crate::matrix::{HermitianMatrix, MatrixRecord};
use crate::rng::{substream, Rng, TAG_SAMPLE};

/// Share of positive-class matrices carrying an exact zero eigenvalue.
pub const DEFAULT_ZERO_FRACTION: f64 = 0.05;

pub fn complex_gaussian(rng: &mut Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Random unitary from modified Gram-Schmidt on a complex Gaussian matrix.
///
/// MGS yields an R factor with positive real diagonal, which fixes the column
/// phases and makes the distribution Haar.
pub fn random_unitary(dim: usize, rng: &mut Rng) -> CMatrix {
    loop {
        let mut cols: Vec<Vec<Complex64>> =
            (0..dim).map(|_| (0..dim).map(|_| complex_gaussian(rng)).collect()).collect();
        let mut degenerate = false;
        for j in 0..dim {
            for k in 0..j {
                let proj = linalg::inner(&cols[k], &cols[j]);
                let (head, tail) = cols.split_at_mut(j);
                for (x, q) in tail[0].iter_mut().zip(&head[k]) {
                    *x -= proj * q;
                }
            }
            let nrm = linalg::norm(&cols[j]);
            if nrm < 1e-12 {
                degenerate = true;
                break;
            }
            for x in cols[j].iter_mut() {
                *x /= nrm;
            }
        }
        if degenerate {
            continue;
        }
        let mut u = CMatrix::zeros(dim);
        for (j, col) in cols.iter().enumerate() {
            for (i, z) in col.iter().enumerate() {
                u[(i, j)] = *z;
            }
        }
        return u;
    }
}

/// `V diag(λ) V^H` for a random unitary `V`.
pub fn conjugated_diagonal(eigenvalues: &[f64], rng: &mut Rng) -> HermitianMatrix {
    let n = eigenvalues.len();
    let v = random_unitary(n, rng);
    let mut m = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, &l) in eigenvalues.iter().enumerate() {
                acc += v[(i, k)] * l * v[(j, k)].conj();
            }
            m[(i, j)] = acc;
        }
    }
    HermitianMatrix::from_hermitian_parts(&m)
}

/// Unstructured Hermitian test matrix `(G + G^H) / 2` with Gaussian `G`.
pub fn random_hermitian(dim: usize, rng: &mut Rng) -> HermitianMatrix {
    let g: Vec<Complex64> = (0..dim * dim).map(|_| complex_gaussian(rng)).collect();
    HermitianMatrix::from_hermitian_parts(&CMatrix::from_row_major(dim, g))
}

/// Where the forced zero eigenvalue goes in a positive-class matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ZeroPlacement {
    /// Replace a uniformly chosen eigenvalue.
    #[default]
    Random,
    /// Replace the smallest eigenvalue.
    Smallest,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub count_per_class: usize,
    pub dim: usize,
    pub zero_fraction: f64,
    pub zero_placement: ZeroPlacement,
    pub seed: u64,
}

impl SampleSpec {
    pub fn new(count_per_class: usize, dim: usize, seed: u64) -> Self {
        SampleSpec {
            count_per_class,
            dim,
            zero_fraction: DEFAULT_ZERO_FRACTION,
            zero_placement: ZeroPlacement::Random,
            seed,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LabeledMatrix {
    pub id: usize,
    pub label: CanonicalClass,
    pub matrix: HermitianMatrix,
}

impl LabeledMatrix {
    pub fn to_record(&self) -> MatrixRecord {
        MatrixRecord::from_matrix(&self.matrix, Some(self.label.as_str().to_string()))
    }
}

fn draw_eigenvalues(
    class: CanonicalClass,
    dim: usize,
    force_zero: bool,
    placement: ZeroPlacement,
    rng: &mut Rng,
) -> Vec<f64> {
    match class {
        CanonicalClass::Positive => {
            let mut l: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
            if force_zero {
                let k = match placement {
                    ZeroPlacement::Random => rng.random_range(0..dim),
                    ZeroPlacement::Smallest => (0..dim).min_by(|&a, &b| l[a].total_cmp(&l[b])).unwrap_or(0),
                };
                l[k] = 0.0;
            }
            l
        }
        CanonicalClass::Negative => (0..dim)
            .map(|_| loop {
                let x = rng.random::<f64>() - 1.0;
                if x < -DEFAULT_ZTOL {
                    break x;
                }
            })
            .collect(),
        CanonicalClass::Indefinite => loop {
            let l: Vec<f64> = (0..dim).map(|_| 2.0 * rng.random::<f64>() - 1.0).collect();
            if l.iter().any(|&x| x > DEFAULT_ZTOL) && l.iter().any(|&x| x < -DEFAULT_ZTOL) {
                break l;
            }
        },
    }
}

/// `count` matrices of one canonical class. Matrix `i` depends only on
/// `(seed, class, i)`.
pub fn generate_sample(
    class: CanonicalClass,
    dim: usize,
    count: usize,
    seed: u64,
    zero_fraction: f64,
    placement: ZeroPlacement,
) -> Vec<LabeledMatrix> {
    assert!(dim >= 1, "dimension must be positive");
    assert!((0.0..=1.0).contains(&zero_fraction), "zero_fraction must lie in [0, 1]");
    let class_tag = class.index() as u64;
    let mut zeroed = vec![false; count];
    if class == CanonicalClass::Positive && count > 0 {
        let k = ((zero_fraction * count as f64).round() as usize).min(count);
        let mut pick = substream(seed, &[TAG_SAMPLE, class_tag, u64::MAX]);
        for i in index::sample(&mut pick, count, k) {
            zeroed[i] = true;
        }
    }
    (0..count)
        .map(|i| {
            let mut rng = substream(seed, &[TAG_SAMPLE, class_tag, i as u64]);
            let matrix = loop {
                let l = draw_eigenvalues(class, dim, zeroed[i], placement, &mut rng);
                let m = conjugated_diagonal(&l, &mut rng);
                let truth = ground_truth_class(&m, DEFAULT_ZTOL).ok().and_then(|c| c.canonical());
                if truth == Some(class) {
                    break m;
                }
            };
            LabeledMatrix { id: i, label: class, matrix }
        })
        .collect()
}

/// Equal counts of the three classes, positive first; ids run over the whole sample.
pub fn generate_balanced(spec: &SampleSpec) -> Vec<LabeledMatrix> {
    let mut out = Vec::with_capacity(3 * spec.count_per_class);
    for class in CanonicalClass::ALL {
        for mut lm in
            generate_sample(class, spec.dim, spec.count_per_class, spec.seed, spec.zero_fraction, spec.zero_placement)
        {
            lm.id = out.len();
            out.push(lm);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::DefinitenessClass;
    use crate::eigen::eigen_decompose;

    #[test]
    fn unitary_is_unitary() {
        let mut rng = substream(1, &[]);
        for n in [1, 2, 4, 8] {
            assert!(random_unitary(n, &mut rng).unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn conjugation_keeps_spectrum() {
        let mut rng = substream(2, &[]);
        let l = [-0.7, 0.1, 0.25, 0.9];
        let m = conjugated_diagonal(&l, &mut rng);
        let s = eigen_decompose(&m).unwrap();
        for (a, b) in s.eigenvalues.iter().zip(l) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn positive_sample_has_zero_eigenvalue_matrices() {
        let s = generate_sample(CanonicalClass::Positive, 4, 600, 42, 0.05, ZeroPlacement::Random);
        assert_eq!(s.len(), 600);
        let mut semis = 0;
        for lm in &s {
            let c = ground_truth_class(&lm.matrix, DEFAULT_ZTOL).unwrap();
            assert_eq!(c.canonical(), Some(CanonicalClass::Positive));
            if c == DefinitenessClass::PositiveSemiDefinite {
                semis += 1;
            }
        }
        assert_eq!(semis, 30);
    }

    #[test]
    fn single_negative() {
        let s = generate_sample(CanonicalClass::Negative, 4, 1, 7, 0.05, ZeroPlacement::Random);
        assert_eq!(s.len(), 1);
        let spec = eigen_decompose(&s[0].matrix).unwrap();
        assert!(spec.eigenvalues.iter().all(|&l| l < 0.0));
    }

    #[test]
    fn smallest_placement() {
        let s = generate_sample(CanonicalClass::Positive, 4, 20, 3, 1.0, ZeroPlacement::Smallest);
        for lm in &s {
            let spec = eigen_decompose(&lm.matrix).unwrap();
            assert!(spec.eigenvalues[0].abs() < 1e-12);
        }
    }

    #[test]
    fn balanced_ids_and_determinism() {
        let spec = SampleSpec::new(5, 3, 11);
        let a = generate_balanced(&spec);
        let b = generate_balanced(&spec);
        assert_eq!(a.len(), 15);
        for (i, (x, y)) in a.iter().zip(&b).enumerate() {
            assert_eq!(x.id, i);
            assert_eq!(x.matrix, y.matrix);
        }
        assert_eq!(a[7].label, CanonicalClass::Negative);
    }
}
