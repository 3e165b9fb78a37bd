use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::eigen::eigen_decompose;
use crate::error::{Error, Result};
use crate::matrix::HermitianMatrix;

/// Eigenvalues with `|λ| <= ztol` count as zero.
pub const DEFAULT_ZTOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DefinitenessClass {
    PositiveDefinite,
    PositiveSemiDefinite,
    NegativeDefinite,
    NegativeSemiDefinite,
    Indefinite,
    Unclassified,
}

/// Three-way label used for sampling and scoring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalClass {
    Positive,
    Negative,
    Indefinite,
}

impl CanonicalClass {
    pub const ALL: [CanonicalClass; 3] =
        [CanonicalClass::Positive, CanonicalClass::Negative, CanonicalClass::Indefinite];

    pub fn index(self) -> usize {
        match self {
            CanonicalClass::Positive => 0,
            CanonicalClass::Negative => 1,
            CanonicalClass::Indefinite => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CanonicalClass::Positive => "positive",
            CanonicalClass::Negative => "negative",
            CanonicalClass::Indefinite => "indefinite",
        }
    }
}

impl fmt::Display for CanonicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CanonicalClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive" => Ok(CanonicalClass::Positive),
            "negative" => Ok(CanonicalClass::Negative),
            "indefinite" => Ok(CanonicalClass::Indefinite),
            other => Err(Error::Parse(format!("unknown class label {other:?}"))),
        }
    }
}

impl DefinitenessClass {
    /// Projection onto the three scored classes. Negative semi-definite maps
    /// to `Negative`; `Unclassified` has no projection.
    pub fn canonical(self) -> Option<CanonicalClass> {
        match self {
            DefinitenessClass::PositiveDefinite | DefinitenessClass::PositiveSemiDefinite => {
                Some(CanonicalClass::Positive)
            }
            DefinitenessClass::NegativeDefinite | DefinitenessClass::NegativeSemiDefinite => {
                Some(CanonicalClass::Negative)
            }
            DefinitenessClass::Indefinite => Some(CanonicalClass::Indefinite),
            DefinitenessClass::Unclassified => None,
        }
    }

    /// Class of `-M` given the class of `M`.
    pub fn negated(self) -> Self {
        use DefinitenessClass::*;
        match self {
            PositiveDefinite => NegativeDefinite,
            NegativeDefinite => PositiveDefinite,
            PositiveSemiDefinite => NegativeSemiDefinite,
            NegativeSemiDefinite => PositiveSemiDefinite,
            Indefinite => Indefinite,
            Unclassified => Unclassified,
        }
    }

    /// Semi-definite verdicts from the trace test are candidates only.
    pub fn is_candidate(self) -> bool {
        matches!(self, DefinitenessClass::PositiveSemiDefinite | DefinitenessClass::NegativeSemiDefinite)
    }
}

/// Classifies a spectrum. An all-zero spectrum is reported as positive semi-definite.
pub fn class_of_eigenvalues(eigenvalues: &[f64], ztol: f64) -> DefinitenessClass {
    let has_pos = eigenvalues.iter().any(|&l| l > ztol);
    let has_neg = eigenvalues.iter().any(|&l| l < -ztol);
    let has_zero = eigenvalues.iter().any(|&l| l.abs() <= ztol);
    match (has_pos, has_neg) {
        (true, true) => DefinitenessClass::Indefinite,
        (true, false) if has_zero => DefinitenessClass::PositiveSemiDefinite,
        (true, false) => DefinitenessClass::PositiveDefinite,
        (false, true) if has_zero => DefinitenessClass::NegativeSemiDefinite,
        (false, true) => DefinitenessClass::NegativeDefinite,
        (false, false) => DefinitenessClass::PositiveSemiDefinite,
    }
}

/// Exact class from the full eigendecomposition of the unpadded matrix.
pub fn ground_truth_class(m: &HermitianMatrix, ztol: f64) -> Result<DefinitenessClass> {
    let spectrum = eigen_decompose(&m.unpadded())?;
    Ok(class_of_eigenvalues(&spectrum.eigenvalues, ztol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pad_to_power_of_two;

    fn truth(d: &[f64]) -> DefinitenessClass {
        ground_truth_class(&HermitianMatrix::from_real_diagonal(d), DEFAULT_ZTOL).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(truth(&[0.2, 0.5]), DefinitenessClass::PositiveDefinite);
        assert_eq!(truth(&[0.0, -0.3]), DefinitenessClass::NegativeSemiDefinite);
        assert_eq!(truth(&[0.3, -0.2]), DefinitenessClass::Indefinite);
        assert_eq!(truth(&[-0.3, -0.2]), DefinitenessClass::NegativeDefinite);
        assert_eq!(truth(&[0.0, 0.4]), DefinitenessClass::PositiveSemiDefinite);
        assert_eq!(truth(&[0.0, 0.0]), DefinitenessClass::PositiveSemiDefinite);
    }

    #[test]
    fn padding_zeros_ignored() {
        let m = pad_to_power_of_two(&HermitianMatrix::from_real_diagonal(&[0.1, 0.2, 0.3]));
        assert_eq!(m.dim(), 4);
        assert_eq!(ground_truth_class(&m, DEFAULT_ZTOL).unwrap(), DefinitenessClass::PositiveDefinite);
    }

    #[test]
    fn canonical_projection() {
        use DefinitenessClass::*;
        assert_eq!(PositiveDefinite.canonical(), Some(CanonicalClass::Positive));
        assert_eq!(PositiveSemiDefinite.canonical(), Some(CanonicalClass::Positive));
        assert_eq!(NegativeDefinite.canonical(), Some(CanonicalClass::Negative));
        assert_eq!(NegativeSemiDefinite.canonical(), Some(CanonicalClass::Negative));
        assert_eq!(Indefinite.canonical(), Some(CanonicalClass::Indefinite));
        assert_eq!(Unclassified.canonical(), None);
        for c in [PositiveDefinite, PositiveSemiDefinite, Indefinite, Unclassified] {
            assert_eq!(c.negated().negated(), c);
        }
    }

    #[test]
    fn labels_parse() {
        for c in CanonicalClass::ALL {
            assert_eq!(c.as_str().parse::<CanonicalClass>().unwrap(), c);
        }
        assert!("psd".parse::<CanonicalClass>().is_err());
    }
}
