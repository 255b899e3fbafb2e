//! Dispersion-based criterion weighting.
//!
//! Each column is turned into a proportion distribution, scored by its
//! normalized information entropy, and weighted by its degree of
//! variation: criteria whose scores hardly differ get little weight,
//! constant or empty criteria get none.

use crate::error::{Error, Result};
use crate::model::{NormalizedMatrix, WeightVector};
use crate::{real, Real};

/// Full entropy computation trace.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport<F> {
    /// Per-cell column proportions, one inner list per alternative.
    pub rho: Vec<Vec<F>>,
    /// Normalized entropy per criterion, in `[0, 1]`.
    pub entropy: Vec<F>,
    /// Degree of variation per criterion, `1 - entropy`.
    pub variation: Vec<F>,
    /// Final weights, variation shares summing to one.
    pub weights: WeightVector<F>,
}

/// Computes entropy weights from nonnegative normalized scores.
///
/// All-zero columns carry zero entropy weight; if every column is
/// uninformative the weights fall back to uniform. A single
/// alternative admits no dispersion measure at all.
pub fn entropy_weights<F: Real>(n: &NormalizedMatrix<F>) -> Result<EntropyReport<F>> {
    let rows = n.n_alternatives();
    let cols = n.n_criteria();
    if rows < 2 {
        return Err(Error::Degenerate(
            "entropy needs at least two alternatives".into(),
        ));
    }
    for i in 0..rows {
        for j in 0..cols {
            if n.value(i, j) < F::zero() {
                return Err(Error::Range(format!(
                    "alternative '{}': negative score in column {}",
                    n.alternatives()[i],
                    j + 1
                )));
            }
        }
    }

    let mut rho = vec![vec![F::zero(); cols]; rows];
    let mut entropy = Vec::with_capacity(cols);
    let scale = F::one() / real::<F>(rows as f64).ln();
    for j in 0..cols {
        let sum = (0..rows).fold(F::zero(), |acc, i| acc + n.value(i, j));
        if sum == F::zero() {
            // Empty column: no information, maximal entropy by convention.
            entropy.push(F::one());
            continue;
        }
        let mut acc = F::zero();
        for (i, row) in rho.iter_mut().enumerate() {
            let p = n.value(i, j) / sum;
            row[j] = p;
            if p > F::zero() {
                acc = acc + p * p.ln();
            }
        }
        let e = -scale * acc;
        entropy.push(e.max(F::zero()).min(F::one()));
    }

    let variation: Vec<F> = entropy.iter().map(|e| F::one() - *e).collect();
    let total = variation.iter().fold(F::zero(), |a, b| a + *b);
    let weights = if total == F::zero() {
        WeightVector::uniform(cols)?
    } else {
        WeightVector::new(variation.iter().map(|d| *d / total).collect())?
    };
    Ok(EntropyReport { rho, entropy, variation, weights })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NormalizedMatrix;

    fn matrix(rows: Vec<Vec<f64>>) -> NormalizedMatrix<f64> {
        let alternatives = (0..rows.len()).map(|i| format!("alt{i}")).collect();
        NormalizedMatrix::from_rows(alternatives, rows).unwrap()
    }

    #[test]
    fn golden_three_by_two() {
        // Column 1 = (0.2, 0.3, 0.5) proportions, column 2 uniform:
        // only column 1 carries information, so it takes all the weight.
        let n = matrix(vec![
            vec![0.2, 1.0 / 3.0],
            vec![0.3, 1.0 / 3.0],
            vec![0.5, 1.0 / 3.0],
        ]);
        let report = entropy_weights(&n).unwrap();
        assert!((report.entropy[0] - 0.937_230_563_216_129_5).abs() <= 1e-12);
        assert!((report.entropy[1] - 1.0).abs() <= 1e-12);
        assert!((report.weights.as_slice()[0] - 1.0).abs() <= 1e-12);
        assert!(report.weights.as_slice()[1].abs() <= 1e-12);
    }

    #[test]
    fn rho_columns_sum_to_one() {
        let n = matrix(vec![vec![0.1, 0.9], vec![0.4, 0.2], vec![0.5, 0.3]]);
        let report = entropy_weights(&n).unwrap();
        for j in 0..2 {
            let sum: f64 = report.rho.iter().map(|row| row[j]).sum();
            assert!((sum - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn uniform_column_has_unit_entropy() {
        let n = matrix(vec![vec![0.5, 0.1], vec![0.5, 0.7]]);
        let report = entropy_weights(&n).unwrap();
        assert!((report.entropy[0] - 1.0).abs() <= 1e-12);
        assert!(report.variation[0].abs() <= 1e-12);
        assert!(report.weights.as_slice()[0].abs() <= 1e-12);
    }

    #[test]
    fn zero_column_gets_zero_weight() {
        let n = matrix(vec![vec![0.0, 0.2], vec![0.0, 0.8]]);
        let report = entropy_weights(&n).unwrap();
        assert_eq!(report.entropy[0], 1.0);
        assert_eq!(report.weights.as_slice()[0], 0.0);
        assert_eq!(report.weights.as_slice()[1], 1.0);
    }

    #[test]
    fn all_empty_columns_fall_back_to_uniform() {
        let n = matrix(vec![vec![0.0, 0.0], vec![0.0, 0.0]]);
        let report = entropy_weights(&n).unwrap();
        assert_eq!(report.weights.as_slice(), &[0.5, 0.5]);
    }

    #[test]
    fn duplicate_columns_get_equal_weights() {
        let n = matrix(vec![vec![0.1, 0.1, 0.6], vec![0.9, 0.9, 0.4]]);
        let report = entropy_weights(&n).unwrap();
        let w = report.weights.as_slice();
        assert!((w[0] - w[1]).abs() <= 1e-12);
    }

    #[test]
    fn row_permutation_leaves_weights_unchanged() {
        let a = matrix(vec![vec![0.1, 0.5], vec![0.3, 0.2], vec![0.6, 0.3]]);
        let b = matrix(vec![vec![0.6, 0.3], vec![0.1, 0.5], vec![0.3, 0.2]]);
        let wa = entropy_weights(&a).unwrap().weights;
        let wb = entropy_weights(&b).unwrap().weights;
        for (x, y) in wa.as_slice().iter().zip(wb.as_slice()) {
            assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn single_alternative_is_degenerate() {
        let n = matrix(vec![vec![1.0]]);
        assert!(matches!(entropy_weights(&n), Err(Error::Degenerate(_))));
    }

    #[test]
    fn negative_scores_are_rejected() {
        let n = matrix(vec![vec![-0.1], vec![0.5]]);
        assert!(matches!(entropy_weights(&n), Err(Error::Range(_))));
    }
}
