//! Ideal solutions and Euclidean separations over the weighted matrix.

use crate::error::{Error, Result};
use crate::model::{CriterionSpec, Direction, WeightedMatrix};
use crate::Real;

/// Column-wise best and worst attainable weighted scores.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealPair<F> {
    /// Best attainable score per criterion (max for benefit, min for cost).
    pub positive: Vec<F>,
    /// Worst attainable score per criterion.
    pub negative: Vec<F>,
}

/// Euclidean distance of every alternative from both ideals.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationTable<F> {
    pub alternatives: Vec<String>,
    /// Distance to the positive ideal; small is good.
    pub d_plus: Vec<F>,
    /// Distance to the negative ideal; large is good.
    pub d_minus: Vec<F>,
}

/// Extracts the positive and negative ideal rows from a weighted matrix.
pub fn ideal_solutions<F: Real>(
    t: &WeightedMatrix<F>,
    dirs: &[CriterionSpec],
) -> Result<IdealPair<F>> {
    if dirs.len() != t.n_criteria() {
        return Err(Error::Shape(format!(
            "{} criteria for a matrix with {} columns",
            dirs.len(),
            t.n_criteria()
        )));
    }
    let n = t.n_alternatives();
    let mut positive = Vec::with_capacity(dirs.len());
    let mut negative = Vec::with_capacity(dirs.len());
    for (j, spec) in dirs.iter().enumerate() {
        let mut lo = t.value(0, j);
        let mut hi = lo;
        for i in 1..n {
            let v = t.value(i, j);
            if v < lo {
                lo = v;
            }
            if v > hi {
                hi = v;
            }
        }
        match spec.direction {
            Direction::Benefit => {
                positive.push(hi);
                negative.push(lo);
            }
            Direction::Cost => {
                positive.push(lo);
                negative.push(hi);
            }
        }
    }
    Ok(IdealPair { positive, negative })
}

/// Euclidean distance of every row from both ideal rows.
pub fn separations<F: Real>(
    t: &WeightedMatrix<F>,
    ideal: &IdealPair<F>,
) -> Result<SeparationTable<F>> {
    if ideal.positive.len() != t.n_criteria() || ideal.negative.len() != t.n_criteria() {
        return Err(Error::Shape(format!(
            "ideal rows of length {}/{} for a matrix with {} columns",
            ideal.positive.len(),
            ideal.negative.len(),
            t.n_criteria()
        )));
    }
    let mut d_plus = Vec::with_capacity(t.n_alternatives());
    let mut d_minus = Vec::with_capacity(t.n_alternatives());
    for i in 0..t.n_alternatives() {
        let row = t.row(i);
        let mut plus = F::zero();
        let mut minus = F::zero();
        for (j, v) in row.iter().enumerate() {
            let dp = *v - ideal.positive[j];
            let dm = *v - ideal.negative[j];
            plus = plus + dp * dp;
            minus = minus + dm * dm;
        }
        d_plus.push(plus.sqrt());
        d_minus.push(minus.sqrt());
    }
    Ok(SeparationTable {
        alternatives: t.alternatives().to_vec(),
        d_plus,
        d_minus,
    })
}
