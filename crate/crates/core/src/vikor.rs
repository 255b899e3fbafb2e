//! Group utility and individual regret over the normalized matrix.

use crate::error::{Error, Result};
use crate::model::{CriterionSpec, Direction, NormalizedMatrix, WeightVector};
use crate::Real;

/// Column-wise best and worst normalized scores.
#[derive(Debug, Clone, PartialEq)]
pub struct RangeSpec<F> {
    /// Best normalized score per criterion (max for benefit, min for cost).
    pub best: Vec<F>,
    /// Worst normalized score per criterion.
    pub worst: Vec<F>,
}

/// Utility and regret for every alternative, in both orientations.
///
/// `s_plus` sums weighted gaps to the best score (small is good) and
/// `s_minus` sums weighted gaps to the worst (large is good); the two
/// always add up to the total weight. `r_plus` and `r_minus` keep the
/// single largest weighted gap of each orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct UtilityRegretTable<F> {
    pub alternatives: Vec<String>,
    pub s_plus: Vec<F>,
    pub s_minus: Vec<F>,
    pub r_plus: Vec<F>,
    pub r_minus: Vec<F>,
}

/// Extracts the best and worst rows of a normalized matrix.
pub fn best_worst<F: Real>(
    n: &NormalizedMatrix<F>,
    dirs: &[CriterionSpec],
) -> Result<RangeSpec<F>> {
    if dirs.len() != n.n_criteria() {
        return Err(Error::Shape(format!(
            "{} criteria for a matrix with {} columns",
            dirs.len(),
            n.n_criteria()
        )));
    }
    let rows = n.n_alternatives();
    let mut best = Vec::with_capacity(dirs.len());
    let mut worst = Vec::with_capacity(dirs.len());
    for (j, spec) in dirs.iter().enumerate() {
        let mut lo = n.value(0, j);
        let mut hi = lo;
        for i in 1..rows {
            let v = n.value(i, j);
            if v < lo {
                lo = v;
            }
            if v > hi {
                hi = v;
            }
        }
        match spec.direction {
            Direction::Benefit => {
                best.push(hi);
                worst.push(lo);
            }
            Direction::Cost => {
                best.push(lo);
                worst.push(hi);
            }
        }
    }
    Ok(RangeSpec { best, worst })
}

/// Weighted utility and regret of every alternative against a range.
///
/// Each column is rescaled so its best score maps to gap 0 and its worst
/// to gap 1. A column whose best and worst coincide carries no ranking
/// information and contributes gap 0 everywhere; if every column is flat
/// the table would be all zeros, which is reported as degenerate.
pub fn utility_regret<F: Real>(
    n: &NormalizedMatrix<F>,
    w: &WeightVector<F>,
    range: &RangeSpec<F>,
) -> Result<UtilityRegretTable<F>> {
    let cols = n.n_criteria();
    if w.len() != cols {
        return Err(Error::Shape(format!(
            "{} weights for a matrix with {} columns",
            w.len(),
            cols
        )));
    }
    if range.best.len() != cols || range.worst.len() != cols {
        return Err(Error::Shape(format!(
            "range rows of length {}/{} for a matrix with {} columns",
            range.best.len(),
            range.worst.len(),
            cols
        )));
    }
    let mut live = false;
    for j in 0..cols {
        if range.best[j] != range.worst[j] {
            live = true;
            break;
        }
    }
    if !live {
        return Err(Error::Degenerate(
            "every criterion has identical best and worst scores".into(),
        ));
    }
    let weights = w.as_slice();
    let rows = n.n_alternatives();
    let mut s_plus = Vec::with_capacity(rows);
    let mut s_minus = Vec::with_capacity(rows);
    let mut r_plus = Vec::with_capacity(rows);
    let mut r_minus = Vec::with_capacity(rows);
    for i in 0..rows {
        let mut sp = F::zero();
        let mut sm = F::zero();
        let mut rp = F::zero();
        let mut rm = F::zero();
        for (j, &weight) in weights.iter().enumerate() {
            let span = range.best[j] - range.worst[j];
            let gap = if span == F::zero() {
                F::zero()
            } else {
                (range.best[j] - n.value(i, j)) / span
            };
            let wp = weight * gap;
            let wm = weight * (F::one() - gap);
            sp = sp + wp;
            sm = sm + wm;
            if wp > rp {
                rp = wp;
            }
            if wm > rm {
                rm = wm;
            }
        }
        s_plus.push(sp);
        s_minus.push(sm);
        r_plus.push(rp);
        r_minus.push(rm);
    }
    Ok(UtilityRegretTable {
        alternatives: n.alternatives().to_vec(),
        s_plus,
        s_minus,
        r_plus,
        r_minus,
    })
}

/// Classic compromise score over utility and regret.
///
/// Blends the min-max rescaled `s_plus` and `r_plus` columns with the
/// strategy weight `k`; lower is better. Fails when either column is
/// flat, since its rescaling would divide by zero.
pub fn classic_q<F: Real>(t: &UtilityRegretTable<F>, k: F) -> Result<Vec<F>> {
    if !(k >= F::zero() && k <= F::one()) {
        return Err(Error::Range(format!("strategy weight {k} outside [0, 1]")));
    }
    let spread = |v: &[F], name: &str| -> Result<(F, F)> {
        let mut lo = v[0];
        let mut hi = v[0];
        for &x in &v[1..] {
            if x < lo {
                lo = x;
            }
            if x > hi {
                hi = x;
            }
        }
        if lo == hi {
            return Err(Error::Degenerate(format!(
                "{name} is identical for every alternative"
            )));
        }
        Ok((lo, hi))
    };
    if t.s_plus.is_empty() {
        return Err(Error::EmptyInput("no alternatives".into()));
    }
    let (s_lo, s_hi) = spread(&t.s_plus, "utility")?;
    let (r_lo, r_hi) = spread(&t.r_plus, "regret")?;
    Ok(t.s_plus
        .iter()
        .zip(&t.r_plus)
        .map(|(&s, &r)| {
            k * (s - s_lo) / (s_hi - s_lo) + (F::one() - k) * (r - r_lo) / (r_hi - r_lo)
        })
        .collect())
}
