//! Strategy-weight sweeps: evaluate the blended score across a grid of
//! k values and measure how far each rank moves.

use crate::error::{Error, Result};
use crate::fusion::{badness, rank_ascending, SdrPair};
use crate::{fmt_fixed, real, Real};

/// Scores and ranks for every alternative at every grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTrajectory<F> {
    pub alternatives: Vec<String>,
    pub grid: Vec<F>,
    /// q[g][i] is the blended score of alternative i at grid point g.
    pub q: Vec<Vec<F>>,
    /// ranks[g][i] is the 1-based rank of alternative i at grid point g.
    pub ranks: Vec<Vec<usize>>,
}

/// Parses a "start:stop:step" grid over [0, 1] into explicit k values.
///
/// The number of steps is (stop - start) / step, rounded when within
/// 1e-6 of an integer and floored otherwise; points are start + i*step,
/// never exceeding stop.
pub fn parse_grid<F: Real>(text: &str) -> Result<Vec<F>> {
    let err = || {
        Error::Range(format!(
            "grid '{text}' must be start:stop:step with numeric fields"
        ))
    };
    let mut fields = text.split(':');
    let mut next = || -> Result<f64> {
        fields
            .next()
            .and_then(|f| f.trim().parse::<f64>().ok())
            .filter(|v| v.is_finite())
            .ok_or_else(err)
    };
    let (start, stop, step) = (next()?, next()?, next()?);
    if fields.next().is_some() {
        return Err(err());
    }
    if !(0.0..=1.0).contains(&start) || !(0.0..=1.0).contains(&stop) || start > stop {
        return Err(Error::Range(format!(
            "grid '{text}' must stay inside [0, 1] with start <= stop"
        )));
    }
    if step <= 0.0 {
        return Err(Error::Range(format!("grid step {step} must be positive")));
    }
    let raw = (stop - start) / step;
    let steps = if (raw - raw.round()).abs() <= 1e-6 {
        raw.round() as usize
    } else {
        raw.floor() as usize
    };
    Ok((0..=steps)
        .map(|i| real::<F>((start + step * i as f64).min(stop)))
        .collect())
}

/// Evaluates the compromise across a grid of k values. The rescaled
/// badness scores are computed once; q is affine in k.
pub fn sweep_k<F: Real>(
    alternatives: &[String],
    sdr: &[SdrPair<F>],
    grid: &[F],
) -> Result<RankTrajectory<F>> {
    if alternatives.len() != sdr.len() {
        return Err(Error::Shape(format!(
            "{} alternatives for {} SDR pairs",
            alternatives.len(),
            sdr.len()
        )));
    }
    if grid.is_empty() {
        return Err(Error::Range("empty k grid".into()));
    }
    for &k in grid {
        if !(k >= F::zero() && k <= F::one()) {
            return Err(Error::Range(format!("strategy weight {k} outside [0, 1]")));
        }
    }
    let (a, b) = badness(sdr)?;
    let sdr_plus: Vec<F> = sdr.iter().map(|p| p.plus).collect();
    let mut q = Vec::with_capacity(grid.len());
    let mut ranks = Vec::with_capacity(grid.len());
    for &k in grid {
        let row: Vec<F> = a
            .iter()
            .zip(&b)
            .map(|(&ai, &bi)| (F::one() - k) * ai + k * bi)
            .collect();
        ranks.push(rank_ascending(alternatives, &row, &sdr_plus));
        q.push(row);
    }
    Ok(RankTrajectory {
        alternatives: alternatives.to_vec(),
        grid: grid.to_vec(),
        q,
        ranks,
    })
}

/// How far each alternative's rank moves, at worst, relative to its rank
/// at the reference grid point.
pub fn max_rank_shift<F: Real>(t: &RankTrajectory<F>, reference_k: F) -> Result<Vec<usize>> {
    let tol = real::<F>(1e-9);
    let reference = t
        .grid
        .iter()
        .position(|&k| (k - reference_k).abs() <= tol)
        .ok_or_else(|| {
            Error::NotFound(format!("reference k {reference_k} is not on the grid"))
        })?;
    let base = &t.ranks[reference];
    Ok((0..t.alternatives.len())
        .map(|i| {
            t.ranks
                .iter()
                .map(|row| row[i].abs_diff(base[i]))
                .max()
                .unwrap_or(0)
        })
        .collect())
}

/// Long-form CSV of the sweep: one row per grid point and alternative.
pub fn trajectory_csv<F: Real>(t: &RankTrajectory<F>) -> String {
    let mut out = String::from("k,alternative,q,rank\n");
    for (g, &k) in t.grid.iter().enumerate() {
        for (i, name) in t.alternatives.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_fixed(k),
                name,
                fmt_fixed(t.q[g][i]),
                t.ranks[g][i]
            ));
        }
    }
    out
}
