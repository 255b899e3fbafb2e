//! Combines separation and utility-regret metrics into SDR means, the
//! blended compromise score q, and the final ranking.

use crate::aism::{CriteriaProfile, Preference, ProfileColumn};
use crate::error::{Error, Result};
use crate::model::{CriterionSpec, DecisionMatrix, Direction};
use crate::topsis::SeparationTable;
use crate::vikor::UtilityRegretTable;
use crate::{fmt_fixed, Real};

/// Arithmetic means of the three "distance from best" and three
/// "distance from worst" metrics for one alternative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdrPair<F> {
    /// Mean of S+, D+, R+; small is good.
    pub plus: F,
    /// Mean of S-, D-, R-; large is good.
    pub minus: F,
}

/// The six per-alternative metrics side by side, one row per alternative.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricTable<F> {
    pub alternatives: Vec<String>,
    pub s_plus: Vec<F>,
    pub s_minus: Vec<F>,
    pub d_plus: Vec<F>,
    pub d_minus: Vec<F>,
    pub r_plus: Vec<F>,
    pub r_minus: Vec<F>,
}

/// Canonical metric column ids with the direction each one carries in a
/// metric CSV: "from best" columns are costs, "from worst" are benefits.
const METRIC_COLUMNS: [(&str, Direction); 6] = [
    ("S+", Direction::Cost),
    ("S-", Direction::Benefit),
    ("D+", Direction::Cost),
    ("D-", Direction::Benefit),
    ("R+", Direction::Cost),
    ("R-", Direction::Benefit),
];

impl<F: Real> MetricTable<F> {
    /// Joins a separation table and a utility-regret table over the same
    /// alternatives.
    pub fn from_parts(
        sep: &SeparationTable<F>,
        ur: &UtilityRegretTable<F>,
    ) -> Result<Self> {
        if sep.alternatives != ur.alternatives {
            return Err(Error::Shape(
                "separation and utility-regret tables list different alternatives".into(),
            ));
        }
        Ok(MetricTable {
            alternatives: sep.alternatives.clone(),
            s_plus: ur.s_plus.clone(),
            s_minus: ur.s_minus.clone(),
            d_plus: sep.d_plus.clone(),
            d_minus: sep.d_minus.clone(),
            r_plus: ur.r_plus.clone(),
            r_minus: ur.r_minus.clone(),
        })
    }

    /// Reads a decision matrix whose criteria are exactly the six metric
    /// columns (any order, canonical directions) back into a table.
    pub fn from_decision_matrix(m: &DecisionMatrix<F>) -> Result<Self> {
        if !is_metric_header(m.criteria()) {
            return Err(Error::Shape(
                "expected exactly the six metric columns S+, S-, D+, D-, R+, R-".into(),
            ));
        }
        let mut columns: Vec<Vec<F>> = Vec::with_capacity(6);
        for (id, direction) in METRIC_COLUMNS {
            let j = m
                .criteria()
                .iter()
                .position(|c| c.id == id)
                .expect("checked by is_metric_header");
            let spec = &m.criteria()[j];
            if spec.direction != direction {
                return Err(Error::Shape(format!(
                    "metric column '{id}' must be declared {}",
                    direction.as_str()
                )));
            }
            columns.push((0..m.n_alternatives()).map(|i| m.value(i, j)).collect());
        }
        let mut it = columns.into_iter();
        Ok(MetricTable {
            alternatives: m.alternatives().to_vec(),
            s_plus: it.next().unwrap(),
            s_minus: it.next().unwrap(),
            d_plus: it.next().unwrap(),
            d_minus: it.next().unwrap(),
            r_plus: it.next().unwrap(),
            r_minus: it.next().unwrap(),
        })
    }

    /// The six metrics as a comparability profile: "from best" columns
    /// prefer smaller values, "from worst" columns larger.
    pub fn six_metric_profile(&self) -> CriteriaProfile<F> {
        let columns = vec![
            ProfileColumn::new("S+", Preference::SmallerBetter),
            ProfileColumn::new("S-", Preference::LargerBetter),
            ProfileColumn::new("D+", Preference::SmallerBetter),
            ProfileColumn::new("D-", Preference::LargerBetter),
            ProfileColumn::new("R+", Preference::SmallerBetter),
            ProfileColumn::new("R-", Preference::LargerBetter),
        ];
        let rows: Vec<Vec<F>> = (0..self.alternatives.len())
            .map(|i| {
                vec![
                    self.s_plus[i],
                    self.s_minus[i],
                    self.d_plus[i],
                    self.d_minus[i],
                    self.r_plus[i],
                    self.r_minus[i],
                ]
            })
            .collect();
        CriteriaProfile::new(self.alternatives.clone(), columns, rows)
            .expect("metric table rows are finite and aligned")
    }

    /// Renders the table as a CSV that [`crate::model::parse_decision_matrix`]
    /// reads back unchanged.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("alternative");
        for (id, direction) in METRIC_COLUMNS {
            out.push(',');
            out.push_str(id);
            out.push(':');
            out.push_str(direction.as_str());
        }
        out.push('\n');
        for i in 0..self.alternatives.len() {
            out.push_str(&self.alternatives[i]);
            for v in [
                self.s_plus[i],
                self.s_minus[i],
                self.d_plus[i],
                self.d_minus[i],
                self.r_plus[i],
                self.r_minus[i],
            ] {
                out.push(',');
                out.push_str(&fmt_fixed(v));
            }
            out.push('\n');
        }
        out
    }
}

/// True when the criterion ids are exactly the six metric ids, in any
/// order. Used to spot a metric CSV without an explicit mode flag.
pub fn is_metric_header(criteria: &[CriterionSpec]) -> bool {
    criteria.len() == 6
        && METRIC_COLUMNS
            .iter()
            .all(|(id, _)| criteria.iter().any(|c| c.id == *id))
}

/// Averages the three "from best" and three "from worst" metrics row-wise.
pub fn sdr_means<F: Real>(
    sep: &SeparationTable<F>,
    ur: &UtilityRegretTable<F>,
) -> Result<Vec<SdrPair<F>>> {
    let table = MetricTable::from_parts(sep, ur)?;
    Ok(sdr_means_of(&table))
}

/// Averages the metric columns of an already-joined table.
pub fn sdr_means_of<F: Real>(table: &MetricTable<F>) -> Vec<SdrPair<F>> {
    let three = crate::real::<F>(3.0);
    (0..table.alternatives.len())
        .map(|i| SdrPair {
            plus: (table.s_plus[i] + table.d_plus[i] + table.r_plus[i]) / three,
            minus: (table.s_minus[i] + table.d_minus[i] + table.r_minus[i]) / three,
        })
        .collect()
}

/// Final blended scores and ranking at one strategy weight k.
#[derive(Debug, Clone, PartialEq)]
pub struct FusionTable<F> {
    pub alternatives: Vec<String>,
    pub sdr_plus: Vec<F>,
    pub sdr_minus: Vec<F>,
    /// Rescaled distance from best: 0 at the minimum SDR+, 1 at the maximum.
    pub a: Vec<F>,
    /// Rescaled shortfall from worst: 0 at the maximum SDR-, 1 at the minimum.
    pub b: Vec<F>,
    /// q = (1-k)a + kb; lower is better.
    pub q: Vec<F>,
    /// 1-based rank per alternative; rank 1 is the smallest q.
    pub rank: Vec<usize>,
    pub k: F,
}

/// Min-max rescales both SDR columns into badness scores in [0, 1].
pub(crate) fn badness<F: Real>(sdr: &[SdrPair<F>]) -> Result<(Vec<F>, Vec<F>)> {
    if sdr.is_empty() {
        return Err(Error::EmptyInput("no alternatives to rank".into()));
    }
    for p in sdr {
        if !p.plus.is_finite() || !p.minus.is_finite() {
            return Err(Error::Range("non-finite SDR value".into()));
        }
    }
    let spread = |pick: fn(&SdrPair<F>) -> F, name: &str| -> Result<(F, F)> {
        let mut lo = pick(&sdr[0]);
        let mut hi = lo;
        for p in &sdr[1..] {
            let v = pick(p);
            if v < lo {
                lo = v;
            }
            if v > hi {
                hi = v;
            }
        }
        if lo == hi {
            return Err(Error::Degenerate(format!(
                "{name} is identical for every alternative"
            )));
        }
        Ok((lo, hi))
    };
    let (p_lo, p_hi) = spread(|p| p.plus, "SDR+")?;
    let (m_lo, m_hi) = spread(|p| p.minus, "SDR-")?;
    let a = sdr.iter().map(|p| (p.plus - p_lo) / (p_hi - p_lo)).collect();
    let b = sdr.iter().map(|p| (m_hi - p.minus) / (m_hi - m_lo)).collect();
    Ok((a, b))
}

/// Ranks ascending by q, breaking ties by smaller SDR+ and then by id.
pub(crate) fn rank_ascending<F: Real>(
    alternatives: &[String],
    q: &[F],
    sdr_plus: &[F],
) -> Vec<usize> {
    let mut order: Vec<usize> = (0..q.len()).collect();
    order.sort_by(|&i, &j| {
        q[i].partial_cmp(&q[j])
            .expect("finite scores")
            .then_with(|| sdr_plus[i].partial_cmp(&sdr_plus[j]).expect("finite scores"))
            .then_with(|| alternatives[i].cmp(&alternatives[j]))
    });
    let mut rank = vec![0usize; q.len()];
    for (pos, &i) in order.iter().enumerate() {
        rank[i] = pos + 1;
    }
    rank
}

/// Blends the rescaled SDR columns into q = (1-k)a + kb and ranks by it.
pub fn compromise<F: Real>(
    alternatives: &[String],
    sdr: &[SdrPair<F>],
    k: F,
) -> Result<FusionTable<F>> {
    if alternatives.len() != sdr.len() {
        return Err(Error::Shape(format!(
            "{} alternatives for {} SDR pairs",
            alternatives.len(),
            sdr.len()
        )));
    }
    if !(k >= F::zero() && k <= F::one()) {
        return Err(Error::Range(format!("strategy weight {k} outside [0, 1]")));
    }
    let (a, b) = badness(sdr)?;
    let q: Vec<F> = a
        .iter()
        .zip(&b)
        .map(|(&ai, &bi)| (F::one() - k) * ai + k * bi)
        .collect();
    let sdr_plus: Vec<F> = sdr.iter().map(|p| p.plus).collect();
    let rank = rank_ascending(alternatives, &q, &sdr_plus);
    Ok(FusionTable {
        alternatives: alternatives.to_vec(),
        sdr_plus,
        sdr_minus: sdr.iter().map(|p| p.minus).collect(),
        a,
        b,
        q,
        rank,
        k,
    })
}

/// Renders the ranking as CSV, best alternative first. Alternatives whose
/// q scores coincide bit-for-bit are flagged "tie".
pub fn rank_report<F: Real>(t: &FusionTable<F>) -> String {
    let n = t.alternatives.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| t.rank[i]);
    let mut out = String::from("alternative,sdr_plus,sdr_minus,a,b,q,rank,note\n");
    for &i in &order {
        let tied = (0..n).any(|j| j != i && t.q[j] == t.q[i]);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            t.alternatives[i],
            fmt_fixed(t.sdr_plus[i]),
            fmt_fixed(t.sdr_minus[i]),
            fmt_fixed(t.a[i]),
            fmt_fixed(t.b[i]),
            fmt_fixed(t.q[i]),
            t.rank[i],
            if tied { "tie" } else { "" },
        ));
    }
    out
}

/// The two SDR means as a comparability profile.
pub fn sdr_profile<F: Real>(t: &FusionTable<F>) -> CriteriaProfile<F> {
    let columns = vec![
        ProfileColumn::new("SDR+", Preference::SmallerBetter),
        ProfileColumn::new("SDR-", Preference::LargerBetter),
    ];
    let rows: Vec<Vec<F>> = (0..t.alternatives.len())
        .map(|i| vec![t.sdr_plus[i], t.sdr_minus[i]])
        .collect();
    CriteriaProfile::new(t.alternatives.clone(), columns, rows)
        .expect("fusion table rows are finite and aligned")
}

/// The blended score alone as a comparability profile.
pub fn q_profile<F: Real>(t: &FusionTable<F>) -> CriteriaProfile<F> {
    let columns = vec![ProfileColumn::new("Q", Preference::SmallerBetter)];
    let rows: Vec<Vec<F>> = t.q.iter().map(|&q| vec![q]).collect();
    CriteriaProfile::new(t.alternatives.clone(), columns, rows)
        .expect("fusion table rows are finite and aligned")
}
