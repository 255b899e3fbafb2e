//! Decision matrices: CSV parsing, expert-sheet aggregation, vector
//! normalization and weight application.
//!
//! The CSV grammar is deliberately small: a header row
//! `alternative,<id>:benefit,<id>:cost,...`, one data row per
//! alternative, `#` comment lines and blank lines skipped, decimal
//! points only, no quoting (fields must not contain commas).

use crate::error::{Error, Result};
use crate::{real, sum_tolerance, Real};

/// Whether larger raw scores make an alternative more or less attractive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Benefit,
    Cost,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Benefit => "benefit",
            Direction::Cost => "cost",
        }
    }
}

/// One evaluation criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionSpec {
    pub id: String,
    pub label: String,
    pub direction: Direction,
}

impl CriterionSpec {
    pub fn new(id: impl Into<String>, direction: Direction) -> Self {
        let id = id.into();
        CriterionSpec { label: id.clone(), id, direction }
    }
}

/// Raw assessment scores: one row per alternative, one column per criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionMatrix<F> {
    alternatives: Vec<String>,
    criteria: Vec<CriterionSpec>,
    values: Vec<F>, // row-major, n_alternatives x n_criteria
}

impl<F: Real> DecisionMatrix<F> {
    /// Builds a matrix from per-alternative rows, validating shape,
    /// id uniqueness and finiteness.
    pub fn new(
        alternatives: Vec<String>,
        criteria: Vec<CriterionSpec>,
        rows: Vec<Vec<F>>,
    ) -> Result<Self> {
        if alternatives.is_empty() {
            return Err(Error::EmptyInput("no alternatives".into()));
        }
        if criteria.is_empty() {
            return Err(Error::EmptyInput("no criteria".into()));
        }
        if rows.len() != alternatives.len() {
            return Err(Error::Shape(format!(
                "{} alternatives but {} rows",
                alternatives.len(),
                rows.len()
            )));
        }
        check_unique(alternatives.iter())?;
        check_unique(criteria.iter().map(|c| &c.id))?;
        let mut values = Vec::with_capacity(alternatives.len() * criteria.len());
        for (row, alt) in rows.iter().zip(&alternatives) {
            if row.len() != criteria.len() {
                return Err(Error::Shape(format!(
                    "row '{}' has {} values, expected {}",
                    alt,
                    row.len(),
                    criteria.len()
                )));
            }
            for (v, c) in row.iter().zip(&criteria) {
                if !v.is_finite() {
                    return Err(Error::Range(format!(
                        "alternative '{}', criterion '{}': value is not finite",
                        alt, c.id
                    )));
                }
                values.push(*v);
            }
        }
        Ok(DecisionMatrix { alternatives, criteria, values })
    }

    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.criteria.len()
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn criteria(&self) -> &[CriterionSpec] {
        &self.criteria
    }

    pub fn value(&self, alternative: usize, criterion: usize) -> F {
        self.values[alternative * self.criteria.len() + criterion]
    }

    pub fn row(&self, alternative: usize) -> &[F] {
        let m = self.criteria.len();
        &self.values[alternative * m..(alternative + 1) * m]
    }
}

/// Column-normalized scores; `normalize` scales every column to unit
/// Euclidean norm (all-zero columns stay zero).
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedMatrix<F> {
    alternatives: Vec<String>,
    n_criteria: usize,
    values: Vec<F>,
}

impl<F: Real> NormalizedMatrix<F> {
    /// Wraps already-normalized rows. Shape and finiteness are checked;
    /// column norms are not, so proportion-style columns are accepted.
    pub fn from_rows(alternatives: Vec<String>, rows: Vec<Vec<F>>) -> Result<Self> {
        if alternatives.is_empty() {
            return Err(Error::EmptyInput("no alternatives".into()));
        }
        if rows.len() != alternatives.len() {
            return Err(Error::Shape(format!(
                "{} alternatives but {} rows",
                alternatives.len(),
                rows.len()
            )));
        }
        let n_criteria = rows[0].len();
        if n_criteria == 0 {
            return Err(Error::EmptyInput("no criteria".into()));
        }
        check_unique(alternatives.iter())?;
        let mut values = Vec::with_capacity(alternatives.len() * n_criteria);
        for (row, alt) in rows.iter().zip(&alternatives) {
            if row.len() != n_criteria {
                return Err(Error::Shape(format!(
                    "row '{}' has {} values, expected {}",
                    alt,
                    row.len(),
                    n_criteria
                )));
            }
            for v in row {
                if !v.is_finite() {
                    return Err(Error::Range(format!(
                        "alternative '{}': value is not finite",
                        alt
                    )));
                }
                values.push(*v);
            }
        }
        Ok(NormalizedMatrix { alternatives, n_criteria, values })
    }

    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.n_criteria
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn value(&self, alternative: usize, criterion: usize) -> F {
        self.values[alternative * self.n_criteria + criterion]
    }

    pub fn row(&self, alternative: usize) -> &[F] {
        &self.values[alternative * self.n_criteria..(alternative + 1) * self.n_criteria]
    }
}

/// Normalized scores scaled by criterion weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMatrix<F> {
    alternatives: Vec<String>,
    n_criteria: usize,
    values: Vec<F>,
}

impl<F: Real> WeightedMatrix<F> {
    pub fn n_alternatives(&self) -> usize {
        self.alternatives.len()
    }

    pub fn n_criteria(&self) -> usize {
        self.n_criteria
    }

    pub fn alternatives(&self) -> &[String] {
        &self.alternatives
    }

    pub fn value(&self, alternative: usize, criterion: usize) -> F {
        self.values[alternative * self.n_criteria + criterion]
    }

    pub fn row(&self, alternative: usize) -> &[F] {
        &self.values[alternative * self.n_criteria..(alternative + 1) * self.n_criteria]
    }
}

/// Nonnegative criterion weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<F>(Vec<F>);

impl<F: Real> WeightVector<F> {
    /// Validates nonnegativity, finiteness and unit sum.
    pub fn new(weights: Vec<F>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyInput("no weights".into()));
        }
        let mut sum = F::zero();
        for (j, w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(Error::Range(format!("weight {} is not finite", j + 1)));
            }
            if *w < F::zero() {
                return Err(Error::Range(format!("weight {} is negative: {}", j + 1, w)));
            }
            sum = sum + *w;
        }
        if (sum - F::one()).abs() > sum_tolerance::<F>() {
            return Err(Error::Range(format!("weights sum to {}, expected 1", sum)));
        }
        Ok(WeightVector(weights))
    }

    /// Equal weights over `m` criteria.
    pub fn uniform(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyInput("no weights".into()));
        }
        let w = F::one() / real::<F>(m as f64);
        let mut weights = vec![w; m];
        // Absorb any accumulated rounding into the last entry.
        let sum: F = weights.iter().fold(F::zero(), |a, b| a + *b);
        let last = weights.last_mut().expect("m >= 1");
        *last = *last + (F::one() - sum);
        WeightVector::new(weights)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[F] {
        &self.0
    }
}

fn check_unique<'a, I>(ids: I) -> Result<()>
where
    I: Iterator<Item = &'a String>,
{
    let mut seen = std::collections::BTreeSet::new();
    for id in ids {
        if !seen.insert(id.as_str()) {
            return Err(Error::DuplicateId(id.clone()));
        }
    }
    Ok(())
}

/// Parses the decision-matrix CSV grammar described in the module docs.
pub fn parse_decision_matrix<F: Real>(text: &str) -> Result<DecisionMatrix<F>> {
    let mut rows_iter = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = rows_iter
        .next()
        .ok_or_else(|| Error::EmptyInput("no header row".into()))?;
    let fields: Vec<&str> = header.split(',').map(str::trim).collect();
    if fields[0] != "alternative" {
        return Err(Error::Parse {
            line: header_line,
            message: format!("header must start with 'alternative', found '{}'", fields[0]),
        });
    }
    if fields.len() == 1 {
        return Err(Error::EmptyInput("header declares no criteria".into()));
    }

    let mut criteria = Vec::with_capacity(fields.len() - 1);
    for field in &fields[1..] {
        let (id, suffix) = field.rsplit_once(':').ok_or_else(|| Error::Parse {
            line: header_line,
            message: format!("criterion '{}' lacks a :benefit or :cost suffix", field),
        })?;
        let direction = match suffix.trim() {
            "benefit" => Direction::Benefit,
            "cost" => Direction::Cost,
            other => {
                return Err(Error::Parse {
                    line: header_line,
                    message: format!(
                        "criterion '{}' has unknown direction '{}', expected benefit or cost",
                        id, other
                    ),
                })
            }
        };
        let id = id.trim();
        if id.is_empty() {
            return Err(Error::Parse {
                line: header_line,
                message: "criterion id is empty".into(),
            });
        }
        criteria.push(CriterionSpec::new(id, direction));
    }
    check_unique(criteria.iter().map(|c| &c.id))?;

    let m = criteria.len();
    let mut alternatives = Vec::new();
    let mut rows = Vec::new();
    for (line, row) in rows_iter {
        let fields: Vec<&str> = row.split(',').map(str::trim).collect();
        if fields.len() != m + 1 {
            return Err(Error::Parse {
                line,
                message: format!("expected {} fields, found {}", m + 1, fields.len()),
            });
        }
        if fields[0].is_empty() {
            return Err(Error::Parse { line, message: "alternative id is empty".into() });
        }
        let mut values = Vec::with_capacity(m);
        for (field, criterion) in fields[1..].iter().zip(&criteria) {
            let v: F = field.parse().map_err(|_| Error::Parse {
                line,
                message: format!("criterion '{}': '{}' is not a number", criterion.id, field),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    line,
                    message: format!("criterion '{}': '{}' is not finite", criterion.id, field),
                });
            }
            values.push(v);
        }
        alternatives.push(fields[0].to_string());
        rows.push(values);
    }
    if rows.is_empty() {
        return Err(Error::EmptyInput("no data rows".into()));
    }
    DecisionMatrix::new(alternatives, criteria, rows)
}

/// Cell-wise arithmetic mean of per-expert questionnaire sheets.
///
/// All sheets must share identical alternatives and criteria, and every
/// score must lie in the questionnaire scale `[1, 5]`.
pub fn aggregate_questionnaires<F: Real>(sheets: &[DecisionMatrix<F>]) -> Result<DecisionMatrix<F>> {
    let first = sheets
        .first()
        .ok_or_else(|| Error::EmptyInput("no questionnaire sheets".into()))?;
    for (s, sheet) in sheets.iter().enumerate() {
        if sheet.alternatives != first.alternatives || sheet.criteria != first.criteria {
            return Err(Error::Shape(format!(
                "sheet {} does not share the layout of sheet 1",
                s + 1
            )));
        }
        for (i, alt) in sheet.alternatives.iter().enumerate() {
            for (j, c) in sheet.criteria.iter().enumerate() {
                let v = sheet.value(i, j);
                if v < F::one() || v > real(5.0) {
                    return Err(Error::Range(format!(
                        "sheet {}, alternative '{}', criterion '{}': score {} outside [1, 5]",
                        s + 1,
                        alt,
                        c.id,
                        v
                    )));
                }
            }
        }
    }
    let count = real::<F>(sheets.len() as f64);
    let rows = (0..first.n_alternatives())
        .map(|i| {
            (0..first.n_criteria())
                .map(|j| {
                    let sum = sheets
                        .iter()
                        .fold(F::zero(), |acc, sheet| acc + sheet.value(i, j));
                    sum / count
                })
                .collect()
        })
        .collect();
    DecisionMatrix::new(first.alternatives.clone(), first.criteria.clone(), rows)
}

/// Scales every column to unit Euclidean norm; all-zero columns stay zero.
pub fn normalize<F: Real>(m: &DecisionMatrix<F>) -> NormalizedMatrix<F> {
    let (n, cols) = (m.n_alternatives(), m.n_criteria());
    let mut norms = vec![F::zero(); cols];
    for i in 0..n {
        for (j, norm) in norms.iter_mut().enumerate() {
            let v = m.value(i, j);
            *norm = *norm + v * v;
        }
    }
    for norm in &mut norms {
        *norm = norm.sqrt();
    }
    let mut values = Vec::with_capacity(n * cols);
    for i in 0..n {
        for (j, norm) in norms.iter().enumerate() {
            let v = m.value(i, j);
            values.push(if *norm == F::zero() { F::zero() } else { v / *norm });
        }
    }
    NormalizedMatrix { alternatives: m.alternatives.clone(), n_criteria: cols, values }
}

/// Multiplies every column by its criterion weight.
pub fn apply_weights<F: Real>(
    n: &NormalizedMatrix<F>,
    w: &WeightVector<F>,
) -> Result<WeightedMatrix<F>> {
    if w.len() != n.n_criteria() {
        return Err(Error::Shape(format!(
            "{} weights for {} criteria",
            w.len(),
            n.n_criteria()
        )));
    }
    let weights = w.as_slice();
    let mut values = Vec::with_capacity(n.n_alternatives() * n.n_criteria());
    for i in 0..n.n_alternatives() {
        for (j, w) in weights.iter().enumerate() {
            values.push(n.value(i, j) * *w);
        }
    }
    Ok(WeightedMatrix {
        alternatives: n.alternatives.clone(),
        n_criteria: n.n_criteria,
        values,
    })
}
