//! Decision-analysis engine that ranks alternatives by fusing a
//! distance-based score (separation from ideal solutions) with a
//! regret-based score (group utility and individual regret), then maps
//! the result onto adversarial UP/DOWN dominance hierarchies.
//!
//! The numeric stages are generic over the scalar type via [`Real`];
//! `f64` instantiations of every table type are exported at the crate
//! root. A typical run:
//!
//! ```
//! use mcdm_core as mcdm;
//!
//! let text = "alternative,price:cost,comfort:benefit\n\
//!             economy,2.0,3.0\n\
//!             premium,4.0,5.0\n";
//! let matrix: mcdm::DecisionMatrix = mcdm::model::parse_decision_matrix(text)?;
//! let normalized = mcdm::model::normalize(&matrix);
//! let report = mcdm::weights::entropy_weights(&normalized)?;
//! let weighted = mcdm::model::apply_weights(&normalized, &report.weights)?;
//!
//! let ideal = mcdm::topsis::ideal_solutions(&weighted, matrix.criteria())?;
//! let sep = mcdm::topsis::separations(&weighted, &ideal)?;
//! let range = mcdm::vikor::best_worst(&normalized, matrix.criteria())?;
//! let ur = mcdm::vikor::utility_regret(&normalized, &report.weights, &range)?;
//!
//! let sdr = mcdm::fusion::sdr_means(&sep, &ur)?;
//! let table = mcdm::fusion::compromise(matrix.alternatives(), &sdr, 0.5)?;
//! assert_eq!(table.rank.len(), 2);
//! # Ok::<(), mcdm::Error>(())
//! ```

pub mod aism;
pub mod error;
pub mod fusion;
pub mod model;
pub mod sensitivity;
pub mod topsis;
pub mod vikor;
pub mod weights;

use std::fmt;
use std::str::FromStr;

pub use error::{Error, Result};

/// Scalar type the numeric pipeline is generic over.
///
/// Anything float-like with parsing and formatting works; the crate
/// ships impls for `f32` and `f64`.
pub trait Real: num_traits::Float + fmt::Debug + fmt::Display + FromStr {}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into the working scalar type.
pub(crate) fn real<F: Real>(v: f64) -> F {
    F::from(v).expect("constant representable in every Real type")
}

/// Unit-sum tolerance: 1e-9, widened for scalars whose epsilon cannot
/// hold that after a renormalizing division.
pub(crate) fn sum_tolerance<F: Real>() -> F {
    real::<F>(1e-9).max(F::epsilon() * real(32.0))
}

pub use aism::{BooleanSquareMatrix, ExtractionMode, HierarchyResult, Preference, ProfileColumn};
pub use model::{CriterionSpec, Direction};

pub type DecisionMatrix = model::DecisionMatrix<f64>;
pub type NormalizedMatrix = model::NormalizedMatrix<f64>;
pub type WeightedMatrix = model::WeightedMatrix<f64>;
pub type WeightVector = model::WeightVector<f64>;
pub type EntropyReport = weights::EntropyReport<f64>;
pub type IdealPair = topsis::IdealPair<f64>;
pub type SeparationTable = topsis::SeparationTable<f64>;
pub type RangeSpec = vikor::RangeSpec<f64>;
pub type UtilityRegretTable = vikor::UtilityRegretTable<f64>;
pub type SdrPair = fusion::SdrPair<f64>;
pub type MetricTable = fusion::MetricTable<f64>;
pub type FusionTable = fusion::FusionTable<f64>;
pub type CriteriaProfile = aism::CriteriaProfile<f64>;
pub type RankTrajectory = sensitivity::RankTrajectory<f64>;

/// Formats a value with the fixed 6-decimal CSV precision, folding
/// negative zero into plain zero so reruns stay byte-identical.
pub fn fmt_fixed<F: Real>(v: F) -> String {
    let v = if v == F::zero() { F::zero() } else { v };
    format!("{:.6}", v)
}
