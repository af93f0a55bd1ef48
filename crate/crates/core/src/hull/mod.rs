//! Hull perimeter at distance `d` in `k`-slices: generating functions by
//! two routes, singular analysis at `g* = 1/8`, and the limit statistics.

use serde::Serialize;
use thiserror::Error;

use crate::classical::ClassicalError;
use crate::closed_form::ClosedFormError;
use crate::kernel::KernelError;
use crate::series::{EpsilonError, RationalFunctionError, SeriesError};

pub mod iterated;
pub mod lambda;
pub mod scaling;
pub mod singular;
pub mod stats;

pub use iterated::{perimeter_counts, specialize_alpha, AlphaSeries, HullSeriesEngine};
pub use lambda::{h_closed, lambda_of, LambdaSolution};
pub use scaling::{
    density_limit, integrate_density_moment, laplace_at_d, laplace_limit, u_mean_limit, SCALING_C,
};
pub use singular::{
    expectation_alpha_exact, finite_k_distribution, finite_k_mean_singular, singular_coeff,
    two_point_singular_coeff,
};
pub use stats::{
    a_coefficient, a_coefficients, e_inf_alpha, e_inf_mean, e_k_mean, e_k_mean_in_k, p_inf,
    p_inf_table, ProbabilityTable,
};

#[derive(Debug, Error, PartialEq)]
pub enum HullError {
    #[error("distance d = {d} outside 2..=k-1 for k = {k}")]
    DistanceOutOfRange { k: usize, d: usize },
    #[error("lambda branch lost at alpha = {alpha}: discriminant {discriminant}")]
    BranchLost { alpha: f64, discriminant: f64 },
    #[error("square root not available in the coefficient ring")]
    NoSquareRoot,
    #[error("nonzero epsilon^{0} coefficient in an even expansion")]
    UnexpectedCoefficient(usize),
    #[error("negative radicand")]
    NegativeRadicand,
    #[error("vanishing singular coefficient of the two-point function")]
    VanishingNormalisation,
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Epsilon(#[from] EpsilonError),
    #[error(transparent)]
    RationalFunction(#[from] RationalFunctionError),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
}

pub(crate) fn check_range(k: usize, d: usize) -> Result<(), HullError> {
    if d < 2 || d + 1 > k {
        Err(HullError::DistanceOutOfRange { k, d })
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HullMode {
    FiniteK,
    InfiniteK,
}

/// One row of a perimeter distribution: `p`, the probability of
/// `ℒ(d) = 2p`, and its exact value when available.
#[derive(Clone, Debug, Serialize)]
pub struct DistributionRow {
    pub p: usize,
    pub probability: f64,
    pub exact: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HullPayload {
    Expectation {
        value: f64,
        exact: Option<String>,
    },
    Distribution {
        rows: Vec<DistributionRow>,
        mass: f64,
        tail_bound: f64,
    },
    Series {
        coefficients: Vec<Vec<String>>,
    },
}

/// Result bundle for the command line and examples.
#[derive(Clone, Debug, Serialize)]
pub struct HullReport {
    pub k: Option<usize>,
    pub d: usize,
    pub mode: HullMode,
    pub payload: HullPayload,
}
