//! Exact coefficient rings and truncated power series.

pub mod epsilon;
pub mod jet;
pub mod polynomial;
pub mod ratfunc;
pub mod ring;
pub mod surd;
pub mod truncated;

pub use epsilon::{rf_expand_epsilon, x_power_epsilon, EpsilonError};
pub use jet::Jet;
pub use polynomial::Polynomial;
pub use ratfunc::{RationalFunction, RationalFunctionError};
pub use ring::{binomial, q, q_to_f64, qi, RadicalRing, Ring, ToF64, Q};
pub use surd::QuadExt;
pub use truncated::{SeriesError, TruncatedSeries, Var};
