//! Exact finite-N and asymptotic statistics of the discrete-level ensemble
//! `P(h) ∝ Δ(h)·χ_h(α)` on non-negative integer levels.
//!
//! Characters, truncated series and the finite-N kernel are generic over
//! [`Scalar`]; the aliases below fix the common choices.

pub mod asympt;
pub mod charpoly;
pub mod error;
pub mod kernel;
pub mod oracle;
pub mod quad;
pub mod scalar;
pub mod series;
pub mod validation;

use num_rational::BigRational;

pub use charpoly::{AlphaSpec, LevelConfig};
pub use error::{EnsembleError, Result};
pub use kernel::{ExactEnsemble, KernelConvention, CALIBRATED};
pub use scalar::{DoubleDouble, Scalar};
pub use series::{EllTable, Precision, TruncatedSeries};

pub type Series = TruncatedSeries<f64>;
pub type SeriesDD = TruncatedSeries<DoubleDouble>;
pub type RationalSeries = TruncatedSeries<BigRational>;
pub type EllTable64 = EllTable<f64>;
pub type Ensemble = ExactEnsemble<f64>;
pub type EnsembleDD = ExactEnsemble<DoubleDouble>;
pub type RationalEnsemble = ExactEnsemble<BigRational>;
pub type Alphas = AlphaSpec<f64>;
