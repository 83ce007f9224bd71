//! Exact and Monte Carlo computations for rectangular addition of beta-ensemble
//! spectra: Jack polynomials, truncated type BC Bessel series and Dunkl operators,
//! expected Jack moments and characteristic polynomials, the q-gamma
//! moment/cumulant calculus, finite rectangular cumulants, and a Haar sampler.
//!
//! Everything exact is generic over [`Scalar`], implemented for `f32`, `f64` and
//! [`BigRational`]. The aliases below fix the scalar for the common cases.

#![allow(clippy::needless_range_loop)]

pub mod bessel_dunkl;
pub mod duality;
pub mod error;
pub mod jack;
pub mod montecarlo;
pub mod partitions;
pub mod qgamma;
pub mod rectconv;
pub mod scalar;
pub mod series;

pub use num_rational::BigRational;

pub use error::{Error, Result};
pub use partitions::{Partition, SetPartition, SetPartitionFilter};
pub use scalar::{parse_rational, Scalar};

pub type Rational = BigRational;
pub type SymPolyQ = jack::SymPoly<Rational>;
pub type SymPolyF = jack::SymPoly<f64>;
pub type SeriesQ = series::Series<Rational>;
pub type ZPolyQ = bessel_dunkl::ZPoly<Rational>;
pub type HTParamsQ = qgamma::HTParams<Rational>;
pub type BetaParamsQ = rectconv::BetaParams<Rational>;
pub type CharPolyQ = rectconv::CharPoly<Rational>;
