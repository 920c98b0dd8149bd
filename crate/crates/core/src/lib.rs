//! Higher-order Schwarzian derivatives: the Tamanoi and Aharonov polynomial
//! families, their evaluation on truncated Taylor jets, and invariant
//! Schwarzians between domains with conformal metrics.
//!
//! Numeric code is generic over [`coeff::Scalar`]. The aliases below fix the
//! two backends used in practice: exact Gaussian rationals and
//! multiprecision floating complex numbers.

pub mod coeff;
pub mod error;
pub mod jets;
pub mod metrics;
pub mod polyring;
pub mod schwarzian;

pub use error::{Error, ParseError, Result};

pub type ExactScalar = coeff::GaussianRational;
pub type FloatScalar = coeff::BigComplex;

pub type ExactJet1 = jets::Jet1<ExactScalar>;
pub type FloatJet1 = jets::Jet1<FloatScalar>;
pub type ExactJet2 = jets::Jet2<ExactScalar>;
pub type FloatJet2 = jets::Jet2<FloatScalar>;

pub type ExactContext = schwarzian::BasePointContext<ExactScalar>;
pub type FloatContext = schwarzian::BasePointContext<FloatScalar>;
pub type ExactMetricContext = metrics::PeschlMindaContext<ExactScalar>;
pub type FloatMetricContext = metrics::PeschlMindaContext<FloatScalar>;
