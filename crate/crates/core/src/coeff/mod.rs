//! Scalar backends.
//!
//! Every numeric algorithm in the crate is written once against [`Scalar`] and
//! instantiated for
//!
//! * [`GaussianRational`]: exact complex rationals, used whenever an input is
//!   rational and no transcendental value is required;
//! * [`BigComplex`]: multiprecision floating complex numbers with a
//!   per-computation working precision (default 128 bits);
//! * [`num_complex::Complex64`]: plain double precision, for quick sanity runs.

mod bigcomplex;
mod decimal;
mod double;
mod rational;
mod scalar;

pub use bigcomplex::{with_precision, working_precision, BigComplex, DEFAULT_PRECISION, MIN_PRECISION};
pub use decimal::{format_complex, format_rational};
pub use rational::{
    gaussian, is_dyadic, parse_rational, rational, rational_add, rational_div, rational_mul,
    rational_sub, ExactRational, GaussianRational,
};
pub use scalar::Scalar;
