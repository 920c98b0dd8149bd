use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ExactRational, GaussianRational};
use crate::error::Result;

/// A complex scalar field used by jets, polynomial evaluation and the
/// Schwarzian machinery.
///
/// Division is fallible (`inv`), as are the transcendental functions: the exact
/// backend only evaluates `exp(0)` and `ln(1)`, and every backend rejects
/// logarithms on the principal branch cut.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// True when arithmetic is exact.
    const EXACT: bool;

    /// Short backend name used in reports.
    const NAME: &'static str;

    fn from_gaussian(z: &GaussianRational) -> Self;

    fn from_rational(r: &ExactRational) -> Self {
        Self::from_gaussian(&GaussianRational::new(r.clone(), ExactRational::zero()))
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&ExactRational::from_integer(n.into()))
    }

    fn inv(&self) -> Result<Self>;

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * &rhs.inv()?)
    }

    fn conj(&self) -> Self;

    /// `|z|^2` as a (real) scalar.
    fn norm_sqr(&self) -> Self {
        self.clone() * &self.conj()
    }

    /// Approximate modulus, for residual reporting only.
    fn modulus(&self) -> f64;

    fn exp(&self) -> Result<Self>;

    /// Principal branch logarithm.
    fn ln(&self) -> Result<Self>;

    /// Sign of the real part.
    fn re_sign(&self) -> Ordering;

    /// Whether the imaginary part vanishes (up to working precision on
    /// floating backends).
    fn is_real(&self) -> bool;

    /// Zero up to the backend's resolution: exact zero on the rational
    /// backend, a few ulps of the working precision on floating ones.
    fn is_negligible(&self, scale: f64) -> bool;

    /// Real and imaginary parts as decimal strings.
    fn decimal_parts(&self) -> (String, String);

    /// Human-readable rendering such as `-1/2`, `0.25+3i`.
    fn render(&self) -> String;

    fn powi(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }
}
