//! Truncated power series.
//!
//! [`Jet1`] is a series in one variable `w`; [`Jet2`] is a series in two
//! independent variables `s`, `t` (stored as a dense triangle). Both carry
//! their valid order explicitly: a jet of order `N` represents its coefficients
//! up to total degree `N` and says nothing beyond. Binary operations truncate
//! to the smaller order, differentiation lowers it by one.
//!
//! [`HolExpr`] is the small expression language used to describe test
//! functions and custom metric densities.

mod expr;
mod jet1;
mod jet2;

use std::ops::{Add, Mul, Neg, Sub};

pub use expr::{parse_expr, HolExpr, Mobius, Var};
pub use jet1::Jet1;
pub use jet2::Jet2;

use crate::coeff::{ExactRational, Scalar};
use crate::error::Result;

/// Operations shared by [`Jet1`] and [`Jet2`], enough to evaluate an
/// expression tree or a polynomial over either.
pub trait TruncatedSeries<S: Scalar>:
    Clone + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn order(&self) -> usize;

    /// Constant term.
    fn value(&self) -> &S;

    /// The constant `c` at the same order as `self`.
    fn constant_like(&self, c: S) -> Self;

    fn scale(&self, c: &S) -> Self;

    fn truncate(&self, order: usize) -> Self;

    fn is_zero_series(&self) -> bool;

    fn recip(&self) -> Result<Self>;

    /// `sum_k outer_k (self - value)^k`: the Taylor series `outer`, centred at
    /// `self.value()`, applied to `self`.
    fn compose_shifted(&self, outer: &Jet1<S>) -> Self {
        let n = self.order().min(outer.order());
        let x = self.clone() - self.constant_like(self.value().clone());
        let mut acc = self.constant_like(outer.coeff(n).clone());
        for k in (0..n).rev() {
            acc = acc * x.clone() + self.constant_like(outer.coeff(k).clone());
        }
        acc.truncate(n)
    }

    fn exp(&self) -> Result<Self> {
        let n = self.order();
        let e0 = self.value().exp()?;
        let mut coeffs = Vec::with_capacity(n + 1);
        let mut c = e0;
        for k in 0..=n {
            if k > 0 {
                c = c.div(&S::from_i64(k as i64))?;
            }
            coeffs.push(c.clone());
        }
        Ok(self.compose_shifted(&Jet1::new(coeffs)))
    }

    /// Principal-branch logarithm.
    fn ln(&self) -> Result<Self> {
        let n = self.order();
        let a0 = self.value();
        let l0 = a0.ln()?;
        let inv = a0.inv()?;
        let mut coeffs = vec![l0];
        let mut p = S::one();
        for k in 1..=n {
            p = p * &inv;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            coeffs.push(p.clone() * &S::from_rational(&ExactRational::new(sign.into(), (k as i64).into())));
        }
        Ok(self.compose_shifted(&Jet1::new(coeffs)))
    }

    fn powi(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.constant_like(S::one());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b.clone();
            }
            e >>= 1;
            if e > 0 {
                b = b.clone() * b;
            }
        }
        Ok(acc)
    }
}

pub fn factorial<S: Scalar>(n: usize) -> S {
    let mut acc = num_bigint::BigInt::from(1);
    for k in 2..=n {
        acc *= k;
    }
    S::from_rational(&ExactRational::from_integer(acc))
}
