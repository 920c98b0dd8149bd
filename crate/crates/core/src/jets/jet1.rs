use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::TruncatedSeries;
use crate::coeff::Scalar;
use crate::error::{Error, Result};

/// `c_0 + c_1 w + ... + c_N w^N + O(w^{N+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet1<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Jet1<S> {
    /// Jet of order `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a jet has at least a constant term");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![S::zero(); order + 1])
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut coeffs = vec![S::zero(); order + 1];
        coeffs[0] = c;
        Self::new(coeffs)
    }

    /// `c0 + w`.
    pub fn variable(c0: S, order: usize) -> Self {
        let mut j = Self::constant(c0, order);
        if order >= 1 {
            j.coeffs[1] = S::one();
        }
        j
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn value(&self) -> &S {
        &self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    /// `k! c_k`, the derivatives at the expansion point.
    pub fn derivatives(&self) -> Vec<S> {
        let mut fact = S::one();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 1 {
                    fact = fact.clone() * &S::from_i64(k as i64);
                }
                c.clone() * &fact
            })
            .collect()
    }

    pub fn recip(&self) -> Result<Self> {
        let b0 = self.coeffs[0].inv().map_err(|_| Error::ZeroConstantTerm)?;
        let mut out: Vec<S> = Vec::with_capacity(self.coeffs.len());
        out.push(b0.clone());
        for k in 1..self.coeffs.len() {
            let mut acc = S::zero();
            for m in 1..=k {
                acc = acc + &(self.coeffs[m].clone() * &out[k - m]);
            }
            out.push(-(acc * &b0));
        }
        Ok(Self::new(out))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.recip()?)
    }

    /// `self(inner(w))`; `inner` must vanish at `w = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.value().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order().min(inner.order());
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        let x = inner.truncate(n);
        for k in (0..n).rev() {
            acc = acc * x.clone();
            acc.coeffs[0] = acc.coeffs[0].clone() + &self.coeffs[k];
        }
        Ok(acc)
    }

    /// `d/dw`.
    pub fn diff(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::OrderExhausted { needed: 1, available: 0 });
        }
        Ok(Self::new(
            (1..self.coeffs.len())
                .map(|k| self.coeffs[k].clone() * &S::from_i64(k as i64))
                .collect(),
        ))
    }

    /// Division by `w`; the constant term must vanish.
    pub fn div_w(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NotDivisible);
        }
        if self.order() == 0 {
            return Err(Error::OrderExhausted { needed: 1, available: 0 });
        }
        Ok(Self::new(self.coeffs[1..].to_vec()))
    }

    /// `sum conj(c_k) w^k`, the jet of `conj(f(conj(.)))`.
    pub fn conj_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(Scalar::conj).collect())
    }

    /// Coefficients as `[re, im]` decimal-string pairs.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| {
                    let (re, im) = c.decimal_parts();
                    serde_json::json!([re, im])
                })
                .collect(),
        )
    }

    fn zip(&self, rhs: &Self, op: impl Fn(&S, &S) -> S) -> Self {
        let n = self.order().min(rhs.order());
        Self::new((0..=n).map(|k| op(&self.coeffs[k], &rhs.coeffs[k])).collect())
    }

    fn product(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![S::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        Self::new(out)
    }
}

impl<S: Scalar> Add for Jet1<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a.clone() + b)
    }
}

impl<S: Scalar> Sub for Jet1<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a.clone() - b)
    }
}

impl<S: Scalar> Mul for Jet1<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.product(&rhs)
    }
}

impl<S: Scalar> Neg for Jet1<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(Neg::neg).collect())
    }
}

impl<S: Scalar> Add for &Jet1<S> {
    type Output = Jet1<S>;
    fn add(self, rhs: Self) -> Jet1<S> {
        self.zip(rhs, |a, b| a.clone() + b)
    }
}

impl<S: Scalar> Sub for &Jet1<S> {
    type Output = Jet1<S>;
    fn sub(self, rhs: Self) -> Jet1<S> {
        self.zip(rhs, |a, b| a.clone() - b)
    }
}

impl<S: Scalar> Mul for &Jet1<S> {
    type Output = Jet1<S>;
    fn mul(self, rhs: Self) -> Jet1<S> {
        self.product(rhs)
    }
}

impl<S: Scalar> TruncatedSeries<S> for Jet1<S> {
    fn order(&self) -> usize {
        Jet1::order(self)
    }

    fn value(&self) -> &S {
        Jet1::value(self)
    }

    fn constant_like(&self, c: S) -> Self {
        Self::constant(c, self.order())
    }

    fn scale(&self, c: &S) -> Self {
        Jet1::scale(self, c)
    }

    fn truncate(&self, order: usize) -> Self {
        Jet1::truncate(self, order)
    }

    fn is_zero_series(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn recip(&self) -> Result<Self> {
        Jet1::recip(self)
    }
}

impl<S: Scalar> Jet1<S> {
    /// Whether every coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Whether this is the constant one.
    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{rational, GaussianRational};

    type J = Jet1<GaussianRational>;

    fn j(cs: &[i64]) -> J {
        Jet1::new(cs.iter().map(|&c| GaussianRational::from_i64(c)).collect())
    }

    #[test]
    fn arithmetic() {
        assert_eq!(j(&[1, 1, 0]) * j(&[1, -1, 0]), j(&[1, 0, -1]));
        assert_eq!(j(&[3, 2]) + J::zero(1), j(&[3, 2]));
        let w = j(&[0, 1]);
        let sq = w.clone() * w;
        assert_eq!(sq.order(), 1);
        assert_eq!(sq, j(&[0, 0]));
        // Mixed orders truncate to the smaller one.
        assert_eq!((j(&[1, 2, 3]) + j(&[1, 1])).order(), 1);
    }

    #[test]
    fn reciprocal() {
        assert_eq!(j(&[1, -1, 0, 0]).recip().unwrap(), j(&[1, 1, 1, 1]));
        let half = GaussianRational::from_rational(&rational(1, 2));
        assert_eq!(j(&[2]).recip().unwrap(), Jet1::new(vec![half]));
        assert_eq!(j(&[0, 1]).recip(), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn composition() {
        let geometric = j(&[1, 1, 1, 1, 1]);
        assert_eq!(geometric.compose(&j(&[0, 0, 1, 0, 0])).unwrap(), j(&[1, 0, 1, 0, 1]));
        assert_eq!(geometric.compose(&J::zero(4)).unwrap(), j(&[1, 0, 0, 0, 0]));
        assert_eq!(geometric.compose(&j(&[1, 1])), Err(Error::NonzeroConstantTerm));
    }

    #[test]
    fn differentiation() {
        assert_eq!(j(&[0, 0, 0, 1]).diff().unwrap(), j(&[0, 0, 3]));
        assert!(matches!(j(&[5]).diff(), Err(Error::OrderExhausted { .. })));
        assert_eq!(j(&[0, 2, 3]).div_w().unwrap(), j(&[2, 3]));
        assert_eq!(j(&[1, 2]).div_w(), Err(Error::NotDivisible));
        assert_eq!(j(&[1, 1, 1, 1]).derivatives(), j(&[1, 1, 2, 6]).coeffs().to_vec());
    }

    #[test]
    fn json_pairs() {
        let v = Jet1::new(vec![GaussianRational::new(rational(1, 2), rational(-3, 1))]).to_json();
        assert_eq!(v.to_string(), r#"[["0.5","-3"]]"#);
    }
}
