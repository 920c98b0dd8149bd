use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{Jet1, TruncatedSeries};
use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::polyring::binomial;

/// `sum_{j+k <= N} c_{j,k} s^j t^k`, stored densely by total degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet2<S> {
    order: usize,
    coeffs: Vec<S>,
}

fn idx(j: usize, k: usize) -> usize {
    let d = j + k;
    d * (d + 1) / 2 + k
}

fn len(order: usize) -> usize {
    (order + 1) * (order + 2) / 2
}

impl<S: Scalar> Jet2<S> {
    pub fn zero(order: usize) -> Self {
        Self { order, coeffs: vec![S::zero(); len(order)] }
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut j = Self::zero(order);
        j.coeffs[0] = c;
        j
    }

    /// `c0 + s`.
    pub fn s_var(c0: S, order: usize) -> Self {
        let mut j = Self::constant(c0, order);
        if order >= 1 {
            j.coeffs[idx(1, 0)] = S::one();
        }
        j
    }

    /// `c0 + t`.
    pub fn t_var(c0: S, order: usize) -> Self {
        let mut j = Self::constant(c0, order);
        if order >= 1 {
            j.coeffs[idx(0, 1)] = S::one();
        }
        j
    }

    /// `f(s)` for a univariate jet `f(w)`.
    pub fn from_jet1_s(f: &Jet1<S>) -> Self {
        let mut j = Self::zero(f.order());
        for (d, c) in f.coeffs().iter().enumerate() {
            j.coeffs[idx(d, 0)] = c.clone();
        }
        j
    }

    /// `f(t)` for a univariate jet `f(w)`.
    pub fn from_jet1_t(f: &Jet1<S>) -> Self {
        let mut j = Self::zero(f.order());
        for (d, c) in f.coeffs().iter().enumerate() {
            j.coeffs[idx(0, d)] = c.clone();
        }
        j
    }

    /// `f(s + t)` for a univariate jet `f(w)`.
    pub fn from_jet1_sum(f: &Jet1<S>) -> Self {
        let mut j = Self::zero(f.order());
        for (d, c) in f.coeffs().iter().enumerate() {
            for k in 0..=d {
                let b = S::from_rational(&binomial(d as u64, k as u64));
                j.coeffs[idx(d - k, k)] = c.clone() * &b;
            }
        }
        j
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `s^j t^k`.
    pub fn coeff(&self, j: usize, k: usize) -> &S {
        assert!(j + k <= self.order, "coefficient beyond the valid order");
        &self.coeffs[idx(j, k)]
    }

    pub fn set_coeff(&mut self, j: usize, k: usize, c: S) {
        assert!(j + k <= self.order, "coefficient beyond the valid order");
        self.coeffs[idx(j, k)] = c;
    }

    pub fn value(&self) -> &S {
        &self.coeffs[0]
    }

    /// `(j, k, c_{j,k})` by increasing total degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        (0..=self.order).flat_map(move |d| (0..=d).map(move |k| (d - k, k, &self.coeffs[idx(d - k, k)])))
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self { order, coeffs: self.coeffs[..len(order)].to_vec() }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|a| a.clone() * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn recip(&self) -> Result<Self> {
        let b0 = self.coeffs[0].inv().map_err(|_| Error::ZeroConstantTerm)?;
        let mut out = Self::zero(self.order);
        out.coeffs[0] = b0.clone();
        for d in 1..=self.order {
            for k in 0..=d {
                let j = d - k;
                let mut acc = S::zero();
                for p in 0..=j {
                    for q in 0..=k {
                        if p + q == 0 {
                            continue;
                        }
                        let a = &self.coeffs[idx(p, q)];
                        if a.is_zero() {
                            continue;
                        }
                        acc = acc + &(a.clone() * &out.coeffs[idx(j - p, k - q)]);
                    }
                }
                out.coeffs[idx(j, k)] = -(acc * &b0);
            }
        }
        Ok(out)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.recip()?)
    }

    /// `d/ds`.
    pub fn diff_s(&self) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::OrderExhausted { needed: 1, available: 0 });
        }
        let mut out = Self::zero(self.order - 1);
        for (j, k, _) in out.clone().terms() {
            let c = self.coeffs[idx(j + 1, k)].clone() * &S::from_i64(j as i64 + 1);
            out.coeffs[idx(j, k)] = c;
        }
        Ok(out)
    }

    /// `d/dt`.
    pub fn diff_t(&self) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::OrderExhausted { needed: 1, available: 0 });
        }
        let mut out = Self::zero(self.order - 1);
        for (j, k, _) in out.clone().terms() {
            let c = self.coeffs[idx(j, k + 1)].clone() * &S::from_i64(k as i64 + 1);
            out.coeffs[idx(j, k)] = c;
        }
        Ok(out)
    }

    /// Division by `t`; every pure-`s` coefficient must vanish.
    pub fn div_t(&self) -> Result<Self> {
        if (0..=self.order).any(|j| !self.coeffs[idx(j, 0)].is_zero()) {
            return Err(Error::NotDivisible);
        }
        if self.order == 0 {
            return Err(Error::OrderExhausted { needed: 1, available: 0 });
        }
        let mut out = Self::zero(self.order - 1);
        for (j, k, _) in out.clone().terms() {
            out.coeffs[idx(j, k)] = self.coeffs[idx(j, k + 1)].clone();
        }
        Ok(out)
    }

    /// `c'_{j,k} = conj(c_{k,j})`: the jet of `conj(phi)` when `s`, `t` stand
    /// for `z - z0` and its conjugate.
    pub fn conj_swap(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (j, k, c) in self.terms() {
            out.coeffs[idx(k, j)] = c.conj();
        }
        out
    }

    /// `self(a, b)`; both substitutions must vanish at the origin.
    pub fn compose_pair(&self, a: &Self, b: &Self) -> Result<Self> {
        if !a.value().is_zero() || !b.value().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order.min(a.order).min(b.order);
        let a = a.truncate(n);
        let b = b.truncate(n);
        let mut a_pows = vec![Self::constant(S::one(), n)];
        let mut b_pows = vec![Self::constant(S::one(), n)];
        for _ in 0..n {
            a_pows.push(a_pows.last().unwrap().clone() * a.clone());
            b_pows.push(b_pows.last().unwrap().clone() * b.clone());
        }
        let mut out = Self::zero(n);
        for (j, k, c) in self.truncate(n).terms() {
            if c.is_zero() {
                continue;
            }
            out = out + (a_pows[j].clone() * b_pows[k].clone()).scale(c);
        }
        Ok(out)
    }

    /// Coefficients as `[re, im]` decimal-string pairs, by increasing total
    /// degree and, within a degree, increasing power of `t`.
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
        let n = self.order.min(rhs.order);
        Self {
            order: n,
            coeffs: (0..len(n)).map(|i| op(&self.coeffs[i], &rhs.coeffs[i])).collect(),
        }
    }

    fn product(&self, rhs: &Self) -> Self {
        let n = self.order.min(rhs.order);
        let mut out = Self::zero(n);
        for d1 in 0..=n {
            for k1 in 0..=d1 {
                let a = &self.coeffs[idx(d1 - k1, k1)];
                if a.is_zero() {
                    continue;
                }
                for d2 in 0..=n - d1 {
                    for k2 in 0..=d2 {
                        let b = &rhs.coeffs[idx(d2 - k2, k2)];
                        if b.is_zero() {
                            continue;
                        }
                        let i = idx(d1 - k1 + d2 - k2, k1 + k2);
                        out.coeffs[i] = out.coeffs[i].clone() + &(a.clone() * b);
                    }
                }
            }
        }
        out
    }
}

impl<S: Scalar> Add for Jet2<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a.clone() + b)
    }
}

impl<S: Scalar> Sub for Jet2<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a.clone() - b)
    }
}

impl<S: Scalar> Mul for Jet2<S> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.product(&rhs)
    }
}

impl<S: Scalar> Neg for Jet2<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { order: self.order, coeffs: self.coeffs.into_iter().map(Neg::neg).collect() }
    }
}

impl<S: Scalar> Add for &Jet2<S> {
    type Output = Jet2<S>;
    fn add(self, rhs: Self) -> Jet2<S> {
        self.zip(rhs, |a, b| a.clone() + b)
    }
}

impl<S: Scalar> Sub for &Jet2<S> {
    type Output = Jet2<S>;
    fn sub(self, rhs: Self) -> Jet2<S> {
        self.zip(rhs, |a, b| a.clone() - b)
    }
}

impl<S: Scalar> Mul for &Jet2<S> {
    type Output = Jet2<S>;
    fn mul(self, rhs: Self) -> Jet2<S> {
        self.product(rhs)
    }
}

impl<S: Scalar> TruncatedSeries<S> for Jet2<S> {
    fn order(&self) -> usize {
        self.order
    }

    fn value(&self) -> &S {
        Jet2::value(self)
    }

    fn constant_like(&self, c: S) -> Self {
        Self::constant(c, self.order)
    }

    fn scale(&self, c: &S) -> Self {
        Jet2::scale(self, c)
    }

    fn truncate(&self, order: usize) -> Self {
        Jet2::truncate(self, order)
    }

    fn is_zero_series(&self) -> bool {
        self.is_zero()
    }

    fn recip(&self) -> Result<Self> {
        Jet2::recip(self)
    }
}
