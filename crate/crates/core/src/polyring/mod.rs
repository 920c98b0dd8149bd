//! Sparse polynomials in countably many weighted indeterminates, the
//! derivation `E`, and the exact generators of the Tamanoi, Aharonov and
//! sigma families.
//!
//! The indeterminate `x_k` has weight `k`, so a monomial `x_{j1}...x_{jr}` has
//! weight `j1 + ... + jr`. Three variable families share the representation:
//! the quotients `q_k = f^(k+1)/f'` (printed `x_k`), the Aharonov invariants
//! `psi_k`, and the Tamanoi Schwarzians `S_k`.

mod generators;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::coeff::{ExactRational, Scalar};
use crate::error::{Error, Result};

pub use generators::{binomial, recursion_remainder, PolyCache};

/// Which indeterminates a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `x_k`, standing for `q_k[f] = f^(k+1)/f'`.
    Q,
    /// `psi_k`, the Aharonov invariants.
    Psi,
    /// `S_k`, the Tamanoi Schwarzians.
    S,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Q => "q",
            Family::Psi => "psi",
            Family::S => "S",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "q" => Some(Family::Q),
            "psi" => Some(Family::Psi),
            "S" => Some(Family::S),
            _ => None,
        }
    }

    pub(crate) fn var_name(self) -> &'static str {
        match self {
            Family::Q => "x",
            Family::Psi => "psi",
            Family::S => "S",
        }
    }

    pub(crate) fn latex_name(self) -> &'static str {
        match self {
            Family::Q => "x",
            Family::Psi => "\\psi",
            Family::S => "S",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A power product `x_{j1}^{e1} ... x_{jr}^{er}`; zero exponents are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(BTreeMap<u32, u32>);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(index: u32) -> Self {
        assert!(index >= 1, "variable indices start at 1");
        Self(BTreeMap::from([(index, 1)]))
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut m = Self::one();
        for (i, e) in exps {
            assert!(i >= 1, "variable indices start at 1");
            if e > 0 {
                *m.0.entry(i).or_insert(0) += e;
            }
        }
        m
    }

    /// Sum of index times exponent.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|(&i, &e)| i as u64 * e as u64).sum()
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponent(&self, index: u32) -> u32 {
        self.0.get(&index).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&i, &e)| (i, e))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (&i, &e) in &other.0 {
            *out.0.entry(i).or_insert(0) += e;
        }
        out
    }

    /// Divides by one power of `x_index`; the caller guarantees it is present.
    fn lower(&self, index: u32) -> Monomial {
        let mut out = self.clone();
        match out.0.get_mut(&index) {
            Some(e) if *e > 1 => *e -= 1,
            Some(_) => {
                out.0.remove(&index);
            }
            None => unreachable!("x{index} not present"),
        }
        out
    }
}

impl Ord for Monomial {
    /// Graded by weight, then lexicographic on the dense exponent vector
    /// `(e_1, e_2, ...)` in increasing order, so `x_4 < x_1 x_3 < x_1^2 x_2`.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight().cmp(&other.weight()).then_with(|| {
            let keys: BTreeSet<u32> = self.0.keys().chain(other.0.keys()).copied().collect();
            keys.into_iter()
                .map(|k| self.exponent(k).cmp(&other.exponent(k)))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients. Zero coefficients are
/// never stored, so equality is equality of term maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedPoly {
    family: Family,
    terms: BTreeMap<Monomial, ExactRational>,
}

impl WeightedPoly {
    pub fn zero(family: Family) -> Self {
        Self {
            family,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(family: Family) -> Self {
        Self::constant(family, ExactRational::one())
    }

    pub fn constant(family: Family, c: ExactRational) -> Self {
        Self::from_terms(family, [(Monomial::one(), c)])
    }

    pub fn var(family: Family, index: u32) -> Self {
        Self::from_terms(family, [(Monomial::var(index), ExactRational::one())])
    }

    /// Builds a polynomial from terms, merging repeated monomials and pruning zeros.
    pub fn from_terms(family: Family, terms: impl IntoIterator<Item = (Monomial, ExactRational)>) -> Self {
        let mut p = Self::zero(family);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: ExactRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> ExactRational {
        self.terms.get(m).cloned().unwrap_or_else(ExactRational::zero)
    }

    /// Same polynomial, relabelled into another family.
    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    fn check_family(&self, other: &Self) -> Result<()> {
        if self.family == other.family {
            Ok(())
        } else {
            Err(Error::FamilyMismatch(self.family, other.family))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_family(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_family(other)?;
        let mut out = Self::zero(self.family);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.family);
        }
        Self {
            family: self.family,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn neg_ref(&self) -> Self {
        Self {
            family: self.family,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), -a)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.family);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to the `index`-th indeterminate.
    pub fn partial(&self, index: u32) -> Self {
        let mut out = Self::zero(self.family);
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e > 0 {
                out.add_term(m.lower(index), c * ExactRational::from_integer(e.into()));
            }
        }
        out
    }

    /// The derivation `E = sum_n (x_{n+1} - x_1 x_n) d/dx_n`, which mirrors
    /// `d/dz` on the quotients `q_k` because `q_k' = q_{k+1} - q_1 q_k`.
    pub fn derivation_e(&self) -> Result<Self> {
        if self.family != Family::Q {
            return Err(Error::FamilyMismatch(self.family, Family::Q));
        }
        let mut out = Self::zero(Family::Q);
        let x1 = Monomial::var(1);
        for (m, c) in &self.terms {
            for (n, e) in m.exponents() {
                let ce = c * ExactRational::from_integer(e.into());
                let lowered = m.lower(n);
                out.add_term(lowered.mul(&Monomial::var(n + 1)), ce.clone());
                out.add_term(m.mul(&x1), -ce);
            }
        }
        Ok(out)
    }

    /// `sum_k k x_k d/dx_k`; multiplies each monomial by its weight.
    pub fn euler_operator(&self) -> Self {
        let mut out = Self::zero(self.family);
        for k in self.variables() {
            let kx = Self::from_terms(
                self.family,
                [(Monomial::var(k), ExactRational::from_integer(k.into()))],
            );
            out = &out + &(&kx * &self.partial(k));
        }
        out
    }

    /// Weights of the monomials that occur.
    pub fn weights(&self) -> BTreeSet<u64> {
        self.terms.keys().map(Monomial::weight).collect()
    }

    /// Every monomial has weight exactly `m` (the zero polynomial qualifies).
    pub fn is_homogeneous(&self, m: u64) -> bool {
        self.terms.keys().all(|t| t.weight() == m)
    }

    /// Indices of the indeterminates that occur.
    pub fn variables(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|m| m.0.keys().copied()).collect()
    }

    pub fn max_variable(&self) -> Option<u32> {
        self.variables().last().copied()
    }

    /// Replaces each indeterminate `k` by `images(k)`, producing a polynomial in
    /// the images' family.
    pub fn substitute(
        &self,
        target: Family,
        images: impl Fn(u32) -> Option<WeightedPoly>,
    ) -> Result<WeightedPoly> {
        let mut cache: BTreeMap<u32, WeightedPoly> = BTreeMap::new();
        for k in self.variables() {
            let img = images(k)
                .ok_or_else(|| Error::MissingVariable(format!("{}{k}", self.family.var_name())))?;
            if img.family != target {
                return Err(Error::FamilyMismatch(img.family, target));
            }
            cache.insert(k, img);
        }
        let mut out = WeightedPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = WeightedPoly::constant(target, c.clone());
            for (k, e) in m.exponents() {
                t = &t * &cache[&k].pow(e);
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Evaluates with `values[k - 1]` substituted for the `k`-th indeterminate.
    pub fn eval<S: Scalar>(&self, values: &[S]) -> Result<S> {
        self.eval_with(values, S::from_rational, S::one())
    }

    /// Evaluation in any commutative ring that can embed the rationals, e.g.
    /// bivariate jets.
    pub fn eval_with<T, F>(&self, values: &[T], lift: F, unit: T) -> Result<T>
    where
        T: Clone + Add<Output = T> + Mul<Output = T>,
        F: Fn(&ExactRational) -> T,
    {
        let mut powers: BTreeMap<(u32, u32), T> = BTreeMap::new();
        let mut acc: Option<T> = None;
        for (m, c) in &self.terms {
            let mut term = lift(c);
            for (k, e) in m.exponents() {
                let base = values
                    .get(k as usize - 1)
                    .ok_or_else(|| Error::MissingVariable(format!("{}{k}", self.family.var_name())))?;
                let p = powers
                    .entry((k, e))
                    .or_insert_with(|| {
                        let mut p = base.clone();
                        for _ in 1..e {
                            p = p * base.clone();
                        }
                        p
                    })
                    .clone();
                term = term * p;
            }
            acc = Some(match acc {
                Some(a) => a + term,
                None => term,
            });
        }
        Ok(acc.unwrap_or_else(|| lift(&ExactRational::zero()) * unit))
    }
}

impl Add for &WeightedPoly {
    type Output = WeightedPoly;
    fn add(self, rhs: &WeightedPoly) -> WeightedPoly {
        self.checked_add(rhs).expect("polynomial family mismatch")
    }
}

impl Sub for &WeightedPoly {
    type Output = WeightedPoly;
    fn sub(self, rhs: &WeightedPoly) -> WeightedPoly {
        self.checked_sub(rhs).expect("polynomial family mismatch")
    }
}

impl Mul for &WeightedPoly {
    type Output = WeightedPoly;
    fn mul(self, rhs: &WeightedPoly) -> WeightedPoly {
        self.checked_mul(rhs).expect("polynomial family mismatch")
    }
}

impl Neg for &WeightedPoly {
    type Output = WeightedPoly;
    fn neg(self) -> WeightedPoly {
        self.neg_ref()
    }
}
