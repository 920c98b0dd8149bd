use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::decimal::format_complex;
use super::rational::{ExactRational, GaussianRational};
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: usize = 128;
pub const MIN_PRECISION: usize = 80;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static WORKING_PRECISION: Cell<usize> = const { Cell::new(DEFAULT_PRECISION) };
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

/// Precision (in bits) given to freshly created [`BigComplex`] values on this thread.
pub fn working_precision() -> usize {
    WORKING_PRECISION.with(Cell::get)
}

/// Runs `f` with the working precision set to `bits` (clamped to at least
/// [`MIN_PRECISION`]), restoring the previous value afterwards.
pub fn with_precision<R>(bits: usize, f: impl FnOnce() -> R) -> R {
    struct Restore(usize);
    impl Drop for Restore {
        fn drop(&mut self) {
            WORKING_PRECISION.with(|p| p.set(self.0));
        }
    }
    let previous = WORKING_PRECISION.with(|p| p.replace(bits.max(MIN_PRECISION)));
    let _restore = Restore(previous);
    f()
}

fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Multiprecision complex number. Binary operations run at the larger of the
/// two operand precisions.
#[derive(Clone)]
pub struct BigComplex {
    re: BigFloat,
    im: BigFloat,
    prec: usize,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        Self { re, im, prec }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        let p = working_precision();
        Self::new(BigFloat::from_f64(re, p), BigFloat::from_f64(im, p), p)
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn re_f64(&self) -> f64 {
        float_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        float_to_f64(&self.im)
    }

    /// Exact rational value of the real and imaginary parts.
    pub fn to_gaussian(&self) -> GaussianRational {
        GaussianRational::new(float_to_rational(&self.re), float_to_rational(&self.im))
    }

    fn display_digits(&self) -> usize {
        ((self.prec as f64 * std::f64::consts::LOG10_2) as usize)
            .saturating_sub(8)
            .max(15)
    }

    fn real(x: BigFloat, p: usize) -> Self {
        Self::new(x, BigFloat::from_i32(0, p), p)
    }
}

fn int_to_float(n: &BigInt, p: usize) -> BigFloat {
    let (sign, digits) = n.to_u64_digits();
    if digits.is_empty() {
        return BigFloat::from_i32(0, p);
    }
    let words: Vec<Word> = digits.iter().map(|&d| d as Word).collect();
    let s = if sign == num_bigint::Sign::Minus { Sign::Neg } else { Sign::Pos };
    BigFloat::from_words(&words, s, (64 * words.len()) as i32)
}

fn rational_to_float(r: &ExactRational, p: usize) -> BigFloat {
    let n = int_to_float(r.numer(), p);
    if r.denom().is_one() {
        // Integers wider than `p` bits still get rounded to the target precision.
        return n.add(&BigFloat::from_i32(0, p), p, RM);
    }
    let d = int_to_float(r.denom(), p);
    n.div(&d, p, RM)
}

fn float_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let Some((m, _, s, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let top = *m.last().unwrap_or(&0) as f64;
    let v = top * 2f64.powi(e - 64);
    if s == Sign::Neg {
        -v
    } else {
        v
    }
}

fn float_to_rational(x: &BigFloat) -> ExactRational {
    if x.is_zero() {
        return ExactRational::zero();
    }
    let Some((m, _, s, e, _)) = x.as_raw_parts() else {
        return ExactRational::zero();
    };
    let mut mant = BigUint::zero();
    for w in m.iter().rev() {
        mant = (mant << 64) + BigUint::from(*w);
    }
    let shift = e as i64 - 64 * m.len() as i64;
    let mut value = if shift >= 0 {
        ExactRational::from_integer(BigInt::from(mant << shift as usize))
    } else {
        ExactRational::new(BigInt::from(mant), BigInt::one() << (-shift) as usize)
    };
    if s == Sign::Neg {
        value = -value;
    }
    value
}

fn sign_of(x: &BigFloat) -> Ordering {
    if x.is_zero() {
        Ordering::Equal
    } else if x.is_negative() {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

fn atan2(y: &BigFloat, x: &BigFloat, p: usize, cc: &mut Consts) -> BigFloat {
    let pi = cc.pi(p, RM);
    match sign_of(x) {
        Ordering::Greater => y.div(x, p, RM).atan(p, RM, cc),
        Ordering::Less => {
            let base = y.div(x, p, RM).atan(p, RM, cc);
            if y.is_negative() {
                base.sub(&pi, p, RM)
            } else {
                base.add(&pi, p, RM)
            }
        }
        Ordering::Equal => {
            let half = pi.div(&BigFloat::from_i32(2, p), p, RM);
            match sign_of(y) {
                Ordering::Less => half.neg(),
                _ => half,
            }
        }
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigComplex({}, {}; {} bits)", self.re, self.im, self.prec)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl PartialEq for BigComplex {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im
    }
}

impl Add<&BigComplex> for BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        let p = self.prec.max(rhs.prec);
        BigComplex::new(self.re.add(&rhs.re, p, RM), self.im.add(&rhs.im, p, RM), p)
    }
}

impl Sub<&BigComplex> for BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        let p = self.prec.max(rhs.prec);
        BigComplex::new(self.re.sub(&rhs.re, p, RM), self.im.sub(&rhs.im, p, RM), p)
    }
}

impl Mul<&BigComplex> for BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        let p = self.prec.max(rhs.prec);
        let ac = self.re.mul(&rhs.re, p, RM);
        let bd = self.im.mul(&rhs.im, p, RM);
        let ad = self.re.mul(&rhs.im, p, RM);
        let bc = self.im.mul(&rhs.re, p, RM);
        BigComplex::new(ac.sub(&bd, p, RM), ad.add(&bc, p, RM), p)
    }
}

impl Add for BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: BigComplex) -> BigComplex {
        self + &rhs
    }
}

impl Sub for BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: BigComplex) -> BigComplex {
        self - &rhs
    }
}

impl Mul for BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: BigComplex) -> BigComplex {
        self * &rhs
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex::new(self.re.neg(), self.im.neg(), self.prec)
    }
}

impl Zero for BigComplex {
    fn zero() -> Self {
        let p = working_precision();
        Self::real(BigFloat::from_i32(0, p), p)
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for BigComplex {
    fn one() -> Self {
        let p = working_precision();
        Self::real(BigFloat::from_i32(1, p), p)
    }
}

impl Scalar for BigComplex {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn from_gaussian(z: &GaussianRational) -> Self {
        let p = working_precision();
        Self::new(rational_to_float(&z.re, p), rational_to_float(&z.im, p), p)
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.prec;
        let n = self
            .re
            .mul(&self.re, p, RM)
            .add(&self.im.mul(&self.im, p, RM), p, RM);
        Ok(Self::new(self.re.div(&n, p, RM), self.im.div(&n, p, RM).neg(), p))
    }

    fn conj(&self) -> Self {
        Self::new(self.re.clone(), self.im.clone().neg(), self.prec)
    }

    fn modulus(&self) -> f64 {
        self.re_f64().hypot(self.im_f64())
    }

    fn exp(&self) -> Result<Self> {
        let p = self.prec;
        Ok(with_consts(|cc| {
            let scale = self.re.exp(p, RM, cc);
            let c = self.im.cos(p, RM, cc);
            let s = self.im.sin(p, RM, cc);
            Self::new(scale.mul(&c, p, RM), scale.mul(&s, p, RM), p)
        }))
    }

    fn ln(&self) -> Result<Self> {
        if self.im.is_zero() && !self.re.is_positive() {
            return Err(Error::LogBranchCut);
        }
        let p = self.prec;
        Ok(with_consts(|cc| {
            let n = self
                .re
                .mul(&self.re, p, RM)
                .add(&self.im.mul(&self.im, p, RM), p, RM);
            let half = BigFloat::from_i32(2, p);
            let log_mod = n.ln(p, RM, cc).div(&half, p, RM);
            let arg = atan2(&self.im, &self.re, p, cc);
            Self::new(log_mod, arg, p)
        }))
    }

    fn re_sign(&self) -> Ordering {
        sign_of(&self.re)
    }

    fn is_real(&self) -> bool {
        let tol = 2f64.powi(-(self.prec as i32 - 16));
        self.im_f64().abs() <= tol * self.re_f64().abs().max(1.0)
    }

    fn is_negligible(&self, scale: f64) -> bool {
        let tol = 2f64.powi(-(self.prec as i32 - 24));
        self.modulus() <= tol * scale.max(1.0)
    }

    fn decimal_parts(&self) -> (String, String) {
        let d = Some(self.display_digits());
        (
            super::format_rational(&float_to_rational(&self.re), d),
            super::format_rational(&float_to_rational(&self.im), d),
        )
    }

    fn render(&self) -> String {
        format_complex(
            &float_to_rational(&self.re),
            &float_to_rational(&self.im),
            Some(self.display_digits()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{gaussian, rational};
    use num_traits::Signed;

    fn c(re: i64, im: i64) -> BigComplex {
        BigComplex::from_gaussian(&gaussian(rational(re, 1), rational(im, 1)))
    }

    #[test]
    fn field_examples() {
        assert_eq!(c(1, 1) * c(1, -1), c(2, 0));
        assert_eq!(Scalar::div(&c(0, 1), &c(0, 1)).unwrap(), BigComplex::one());
        assert_eq!(Scalar::norm_sqr(&c(3, 4)), c(25, 0));
        assert_eq!(BigComplex::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_round_trip() {
        let r = BigComplex::from_gaussian(&gaussian(rational(-45, 2), rational(3, 8)));
        assert_eq!(r.to_gaussian(), gaussian(rational(-45, 2), rational(3, 8)));
        assert_eq!(r.render(), "-22.5+0.375i");
        let third = BigComplex::from_rational(&rational(1, 3));
        let back = third.to_gaussian().re - rational(1, 3);
        assert!(back.abs() < rational(1, 1 << 62) * rational(1, 1 << 62));
        assert_eq!(third.render(), format!("0.{}", "3".repeat(30)));
    }

    #[test]
    fn transcendentals() {
        let e = c(1, 0).exp().unwrap();
        assert!((e.re_f64() - std::f64::consts::E).abs() < 1e-15);
        // exp(i*pi) = -1
        let pi = with_consts(|cc| cc.pi(128, RM));
        let z = BigComplex::new(BigFloat::from_i32(0, 128), pi, 128).exp().unwrap();
        assert!((z + &BigComplex::one()).modulus() < 1e-35);
        let l = c(-1, 1).ln().unwrap();
        assert!((l.im_f64() - 3.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        assert!((l.re_f64() - 0.5 * 2f64.ln()).abs() < 1e-15);
        assert_eq!(c(-2, 0).ln(), Err(Error::LogBranchCut));
        let round = c(2, -3).ln().unwrap().exp().unwrap() - c(2, -3);
        assert!(round.modulus() < 1e-35);
    }

    #[test]
    fn precision_scope_and_promotion() {
        let low = with_precision(192, BigComplex::one);
        assert_eq!(low.precision(), 192);
        assert_eq!(working_precision(), DEFAULT_PRECISION);
        let mixed = low + &BigComplex::one();
        assert_eq!(mixed.precision(), 192);
        assert_eq!(with_precision(10, working_precision), MIN_PRECISION);
    }
}
