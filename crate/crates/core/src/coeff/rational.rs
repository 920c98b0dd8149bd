use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::decimal::{format_complex, format_rational};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type ExactRational = BigRational;

/// Complex number with exact rational parts.
pub type GaussianRational = Complex<ExactRational>;

pub fn rational(num: i64, den: i64) -> ExactRational {
    ExactRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn gaussian(re: ExactRational, im: ExactRational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn rational_add(a: &ExactRational, b: &ExactRational) -> ExactRational {
    a + b
}

pub fn rational_sub(a: &ExactRational, b: &ExactRational) -> ExactRational {
    a - b
}

pub fn rational_mul(a: &ExactRational, b: &ExactRational) -> ExactRational {
    a * b
}

pub fn rational_div(a: &ExactRational, b: &ExactRational) -> Result<ExactRational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// Whether the denominator is a power of two, i.e. `r` lies in `Z[1/2]`.
pub fn is_dyadic(r: &ExactRational) -> bool {
    let den = r.denom();
    let mut d = den.clone();
    let two = BigInt::from(2);
    while d.is_even() {
        d /= &two;
    }
    d.is_one()
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.125"` exactly.
pub fn parse_rational(text: &str) -> Option<ExactRational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(ExactRational::new(n, d));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let num: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        ExactRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        ExactRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

impl Scalar for GaussianRational {
    const EXACT: bool = true;
    const NAME: &'static str = "exact";

    fn from_gaussian(z: &GaussianRational) -> Self {
        z.clone()
    }

    fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr_exact();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Complex::new(&self.re / &n, -(&self.im / &n)))
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn norm_sqr(&self) -> Self {
        Complex::new(self.norm_sqr_exact(), ExactRational::zero())
    }

    fn modulus(&self) -> f64 {
        let n = self.norm_sqr_exact();
        rational_to_f64(&n).sqrt()
    }

    fn exp(&self) -> Result<Self> {
        if self.is_zero() {
            Ok(Self::one())
        } else {
            Err(Error::NotExact("exp"))
        }
    }

    fn ln(&self) -> Result<Self> {
        if self.im.is_zero() && !self.re.is_positive() {
            return Err(Error::LogBranchCut);
        }
        if self.is_one() {
            Ok(Self::zero())
        } else {
            Err(Error::NotExact("log"))
        }
    }

    fn re_sign(&self) -> Ordering {
        self.re.cmp(&ExactRational::zero())
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn decimal_parts(&self) -> (String, String) {
        (format_rational(&self.re, None), format_rational(&self.im, None))
    }

    fn render(&self) -> String {
        format_complex(&self.re, &self.im, None)
    }
}

trait NormSqrExact {
    fn norm_sqr_exact(&self) -> ExactRational;
}

impl NormSqrExact for GaussianRational {
    fn norm_sqr_exact(&self) -> ExactRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

pub(crate) fn rational_to_f64(r: &ExactRational) -> f64 {
    // Shift both parts into f64 range before dividing.
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let nf = num_traits::ToPrimitive::to_f64(&(n >> shift_n as usize)).unwrap_or(0.0);
    let df = num_traits::ToPrimitive::to_f64(&(d >> shift_d as usize)).unwrap_or(1.0);
    let e = shift_n - shift_d;
    (nf / df) * 2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}
