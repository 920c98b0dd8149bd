use std::cmp::Ordering;

use num_complex::Complex64;
use num_traits::Zero;

use super::rational::{rational_to_f64, GaussianRational};
use super::scalar::Scalar;
use crate::error::{Error, Result};

impl Scalar for Complex64 {
    const EXACT: bool = false;
    const NAME: &'static str = "f64";

    fn from_gaussian(z: &GaussianRational) -> Self {
        Complex64::new(rational_to_f64(&z.re), rational_to_f64(&z.im))
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Complex64::new(1.0, 0.0) / self)
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn modulus(&self) -> f64 {
        self.norm()
    }

    fn exp(&self) -> Result<Self> {
        Ok(Complex64::exp(*self))
    }

    fn ln(&self) -> Result<Self> {
        if self.im == 0.0 && self.re <= 0.0 {
            return Err(Error::LogBranchCut);
        }
        Ok(Complex64::ln(*self))
    }

    fn re_sign(&self) -> Ordering {
        self.re.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
    }

    fn is_real(&self) -> bool {
        self.im.abs() <= 1e-12 * self.re.abs().max(1.0)
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.norm() <= 1e-10 * scale.max(1.0)
    }

    fn decimal_parts(&self) -> (String, String) {
        (format!("{}", self.re), format!("{}", self.im))
    }

    fn render(&self) -> String {
        if self.im == 0.0 {
            format!("{}", self.re)
        } else {
            format!("{}{:+}i", self.re, self.im)
        }
    }
}
