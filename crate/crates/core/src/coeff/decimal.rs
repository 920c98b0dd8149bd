use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ExactRational;

/// Decimal rendering of a rational.
///
/// With `significant = None` the value is rendered exactly: as a finite
/// decimal when the denominator has only the prime factors 2 and 5, otherwise
/// as `p/q`. With `Some(d)` it is rounded to `d` significant digits and
/// trailing zeros are dropped.
pub fn format_rational(r: &ExactRational, significant: Option<usize>) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    match significant {
        None => exact_decimal(r).unwrap_or_else(|| format!("{}/{}", r.numer(), r.denom())),
        Some(d) => rounded_decimal(r, d.max(1)),
    }
}

/// Renders `re + im*i` in the style `-1/2`, `0.5+2i`, `1-1/3*i`.
pub fn format_complex(re: &ExactRational, im: &ExactRational, significant: Option<usize>) -> String {
    let re_s = format_rational(re, significant);
    if im.is_zero() {
        return re_s;
    }
    let neg = im.is_negative();
    let mag = format_rational(&im.abs(), significant);
    let imag = if mag == "1" {
        "i".to_string()
    } else if mag.contains('/') {
        format!("{mag}*i")
    } else {
        format!("{mag}i")
    };
    let sign = if neg { "-" } else { "+" };
    if re.is_zero() {
        if neg {
            format!("-{imag}")
        } else {
            imag
        }
    } else {
        format!("{re_s}{sign}{imag}")
    }
}

fn exact_decimal(r: &ExactRational) -> Option<String> {
    let mut den = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0usize, 0usize);
    while den.is_multiple_of(&two) {
        den /= &two;
        twos += 1;
    }
    while den.is_multiple_of(&five) {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let places = twos.max(fives);
    let scaled = (r.numer() * num_traits::pow(BigInt::from(10), places)) / r.denom();
    Some(place_point(&scaled, places))
}

fn place_point(scaled: &BigInt, places: usize) -> String {
    let neg = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let body = if places == 0 {
        digits
    } else if digits.len() > places {
        let (int, frac) = digits.split_at(digits.len() - places);
        format!("{int}.{frac}")
    } else {
        format!("0.{}{}", "0".repeat(places - digits.len()), digits)
    };
    let body = if body.contains('.') {
        body.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        body
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn pow10(e: i64) -> ExactRational {
    let ten = BigInt::from(10);
    if e >= 0 {
        ExactRational::from_integer(num_traits::pow(ten, e as usize))
    } else {
        ExactRational::new(BigInt::one(), num_traits::pow(ten, (-e) as usize))
    }
}

fn rounded_decimal(r: &ExactRational, d: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let mut e = a.numer().to_string().len() as i64 - a.denom().to_string().len() as i64;
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    let scaled = &a * pow10(d as i64 - 1 - e);
    let mut digits = round_half_up(&scaled);
    if digits.to_string().len() > d {
        digits /= BigInt::from(10);
        e += 1;
    }
    let s = digits.to_string();
    let s = s.trim_end_matches('0');
    let s = if s.is_empty() { "0" } else { s };
    let body = if (-8..=20).contains(&e) {
        if e >= 0 {
            let int_len = e as usize + 1;
            if s.len() <= int_len {
                format!("{}{}", s, "0".repeat(int_len - s.len()))
            } else {
                format!("{}.{}", &s[..int_len], &s[int_len..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
        }
    } else if s.len() == 1 {
        format!("{s}e{e}")
    } else {
        format!("{}.{}e{}", &s[..1], &s[1..], e)
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn round_half_up(x: &ExactRational) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = x.numer().div_rem(x.denom());
    if &r * &two >= *x.denom() {
        q + 1
    } else {
        q
    }
}
