//! Exact Gaussian rationals `p + q i` with `p, q` arbitrary-precision rationals.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type GaussianRational = Complex<BigRational>;

pub fn rational(numer: i64, denom: i64) -> Rational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    BigRational::from_integer(BigInt::from(value))
}

pub fn gaussian(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn real(re: Rational) -> GaussianRational {
    Complex::new(re, Rational::zero())
}

pub fn gaussian_int(re: i64, im: i64) -> GaussianRational {
    Complex::new(int(re), int(im))
}

pub fn i_unit() -> GaussianRational {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn to_complex64(value: &GaussianRational) -> Complex64 {
    Complex64::new(to_f64(&value.re), to_f64(&value.im))
}

pub fn is_real(value: &GaussianRational) -> bool {
    value.im.is_zero()
}

/// Parses `"3"`, `"-1/4"`, `"2.125"`, `"1e-3"` or `"-0.5E2"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("not a decimal or rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if s.contains('/') {
        let value = BigRational::from_str(s).map_err(|_| bad())?;
        return Ok(value);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = match digits.split_once('.') {
        Some((w, f)) => (w, f),
        None => (digits, ""),
    };
    if (whole.is_empty() && frac.is_empty())
        || !whole.bytes().all(|b| b.is_ascii_digit())
        || !frac.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let all_digits = format!("{whole}{frac}");
    let numer = BigInt::from_str(if all_digits.is_empty() { "0" } else { &all_digits }).map_err(|_| bad())?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(numer);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Formats a Gaussian rational; purely real or purely imaginary values drop the zero part.
pub fn format_gaussian(value: &GaussianRational) -> String {
    match (value.re.is_zero(), value.im.is_zero()) {
        (_, true) => format_rational(&value.re),
        (true, false) => format!("{}i", format_rational(&value.im)),
        (false, false) => {
            let sign = if value.im.is_negative() { '-' } else { '+' };
            format!(
                "({}{}{}i)",
                format_rational(&value.re),
                sign,
                format_rational(&value.im.abs())
            )
        }
    }
}
