//! Exact integers and fractions.
//!
//! [`Rational`] is `num_rational::BigRational`, which already keeps the
//! denominator positive and the fraction reduced. This module adds the text
//! format used throughout the crate (`"num/den"`) and a few small helpers.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use super::BignumError;

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Exact fraction with positive denominator in lowest terms; zero is `0/1`.
pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"` or a plain decimal such as `"-1.25"` into an exact fraction.
pub fn parse_rational(s: &str) -> Result<Rational, BignumError> {
    let t = s.trim();
    let bad = || BignumError::Parse(s.to_string());
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(BignumError::ZeroDenominator);
        }
        return Ok(Rational::new(n, d));
    }
    parse_decimal(t).ok_or_else(bad)
}

/// Exact value of a decimal literal with optional fraction and exponent.
pub(crate) fn parse_decimal(t: &str) -> Option<Rational> {
    let (mantissa, exp10) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i64>().ok()?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{ip}{fp}");
    let mut n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    if neg {
        n = -n;
    }
    let shift = exp10 - fp.len() as i64;
    let ten = BigInt::from(10u8);
    Some(if shift >= 0 {
        Rational::from_integer(n * num_traits::pow(ten, shift as usize))
    } else {
        Rational::new(n, num_traits::pow(ten, (-shift) as usize))
    })
}

/// Canonical `"num/den"` rendering, denominator always present.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Short rendering: integers without `/1`.
pub fn format_rational_short(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format_rational(r)
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub fn to_f64(r: &Rational) -> f64 {
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    if nb < 1000 && db < 1000 {
        return r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN);
    }
    // Keep the top 64 bits of each part and carry the rest as a power of two.
    let ns = (nb - 64).max(0);
    let ds = (db - 64).max(0);
    let n = (r.numer() >> ns as usize).to_f64().unwrap();
    let d = (r.denom() >> ds as usize).to_f64().unwrap();
    (n / d) * 2f64.powi((ns - ds).clamp(-2000, 2000) as i32)
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub mod serde_str {
    //! Serde adapter storing a [`Rational`] as a `"num/den"` string.
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_vec {
    //! Serde adapter for coefficient lists of `"num/den"` strings.
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
