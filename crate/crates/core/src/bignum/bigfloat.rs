//! Binary floating point with a decimal precision budget.
//!
//! A value is `mant * 2^exp`. Every operation rounds the mantissa to the
//! working width of its precision: the requested decimal digits plus
//! [`GUARD_DIGITS`], converted to bits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{parse_decimal, Rational};
use super::BignumError;

/// Extra decimal digits carried by every operation.
pub const GUARD_DIGITS: u32 = 10;

/// Smallest accepted precision, in decimal digits.
pub const MIN_PRECISION: u32 = 10;

const LOG2_10: f64 = std::f64::consts::LOG2_10;
const LOG10_2: f64 = std::f64::consts::LOG10_2;

/// Working mantissa width in bits for `digits` decimal digits.
pub fn working_bits(digits: u32) -> u64 {
    ((digits + GUARD_DIGITS) as f64 * LOG2_10).ceil() as u64 + 4
}

#[derive(Clone)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

fn round_shift(m: &BigInt, shift: u64) -> BigInt {
    if shift == 0 {
        return m.clone();
    }
    let half = BigInt::one() << (shift - 1);
    match m.sign() {
        Sign::Minus => -((-m + half) >> shift),
        _ => (m + half) >> shift,
    }
}

impl BigFloat {
    fn from_parts(mant: BigInt, exp: i64, prec: u32) -> Self {
        let mut v = BigFloat { mant, exp, prec };
        v.normalize();
        v
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let bits = working_bits(self.prec);
        let nb = self.mant.bits();
        if nb > bits {
            let shift = nb - bits;
            self.mant = round_shift(&self.mant, shift);
            self.exp += shift as i64;
        }
        // Strip trailing zero bits so equal values share one representation.
        if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
    }

    pub fn zero(prec: u32) -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Self::from_parts(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Self::from_parts(v.clone(), 0, prec)
    }

    /// Nearest working-precision value to an exact fraction.
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        if r.is_zero() {
            return Self::zero(prec);
        }
        if r.is_integer() {
            return Self::from_bigint(r.numer(), prec);
        }
        let bits = working_bits(prec) as i64 + 2;
        let s = bits + r.denom().bits() as i64 - r.numer().bits() as i64;
        let q = if s >= 0 {
            (r.numer() << s as usize) / r.denom()
        } else {
            r.numer() / (r.denom() << (-s) as usize)
        };
        Self::from_parts(q, -s, prec)
    }

    /// Parses a decimal literal (`"-1.5e-3"`) or a fraction (`"p/q"`).
    pub fn parse(s: &str, prec: u32) -> Result<Self, BignumError> {
        let t = s.trim();
        let r = if t.contains('/') {
            super::rational::parse_rational(t)?
        } else {
            parse_decimal(t).ok_or_else(|| BignumError::Parse(s.to_string()))?
        };
        Ok(Self::from_rational(&r, prec))
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "non-finite f64");
        if v == 0.0 {
            return Self::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if (bits >> 63) == 1 { -1i64 } else { 1 };
        let e = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, ex) = if e == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), e - 1075)
        };
        Self::from_parts(BigInt::from(m) * sign, ex, prec)
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Same value rounded to another precision.
    pub fn with_precision(&self, prec: u32) -> Self {
        Self::from_parts(self.mant.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    /// Position of the leading bit: `2^(top-1) <= |x| < 2^top`.
    fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    /// Exact value.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as usize)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Approximate value; saturates to 0 or infinity outside the f64 range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let nb = self.mant.bits() as i64;
        let shift = (nb - 64).max(0);
        let m = (&self.mant >> shift as usize).to_f64().unwrap();
        let e = self.exp + shift;
        if e > 2000 {
            return m.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        let h = e / 2;
        m * 2f64.powi(h as i32) * 2f64.powi((e - h) as i32)
    }

    /// `log10 |x|` as an f64, valid far outside the f64 exponent range.
    pub fn log10_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        let nb = self.mant.bits() as i64;
        let shift = (nb - 64).max(0);
        let m = (&self.mant >> shift as usize).abs().to_f64().unwrap();
        m.log10() + (self.exp + shift) as f64 * LOG10_2
    }

    pub fn mul_int(&self, k: &BigInt) -> Self {
        Self::from_parts(&self.mant * k, self.exp, self.prec)
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self.mul_int(&BigInt::from(k))
    }

    pub fn div_int(&self, k: &BigInt) -> Self {
        assert!(!k.is_zero(), "BigFloat division by zero");
        let bits = working_bits(self.prec) as i64 + 2;
        let s = (bits + k.bits() as i64 - self.mant.bits() as i64).max(0);
        let q = (&self.mant << s as usize) / k;
        Self::from_parts(q, self.exp - s, self.prec)
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self.div_int(&BigInt::from(k))
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        if r.is_integer() {
            return self.mul_int(r.numer());
        }
        self.mul_int(r.numer()).div_int(r.denom())
    }

    /// Multiplies by `2^k` exactly.
    pub fn ldexp(&self, k: i64) -> Self {
        BigFloat {
            mant: self.mant.clone(),
            exp: self.exp + k,
            prec: self.prec,
        }
    }

    pub fn checked_div(&self, rhs: &BigFloat) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return Some(Self::zero(prec));
        }
        let bits = working_bits(prec) as i64 + 2;
        let s = (bits + rhs.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let q = (&self.mant << s as usize) / &rhs.mant;
        Some(Self::from_parts(q, self.exp - rhs.exp - s, prec))
    }

    pub fn recip(&self) -> Self {
        BigFloat::one(self.prec).checked_div(self).expect("reciprocal of zero")
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative BigFloat");
        if self.is_zero() {
            return self.clone();
        }
        let bits = working_bits(self.prec) as i64 + 2;
        let mut s = (2 * bits - self.mant.bits() as i64).max(0);
        if (self.exp - s) % 2 != 0 {
            s += 1;
        }
        let r = (&self.mant << s as usize).sqrt();
        Self::from_parts(r, (self.exp - s) / 2, self.prec)
    }

    pub fn powi(&self, n: i64) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut result = BigFloat::one(self.prec);
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Decimal rendering with `sig` significant digits, trailing zeros
    /// trimmed. Plain notation for moderate exponents, otherwise `d.ddde±x`.
    pub fn to_decimal_string(&self, sig: u32) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1) as i64;
        let (digits, e10) = self.decimal_digits(sig);
        let neg = self.is_negative();
        let mut out = String::new();
        if neg {
            out.push('-');
        }
        let trimmed = digits.trim_end_matches('0');
        let trimmed = if trimmed.is_empty() { "0" } else { trimmed };
        if (-6..21).contains(&e10) {
            if e10 >= 0 {
                let int_len = (e10 + 1) as usize;
                if trimmed.len() <= int_len {
                    out.push_str(trimmed);
                    out.extend(std::iter::repeat_n('0', int_len - trimmed.len()));
                } else {
                    out.push_str(&trimmed[..int_len]);
                    out.push('.');
                    out.push_str(&trimmed[int_len..]);
                }
            } else {
                out.push_str("0.");
                out.extend(std::iter::repeat_n('0', (-e10 - 1) as usize));
                out.push_str(trimmed);
            }
        } else {
            out.push_str(&trimmed[..1]);
            if trimmed.len() > 1 {
                out.push('.');
                out.push_str(&trimmed[1..]);
            }
            out.push_str(&format!("e{e10}"));
        }
        out
    }

    /// Rounded significant digits of `|x|` and the decimal exponent of the first.
    fn decimal_digits(&self, sig: i64) -> (String, i64) {
        let abs = self.abs().to_rational();
        let mut e10 = self.log10_abs().floor() as i64;
        loop {
            let k = sig - 1 - e10;
            let ten = BigInt::from(10u8);
            let scaled = if k >= 0 {
                abs.clone() * Rational::from_integer(num_traits::pow(ten, k as usize))
            } else {
                abs.clone() / Rational::from_integer(num_traits::pow(ten, (-k) as usize))
            };
            let two = BigInt::from(2u8);
            let n: BigInt = (scaled.numer() * &two + scaled.denom()).div_floor(&(scaled.denom() * &two));
            let s = n.to_string();
            if s.len() as i64 > sig {
                e10 += 1;
                continue;
            }
            if (s.len() as i64) < sig {
                e10 -= 1;
                continue;
            }
            return (s, e10);
        }
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ta, tb) = (self.top(), other.top());
        let mag = if ta != tb {
            ta.cmp(&tb)
        } else {
            let e = self.exp.min(other.exp);
            let ma = self.mant.abs() << (self.exp - e) as usize;
            let mb = other.mant.abs() << (other.exp - e) as usize;
            ma.cmp(&mb)
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }

    fn add_impl(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        if other.is_zero() {
            return self.with_precision(prec);
        }
        if self.is_zero() {
            return other.with_precision(prec);
        }
        let bits = working_bits(prec) as i64;
        let (ta, tb) = (self.top(), other.top());
        if ta > tb + bits + 2 {
            return self.with_precision(prec);
        }
        if tb > ta + bits + 2 {
            return other.with_precision(prec);
        }
        let e = self.exp.min(other.exp);
        let ma = &self.mant << (self.exp - e) as usize;
        let mb = &other.mant << (other.exp - e) as usize;
        Self::from_parts(ma + mb, e, prec)
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({}, prec={})", self.to_decimal_string(self.prec), self.prec)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().map(|p| p as u32).unwrap_or(self.prec);
        f.write_str(&self.to_decimal_string(sig))
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat {
            mant: -self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl Neg for &BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
            prec: self.prec,
        }
    }
}

impl Add for &BigFloat {
    type Output = BigFloat;
    fn add(self, rhs: &BigFloat) -> BigFloat {
        self.add_impl(rhs)
    }
}

impl Sub for &BigFloat {
    type Output = BigFloat;
    fn sub(self, rhs: &BigFloat) -> BigFloat {
        self.add_impl(&-rhs)
    }
}

impl Mul for &BigFloat {
    type Output = BigFloat;
    fn mul(self, rhs: &BigFloat) -> BigFloat {
        BigFloat::from_parts(&self.mant * &rhs.mant, self.exp + rhs.exp, self.prec.max(rhs.prec))
    }
}

impl Div for &BigFloat {
    type Output = BigFloat;
    fn div(self, rhs: &BigFloat) -> BigFloat {
        self.checked_div(rhs).expect("BigFloat division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat { (&self).$m(&rhs) }
        }
        impl $tr<&BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: &BigFloat) -> BigFloat { (&self).$m(rhs) }
        }
        impl $tr<BigFloat> for &BigFloat {
            type Output = BigFloat;
            fn $m(self, rhs: BigFloat) -> BigFloat { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::rational::rat;

    #[test]
    fn decimal_rendering() {
        let x = BigFloat::from_rational(&rat(1, 3), 20);
        assert_eq!(x.to_decimal_string(10), "0.3333333333");
        assert_eq!(BigFloat::from_i64(-120, 20).to_decimal_string(10), "-120");
        assert_eq!(BigFloat::from_rational(&rat(2, 3), 20).to_decimal_string(5), "0.66667");
        let tiny = BigFloat::from_rational(&rat(1, 7), 20).ldexp(-200);
        assert!(tiny.to_decimal_string(6).contains("e-62"));
        assert_eq!(BigFloat::from_i64(0, 20).to_decimal_string(6), "0");
        assert_eq!(
            BigFloat::from_rational(&rat(999_999, 1_000_000), 20).to_decimal_string(3),
            "1"
        );
    }

    #[test]
    fn arithmetic_is_exact_on_small_values() {
        let p = 30;
        let a = BigFloat::from_i64(7, p);
        let b = BigFloat::from_i64(3, p);
        assert_eq!(&a + &b, BigFloat::from_i64(10, p));
        assert_eq!(&a - &b, BigFloat::from_i64(4, p));
        assert_eq!(&a * &b, BigFloat::from_i64(21, p));
        let q = &a / &b;
        let err = (&q - BigFloat::from_rational(&rat(7, 3), p)).abs();
        assert!(err.log10_abs() < -(p as f64));
    }

    #[test]
    fn sqrt_two_squared() {
        let p = 50;
        let s = BigFloat::from_i64(2, p).sqrt();
        let err = (&s * &s - BigFloat::from_i64(2, p)).abs();
        assert!(err.log10_abs() < -(p as f64) + 1.0);
        assert!(s.to_decimal_string(20).starts_with("1.4142135623730950488"));
    }

    #[test]
    fn ordering_and_parse() {
        let p = 20;
        let a = BigFloat::parse("-1.5e-3", p).unwrap();
        let b = BigFloat::parse("-3/2000", p).unwrap();
        assert_eq!(a, b);
        assert!(a < BigFloat::zero(p));
        assert!(BigFloat::from_i64(2, p) > BigFloat::from_rational(&rat(3, 2), p));
        assert!(BigFloat::parse("abc", p).is_err());
    }

    #[test]
    fn far_apart_addition_keeps_larger() {
        let p = 20;
        let big = BigFloat::from_i64(1, p);
        let tiny = BigFloat::from_i64(1, p).ldexp(-10_000);
        assert_eq!(&big + &tiny, big);
        assert_eq!((&tiny - &tiny), BigFloat::zero(p));
    }

    #[test]
    fn f64_round_trip() {
        for v in [1.0, -0.1, 3.5e-300, 1.0e300] {
            assert_eq!(BigFloat::from_f64(v, 20).to_f64(), v);
        }
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let x = BigFloat::from_rational(&rat(7, 5), 40);
        let mut acc = BigFloat::one(40);
        for _ in 0..13 {
            acc = &acc * &x;
        }
        let err = (&x.powi(13) - &acc).abs() / acc.abs();
        assert!(err.log10_abs() < -40.0);
        let inv = x.powi(-2) * x.powi(2);
        assert!((inv - BigFloat::one(40)).abs().log10_abs() < -40.0);
    }
}
