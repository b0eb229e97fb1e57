//! Elementary constants and functions: `e^x`, `π`, `sinh`, `cosh`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::bigfloat::{working_bits, BigFloat};
use super::rational::Rational;

/// Binary splitting for `Σ_{k=a+1}^{b} Π_{j=a+1}^{k} u/(w j)`.
///
/// Returns `(P, Q, T)` with `T/Q` the partial sum and `P/Q` the full product.
fn exp_split(u: &BigInt, w: &BigInt, a: u64, b: u64) -> (BigInt, BigInt, BigInt) {
    if b - a == 1 {
        let q = w * BigInt::from(b);
        return (u.clone(), q, u.clone());
    }
    let m = (a + b) / 2;
    let (pl, ql, tl) = exp_split(u, w, a, m);
    let (pr, qr, tr) = exp_split(u, w, m, b);
    let t = &tl * &qr + &pl * &tr;
    (pl * pr, ql * qr, t)
}

/// Smallest `K` with `|y|^K / K! <= 2^-bits`, given `|y| <= 1`.
fn taylor_terms(y_abs: f64, bits: u64) -> u64 {
    let target = -(bits as f64) * std::f64::consts::LN_2;
    let ln_y = if y_abs > 0.0 { y_abs.ln() } else { -1e9 };
    let mut k = 1u64;
    let mut acc = ln_y; // ln(|y|^k / k!)
    while acc > target {
        k += 1;
        acc += ln_y - (k as f64).ln();
    }
    k
}

/// `e^x` for exact rational `x`.
///
/// The argument is halved until `|x| <= 1`, the Taylor series is summed
/// exactly by binary splitting up to a term below `2^-(bits+r+8)` (the tail
/// is at most twice the first omitted term), and the result is squared back.
pub fn eval_exp(x: &Rational, precision: u32) -> BigFloat {
    if x.is_zero() {
        return BigFloat::one(precision);
    }
    let xf = super::rational::to_f64(x).abs();
    let r = if xf > 1.0 { xf.log2().ceil() as u64 } else { 0 };
    let extra_digits = (r as f64 * std::f64::consts::LOG10_2).ceil() as u32 + 4;
    let wp = precision + extra_digits;
    let u = x.numer().clone();
    let w = x.denom() << r as usize;
    let y_abs = xf / 2f64.powi(r as i32);
    let k = taylor_terms(y_abs, working_bits(wp) + 8);
    let (_, q, t) = exp_split(&u, &w, 0, k.max(1));
    let mut v = BigFloat::from_rational(&(Rational::one() + Rational::new(t, q)), wp);
    for _ in 0..r {
        v = &v * &v;
    }
    v.with_precision(precision)
}

/// `e^x` for a BigFloat argument.
pub fn exp(x: &BigFloat) -> BigFloat {
    let prec = x.precision();
    if x.is_zero() {
        return BigFloat::one(prec);
    }
    // Reduce to |y| < 2^-8 so every Taylor ratio is below 1/2.
    let lg = x.log10_abs() * std::f64::consts::LOG2_10;
    let r = (lg.ceil() as i64 + 8).max(0);
    let extra = (r as f64 * std::f64::consts::LOG10_2).ceil() as u32 + 4;
    let wp = prec + extra;
    let y = x.with_precision(wp).ldexp(-r);
    let eps = BigFloat::one(wp).ldexp(-(working_bits(wp) as i64 + 4));
    let mut sum = BigFloat::one(wp);
    let mut term = BigFloat::one(wp);
    let mut k = 1i64;
    loop {
        term = (&term * &y).div_i64(k);
        sum = &sum + &term;
        if term.abs() < eps {
            break;
        }
        k += 1;
    }
    for _ in 0..r {
        sum = &sum * &sum;
    }
    sum.with_precision(prec)
}

/// `arctan(1/x)` in fixed point with `bits` fractional bits.
fn arctan_inv(x: u64, bits: u64) -> BigInt {
    let one = BigInt::one() << bits as usize;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = &one / &x; // 1/x^(2k+1)
    let mut sum = power.clone();
    let mut k = 1u64;
    while !power.is_zero() {
        power /= &x2;
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// `π` by Machin's formula `16 arctan(1/5) - 4 arctan(1/239)`.
///
/// Each truncated fixed-point term loses under one unit; the guard bits
/// absorb the accumulated count.
pub fn eval_pi(precision: u32) -> BigFloat {
    let guard = 32;
    let bits = working_bits(precision) + guard;
    let pi = arctan_inv(5, bits) * 16 - arctan_inv(239, bits) * 4;
    BigFloat::from_rational(&Rational::new(pi, BigInt::one() << bits as usize), precision)
}

/// `(sinh x, cosh x)`.
pub fn eval_sinh_cosh(x: &BigFloat, precision: u32) -> (BigFloat, BigFloat) {
    let prec = precision.max(x.precision());
    if x.is_zero() {
        return (BigFloat::zero(precision), BigFloat::one(precision));
    }
    // sinh loses relative accuracy to cancellation near zero; widen by the
    // number of digits cancelled.
    let small = (-x.log10_abs()).max(0.0).ceil() as u32;
    let wp = prec + small + 2;
    let ex = exp(&x.with_precision(wp));
    let inv = ex.recip();
    let sinh = (&ex - &inv).ldexp(-1);
    let cosh = (&ex + &inv).ldexp(-1);
    (sinh.with_precision(precision), cosh.with_precision(precision))
}

/// `√2`.
pub fn sqrt2(precision: u32) -> BigFloat {
    BigFloat::from_i64(2, precision).sqrt()
}

/// The golden ratio `(1 + √5) / 2`.
pub fn golden_ratio(precision: u32) -> BigFloat {
    (BigFloat::one(precision) + BigFloat::from_i64(5, precision).sqrt()).ldexp(-1)
}

#[cfg(test)]
pub(crate) fn abs_diff(a: &BigFloat, b: &BigFloat) -> BigFloat {
    (a - b).abs()
}
