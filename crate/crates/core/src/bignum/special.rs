//! Integer sequences and the special functions the families need.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bigfloat::{working_bits, BigFloat};
use super::constants::eval_exp;
use super::rational::{Integer, Rational};
use super::BignumError;

/// `n!`.
pub fn factorial(n: u64) -> Integer {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Derangement numbers by `D_0 = 1`, `D_k = k D_{k-1} + (-1)^k`.
pub fn derangement(k: u64) -> Integer {
    let mut d = BigInt::one();
    for j in 1..=k {
        d = d * BigInt::from(j) + if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    }
    d
}

/// `Σ_{s=0}^{n-1} a^s / s!`, exactly.
pub fn exp_partial_sum(a: &Rational, n: u64) -> Rational {
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    for s in 0..n {
        if s > 0 {
            term = term * a / Rational::from_integer(BigInt::from(s));
        }
        sum += &term;
    }
    sum
}

/// Upper incomplete gamma `Γ(m, a)` for integer `m >= 1`, from the finite
/// identity `Γ(m, a) = (m-1)! e^{-a} Σ_{s<m} a^s/s!`.
pub fn incomplete_gamma_int(m: i64, a: &Rational, precision: u32) -> Result<BigFloat, BignumError> {
    if m < 1 {
        return Err(BignumError::Domain(format!(
            "incomplete gamma order must be >= 1, got {m}"
        )));
    }
    let m = m as u64;
    let poly = exp_partial_sum(a, m) * Rational::from_integer(factorial(m - 1));
    let wp = precision + 5;
    let e = eval_exp(&-a.clone(), wp);
    Ok(e.mul_rational(&poly).with_precision(precision))
}

/// Bernoulli numbers grown on demand from `Σ_{j<=m} C(m+1, j) B_j = 0`.
pub(crate) struct Bernoulli {
    b: Vec<Rational>,
}

impl Bernoulli {
    pub(crate) fn new() -> Self {
        Bernoulli {
            b: vec![Rational::one()],
        }
    }

    pub(crate) fn get(&mut self, n: usize) -> &Rational {
        while self.b.len() <= n {
            let m = self.b.len();
            if m > 1 && m % 2 == 1 {
                self.b.push(Rational::zero());
                continue;
            }
            let mut binom = BigInt::one(); // C(m+1, j)
            let mut acc = Rational::zero();
            for (j, bj) in self.b.iter().enumerate() {
                if !bj.is_zero() {
                    acc += Rational::from_integer(binom.clone()) * bj;
                }
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            self.b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
        }
        &self.b[n]
    }
}

/// Hurwitz zeta `Σ_{j>=0} (z+j)^{-s}` for integer `s >= 2` and rational `z > 0`.
///
/// Direct summation of the first `N` terms, then Euler–Maclaurin for the
/// tail. For real `s` the remainder after the last correction term is
/// bounded by the first omitted one, and summation stops once that falls
/// below the working epsilon.
pub fn hurwitz_zeta(s: i64, z: &Rational, precision: u32) -> Result<BigFloat, BignumError> {
    if s < 2 {
        return Err(BignumError::Domain(format!("zeta argument must be >= 2, got {s}")));
    }
    if !z.is_positive() {
        return Err(BignumError::Domain(format!("Hurwitz shift must be positive, got {z}")));
    }
    let wp = precision + 10;
    let eps = BigFloat::one(wp).ldexp(-(working_bits(precision) as i64 + 4));
    let mut n_direct = (precision as i64 / 2 + 10).max(12);
    loop {
        if let Some(v) = hurwitz_attempt(s, z, n_direct, wp, &eps) {
            return Ok(v.with_precision(precision));
        }
        n_direct *= 2;
    }
}

fn hurwitz_attempt(s: i64, z: &Rational, n_direct: i64, wp: u32, eps: &BigFloat) -> Option<BigFloat> {
    let mut sum = BigFloat::zero(wp);
    for j in 0..n_direct {
        let x = BigFloat::from_rational(&(z + Rational::from_integer(BigInt::from(j))), wp);
        sum = &sum + &x.powi(-s);
    }
    let x = BigFloat::from_rational(&(z + Rational::from_integer(BigInt::from(n_direct))), wp);
    let x_pow = x.powi(-s); // (z+N)^{-s}
    sum = &sum + &(&x_pow * &x).div_i64(s - 1);
    sum = &sum + &x_pow.ldexp(-1);

    let inv_x2 = (&x * &x).recip();
    let max_terms = (wp as usize) + 20;
    let mut bern = Bernoulli::new();
    // rising = s (s+1) ... (s+2i-2); power = (z+N)^{-s-2i+1}
    let mut rising = BigInt::from(s);
    let mut power = &x_pow / &x;
    let mut fact = BigInt::from(2); // (2i)!
    let mut prev: Option<BigFloat> = None;
    for i in 1..=max_terms {
        let coeff = bern.get(2 * i) / Rational::from_integer(fact.clone()) * Rational::from_integer(rising.clone());
        let term = power.mul_rational(&coeff);
        let mag = term.abs();
        if let Some(p) = &prev {
            if mag > *p {
                return None;
            }
        }
        sum = &sum + &term;
        if mag < *eps {
            return Some(sum);
        }
        prev = Some(mag);
        let k = 2 * i as i64;
        rising = rising * BigInt::from(s + k - 1) * BigInt::from(s + k);
        fact = fact * BigInt::from(k + 1) * BigInt::from(k + 2);
        power = &power * &inv_x2;
    }
    None
}

/// `ζ(k)` for integer `k >= 2`.
pub fn eval_zeta(k: i64, precision: u32) -> Result<BigFloat, BignumError> {
    if k < 2 {
        return Err(BignumError::Domain(format!("zeta argument must be >= 2, got {k}")));
    }
    hurwitz_zeta(k, &Rational::one(), precision)
}

/// The series `(-1)^{k+1} k! Σ_{j>=0} (z+j)^{-(k+1)}`, taken as the
/// definition of `ψ(k, z)`.
pub fn polygamma_series(k: i64, z: &Rational, precision: u32) -> Result<BigFloat, BignumError> {
    if k < 1 {
        return Err(BignumError::Domain(format!("polygamma order must be >= 1, got {k}")));
    }
    if !z.is_positive() {
        return Err(BignumError::Domain(format!(
            "polygamma argument must be positive, got {z}"
        )));
    }
    let h = hurwitz_zeta(k + 1, z, precision + 2)?;
    let v = h.mul_int(&factorial(k as u64));
    Ok(if k % 2 == 0 { -v } else { v }.with_precision(precision))
}
