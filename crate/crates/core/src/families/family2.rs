//! `[a n^2 + b n + 1 : -a n^2 - b n] = (F + 2(2a+b)(a+b+1)) / (F + 2(2a+b))`
//! with `F(a, b) = 2 Σ_{k>=0} 1 / ((k+2)! (3 + b/a)^(k) a^k)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::closed_form::ClosedFormValue;
use super::FamilyError;
use crate::bignum::rational::{format_rational_short, to_f64};
use crate::bignum::{factorial, BigFloat, Rational};
use crate::cf::{agreement_digits, estimate_limit, CFSpec, Poly, PolySeq};

/// Precision of the convergent cross-check inside [`family2_limit`].
const CROSS_CHECK_DIGITS: u32 = 30;
/// Fewest agreeing digits the cross-check accepts.
const CROSS_CHECK_MIN: f64 = 6.0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family2Params {
    pub a: Rational,
    pub b: Rational,
}

impl Family2Params {
    pub fn new(a: Rational, b: Rational) -> Result<Self, FamilyError> {
        if !a.is_positive() {
            return Err(FamilyError::InvalidParams(format!("family 2 needs a > 0, got a = {a}")));
        }
        if b.is_negative() {
            return Err(FamilyError::InvalidParams(format!(
                "family 2 needs b >= 0, got b = {b}"
            )));
        }
        Ok(Family2Params { a, b })
    }

    /// `[a n^2 + b n + 1 : -a n^2 - b n]`.
    pub fn spec(&self) -> CFSpec {
        let one = Rational::one();
        let a = PolySeq::new(Poly::new(vec![one, self.b.clone(), self.a.clone()]), None).expect("degree 2");
        let b = PolySeq::new(
            Poly::new(vec![Rational::zero(), -self.b.clone(), -self.a.clone()]),
            None,
        )
        .expect("degree 2");
        CFSpec::new(a, b)
    }
}

/// Sum of positive terms `t_0 = first`, `t_{k+1} = t_k r(k)`, where `r` is
/// decreasing; stops once `t_N r(N) / (1 - r(N))` is below the target.
fn sum_decreasing_ratio(first: BigFloat, ratio: impl Fn(u64) -> Rational, precision: u32) -> BigFloat {
    let wp = first.precision();
    let mut sum = first.clone();
    let mut t = first;
    let mut k = 0u64;
    loop {
        let r = ratio(k);
        t = t.mul_rational(&r);
        sum = &sum + &t;
        let rf = to_f64(&ratio(k + 1));
        if rf < 1.0 {
            let bound = t.log10_abs() + (rf / (1.0 - rf)).log10();
            if bound < sum.log10_abs() - (precision + 2) as f64 {
                return sum.with_precision(wp);
            }
        }
        k += 1;
    }
}

pub fn family2_f(p: &Family2Params, precision: u32) -> BigFloat {
    let wp = precision + 10;
    // t_{k+1}/t_k = 1 / ((k+3)(3a + b + k a))
    let three_a_b = &p.a * Rational::from_integer(BigInt::from(3)) + &p.b;
    let ratio = |k: u64| {
        let kk = Rational::from_integer(BigInt::from(k));
        ((&kk + Rational::from_integer(BigInt::from(3))) * (&three_a_b + &kk * &p.a)).recip()
    };
    // 2 * t_0 = 2 / 2! = 1
    sum_decreasing_ratio(BigFloat::one(wp), ratio, precision).with_precision(precision)
}

/// `F(a, a(m - 1/2))` via `2(4+2m)!/(m+2)! Σ (k+m+2)! / ((k+2)! (2k+2m+4)!) (4/a)^k`.
pub fn family2_halfint_series(a: &Rational, m: u32, precision: u32) -> Result<BigFloat, FamilyError> {
    if !a.is_positive() {
        return Err(FamilyError::InvalidParams(format!("a must be positive, got {a}")));
    }
    let wp = precision + 10;
    let m = m as u64;
    let pre = Rational::new(factorial(4 + 2 * m) * 2, factorial(m + 2));
    let u0 = Rational::new(factorial(m + 2), factorial(2) * factorial(2 * m + 4));
    let four_over_a = Rational::from_integer(BigInt::from(4)) / a;
    let ratio = |k: u64| {
        Rational::new(
            BigInt::from(k + m + 3),
            BigInt::from((k + 3) * (2 * k + 2 * m + 5) * (2 * k + 2 * m + 6)),
        ) * &four_over_a
    };
    let s = sum_decreasing_ratio(BigFloat::from_rational(&u0, wp), ratio, precision + 2);
    Ok(s.mul_rational(&pre).with_precision(precision))
}

pub fn family2_limit(p: &Family2Params, precision: u32) -> Result<ClosedFormValue, FamilyError> {
    let wp = precision + 10;
    let f = family2_f(p, wp);
    let two = Rational::from_integer(BigInt::from(2));
    let s = &two * (&p.a * &two + &p.b);
    let top_c = &s * (&p.a + &p.b + Rational::one());
    let top = &f + &BigFloat::from_rational(&top_c, wp);
    let bottom = &f + &BigFloat::from_rational(&s, wp);
    let value = (&top / &bottom).with_precision(precision);

    let est = estimate_limit(&p.spec(), CROSS_CHECK_DIGITS.min(precision.max(10)), 100_000)?;
    let agree = agreement_digits(&est.value, &value);
    let need = CROSS_CHECK_MIN.max(est.achieved_digits as f64 - 2.0);
    if (est.achieved_digits as f64) < CROSS_CHECK_MIN || agree < need {
        return Err(FamilyError::CrossCheckFailed(format!(
            "family 2 at a = {}, b = {}: closed form {} vs convergents {} ({} digits)",
            p.a, p.b, value, est.value, est.achieved_digits
        )));
    }
    let expr = format!(
        "(F + {})/(F + {}), F = F({}, {})",
        format_rational_short(&top_c),
        format_rational_short(&s),
        format_rational_short(&p.a),
        format_rational_short(&p.b)
    );
    Ok(ClosedFormValue::numeric(expr, value, precision))
}
