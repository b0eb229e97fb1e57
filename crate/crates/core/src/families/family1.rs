//! `[n + k : a n] = a^D / ((D-1)! (e^a - Σ_{s<D} a^s/s!))` with `D = a + k + 1`.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::closed_form::{Basis, ClosedFormValue, Term};
use super::FamilyError;
use crate::bignum::{derangement, eval_exp, exp_partial_sum, factorial, BigFloat, Rational};
use crate::cf::CFSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Family1Params {
    pub a: i64,
    pub k: i64,
}

impl Family1Params {
    pub fn new(a: i64, k: i64) -> Result<Self, FamilyError> {
        let p = Family1Params { a, k };
        if a == 0 {
            return Err(FamilyError::InvalidParams("family 1 needs a != 0".into()));
        }
        if p.d() < 1 {
            return Err(FamilyError::InvalidParams(format!(
                "family 1 needs D = a + k + 1 >= 1, got D = {}",
                p.d()
            )));
        }
        Ok(p)
    }

    pub fn d(&self) -> i64 {
        self.a + self.k + 1
    }

    /// `[n + k : a n]`.
    pub fn spec(&self) -> CFSpec {
        CFSpec::from_i64s(&[self.k, 1], &[0, self.a])
    }
}

fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// `(a^D, (D-1)!, Σ_{s<D} a^s/s!)`.
fn exact_parts(p: &Family1Params) -> (Rational, Rational, Rational) {
    let d = p.d();
    let a = int(p.a);
    let a_pow = num_traits::pow(a.clone(), d as usize);
    let fact = int(factorial(d as u64 - 1));
    (a_pow, fact, exp_partial_sum(&a, d as u64))
}

pub fn family1_limit(p: &Family1Params, precision: u32) -> ClosedFormValue {
    let (a_pow, fact, sum) = exact_parts(p);
    ClosedFormValue::from_terms(
        vec![Term::rational(a_pow)],
        vec![
            Term::new(fact.clone(), Basis::Exp, int(p.a)),
            Term::rational(-(fact * sum)),
        ],
        precision,
    )
}

/// `(-1)^k e / (e k! Σ_{s<=k} (-1)^s/s! - k!)`, checked against the
/// derangement form `(-1)^k e / (e D_k - k!)`.
pub fn family1_derangement_form(k: u32, precision: u32) -> Result<ClosedFormValue, FamilyError> {
    let kf = int(factorial(k as u64));
    let sign = if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    let alt = exp_partial_sum(&-Rational::one(), k as u64 + 1);
    let literal = ClosedFormValue::from_terms(
        vec![Term::new(sign.clone(), Basis::Exp, Rational::one())],
        vec![
            Term::new(&kf * &alt, Basis::Exp, Rational::one()),
            Term::rational(-kf.clone()),
        ],
        precision,
    );
    // Second evaluation directly from D_k, with the cancellation in e D_k - k! covered.
    let extra = (factorial(k as u64).bits() as f64 * std::f64::consts::LOG10_2).ceil() as u32;
    let wp = precision + extra + 10;
    let e = eval_exp(&Rational::one(), wp);
    let den = &e.mul_int(&derangement(k as u64)) - &BigFloat::from_rational(&kf, wp);
    let mut direct = &e / &den;
    if sign.is_negative() {
        direct = -direct;
    }
    let diff = (&direct - &literal.value).abs();
    if !diff.is_zero() && diff.log10_abs() - literal.value.log10_abs().max(0.0) > -(precision as f64) + 1.0 {
        return Err(FamilyError::CrossCheckFailed(format!(
            "derangement form for k = {k} disagrees: {} vs {}",
            literal.value, direct
        )));
    }
    Ok(literal)
}

/// `B_p = (-a)^{D+1}` and `B_q = (-1)^D a (D-1)! (Σ_{s<D} a^s/s! - e^a)`,
/// the leading constants of `p(n)` and `q(n)`; `B_p / B_q` is the limit.
pub fn family1_asymptotic_constants(
    p: &Family1Params,
    precision: u32,
) -> Result<(Rational, ClosedFormValue), FamilyError> {
    let d = p.d();
    let b_p = num_traits::pow(int(-p.a), d as usize + 1);
    let (_, fact, sum) = exact_parts(p);
    let sign = if d % 2 == 0 { Rational::one() } else { -Rational::one() };
    let c = sign * int(p.a) * fact;
    let b_q = ClosedFormValue::from_terms(
        vec![Term::rational(&c * &sum), Term::new(-c, Basis::Exp, int(p.a))],
        vec![Term::rational(Rational::one())],
        precision,
    );
    let ratio = BigFloat::from_rational(&b_p, precision + 10) / b_q.value.with_precision(precision + 10);
    let lim = family1_limit(p, precision + 10);
    let diff = (&ratio - &lim.value).abs();
    if !diff.is_zero() && diff.log10_abs() - lim.value.log10_abs().max(0.0) > -(precision as f64) + 1.0 {
        return Err(FamilyError::CrossCheckFailed(format!(
            "B_p/B_q differs from the limit for a = {}, k = {}",
            p.a, p.k
        )));
    }
    Ok((b_p, b_q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: &BigFloat, y: &BigFloat, digits: f64) -> bool {
        (x - y).abs().log10_abs() - y.log10_abs().max(0.0) < -digits
    }

    #[test]
    fn parameter_domain() {
        assert!(Family1Params::new(0, 3).is_err());
        assert!(Family1Params::new(-2, 0).is_err());
        assert_eq!(Family1Params::new(-1, 2).unwrap().d(), 2);
    }

    #[test]
    fn a_minus_one_k_two_is_e() {
        let v = family1_limit(&Family1Params::new(-1, 2).unwrap(), 40);
        assert!(close(&v.value, &eval_exp(&Rational::one(), 50), 39.0));
        assert_eq!(v.expr, "(1)/(exp(-1))");
    }

    #[test]
    fn e_over_e_minus_two_is_k_three() {
        let v = family1_limit(&Family1Params::new(-1, 3).unwrap(), 40);
        let e = eval_exp(&Rational::one(), 50);
        assert!(close(&v.value, &(&e / &(&e - &BigFloat::from_i64(2, 50))), 39.0));
    }

    #[test]
    fn d_equals_one() {
        let e = |x: i64| eval_exp(&int(x), 50);
        for k in 1..=4i64 {
            let v = family1_limit(&Family1Params::new(-k, k).unwrap(), 40);
            let ek = e(k);
            let expect = ek.mul_i64(k) / (&ek - &BigFloat::one(50));
            assert!(close(&v.value, &expect, 39.0), "k = {k}");
        }
        let v = family1_limit(&Family1Params::new(1, -1).unwrap(), 40);
        assert!(close(&v.value, &(BigFloat::one(50) / (e(1) - BigFloat::one(50))), 39.0));
    }

    #[test]
    fn derangement_form_small_k() {
        let e = eval_exp(&Rational::one(), 50);
        let k0 = family1_derangement_form(0, 40).unwrap();
        assert!(close(&k0.value, &(&e / &(&e - &BigFloat::one(50))), 39.0));
        let k1 = family1_derangement_form(1, 40).unwrap();
        assert!(close(&k1.value, &e, 39.0));
        let k2 = family1_derangement_form(2, 40).unwrap();
        assert!(close(&k2.value, &(&e / &(&e - &BigFloat::from_i64(2, 50))), 39.0));
    }

    #[test]
    fn asymptotic_constants() {
        let (bp, _) = family1_asymptotic_constants(&Family1Params::new(-1, 2).unwrap(), 30).unwrap();
        assert_eq!(bp, int(1));
    }
}
