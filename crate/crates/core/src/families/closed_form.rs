//! Closed-form values as rational combinations of a few named constants.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::bignum::rational::{format_rational_short, serde_str};
use crate::bignum::{eval_exp, eval_pi, eval_sinh_cosh, eval_zeta, BigFloat, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "exp")]
    Exp,
    #[serde(rename = "sinh")]
    Sinh,
    #[serde(rename = "cosh")]
    Cosh,
    #[serde(rename = "zeta")]
    Zeta,
    #[serde(rename = "pi_pow")]
    PiPow,
}

/// `coeff * basis(arg)`. For `Zeta` and `PiPow` the argument is an integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    #[serde(with = "serde_str")]
    pub coeff: Rational,
    pub basis: Basis,
    #[serde(with = "serde_str")]
    pub arg: Rational,
}

impl Term {
    pub fn rational(c: Rational) -> Self {
        Term {
            coeff: c,
            basis: Basis::One,
            arg: Rational::zero(),
        }
    }

    pub fn new(coeff: Rational, basis: Basis, arg: Rational) -> Self {
        Term { coeff, basis, arg }
    }

    pub fn eval(&self, precision: u32) -> BigFloat {
        let wp = precision + 5;
        let base = match self.basis {
            Basis::One => BigFloat::one(wp),
            Basis::Exp => eval_exp(&self.arg, wp),
            Basis::Sinh => eval_sinh_cosh(&BigFloat::from_rational(&self.arg, wp), wp).0,
            Basis::Cosh => eval_sinh_cosh(&BigFloat::from_rational(&self.arg, wp), wp).1,
            Basis::Zeta => {
                let k = self.arg.to_integer().to_i64().expect("integer zeta argument");
                eval_zeta(k, wp).expect("zeta argument >= 2")
            }
            Basis::PiPow => eval_pi(wp).powi(self.arg.to_integer().to_i64().expect("integer power")),
        };
        base.mul_rational(&self.coeff).with_precision(precision)
    }

    fn render_unsigned(&self) -> String {
        let c = self.coeff.abs();
        let arg = format_rational_short(&self.arg);
        let f = match self.basis {
            Basis::One => return format_rational_short(&c),
            Basis::Exp => format!("exp({arg})"),
            Basis::Sinh => format!("sinh({arg})"),
            Basis::Cosh => format!("cosh({arg})"),
            Basis::Zeta => format!("zeta({arg})"),
            Basis::PiPow => format!("pi^{arg}"),
        };
        if c.is_one() {
            f
        } else {
            format!("{}*{f}", format_rational_short(&c))
        }
    }
}

pub(crate) fn render_sum(terms: &[Term]) -> String {
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        let neg = t.coeff.is_negative();
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        s.push_str(&t.render_unsigned());
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn sum_terms(terms: &[Term], precision: u32) -> BigFloat {
    terms
        .iter()
        .fold(BigFloat::zero(precision), |acc, t| &acc + &t.eval(precision))
}

/// Value given by `Σ numerator / Σ denominator` together with its numeric value.
///
/// Sequences whose constant has no representation in these bases carry empty
/// term lists; `expr` then describes the value in words.
#[derive(Clone, Debug)]
pub struct ClosedFormValue {
    pub expr: String,
    pub numerator: Vec<Term>,
    pub denominator: Vec<Term>,
    pub value: BigFloat,
    pub precision: u32,
}

impl ClosedFormValue {
    /// Evaluates the terms, raising the working precision until the
    /// cancellation in either sum is covered.
    /// Zero terms are dropped.
    pub fn from_terms(numerator: Vec<Term>, denominator: Vec<Term>, precision: u32) -> Self {
        let nonzero = |v: Vec<Term>| v.into_iter().filter(|t| !t.coeff.is_zero()).collect::<Vec<_>>();
        let (numerator, denominator) = (nonzero(numerator), nonzero(denominator));
        let value = eval_quotient(&numerator, &denominator, precision);
        let expr = if denominator.len() == 1 && denominator[0] == Term::rational(Rational::one()) {
            render_sum(&numerator)
        } else {
            format!("({})/({})", render_sum(&numerator), render_sum(&denominator))
        };
        ClosedFormValue {
            expr,
            numerator,
            denominator,
            value,
            precision,
        }
    }

    pub fn numeric(expr: String, value: BigFloat, precision: u32) -> Self {
        ClosedFormValue {
            expr,
            numerator: Vec::new(),
            denominator: Vec::new(),
            value,
            precision,
        }
    }

    pub fn has_terms(&self) -> bool {
        !self.numerator.is_empty() || !self.denominator.is_empty()
    }

    /// Re-evaluation of the terms at another precision.
    pub fn eval_terms(&self, precision: u32) -> Option<BigFloat> {
        self.has_terms()
            .then(|| eval_quotient(&self.numerator, &self.denominator, precision))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "expr": self.expr,
            "terms": self.numerator,
            "den_terms": self.denominator,
            "value": self.value.to_decimal_string(self.precision),
            "precision": self.precision,
        })
    }

    pub fn describe(&self) -> String {
        format!("{} = {}", self.expr, self.value.to_decimal_string(self.precision))
    }
}

fn eval_quotient(num: &[Term], den: &[Term], precision: u32) -> BigFloat {
    let mut wp = precision + 10;
    loop {
        let n = sum_terms(num, wp);
        let d = sum_terms(den, wp);
        let lost = |terms: &[Term], total: &BigFloat| {
            let big = terms
                .iter()
                .map(|t| t.eval(20).log10_abs())
                .fold(f64::NEG_INFINITY, f64::max);
            if total.is_zero() {
                f64::INFINITY
            } else {
                (big - total.log10_abs()).max(0.0)
            }
        };
        let loss = lost(num, &n).max(lost(den, &d));
        if loss.is_infinite() && !d.is_zero() {
            // Exact zero numerator.
            return BigFloat::zero(precision);
        }
        if loss + 5.0 < (wp - precision) as f64 {
            assert!(!d.is_zero(), "closed form with zero denominator");
            return (&n / &d).with_precision(precision);
        }
        wp = precision + loss.min(100_000.0) as u32 + 10;
        if wp > precision + 100_000 {
            panic!("closed form cancels completely");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::rational::{int, rat};

    #[test]
    fn three_over_three_minus_e() {
        let v = ClosedFormValue::from_terms(
            vec![Term::rational(int(3))],
            vec![Term::rational(int(3)), Term::new(int(-1), Basis::Exp, int(1))],
            30,
        );
        assert_eq!(v.expr, "(3)/(3 - exp(1))");
        assert!(v.value.to_decimal_string(12).starts_with("10.6489403349"));
    }

    #[test]
    fn cancellation_is_covered() {
        // (e^{1/1000} - 1 - 1/1000) ~ 5.0e-7
        let v = ClosedFormValue::from_terms(
            vec![
                Term::new(int(1), Basis::Exp, rat(1, 1000)),
                Term::rational(rat(-1001, 1000)),
            ],
            vec![Term::rational(int(1))],
            30,
        );
        let expect = BigFloat::parse("5.00166708341668055753993058311563076e-7", 40).unwrap();
        assert!(((&v.value - &expect) / expect.clone()).log10_abs() < -29.0);
        assert_eq!(v.expr, "exp(1/1000) - 1001/1000");
    }

    #[test]
    fn json_shape() {
        let v = ClosedFormValue::from_terms(
            vec![Term::rational(int(1))],
            vec![Term::new(int(1), Basis::Zeta, int(3))],
            20,
        );
        let j = v.to_json();
        assert_eq!(j["den_terms"][0]["basis"], "zeta");
        assert_eq!(j["terms"][0]["coeff"], "1/1");
        assert_eq!(j["precision"], 20);
        let back: Vec<Term> = serde_json::from_value(j["den_terms"].clone()).unwrap();
        assert_eq!(back, v.denominator);
        assert!(v.value.to_decimal_string(10).starts_with("0.831907372"));
    }
}
