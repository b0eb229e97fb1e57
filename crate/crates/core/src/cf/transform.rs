//! Equivalence transformations and the Euler series form.

use num_traits::{One, Signed, Zero};

use super::limit::{ConvergenceClass, LimitEstimate};
use super::polyseq::PolySeq;
use super::spec::CFSpec;
use super::CfError;
use crate::bignum::{BigFloat, Rational, MIN_PRECISION};

/// `[a(n) : b(n)] -> [c(n-1) a(n) : c(n-1) c(n) b(n)]`, which leaves every
/// convergent unchanged when `c(0) = 1` and `c(n) != 0`.
pub fn scale_equivalence(spec: &CFSpec, c: &PolySeq) -> Result<CFSpec, CfError> {
    match c.eval(0) {
        Some(v) if v.is_one() => {}
        Some(v) => return Err(CfError::InvalidScale(format!("c(0) = {v}, expected 1"))),
        None => return Err(CfError::InvalidScale("c has a pole at 0".into())),
    }
    let prev = c.shift(-1);
    let a = prev.mul(&spec.a)?;
    let b = prev.mul(c)?.mul(&spec.b)?;
    Ok(CFSpec { a, b })
}

/// The sequence `r` with `a(n) = r(n-1) + 1` and `b(n) = -r(n)`, if the spec
/// has that shape identically in `n`.
pub fn to_euler_form(spec: &CFSpec) -> Option<PolySeq> {
    let check = spec
        .a
        .add(&PolySeq::constant(-Rational::one()))
        .ok()?
        .add(&spec.b.shift(-1))
        .ok()?;
    check.is_zero().then(|| spec.b.neg())
}

pub fn euler_value(r: &PolySeq, precision: u32) -> Result<LimitEstimate, CfError> {
    euler_value_with(r, precision, 100_000)
}

/// `r(0) + 1 / Σ_{k>=0} Π_{j=1}^{k} r(j)`.
///
/// The series is summed until the geometric tail bound from the largest of
/// the last eight ratios `|r(j)|` falls below the target.
pub fn euler_value_with(r: &PolySeq, precision: u32, max_terms: usize) -> Result<LimitEstimate, CfError> {
    if precision < MIN_PRECISION {
        return Err(CfError::Precision(precision));
    }
    let wp = precision + 20;
    let r0 = r.eval(0).ok_or(CfError::Pole { n: 0 })?;
    let mut sum = BigFloat::one(wp);
    let mut term = BigFloat::one(wp);
    let mut ratios: Vec<f64> = Vec::new();
    let mut used = 1;
    let mut bound = f64::INFINITY;
    for j in 1..=max_terms as i64 {
        let rj = r.eval(j).ok_or(CfError::Pole { n: j })?;
        used = j as usize + 1;
        if rj.is_zero() {
            bound = f64::NEG_INFINITY;
            break;
        }
        ratios.push(crate::bignum::rational::to_f64(&rj.abs()));
        term = term.mul_rational(&rj);
        sum = &sum + &term;
        if ratios.len() >= 8 {
            let rho = ratios[ratios.len() - 8..].iter().cloned().fold(0.0, f64::max);
            if rho < 1.0 {
                bound = term.log10_abs() + (rho / (1.0 - rho)).log10();
                if bound < sum.log10_abs() - (wp - 5) as f64 {
                    break;
                }
            } else if ratios[ratios.len() - 8..].iter().all(|&v| v >= 1.0) && term.abs() > BigFloat::one(wp) {
                return Err(CfError::Divergent { terms_used: used });
            }
        }
    }
    if sum.is_zero() {
        return Err(CfError::Undefined {
            gaps: 1,
            terms_used: used,
        });
    }
    let value = &BigFloat::from_rational(&r0, wp) + &sum.recip();
    // Error in 1/S is about |tail| / S^2.
    let err = bound - 2.0 * sum.log10_abs();
    let digits = if err == f64::NEG_INFINITY {
        precision
    } else if err.is_finite() {
        ((-(err - value.log10_abs().max(0.0))).floor().max(0.0) as u32).min(precision)
    } else {
        0
    };
    Ok(LimitEstimate {
        value: value.with_precision(precision),
        achieved_digits: digits,
        terms_used: used,
        convergence_class: if digits > 0 {
            ConvergenceClass::Geometric
        } else {
            ConvergenceClass::Undetermined
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::rational::{int, rat};
    use crate::cf::convergents::{eval_finite, instantiate};

    #[test]
    fn identity_scale() {
        let s = CFSpec::from_i64s(&[3, 1], &[0, -1]);
        assert_eq!(scale_equivalence(&s, &PolySeq::one()).unwrap(), s);
        let bad = PolySeq::from_i64s(&[2, 1]);
        assert!(matches!(scale_equivalence(&s, &bad), Err(CfError::InvalidScale(_))));
    }

    #[test]
    fn scale_and_rescale() {
        let s = CFSpec::from_i64s(&[3, 1], &[0, -1]);
        let c = PolySeq::from_i64s(&[1, 1]).recip().unwrap();
        let t = scale_equivalence(&s, &c).unwrap();
        let back = scale_equivalence(&t, &c.recip().unwrap()).unwrap();
        for n in 1..=20 {
            assert_eq!(back.a.eval(n), s.a.eval(n));
            assert_eq!(back.b.eval(n), s.b.eval(n));
        }
        for m in 1..=20 {
            let x = eval_finite(&instantiate(&s, m).unwrap()).unwrap();
            let y = eval_finite(&instantiate(&t, m).unwrap()).unwrap();
            assert_eq!(x, y);
        }
    }

    #[test]
    fn euler_form_detection() {
        let x = rat(1, 3);
        let s = CFSpec::new(PolySeq::constant(&x + int(1)), PolySeq::constant(-x.clone()));
        assert_eq!(to_euler_form(&s), Some(PolySeq::constant(x)));
        assert_eq!(to_euler_form(&CFSpec::from_i64s(&[3, 1], &[0, -1])), None);
        assert_eq!(
            to_euler_form(&CFSpec::from_i64s(&[0, 1], &[0, -1])),
            Some(PolySeq::var())
        );
    }

    #[test]
    fn euler_values() {
        let half = euler_value(&PolySeq::constant(rat(1, 2)), 30).unwrap();
        assert!((&half.value - &BigFloat::one(30)).abs().log10_abs() < -30.0);
        let zero = euler_value(&PolySeq::constant(int(0)), 30).unwrap();
        assert_eq!(zero.value, BigFloat::one(30));
        assert_eq!(zero.achieved_digits, 30);
        assert!(matches!(
            euler_value(&PolySeq::var(), 30),
            Err(CfError::Divergent { .. })
        ));
    }
}
