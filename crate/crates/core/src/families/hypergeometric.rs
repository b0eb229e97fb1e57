//! Kummer's `M(a, b, z)` by its series and Tricomi's `U(D, D+2, z)` in closed form.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::FamilyError;
use crate::bignum::rational::to_f64;
use crate::bignum::{BigFloat, Rational};

/// `(w, w', w'')` at one point.
pub type WithDerivatives = (BigFloat, BigFloat, BigFloat);

fn nonpositive_integer(b: &Rational) -> bool {
    b.is_integer() && !b.is_positive()
}

/// `M(a, b, z) = Σ a^(k) / (b^(k) k!) z^k`, truncated after `terms` terms.
pub fn kummer_m(
    a: &Rational,
    b: &Rational,
    z: &Rational,
    precision: u32,
    terms: usize,
) -> Result<BigFloat, FamilyError> {
    Ok(kummer_m_derivs(a, b, z, precision, terms)?.0)
}

/// `M`, `M'`, `M''` by termwise differentiation of the same truncated series.
///
/// With `t_k` the `k`-th term, for `k >= N > |b|` the ratio `t_{k+1}/t_k` is
/// at most `ρ = (|a|+N)|z| / ((N-|b|)(N+1))`, so the omitted part of `M` is
/// at most `|t_N| / (1-ρ)`. The derivative series `k t_k / z` and
/// `k(k-1) t_k / z^2` have ratios at most `ρ (N+1)/N` and `ρ (N+1)/(N-1)`.
pub fn kummer_m_derivs(
    a: &Rational,
    b: &Rational,
    z: &Rational,
    precision: u32,
    terms: usize,
) -> Result<WithDerivatives, FamilyError> {
    if nonpositive_integer(b) {
        return Err(FamilyError::InvalidParams(format!(
            "M(a, b, z) needs b not in {{0, -1, -2, ...}}, got b = {b}"
        )));
    }
    let one = Rational::from_integer(BigInt::from(1));
    if z.is_zero() {
        let m1 = a / b;
        let m2 = &m1 * (a + &one) / (b + &one);
        let f = |r: &Rational| BigFloat::from_rational(r, precision);
        return Ok((BigFloat::one(precision), f(&m1), f(&m2)));
    }
    let wp = precision + 10;
    let zf = BigFloat::from_rational(z, wp);
    let z_inv = zf.recip();
    let mut t = BigFloat::one(wp);
    let (mut m0, mut m1, mut m2) = (BigFloat::zero(wp), BigFloat::zero(wp), BigFloat::zero(wp));
    for k in 0..terms as i64 {
        m0 = &m0 + &t;
        let d1 = (&t * &z_inv).mul_i64(k);
        m1 = &m1 + &d1;
        m2 = &m2 + &(&d1 * &z_inv).mul_i64(k - 1);
        let kr = Rational::from_integer(BigInt::from(k));
        let step = (a + &kr) / ((b + &kr) * (&kr + &one));
        t = (&t * &zf).mul_rational(&step);
        if t.is_zero() {
            break;
        }
    }
    let fin = |v: BigFloat| v.with_precision(precision);
    if t.is_zero() {
        return Ok((fin(m0), fin(m1), fin(m2)));
    }
    let n = terms as f64;
    let (af, bf) = (to_f64(&a.abs()), to_f64(&b.abs()));
    let rho = if n > bf && n > 1.0 {
        (af + n) * to_f64(&z.abs()) / ((n - bf) * (n + 1.0))
    } else {
        f64::INFINITY
    };
    let lt = t.log10_abs();
    let lz = to_f64(&z.abs()).log10();
    let tails = [
        (lt, rho, &m0),
        (lt + n.log10() - lz, rho * (n + 1.0) / n, &m1),
        (
            lt + (n * (n - 1.0)).log10() - 2.0 * lz,
            rho * (n + 1.0) / (n - 1.0),
            &m2,
        ),
    ];
    for (first, r, sum) in tails {
        let bound = if r < 1.0 {
            first - (1.0 - r).log10()
        } else {
            f64::INFINITY
        };
        if !(bound < sum.log10_abs().max(0.0) - precision as f64) {
            return Err(FamilyError::TailBoundNotMet {
                terms,
                bound_log10: bound,
            });
        }
    }
    Ok((fin(m0), fin(m1), fin(m2)))
}

/// `U(D, D+2, z) = z^{-D} (1 + D/z)`.
pub fn tricomi_u_special(d: u32, z: &BigFloat) -> Result<BigFloat, FamilyError> {
    Ok(tricomi_u_special_derivs(d, z)?.0)
}

/// `U`, `U'`, `U''` from the closed form.
pub fn tricomi_u_special_derivs(d: u32, z: &BigFloat) -> Result<WithDerivatives, FamilyError> {
    if d == 0 {
        return Err(FamilyError::InvalidParams("U(D, D+2, z) needs D >= 1".into()));
    }
    if z.is_zero() {
        return Err(FamilyError::InvalidParams("U(D, D+2, z) is singular at z = 0".into()));
    }
    let d = d as i64;
    let p = |k: i64| z.powi(-k);
    let u = &p(d) + &p(d + 1).mul_i64(d);
    let u1 = -(&p(d + 1).mul_i64(d) + &p(d + 2).mul_i64(d * (d + 1)));
    let u2 = &p(d + 2).mul_i64(d * (d + 1)) + &p(d + 3).mul_i64(d * (d + 1) * (d + 2));
    Ok((u, u1, u2))
}

/// `z w'' + (b - z) w' - a w`.
pub fn kummer_residual(a: &Rational, b: &Rational, z: &BigFloat, w: &WithDerivatives) -> BigFloat {
    let prec = z.precision();
    let bz = &BigFloat::from_rational(b, prec) - z;
    let t = &(z * &w.2) + &(&bz * &w.1);
    &t - &w.0.mul_rational(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::eval_exp;
    use crate::bignum::rational::{int, rat};

    #[test]
    fn m_at_zero_and_exponential_case() {
        assert_eq!(
            kummer_m(&int(3), &rat(1, 2), &int(0), 30, 10).unwrap(),
            BigFloat::one(30)
        );
        for z in [rat(1, 2), int(2), int(-3)] {
            let m = kummer_m(&int(1), &int(1), &z, 40, 200).unwrap();
            let e = eval_exp(&z, 40);
            assert!(((&m - &e) / e.clone()).log10_abs() < -39.0, "z = {z}");
        }
    }

    #[test]
    fn m_rejects_bad_b_and_short_series() {
        assert!(matches!(
            kummer_m(&int(1), &int(0), &int(1), 30, 100),
            Err(FamilyError::InvalidParams(_))
        ));
        assert!(matches!(
            kummer_m(&int(1), &int(-2), &int(1), 30, 100),
            Err(FamilyError::InvalidParams(_))
        ));
        assert!(matches!(
            kummer_m(&int(1), &int(2), &int(5), 30, 10),
            Err(FamilyError::TailBoundNotMet { .. })
        ));
    }

    #[test]
    fn u_special_values() {
        let one = BigFloat::one(30);
        assert_eq!(tricomi_u_special(1, &one).unwrap(), BigFloat::from_i64(2, 30));
        assert!(tricomi_u_special(2, &BigFloat::zero(30)).is_err());
        // z^{D+1} U(D, D+2, z) = z + D -> D as z -> 0
        for d in 1..=4u32 {
            let z = BigFloat::from_rational(&rat(1, 1_000_000), 30);
            let scaled = &tricomi_u_special(d, &z).unwrap() * &z.powi(d as i64 + 1);
            assert!((&scaled - &BigFloat::from_i64(d as i64, 30)).abs().log10_abs() < -5.9);
        }
    }
}
