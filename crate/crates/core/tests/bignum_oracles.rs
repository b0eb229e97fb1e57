use gcf_core::bignum::rational::{int, rat};
use gcf_core::bignum::{
    derangement, eval_exp, eval_pi, eval_sinh_cosh, eval_zeta, factorial, golden_ratio, incomplete_gamma_int, sqrt2,
    BigFloat, Rational,
};

fn close(x: &BigFloat, y: &BigFloat, digits: f64) -> bool {
    let d = (x - y).abs();
    d.is_zero() || d.log10_abs() < -digits
}

/// Gauss-Legendre AGM iteration.
fn agm_pi(prec: u32) -> BigFloat {
    let wp = prec + 10;
    let mut a = BigFloat::one(wp);
    let mut b = BigFloat::one(wp) / BigFloat::from_i64(2, wp).sqrt();
    let mut t = BigFloat::from_rational(&rat(1, 4), wp);
    let mut p = BigFloat::one(wp);
    for _ in 0..20 {
        let an = (&a + &b).div_i64(2);
        let bn = (&a * &b).sqrt();
        let d = &a - &an;
        t = &t - &(&(&d * &d) * &p);
        p = p.mul_i64(2);
        a = an;
        b = bn;
    }
    let s = &a + &b;
    &(&s * &s) / &t.mul_i64(4)
}

#[test]
fn pi_matches_agm() {
    assert!(close(&eval_pi(300), &agm_pi(300), 295.0));
}

#[test]
fn e_matches_exact_taylor_sum() {
    let mut s = Rational::from_integer(0.into());
    for k in 0..120u64 {
        s += Rational::new(1.into(), factorial(k));
    }
    assert!(close(&eval_exp(&int(1), 150), &BigFloat::from_rational(&s, 160), 148.0));
}

#[test]
fn exp_functional_equation() {
    let prec = 80;
    let x = rat(7, 3);
    let y = rat(-5, 4);
    let lhs = eval_exp(&(&x + &y), prec);
    let rhs = &eval_exp(&x, prec) * &eval_exp(&y, prec);
    assert!(close(&lhs, &rhs, 77.0));
}

#[test]
fn sinh_cosh_identity() {
    let x = BigFloat::from_rational(&rat(5, 7), 60);
    let (s, c) = eval_sinh_cosh(&x, 60);
    assert!(close(&(&(&c * &c) - &(&s * &s)), &BigFloat::one(60), 57.0));
}

#[test]
fn zeta_even_values() {
    let pi = eval_pi(70);
    let pi2 = &pi * &pi;
    assert!(close(&eval_zeta(2, 60).unwrap(), &pi2.div_i64(6), 58.0));
    assert!(close(&eval_zeta(4, 60).unwrap(), &(&pi2 * &pi2).div_i64(90), 58.0));
}

#[test]
fn zeta3_matches_central_binomial_series() {
    // ζ(3) = 5/2 Σ (-1)^{n+1} / (n^3 C(2n, n))
    let mut s = Rational::from_integer(0.into());
    let mut binom = num_bigint::BigInt::from(1);
    for n in 1..=140i64 {
        binom = binom * (2 * (2 * n - 1)) / n;
        let t = Rational::new(1.into(), binom.clone() * n * n * n);
        if n % 2 == 1 {
            s += t;
        } else {
            s -= t;
        }
    }
    let oracle = BigFloat::from_rational(&(s * rat(5, 2)), 90);
    assert!(close(&eval_zeta(3, 80).unwrap(), &oracle, 78.0));
}

#[test]
fn incomplete_gamma_closed_form() {
    // Γ(4, 2) = 3! e^{-2} (1 + 2 + 2 + 4/3) = 38 e^{-2}
    let g = incomplete_gamma_int(4, &int(2), 50).unwrap();
    assert!(close(&g, &eval_exp(&int(-2), 60).mul_i64(38), 48.0));
}

#[test]
fn algebraic_constants_square() {
    let r = sqrt2(60);
    assert!(close(&(&r * &r), &BigFloat::from_i64(2, 60), 58.0));
    let phi = golden_ratio(60);
    assert!(close(&(&phi * &phi), &(&phi + &BigFloat::one(60)), 58.0));
}

#[test]
fn derangements_by_recurrence() {
    let mut d = vec![num_bigint::BigInt::from(1), num_bigint::BigInt::from(0)];
    for n in 2..30usize {
        let v = (d[n - 1].clone() + d[n - 2].clone()) * (n as i64 - 1);
        d.push(v);
    }
    for (k, v) in d.iter().enumerate() {
        assert_eq!(&derangement(k as u64), v);
    }
}
