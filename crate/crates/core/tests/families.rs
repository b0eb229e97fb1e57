use gcf_core::bignum::rational::{int, rat};
use gcf_core::bignum::{factorial, BigFloat, Rational};
use gcf_core::cf::{estimate_limit, pq_convergents};
use gcf_core::families::{
    family1_limit, family2_limit, family3_limit, Family, Family1Params, Family2Params, Family3Params,
};
use gcf_core::report::{family_report, report_passed};

fn rel_err(x: &BigFloat, y: &BigFloat) -> f64 {
    let d = (x - y).abs();
    if d.is_zero() {
        f64::NEG_INFINITY
    } else {
        d.log10_abs() - y.log10_abs().max(0.0)
    }
}

fn to_f64(r: &Rational) -> f64 {
    BigFloat::from_rational(r, 30).to_f64()
}

#[test]
fn normalized_numerator_converges_like_one_over_n() {
    // p(n) / (n! C(n+D, D)) → B_p with an O(1/n) correction.
    let p = Family1Params::new(-1, 2).unwrap();
    let d = p.d() as u64;
    let pq = pq_convergents(&p.spec(), 1000).unwrap();
    let norm = |n: u64| {
        let binom = factorial(n + d) / (factorial(n) * factorial(d));
        to_f64(&(&pq[n as usize].p / Rational::from_integer(factorial(n) * binom)))
    };
    let (x1, x2, x3) = (norm(250), norm(500), norm(1000));
    let ratio = (x3 - x2) / (x2 - x1);
    assert!((0.4..0.6).contains(&ratio), "ratio {ratio}");
}

#[test]
fn family2_grid_matches_convergents() {
    for a in 1..=5 {
        for b in 0..=5 {
            let p = Family2Params::new(int(a), int(b)).unwrap();
            let closed = family2_limit(&p, 30).unwrap();
            let est = estimate_limit(&p.spec(), 25, 100_000).unwrap();
            assert!(rel_err(&est.value, &closed.value) < -20.0, "a = {a}, b = {b}");
        }
    }
}

#[test]
fn family2_rational_parameters() {
    let p = Family2Params::new(rat(3, 2), rat(1, 3)).unwrap();
    let closed = family2_limit(&p, 30).unwrap();
    let est = estimate_limit(&p.spec(), 25, 100_000).unwrap();
    assert!(rel_err(&est.value, &closed.value) < -20.0);
}

#[test]
fn family1_positive_a_grid() {
    for a in 1..=3 {
        for k in 0..=3 {
            let p = Family1Params::new(a, k).unwrap();
            let est = estimate_limit(&p.spec(), 25, 100_000).unwrap();
            assert!(
                rel_err(&est.value, &family1_limit(&p, 30).value) < -20.0,
                "a = {a}, k = {k}"
            );
        }
    }
}

#[test]
fn family3_larger_k() {
    for k in 5..=6 {
        let p = Family3Params::new(k).unwrap();
        let est = estimate_limit(&p.spec(), 20, 100_000).unwrap();
        assert!(rel_err(&est.value, &family3_limit(&p, 30).value) < -6.0);
    }
}

#[test]
fn reports_pass_and_are_deterministic() {
    let fams = [
        Family::Linear(Family1Params::new(-1, 3).unwrap()),
        Family::Quadratic(Family2Params::new(int(4), int(6)).unwrap()),
        Family::Zeta(Family3Params::new(3).unwrap()),
    ];
    for f in &fams {
        let r = family_report(f, 30).unwrap();
        assert!(report_passed(&r), "{r}");
        assert_eq!(r, family_report(f, 30).unwrap());
    }
}
