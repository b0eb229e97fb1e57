//! Numerical limits of convergent sequences.
//!
//! Convergents are generated by the p/q recurrences in floating point at a
//! working precision well above the target (the first few exactly). The
//! stream is watched in two ways:
//!
//! * per step, the contraction `c` of successive differences over a window
//!   of eight terms gives the geometric tail bound `δ c / (1 - c)`;
//! * at power-of-two checkpoints, differences between `x(N/8)`, `x(N/4)`,
//!   `x(N/2)`, `x(N)` expose an error of order `N^-r` for integer `r`, and
//!   Richardson extrapolation in `1/m` is run separately over even and odd
//!   indices.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::convergents::pq_convergents;
use super::polyseq::IntSeq;
use super::spec::CFSpec;
use super::CfError;
use crate::bignum::{BigFloat, MIN_PRECISION};

/// Terms computed exactly before switching to floating point.
const EXACT_PREFIX: usize = 64;
/// Digits carried beyond the requested precision.
const EXTRA_DIGITS: u32 = 30;
/// Largest Richardson tableau.
const MAX_POINTS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvergenceClass {
    Geometric,
    Polynomial(u32),
    Undetermined,
    Divergent,
    Undefined,
}

impl fmt::Display for ConvergenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvergenceClass::Geometric => f.write_str("geometric"),
            ConvergenceClass::Polynomial(r) => write!(f, "polynomial(order {r})"),
            ConvergenceClass::Undetermined => f.write_str("undetermined"),
            ConvergenceClass::Divergent => f.write_str("divergent"),
            ConvergenceClass::Undefined => f.write_str("undefined"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct LimitEstimate {
    pub value: BigFloat,
    pub achieved_digits: u32,
    pub terms_used: usize,
    pub convergence_class: ConvergenceClass,
}

#[derive(Clone, Debug)]
pub struct LimitOptions {
    pub precision: u32,
    pub max_terms: usize,
    /// Undefined convergents tolerated before giving up.
    pub gap_limit: usize,
}

impl Default for LimitOptions {
    fn default() -> Self {
        LimitOptions {
            precision: 50,
            max_terms: 100_000,
            gap_limit: 16,
        }
    }
}

/// Streams `p(m)/q(m)` as BigFloats, `None` where `q(m) = 0`.
pub struct FloatConvergents {
    ia: IntSeq,
    ib: IntSeq,
    prec: u32,
    exact: Vec<Option<BigFloat>>,
    p: (BigFloat, BigFloat),
    q: (BigFloat, BigFloat),
    next: usize,
}

impl FloatConvergents {
    pub fn new(spec: &CFSpec, prec: u32) -> Result<Self, CfError> {
        let pq = pq_convergents(spec, EXACT_PREFIX)?;
        let f = |r: &crate::bignum::Rational| BigFloat::from_rational(r, prec);
        let exact = pq.iter().map(|c| c.value().map(|v| f(&v))).collect();
        let (l1, l0) = (&pq[EXACT_PREFIX], &pq[EXACT_PREFIX - 1]);
        Ok(FloatConvergents {
            ia: spec.a.int_eval(),
            ib: spec.b.int_eval(),
            prec,
            exact,
            p: (f(&l0.p), f(&l1.p)),
            q: (f(&l0.q), f(&l1.q)),
            next: 0,
        })
    }

    fn term(&self, s: &IntSeq, n: i64) -> Result<BigFloat, CfError> {
        let (t, b) = s.eval(n).ok_or(CfError::Pole { n })?;
        let t = BigFloat::from_bigint(&t, self.prec);
        Ok(if b.is_one() { t } else { t.div_int(&b) })
    }

    pub fn next_value(&mut self) -> Result<Option<BigFloat>, CfError> {
        let idx = self.next;
        self.next += 1;
        if idx <= EXACT_PREFIX {
            return Ok(self.exact[idx].clone());
        }
        let n = idx as i64 - 2;
        let a = self.term(&self.ia, n + 3)?;
        let b = self.term(&self.ib, n + 2)?;
        let p = &(&a * &self.p.1) + &(&b * &self.p.0);
        let t1 = &a * &self.q.1;
        let t2 = &b * &self.q.0;
        let mut q = &t1 + &t2;
        if !q.is_zero() {
            // Cancellation down to rounding noise is an exact zero.
            let big = t1.log10_abs().max(t2.log10_abs());
            if big - q.log10_abs() > (self.prec + 5) as f64 {
                q = BigFloat::zero(self.prec);
            }
        }
        let x = p.checked_div(&q);
        self.p.0 = std::mem::replace(&mut self.p.1, p);
        self.q.0 = std::mem::replace(&mut self.q.1, q);
        Ok(x)
    }

    /// Index of the value the next call returns.
    pub fn position(&self) -> usize {
        self.next
    }
}

/// Values `x(0..=m)` at working precision `prec`.
pub fn convergent_values(spec: &CFSpec, m: usize, prec: u32) -> Result<Vec<Option<BigFloat>>, CfError> {
    let mut s = FloatConvergents::new(spec, prec)?;
    (0..=m).map(|_| s.next_value()).collect()
}

/// Neville–Richardson extrapolation to `h = 0` of values sampled at `h = 1/m`.
///
/// Returns the diagonal entry with the smallest change from its predecessor,
/// and that change as the error estimate.
pub fn richardson(ms: &[usize], xs: &[BigFloat]) -> (BigFloat, BigFloat) {
    assert_eq!(ms.len(), xs.len());
    assert!(!xs.is_empty());
    let k = xs.len();
    // prev[j] holds T(order-1 + j, order-1)
    let mut prev: Vec<BigFloat> = xs.to_vec();
    let mut diag = vec![xs[k - 1].clone()];
    for order in 1..k {
        let mut cur = Vec::with_capacity(k - order);
        for i in order..k {
            let hi = &prev[i - order + 1];
            let lo = &prev[i - order];
            let (mi, mj) = (ms[i] as i64, ms[i - order] as i64);
            cur.push(hi + &(hi - lo).mul_i64(mj).div_i64(mi - mj));
        }
        diag.push(cur.last().unwrap().clone());
        prev = cur;
    }
    if diag.len() == 1 {
        return (diag[0].clone(), BigFloat::zero(diag[0].precision()));
    }
    let mut best = 1;
    let mut best_err = (&diag[1] - &diag[0]).abs();
    for j in 2..diag.len() {
        let e = (&diag[j] - &diag[j - 1]).abs();
        if e < best_err {
            best = j;
            best_err = e;
        }
    }
    (diag[best].clone(), best_err)
}

struct Monitor {
    prec: u32,
    xs: Vec<Option<BigFloat>>,
    /// `log10 |x(m) - x(m-1)|`, NaN when either side is undefined.
    ld: Vec<f64>,
    gaps: usize,
    geometric: Option<(f64, usize)>,
    polynomial: Option<(BigFloat, f64, u32, usize)>,
    stalls: usize,
}

impl Monitor {
    fn tol_log(&self, x: &BigFloat) -> f64 {
        x.log10_abs().max(0.0) - self.prec as f64
    }

    fn last_defined(&self) -> Option<&BigFloat> {
        self.xs.iter().rev().flatten().next()
    }

    fn defined_at_or_below(&self, m: usize, parity: usize) -> Option<(usize, &BigFloat)> {
        let mut i = m;
        loop {
            if i % 2 == parity {
                if let Some(Some(x)) = self.xs.get(i) {
                    return Some((i, x));
                }
            }
            if i == 0 || m - i > 16 {
                return None;
            }
            i -= 1;
        }
    }

    /// Geometric tail bound at the latest index, as `log10` of the error.
    fn geometric_bound(&self) -> Option<f64> {
        let m = self.ld.len() - 1;
        if m < 24 {
            return None;
        }
        let (now, mid, old) = (self.ld[m], self.ld[m - 8], self.ld[m - 16]);
        if now.is_nan() || mid.is_nan() || old.is_nan() {
            return None;
        }
        if now == f64::NEG_INFINITY {
            let settled = self.ld[m - 3..=m].iter().all(|&v| v == f64::NEG_INFINITY);
            return settled.then_some(f64::NEG_INFINITY);
        }
        let c = ((now - mid) / 8.0).max((mid - old) / 8.0);
        if !(c < (0.95f64).log10()) {
            return None;
        }
        let c = 10f64.powf(c);
        Some(now + (c / (1.0 - c)).log10())
    }

    fn at_noise_floor(&self, x: &BigFloat) -> bool {
        let m = self.ld.len() - 1;
        if m < 8 {
            return false;
        }
        let floor = x.log10_abs().max(0.0) - (self.prec + EXTRA_DIGITS - 4) as f64;
        self.ld[m - 4..=m].iter().all(|&v| !v.is_nan() && v < floor)
    }

    fn richardson_parity(&self, n: usize, parity: usize) -> Option<(BigFloat, BigFloat)> {
        let mut k = MAX_POINTS.min(n / 4);
        if k < 3 {
            return None;
        }
        let mut s = (n / k) & !1;
        if s < 2 {
            s = 2;
            k = n / 2;
        }
        let mut ms = Vec::with_capacity(k);
        let mut vals = Vec::with_capacity(k);
        for i in 1..=k {
            let target = s * i - parity;
            let (m, x) = self.defined_at_or_below(target, parity)?;
            if ms.last().is_some_and(|&prev| prev >= m) {
                return None;
            }
            ms.push(m);
            vals.push(x.clone());
        }
        Some(richardson(&ms, &vals))
    }

    /// Power-of-two checkpoint: order detection, extrapolation, stall count.
    fn checkpoint(&mut self, n: usize) {
        let pts: Option<Vec<&BigFloat>> = [n / 8, n / 4, n / 2, n]
            .iter()
            .map(|&m| self.defined_at_or_below(m, 0).map(|(_, x)| x))
            .collect();
        if let Some(p) = pts {
            let d0 = (p[1] - p[0]).abs().log10_abs();
            let d1 = (p[2] - p[1]).abs().log10_abs();
            let d2 = (p[3] - p[2]).abs().log10_abs();
            let r1 = (d0 - d1) / std::f64::consts::LOG10_2;
            let r2 = (d1 - d2) / std::f64::consts::LOG10_2;
            let r = r2.round();
            let known = self.polynomial.as_ref().map(|p| p.2);
            let fits = r2.is_finite() && r1.is_finite() && r >= 1.0 && (r2 - r).abs() < 0.25 && (r1 - r2).abs() < 0.35;
            if fits || known.is_some() {
                let order = known.unwrap_or(r as u32);
                if let (Some((le, ee)), Some((lo, eo))) = (self.richardson_parity(n, 0), self.richardson_parity(n, 1)) {
                    let spread = (&le - &lo).abs();
                    let err = ee.log10_abs().max(eo.log10_abs()).max(spread.log10_abs());
                    let better = self.polynomial.as_ref().is_none_or(|p| err <= p.1);
                    if better {
                        let v = (&le + &lo).ldexp(-1);
                        self.polynomial = Some((v, err, order, n + 1));
                    }
                }
            }
        }
        // Stall: step differences over (n/2, n] are not even half those over (n/8, n/4].
        let window = |lo: usize, hi: usize| -> f64 {
            self.ld[lo + 1..=hi]
                .iter()
                .copied()
                .filter(|v| !v.is_nan())
                .fold(f64::NEG_INFINITY, f64::max)
        };
        let (now, before) = (window(n / 2, n), window(n / 8, n / 4));
        if now.is_finite() && before.is_finite() && now > before + (0.5f64).log10() {
            self.stalls += 1;
        } else {
            self.stalls = 0;
        }
    }

    fn achieved(&self, err_log: f64, x: &BigFloat) -> u32 {
        let d = -(err_log - x.log10_abs().max(0.0));
        if d.is_nan() || d < 0.0 {
            0
        } else {
            (d.floor() as u64).min(self.prec as u64) as u32
        }
    }
}

pub fn estimate_limit(spec: &CFSpec, precision: u32, max_terms: usize) -> Result<LimitEstimate, CfError> {
    estimate_limit_with(
        spec,
        &LimitOptions {
            precision,
            max_terms,
            ..LimitOptions::default()
        },
    )
}

pub fn estimate_limit_with(spec: &CFSpec, opts: &LimitOptions) -> Result<LimitEstimate, CfError> {
    if opts.precision < MIN_PRECISION {
        return Err(CfError::Precision(opts.precision));
    }
    let prec = opts.precision;
    let mut stream = FloatConvergents::new(spec, prec + EXTRA_DIGITS)?;
    let mut mon = Monitor {
        prec,
        xs: Vec::new(),
        ld: Vec::new(),
        gaps: 0,
        geometric: None,
        polynomial: None,
        stalls: 0,
    };
    let max_terms = opts.max_terms.max(2);
    let done = |v: &BigFloat, digits: u32, used: usize, class| LimitEstimate {
        value: v.with_precision(prec),
        achieved_digits: digits,
        terms_used: used,
        convergence_class: class,
    };
    for m in 0..max_terms {
        let x = stream.next_value()?;
        let delta = match (&x, mon.xs.last()) {
            (Some(x), Some(Some(prev))) => (x - prev).abs().log10_abs(),
            _ => f64::NAN,
        };
        if x.is_none() {
            mon.gaps += 1;
            if mon.gaps > opts.gap_limit {
                return Err(CfError::Undefined {
                    gaps: mon.gaps,
                    terms_used: m + 1,
                });
            }
        }
        mon.xs.push(x);
        mon.ld.push(delta);
        if let Some(cur) = mon.xs[m].clone() {
            if let Some(b) = mon.geometric_bound() {
                mon.geometric = Some((b, m + 1));
                if b < mon.tol_log(&cur) {
                    return Ok(done(&cur, prec, m + 1, ConvergenceClass::Geometric));
                }
            }
            if mon.at_noise_floor(&cur) {
                return Ok(done(&cur, prec, m + 1, ConvergenceClass::Geometric));
            }
        }
        if m >= 32 && m.is_power_of_two() {
            mon.checkpoint(m);
            if let Some((v, err, r, _)) = &mon.polynomial {
                if *err < mon.tol_log(v) {
                    return Ok(done(v, prec, m + 1, ConvergenceClass::Polynomial(*r)));
                }
            }
            if mon.stalls >= 3 {
                return Err(CfError::Divergent { terms_used: m + 1 });
            }
        }
    }

    let used = max_terms;
    let Some(last) = mon.last_defined().cloned() else {
        return Err(CfError::Undefined {
            gaps: mon.gaps,
            terms_used: used,
        });
    };
    if max_terms > 32 && !(max_terms - 1).is_power_of_two() {
        mon.checkpoint(max_terms - 1);
    }
    let poly = mon.polynomial.clone();
    let geo = mon.geometric.filter(|g| g.1 + 8 >= used);
    match (geo, poly) {
        (Some((b, _)), Some((v, err, r, _))) if err < b => {
            Ok(done(&v, mon.achieved(err, &v), used, ConvergenceClass::Polynomial(r)))
        }
        (Some((b, _)), _) if mon.achieved(b, &last) > 0 || mon.stalls == 0 => {
            Ok(done(&last, mon.achieved(b, &last), used, ConvergenceClass::Geometric))
        }
        (None, Some((v, err, r, _))) => Ok(done(&v, mon.achieved(err, &v), used, ConvergenceClass::Polynomial(r))),
        _ => {
            if mon.stalls >= 1 {
                return Err(CfError::Divergent { terms_used: used });
            }
            Ok(done(&last, 0, used, ConvergenceClass::Undetermined))
        }
    }
}

/// `|x - y|` in units of `log10`, relative to `max(1, |y|)`.
pub fn agreement_digits(x: &BigFloat, y: &BigFloat) -> f64 {
    let d = (x - y).abs();
    if d.is_zero() {
        return f64::INFINITY;
    }
    -(d.log10_abs() - y.log10_abs().max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::{eval_exp, eval_pi, golden_ratio, Rational};
    use crate::cf::PolySeq;

    fn digits(x: &BigFloat, y: &BigFloat) -> f64 {
        agreement_digits(x, y)
    }

    #[test]
    fn golden_ratio_is_geometric() {
        let s = CFSpec::from_i64s(&[1], &[1]);
        let est = estimate_limit(&s, 40, 10_000).unwrap();
        assert_eq!(est.convergence_class, ConvergenceClass::Geometric);
        assert!(digits(&est.value, &golden_ratio(60)) > 39.0);
        assert_eq!(est.achieved_digits, 40);
    }

    #[test]
    fn e_over_e_minus_two() {
        let s = CFSpec::from_i64s(&[3, 1], &[0, -1]);
        let est = estimate_limit(&s, 30, 10_000).unwrap();
        let e = eval_exp(&Rational::one(), 50);
        let expect = &e / &(&e - &BigFloat::from_i64(2, 50));
        assert!(digits(&est.value, &expect) > 29.0, "{}", est.value);
    }

    #[test]
    fn four_over_three_pi_minus_eight() {
        let s = CFSpec::from_i64s(&[0, 3], &[0, 1, -2]);
        let est = estimate_limit(&s, 30, 10_000).unwrap();
        let pi = eval_pi(50);
        let expect = &BigFloat::from_i64(4, 50) / &(&pi.mul_i64(3) - &BigFloat::from_i64(8, 50));
        assert!(digits(&est.value, &expect) > 29.0);
        assert_eq!(est.convergence_class, ConvergenceClass::Geometric);
    }

    #[test]
    fn inverse_zeta_two_by_extrapolation() {
        // [(n-1)^2 + n^2 : -n^4], error of order 1/m
        let s = CFSpec::from_i64s(&[1, -2, 2], &[0, 0, 0, 0, -1]);
        let est = estimate_limit(&s, 12, 5000).unwrap();
        assert_eq!(est.convergence_class, ConvergenceClass::Polynomial(1));
        let pi = eval_pi(40);
        let expect = BigFloat::from_i64(6, 40) / (&pi * &pi);
        assert!(digits(&est.value, &expect) > 11.0, "{}", est.value);
    }

    #[test]
    fn terminating_fraction() {
        // b(3) = 0 cuts the fraction after three terms: 1 + 2/(2 + 2/3) = 7/4
        let s = CFSpec::new(
            PolySeq::var(),
            PolySeq::from_i64s(&[3, -1]).mul(&PolySeq::var()).unwrap(),
        );
        let est = estimate_limit(&s, 20, 1000).unwrap();
        let expect = BigFloat::from_rational(&crate::bignum::rational::rat(7, 4), 30);
        assert!(digits(&est.value, &expect) > 19.0);
    }

    #[test]
    fn divergent_and_undefined() {
        // [1 : -1] cycles 1, 0, undefined
        let s = CFSpec::from_i64s(&[1], &[-1]);
        assert!(matches!(estimate_limit(&s, 20, 5000), Err(CfError::Undefined { .. })));
        // x = 1 - 2/x has no real fixed point
        let s = CFSpec::from_i64s(&[1], &[-2]);
        assert!(matches!(estimate_limit(&s, 20, 5000), Err(CfError::Divergent { .. })));
        assert!(matches!(estimate_limit(&s, 5, 10), Err(CfError::Precision(5))));
    }

    #[test]
    fn richardson_removes_polynomial_terms() {
        // x(m) = 2 + 1/m - 3/m^2 + 1/m^3
        let ms: Vec<usize> = (1..=8).map(|i| 4 * i).collect();
        let xs: Vec<BigFloat> = ms
            .iter()
            .map(|&m| {
                let m = m as i64;
                BigFloat::from_rational(
                    &(crate::bignum::rational::int(2)
                        + crate::bignum::rational::rat(1, m)
                        + crate::bignum::rational::rat(-3, m * m)
                        + crate::bignum::rational::rat(1, m * m * m)),
                    40,
                )
            })
            .collect();
        let (v, _) = richardson(&ms, &xs);
        assert!(digits(&v, &BigFloat::from_i64(2, 40)) > 38.0);
    }
}
