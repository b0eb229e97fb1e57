//! Finite continued fractions and the numerator/denominator recurrences.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::spec::CFSpec;
use super::CfError;
use crate::bignum::Rational;

/// Exact `(p(m), q(m))`. `p(m)/q(m)` is the convergent of depth `m + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentPair {
    pub index: usize,
    pub p: Rational,
    pub q: Rational,
}

impl ConvergentPair {
    /// Number of partial denominators used, `index + 1`.
    pub fn depth(&self) -> usize {
        self.index + 1
    }

    /// `p/q`, or `None` when `q` vanishes.
    pub fn value(&self) -> Option<Rational> {
        if self.q.is_zero() {
            None
        } else {
            Some(&self.p / &self.q)
        }
    }
}

/// Value of `a_1 + b_1/(a_2 + b_2/(... + b_{K-1}/a_K))`; the last `b` is unused.
///
/// Evaluated from the bottom. When the tail starting at position `j` (1-based)
/// is zero the error carries `depth = j`.
pub fn eval_finite(pairs: &[(Rational, Rational)]) -> Result<Rational, CfError> {
    let (last, rest) = pairs.split_last().ok_or(CfError::EmptyInput)?;
    let mut v = last.0.clone();
    for (i, (a, b)) in rest.iter().enumerate().rev() {
        if v.is_zero() {
            return Err(CfError::ZeroTailDenominator { depth: i + 2 });
        }
        v = a + b / v;
    }
    Ok(v)
}

/// `[(a(1), b(1)), ..., (a(K), b(K))]`.
pub fn instantiate(spec: &CFSpec, k: usize) -> Result<Vec<(Rational, Rational)>, CfError> {
    if k == 0 {
        return Err(CfError::EmptyInput);
    }
    (1..=k as i64)
        .map(|n| {
            let a = spec.a.eval(n).ok_or(CfError::Pole { n })?;
            let b = spec.b.eval(n).ok_or(CfError::Pole { n })?;
            Ok((a, b))
        })
        .collect()
}

/// `(p(m), q(m))` for `m = 0..=M`.
pub fn pq_convergents(spec: &CFSpec, m: usize) -> Result<Vec<ConvergentPair>, CfError> {
    let (ia, ib) = (spec.a.int_eval(), spec.b.int_eval());
    if ia.is_integral() && ib.is_integral() {
        let get = |s: &super::polyseq::IntSeq, n: i64| s.eval(n).unwrap().0;
        let pairs = pq_integers(m, |n| get(&ia, n), |n| get(&ib, n));
        return Ok(pairs
            .into_iter()
            .enumerate()
            .map(|(i, (p, q))| ConvergentPair {
                index: i,
                p: Rational::from_integer(p),
                q: Rational::from_integer(q),
            })
            .collect());
    }
    let a = |n: i64| spec.a.eval(n).ok_or(CfError::Pole { n });
    let b = |n: i64| spec.b.eval(n).ok_or(CfError::Pole { n });
    let mut out = Vec::with_capacity(m + 1);
    let a1 = a(1)?;
    out.push(ConvergentPair {
        index: 0,
        p: a1.clone(),
        q: Rational::one(),
    });
    if m >= 1 {
        let a2 = a(2)?;
        out.push(ConvergentPair {
            index: 1,
            p: &a1 * &a2 + b(1)?,
            q: a2,
        });
    }
    for idx in 2..=m {
        let n = idx as i64 - 2;
        let (an, bn) = (a(n + 3)?, b(n + 2)?);
        let p = &an * &out[idx - 1].p + &bn * &out[idx - 2].p;
        let q = &an * &out[idx - 1].q + &bn * &out[idx - 2].q;
        out.push(ConvergentPair { index: idx, p, q });
    }
    Ok(out)
}

/// The same recurrences over the integers.
pub(crate) fn pq_integers(m: usize, a: impl Fn(i64) -> BigInt, b: impl Fn(i64) -> BigInt) -> Vec<(BigInt, BigInt)> {
    let mut out: Vec<(BigInt, BigInt)> = Vec::with_capacity(m + 1);
    let a1 = a(1);
    out.push((a1.clone(), BigInt::one()));
    if m >= 1 {
        let a2 = a(2);
        out.push((&a1 * &a2 + b(1), a2));
    }
    for idx in 2..=m {
        let n = idx as i64 - 2;
        let (an, bn) = (a(n + 3), b(n + 2));
        let p = &an * &out[idx - 1].0 + &bn * &out[idx - 2].0;
        let q = &an * &out[idx - 1].1 + &bn * &out[idx - 2].1;
        out.push((p, q));
    }
    out
}

/// Checks `p(n)q(n+1) - p(n+1)q(n) = (-1)^{n+1} b(1)...b(n+1)` for `n < n_max`.
pub fn determinant_identity(spec: &CFSpec, n_max: usize) -> Result<bool, CfError> {
    let pq = pq_convergents(spec, n_max)?;
    let mut prod = Rational::one();
    for n in 0..n_max {
        prod = -prod * spec.b.eval(n as i64 + 1).ok_or(CfError::Pole { n: n as i64 + 1 })?;
        let (c0, c1) = (&pq[n], &pq[n + 1]);
        if &c0.p * &c1.q - &c1.p * &c0.q != prod {
            return Ok(false);
        }
    }
    Ok(true)
}
