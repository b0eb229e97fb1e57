//! `[(n-1)^k + n^k : -n^{2k}] = 1/ζ(k)`, with `p(n) = (n+1)!^k` and
//! `q(n) = (n+1)!^k H_{n+1}^{(k)}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::closed_form::{Basis, ClosedFormValue, Term};
use super::FamilyError;
use crate::bignum::{factorial, Integer, Rational};
use crate::cf::{CFSpec, Poly, PolySeq};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Family3Params {
    pub k: u32,
}

impl Family3Params {
    pub fn new(k: u32) -> Result<Self, FamilyError> {
        if k < 2 {
            return Err(FamilyError::InvalidParams(format!(
                "family 3 needs k >= 2, got k = {k}"
            )));
        }
        Ok(Family3Params { k })
    }

    /// `[(n-1)^k + n^k : -n^{2k}]`; degrees above the sequence limit are
    /// accepted here since the family is defined for every `k`.
    pub fn spec(&self) -> CFSpec {
        let n = Poly::var();
        let a = n.shift(-1).pow(self.k).add(&n.pow(self.k));
        let b = n.pow(2 * self.k).neg();
        CFSpec::new(
            PolySeq::reduced(a, None).expect("polynomial"),
            PolySeq::reduced(b, None).expect("polynomial"),
        )
    }
}

pub fn family3_limit(p: &Family3Params, precision: u32) -> ClosedFormValue {
    ClosedFormValue::from_terms(
        vec![Term::rational(Rational::one())],
        vec![Term::new(
            Rational::one(),
            Basis::Zeta,
            Rational::from_integer(BigInt::from(p.k)),
        )],
        precision,
    )
}

/// `(p(n), q(n))` from the factorial / generalized harmonic number form.
pub fn family3_pq_closed(k: u32, n: u64) -> Result<(Integer, Rational), FamilyError> {
    if k < 2 {
        return Err(FamilyError::InvalidParams(format!(
            "family 3 needs k >= 2, got k = {k}"
        )));
    }
    let p = num_traits::pow(factorial(n + 1), k as usize);
    let mut h = Rational::zero();
    for j in 1..=n + 1 {
        h += Rational::new(BigInt::one(), num_traits::pow(BigInt::from(j), k as usize));
    }
    let q = Rational::from_integer(p.clone()) * h;
    Ok((p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::rational::int;
    use crate::cf::pq_convergents;

    #[test]
    fn closed_pq_small() {
        assert_eq!(family3_pq_closed(3, 0).unwrap(), (BigInt::from(1), int(1)));
        assert_eq!(family3_pq_closed(3, 1).unwrap(), (BigInt::from(8), int(9)));
        assert_eq!(family3_pq_closed(3, 2).unwrap(), (BigInt::from(216), int(251)));
        assert!(family3_pq_closed(1, 2).is_err());
    }

    #[test]
    fn closed_matches_recurrence() {
        for k in 2..=4 {
            let spec = Family3Params::new(k).unwrap().spec();
            let pq = pq_convergents(&spec, 20).unwrap();
            for (n, c) in pq.iter().enumerate() {
                let (p, q) = family3_pq_closed(k, n as u64).unwrap();
                assert_eq!(c.p, Rational::from_integer(p));
                assert_eq!(c.q, q);
            }
        }
    }

    #[test]
    fn spec_shape() {
        let s = Family3Params::new(3).unwrap().spec();
        assert_eq!(s.to_string(), "[2*n^3 - 3*n^2 + 3*n - 1 : -n^6]");
        assert!(Family3Params::new(1).is_err());
    }
}
