//! Sequences given by a polynomial or a ratio of polynomials in `n`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{eval_int, Poly};
use super::CfError;
use crate::bignum::Rational;

/// Largest accepted degree for a numerator or denominator.
pub const MAX_DEGREE: usize = 8;

/// A sequence `n ↦ num(n) / den(n)`.
///
/// Stored in lowest terms with a monic denominator, which is dropped when it
/// reduces to `1`, so two sequences that agree as rational functions compare
/// equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolySeq {
    num: Poly,
    den: Option<Poly>,
}

impl PolySeq {
    /// Reduces `num/den` to lowest terms, then applies the degree limit.
    pub fn new(num: Poly, den: Option<Poly>) -> Result<Self, CfError> {
        let s = Self::reduced(num, den)?;
        for p in std::iter::once(&s.num).chain(s.den.iter()) {
            if let Some(d) = p.degree() {
                if d > MAX_DEGREE {
                    return Err(CfError::DegreeTooHigh {
                        degree: d,
                        max: MAX_DEGREE,
                    });
                }
            }
        }
        Ok(s)
    }

    /// Like [`PolySeq::new`] without the degree limit, for derived sequences.
    pub(crate) fn reduced(num: Poly, den: Option<Poly>) -> Result<Self, CfError> {
        let Some(den) = den else {
            return Ok(PolySeq { num, den: None });
        };
        if den.is_zero() {
            return Err(CfError::ZeroDenominatorPoly);
        }
        if num.is_zero() {
            return Ok(PolySeq { num, den: None });
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = (num.divrem(&g).0, den.divrem(&g).0);
        let lead = den.leading().unwrap().recip();
        num = num.scale(&lead);
        den = den.scale(&lead);
        if den.is_constant() {
            Ok(PolySeq { num, den: None })
        } else {
            Ok(PolySeq { num, den: Some(den) })
        }
    }

    pub fn polynomial(coeffs: Vec<Rational>) -> Result<Self, CfError> {
        Self::new(Poly::new(coeffs), None)
    }

    /// Integer-coefficient polynomial; panics above [`MAX_DEGREE`].
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(Poly::from_i64s(coeffs), None).expect("degree within limit")
    }

    pub fn constant(c: Rational) -> Self {
        PolySeq {
            num: Poly::constant(c),
            den: None,
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The sequence `n`.
    pub fn var() -> Self {
        PolySeq {
            num: Poly::var(),
            den: None,
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> Option<&Poly> {
        self.den.as_ref()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Value at `n`, or `None` where the denominator vanishes.
    pub fn eval(&self, n: i64) -> Option<Rational> {
        let v = self.num.eval_i64(n);
        match &self.den {
            None => Some(v),
            Some(d) => {
                let dv = d.eval_i64(n);
                if dv.is_zero() {
                    None
                } else {
                    Some(v / dv)
                }
            }
        }
    }

    /// `n ↦ self(n + k)`.
    pub fn shift(&self, k: i64) -> Self {
        PolySeq {
            num: self.num.shift(k),
            den: self.den.as_ref().map(|d| d.shift(k)),
        }
    }

    pub fn neg(&self) -> Self {
        PolySeq {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &PolySeq) -> Result<Self, CfError> {
        let den = match (&self.den, &other.den) {
            (None, None) => None,
            (Some(d), None) | (None, Some(d)) => Some(d.clone()),
            (Some(x), Some(y)) => Some(x.mul(y)),
        };
        Self::reduced(self.num.mul(&other.num), den)
    }

    pub fn add(&self, other: &PolySeq) -> Result<Self, CfError> {
        let one = Poly::one();
        let d1 = self.den.as_ref().unwrap_or(&one);
        let d2 = other.den.as_ref().unwrap_or(&one);
        let num = self.num.mul(d2).add(&other.num.mul(d1));
        let den = d1.mul(d2);
        Self::reduced(num, if den.is_constant() { None } else { Some(den) })
    }

    pub fn recip(&self) -> Result<Self, CfError> {
        if self.num.is_zero() {
            return Err(CfError::ZeroDenominatorPoly);
        }
        Self::reduced(self.den.clone().unwrap_or_else(Poly::one), Some(self.num.clone()))
    }

    pub(crate) fn int_eval(&self) -> IntSeq {
        let (num, nd) = self.num.to_integer_form();
        let den = self.den.as_ref().map(|d| d.to_integer_form());
        IntSeq { num, num_den: nd, den }
    }
}

/// Integer-only evaluator: `self(n) = top / bottom`.
pub(crate) struct IntSeq {
    num: Vec<BigInt>,
    num_den: BigInt,
    den: Option<(Vec<BigInt>, BigInt)>,
}

impl IntSeq {
    /// `(top, bottom)` with `bottom != 0`, or `None` at a pole.
    pub(crate) fn eval(&self, n: i64) -> Option<(BigInt, BigInt)> {
        let top = eval_int(&self.num, n);
        match &self.den {
            None => Some((top, self.num_den.clone())),
            Some((dc, dd)) => {
                let bottom = eval_int(dc, n);
                if bottom.is_zero() {
                    None
                } else {
                    Some((top * dd, bottom * &self.num_den))
                }
            }
        }
    }

    pub(crate) fn is_integral(&self) -> bool {
        self.den.is_none() && self.num_den.is_one()
    }
}

impl fmt::Display for PolySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.den {
            None => write!(f, "{}", self.num),
            Some(d) => write!(f, "({})/({})", self.num, d),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::rational::{int, rat};

    #[test]
    fn reduction_makes_equal_functions_equal() {
        // (n^2 - 1)/(2n + 2) = (n - 1)/2
        let a = PolySeq::new(Poly::from_i64s(&[-1, 0, 1]), Some(Poly::from_i64s(&[2, 2]))).unwrap();
        let b = PolySeq::polynomial(vec![rat(-1, 2), rat(1, 2)]).unwrap();
        assert_eq!(a, b);
        assert!(a.is_polynomial());
    }

    #[test]
    fn poles_are_reported() {
        let s = PolySeq::new(Poly::one(), Some(Poly::from_i64s(&[-3, 1]))).unwrap();
        assert_eq!(s.eval(3), None);
        assert_eq!(s.eval(4), Some(int(1)));
        let ie = s.int_eval();
        assert!(ie.eval(3).is_none());
        let (t, b) = ie.eval(5).unwrap();
        assert_eq!(Rational::new(t, b), rat(1, 2));
    }

    #[test]
    fn degree_limit() {
        let big = Poly::from_i64s(&[0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(
            PolySeq::new(big, None),
            Err(CfError::DegreeTooHigh { degree: 9, .. })
        ));
        assert!(matches!(
            PolySeq::new(Poly::one(), Some(Poly::zero())),
            Err(CfError::ZeroDenominatorPoly)
        ));
    }

    #[test]
    fn arithmetic() {
        let n = PolySeq::var();
        let inv = PolySeq::from_i64s(&[1, 1]).recip().unwrap();
        let prod = n.mul(&inv).unwrap();
        for k in 1..10 {
            assert_eq!(prod.eval(k), Some(rat(k, k + 1)));
        }
        let sum = prod.add(&inv).unwrap();
        assert_eq!(sum, PolySeq::one());
        assert_eq!(inv.to_string(), "(1)/(n + 1)");
    }
}
