//! The pair `[a(n) : b(n)]` and its JSON form.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::polyseq::PolySeq;
use super::CfError;
use crate::bignum::rational::{format_rational, parse_rational};
use crate::bignum::Rational;

/// The continued fraction `a(1) + b(1)/(a(2) + b(2)/(a(3) + ...))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CFSpec {
    pub a: PolySeq,
    pub b: PolySeq,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    a: Vec<String>,
    b: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a_den: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b_den: Option<Vec<String>>,
}

fn to_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

fn from_strings(v: &[String]) -> Result<Poly, CfError> {
    let c: Result<Vec<Rational>, _> = v.iter().map(|s| parse_rational(s)).collect();
    Ok(Poly::new(c.map_err(|e| CfError::Json(e.to_string()))?))
}

impl CFSpec {
    pub fn new(a: PolySeq, b: PolySeq) -> Self {
        CFSpec { a, b }
    }

    /// Polynomial spec from integer coefficients in ascending degree.
    pub fn from_i64s(a: &[i64], b: &[i64]) -> Self {
        CFSpec {
            a: PolySeq::from_i64s(a),
            b: PolySeq::from_i64s(b),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = SpecJson {
            a: to_strings(self.a.numerator()),
            b: to_strings(self.b.numerator()),
            a_den: self.a.denominator().map(to_strings),
            b_den: self.b.denominator().map(to_strings),
        };
        serde_json::to_value(j).expect("spec serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, CfError> {
        let j: SpecJson = serde_json::from_value(v.clone()).map_err(|e| CfError::Json(e.to_string()))?;
        let seq = |num: &[String], den: &Option<Vec<String>>| -> Result<PolySeq, CfError> {
            let d = den.as_deref().map(from_strings).transpose()?;
            PolySeq::new(from_strings(num)?, d)
        };
        Ok(CFSpec {
            a: seq(&j.a, &j.a_den)?,
            b: seq(&j.b, &j.b_den)?,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self, CfError> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| CfError::Json(e.to_string()))?;
        Self::from_json(&v)
    }
}

impl fmt::Display for CFSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {}]", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bignum::rational::rat;

    #[test]
    fn json_round_trip() {
        let s = CFSpec::from_i64s(&[0, 3], &[0, 1, -2]);
        let v = s.to_json();
        assert_eq!(v.to_string(), r#"{"a":["0/1","3/1"],"b":["0/1","1/1","-2/1"]}"#);
        assert_eq!(CFSpec::from_json(&v).unwrap(), s);
    }

    #[test]
    fn json_with_denominators() {
        let text = r#"{"a":["3/1","1/1"],"b":["0/1","-1/1"],"b_den":["1/1","1/1"]}"#;
        let s = CFSpec::from_json_str(text).unwrap();
        assert_eq!(s.b.eval(1), Some(rat(-1, 2)));
        assert_eq!(CFSpec::from_json(&s.to_json()).unwrap(), s);
        assert!(CFSpec::from_json_str(r#"{"a":["x"],"b":["1"]}"#).is_err());
        assert!(CFSpec::from_json_str(r#"{"a":["1"]}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(CFSpec::from_i64s(&[3, 1], &[0, -1]).to_string(), "[n + 3 : -n]");
    }
}
