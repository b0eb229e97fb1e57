//! Named constants and the table of their Möbius images.

use num_integer::Integer as _;

use crate::bignum::{eval_exp, eval_pi, eval_zeta, golden_ratio, sqrt2, BigFloat, Rational};

pub const KNOWN_CONSTANTS: [&str; 5] = ["e", "pi", "zeta3", "sqrt2", "phi"];

pub fn constant_value(name: &str, precision: u32) -> Option<BigFloat> {
    Some(match name {
        "e" => eval_exp(&Rational::from_integer(1.into()), precision),
        "pi" => eval_pi(precision),
        "zeta3" => eval_zeta(3, precision).expect("zeta(3)"),
        "sqrt2" => sqrt2(precision),
        "phi" => golden_ratio(precision),
        _ => return None,
    })
}

/// `(p1 + p2 C) / (p3 + p4 C)`, or `p1 / p3` when `constant` is `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub value: f64,
    pub constant: Option<usize>,
    pub coeffs: [i64; 4],
}

/// Whether `p` is the representative of its class under scaling: coprime
/// entries and a positive leading coefficient of `p3 + p4 C` in `C`.
pub fn is_canonical(p: &[i64; 4]) -> bool {
    let lead = if p[3] != 0 { p[3] } else { p[2] };
    lead > 0 && p.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
}

/// Every canonical tuple with entries in `[-bound, bound]` for each constant,
/// sorted by value.
pub struct ConstantTable {
    pub names: Vec<String>,
    pub values: Vec<BigFloat>,
    pub bound: i64,
    entries: Vec<Entry>,
}

impl ConstantTable {
    pub fn new(names: &[String], bound: i64, precision: u32) -> Option<Self> {
        let values = names
            .iter()
            .map(|n| constant_value(n, precision))
            .collect::<Option<Vec<_>>>()?;
        let mut entries = Vec::new();
        let r = -bound..=bound;
        for p1 in r.clone() {
            for p3 in 1..=bound {
                let c = [p1, 0, p3, 0];
                if is_canonical(&c) {
                    entries.push(Entry {
                        value: p1 as f64 / p3 as f64,
                        constant: None,
                        coeffs: c,
                    });
                }
            }
        }
        for (ci, v) in values.iter().enumerate() {
            let cf = v.to_f64();
            for p1 in r.clone() {
                for p2 in r.clone() {
                    for p3 in r.clone() {
                        for p4 in r.clone() {
                            let c = [p1, p2, p3, p4];
                            if p1 * p4 == p2 * p3 || !is_canonical(&c) {
                                continue;
                            }
                            let value = (p1 as f64 + p2 as f64 * cf) / (p3 as f64 + p4 as f64 * cf);
                            entries.push(Entry {
                                value,
                                constant: Some(ci),
                                coeffs: c,
                            });
                        }
                    }
                }
            }
        }
        entries.sort_by(|x, y| x.value.total_cmp(&y.value));
        Some(ConstantTable {
            names: names.to_vec(),
            values,
            bound,
            entries,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries with `|value - x| <= tol`.
    pub fn near(&self, x: f64, tol: f64) -> &[Entry] {
        let lo = self.entries.partition_point(|e| e.value < x - tol);
        let hi = self.entries.partition_point(|e| e.value <= x + tol);
        &self.entries[lo..hi.max(lo)]
    }

    /// `(p1 + p2 C) / (p3 + p4 C)` at `precision`.
    pub fn eval(&self, e: &Entry, precision: u32) -> BigFloat {
        let i = |k: i64| BigFloat::from_i64(k, precision);
        let [p1, p2, p3, p4] = e.coeffs;
        match e.constant {
            None => &i(p1) / &i(p3),
            Some(ci) => {
                let c = self.values[ci].with_precision(precision);
                &(&i(p1) + &c.mul_i64(p2)) / &(&i(p3) + &c.mul_i64(p4))
            }
        }
    }

    pub fn name(&self, e: &Entry) -> &str {
        e.constant.map_or("rational", |ci| self.names[ci].as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        assert!(is_canonical(&[4, 0, -8, 3]));
        assert!(!is_canonical(&[-4, 0, 8, -3]));
        assert!(is_canonical(&[0, 1, -2, 1]));
        assert!(!is_canonical(&[0, -1, 2, -1]));
        assert!(!is_canonical(&[2, 0, 4, 0]));
        assert!(is_canonical(&[1, 0, 0, 1]));
    }

    #[test]
    fn table_lookup() {
        let t = ConstantTable::new(&["pi".to_string()], 8, 30).unwrap();
        let x = 4.0 / (3.0 * std::f64::consts::PI - 8.0);
        let hits = t.near(x, 1e-12);
        assert!(hits.iter().any(|e| e.coeffs == [4, 0, -8, 3]));
        assert!(t
            .near(0.5, 0.0)
            .iter()
            .any(|e| e.constant.is_none() && e.coeffs == [1, 0, 2, 0]));
        assert!(ConstantTable::new(&["tau".to_string()], 2, 30).is_none());
    }
}
