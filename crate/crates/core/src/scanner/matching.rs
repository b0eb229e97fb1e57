//! Recognition of a numerical limit as a Möbius image of a known constant.

use serde_json::json;

use super::library::{ConstantTable, Entry};
use super::{ScanConfig, MIN_TRUSTED_DIGITS, RESIDUAL_SLACK};
use crate::bignum::BigFloat;
use crate::cf::CFSpec;

/// Relative half-width of the double-precision window searched in the table.
const F64_WINDOW: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct MatchResult {
    pub spec: Option<CFSpec>,
    pub constant_name: String,
    pub coefficients: [i64; 4],
    pub residual: BigFloat,
    pub limit_digits: u32,
}

impl MatchResult {
    pub fn height(&self) -> i64 {
        self.coefficients.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// `floor(log10(residual))`, or `-limit_digits` for an exact zero.
    pub fn residual_exp(&self) -> i64 {
        if self.residual.is_zero() {
            -(self.limit_digits as i64)
        } else {
            self.residual.log10_abs().floor() as i64
        }
    }

    pub fn describe(&self) -> String {
        let [p1, p2, p3, p4] = self.coefficients;
        if self.constant_name == "rational" {
            format!("{p1}/{p3}")
        } else {
            let c = &self.constant_name;
            format!("({p1} + {p2}*{c})/({p3} + {p4}*{c})")
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "constant": self.constant_name,
            "mobius": self.coefficients,
            "expr": self.describe(),
            "residual_exp": self.residual_exp(),
            "limit_digits": self.limit_digits,
        })
    }
}

/// Matches against library constants, and pure rationals `p1/p3` kept apart.
#[derive(Clone, Debug, Default)]
pub struct MatchSet {
    pub constant: Vec<MatchResult>,
    pub rational: Vec<MatchResult>,
}

impl MatchSet {
    pub fn is_empty(&self) -> bool {
        self.constant.is_empty() && self.rational.is_empty()
    }
}

/// Exhaustive search over `|p_i| <= moebius_bound` for every constant in the
/// library. `trusted_digits` below 25 yields no matches.
pub fn match_constant(x: &BigFloat, trusted_digits: u32, config: &ScanConfig) -> MatchSet {
    if trusted_digits < MIN_TRUSTED_DIGITS {
        return MatchSet::default();
    }
    match ConstantTable::new(&config.constants, config.moebius_bound, trusted_digits + 10) {
        Some(t) => match_with_table(x, trusted_digits, &t),
        None => MatchSet::default(),
    }
}

pub(crate) fn match_with_table(x: &BigFloat, trusted_digits: u32, table: &ConstantTable) -> MatchSet {
    let xf = x.to_f64();
    if trusted_digits < MIN_TRUSTED_DIGITS || !xf.is_finite() {
        return MatchSet::default();
    }
    let (mut consts, mut rats) = (Vec::new(), Vec::new());
    let scale = xf.abs().max(1.0);
    let wp = trusted_digits + 10;
    let limit = scale.log10() - (trusted_digits - RESIDUAL_SLACK) as f64;
    for e in table.near(xf, F64_WINDOW * scale) {
        let residual = (x.with_precision(wp) - table.eval(e, wp)).abs();
        if residual.is_zero() || residual.log10_abs() < limit {
            let m = MatchResult {
                spec: None,
                constant_name: table.name(e).to_string(),
                coefficients: e.coeffs,
                residual: residual.with_precision(10),
                limit_digits: trusted_digits,
            };
            if e.constant.is_none() { &mut rats } else { &mut consts }.push((sort_key(e), m));
        }
    }
    let ordered = |mut v: Vec<(SortKey, MatchResult)>| {
        v.sort_by_key(|a| a.0);
        v.into_iter().map(|(_, m)| m).collect()
    };
    MatchSet {
        constant: ordered(consts),
        rational: ordered(rats),
    }
}

type SortKey = (i64, usize, [i64; 4]);

fn sort_key(e: &Entry) -> SortKey {
    let h = e.coeffs.iter().map(|c| c.abs()).max().unwrap_or(0);
    (h, e.constant.map_or(0, |c| c + 1), e.coeffs)
}
