//! Search over small integer-coefficient continued fractions for limits of
//! the form `(p1 + p2 C) / (p3 + p4 C)` with `C` a known constant.

pub mod library;
pub mod matching;
pub mod prescreen;
pub mod run;

use serde::{Deserialize, Serialize};

use crate::bignum::MIN_PRECISION;
use crate::cf::{CFSpec, CfError};

pub use library::{constant_value, ConstantTable, KNOWN_CONSTANTS};
pub use matching::{match_constant, MatchResult, MatchSet};
pub use prescreen::{prescreen, Prescreen};
pub use run::{resume_path, scan, scan_resume, summary_path, ScanSummary};

/// Fewest trusted digits a limit needs before it is matched.
pub const MIN_TRUSTED_DIGITS: u32 = 25;
/// Digits between the trusted precision and the accepted residual.
pub const RESIDUAL_SLACK: u32 = 5;

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("invalid scan configuration: {0}")]
    Config(String),
    #[error("I/O error after candidate {last_completed:?}: {source}")]
    Io {
        last_completed: Option<usize>,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Cf(#[from] CfError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    pub max_degree: u32,
    pub coeff_bound: i64,
    pub precision: u32,
    /// Names from [`KNOWN_CONSTANTS`].
    pub constants: Vec<String>,
    pub moebius_bound: i64,
    pub max_terms: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            max_degree: 2,
            coeff_bound: 6,
            precision: 40,
            constants: KNOWN_CONSTANTS.iter().map(|s| s.to_string()).collect(),
            moebius_bound: 8,
            max_terms: 20_000,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), ScanError> {
        let bad = |m: String| Err(ScanError::Config(m));
        if self.max_degree > 2 {
            return bad(format!("max_degree must be at most 2, got {}", self.max_degree));
        }
        if self.coeff_bound < 1 {
            return bad(format!("coeff_bound must be positive, got {}", self.coeff_bound));
        }
        if self.precision < MIN_TRUSTED_DIGITS.max(MIN_PRECISION) {
            return bad(format!(
                "precision must be at least {MIN_TRUSTED_DIGITS}, got {}",
                self.precision
            ));
        }
        if self.moebius_bound < 1 {
            return bad(format!("moebius_bound must be at least 1, got {}", self.moebius_bound));
        }
        if self.max_terms < 64 {
            return bad(format!("max_terms must be at least 64, got {}", self.max_terms));
        }
        for c in &self.constants {
            if !KNOWN_CONSTANTS.contains(&c.as_str()) {
                return bad(format!("unknown constant {c:?}; known: {}", KNOWN_CONSTANTS.join(", ")));
            }
        }
        Ok(())
    }
}

/// Integer coefficients of `a(n)` and `b(n)`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub index: usize,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
}

impl Candidate {
    pub fn spec(&self) -> CFSpec {
        CFSpec::from_i64s(&self.a, &self.b)
    }

    pub fn eval_a(&self, n: i64) -> i64 {
        horner(&self.a, n)
    }

    pub fn eval_b(&self, n: i64) -> i64 {
        horner(&self.b, n)
    }
}

fn horner(c: &[i64], n: i64) -> i64 {
    c.iter().rev().fold(0, |acc, &x| acc * n + x)
}

fn trimmed(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn coefficient_vectors(degree: u32, bound: i64) -> Vec<Vec<i64>> {
    let len = degree as usize + 1;
    let mut out = Vec::new();
    let mut cur = vec![-bound; len];
    loop {
        out.push(cur.clone());
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < bound {
                cur[i] += 1;
                for c in &mut cur[i + 1..] {
                    *c = -bound;
                }
                break;
            }
        }
    }
}

/// All candidates in scan order: `a` in lexicographic coefficient order, then `b`.
///
/// `[-a : b] = -[a : b]`, so requiring `a(n) > 0` for `n = 1..5` also keeps one
/// of each such pair.
pub fn candidates(config: &ScanConfig) -> impl Iterator<Item = Candidate> {
    let vecs = coefficient_vectors(config.max_degree, config.coeff_bound);
    let a_list: Vec<Vec<i64>> = vecs
        .iter()
        .filter(|a| (1..=5).all(|n| horner(a, n) > 0))
        .map(|a| trimmed(a.clone()))
        .collect();
    let b_list: Vec<Vec<i64>> = vecs
        .into_iter()
        .filter(|b| b.iter().any(|&c| c != 0))
        .map(trimmed)
        .collect();
    let nb = b_list.len();
    (0..a_list.len() * nb).map(move |i| Candidate {
        index: i,
        a: a_list[i / nb].clone(),
        b: b_list[i % nb].clone(),
    })
}

pub fn enumerate_candidates(config: &ScanConfig) -> impl Iterator<Item = CFSpec> {
    candidates(config).map(|c| c.spec())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(d: u32, b: i64) -> ScanConfig {
        ScanConfig {
            max_degree: d,
            coeff_bound: b,
            ..ScanConfig::default()
        }
    }

    #[test]
    fn membership() {
        let has = |c: &ScanConfig, a: &[i64], b: &[i64]| candidates(c).any(|x| x.a == a && x.b == b);
        assert!(has(&cfg(1, 3), &[3, 1], &[0, -1]));
        assert!(has(&cfg(2, 6), &[0, 3], &[0, 1, -2]));
        assert!(!has(&cfg(1, 3), &[-1, 1], &[0, 1]));
    }

    #[test]
    fn indices_are_positions() {
        for (i, c) in candidates(&cfg(1, 2)).enumerate() {
            assert_eq!(c.index, i);
        }
    }

    #[test]
    fn config_validation() {
        assert!(ScanConfig::default().validate().is_ok());
        assert!(cfg(3, 1).validate().is_err());
        assert!(ScanConfig {
            precision: 20,
            ..ScanConfig::default()
        }
        .validate()
        .is_err());
        assert!(ScanConfig {
            moebius_bound: 0,
            ..ScanConfig::default()
        }
        .validate()
        .is_err());
        assert!(ScanConfig {
            constants: vec!["tau".into()],
            ..ScanConfig::default()
        }
        .validate()
        .is_err());
        let j = serde_json::to_string(&ScanConfig::default()).unwrap();
        assert_eq!(serde_json::from_str::<ScanConfig>(&j).unwrap(), ScanConfig::default());
        let partial: ScanConfig = serde_json::from_str(r#"{"coeff_bound": 2}"#).unwrap();
        assert_eq!(partial.coeff_bound, 2);
    }
}
