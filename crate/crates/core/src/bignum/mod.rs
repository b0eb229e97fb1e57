//! Exact rational arithmetic and arbitrary-precision evaluation of the
//! constants and special functions the continued fraction families need.

pub mod bigfloat;
pub mod constants;
pub mod rational;
pub mod special;

pub use bigfloat::{BigFloat, GUARD_DIGITS, MIN_PRECISION};
pub use constants::{eval_exp, eval_pi, eval_sinh_cosh, exp, golden_ratio, sqrt2};
pub use rational::{format_rational, parse_rational, Integer, Rational};
pub use special::{
    derangement, eval_zeta, exp_partial_sum, factorial, hurwitz_zeta, incomplete_gamma_int, polygamma_series,
};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BignumError {
    #[error("cannot parse number: {0:?}")]
    Parse(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("argument out of domain: {0}")]
    Domain(String),
}
