//! Continued fractions `[a(n) : b(n)]`: exact convergents, numerical limits
//! and equivalence transformations.

pub mod convergents;
pub mod limit;
pub mod parse;
pub mod poly;
pub mod polyseq;
pub mod spec;
pub mod transform;

pub use convergents::{determinant_identity, eval_finite, instantiate, pq_convergents, ConvergentPair};
pub use limit::{
    agreement_digits, convergent_values, estimate_limit, estimate_limit_with, richardson, ConvergenceClass,
    FloatConvergents, LimitEstimate, LimitOptions,
};
pub use parse::parse_polyseq;
pub use poly::Poly;
pub use polyseq::{PolySeq, MAX_DEGREE};
pub use spec::CFSpec;
pub use transform::{euler_value, euler_value_with, scale_equivalence, to_euler_form};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CfError {
    #[error("empty continued fraction")]
    EmptyInput,
    #[error("zero tail denominator at depth {depth}")]
    ZeroTailDenominator { depth: usize },
    #[error("sequence denominator vanishes at n = {n}")]
    Pole { n: i64 },
    #[error("degree {degree} exceeds the maximum of {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("zero denominator polynomial")]
    ZeroDenominatorPoly,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid scaling sequence: {0}")]
    InvalidScale(String),
    #[error("convergents diverge ({terms_used} terms examined)")]
    Divergent { terms_used: usize },
    #[error("convergents undefined: {gaps} zero denominators within {terms_used} terms")]
    Undefined { gaps: usize, terms_used: usize },
    #[error("precision {0} is below the minimum of 10 digits")]
    Precision(u32),
    #[error("invalid spec: {0}")]
    Json(String),
}
