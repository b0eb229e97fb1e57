//! Closed forms of three infinite families of polynomial continued fractions:
//!
//! * `[n + k : a n]`, a ratio involving `e^a` and a truncated exponential series;
//! * `[a n^2 + b n + 1 : -a n^2 - b n]`, through the series `F(a, b)`;
//! * `[(n-1)^k + n^k : -n^{2k}] = 1/ζ(k)`.

pub mod closed_form;
pub mod family1;
pub mod family2;
pub mod family3;
pub mod hypergeometric;

pub use closed_form::{Basis, ClosedFormValue, Term};
pub use family1::{family1_asymptotic_constants, family1_derangement_form, family1_limit, Family1Params};
pub use family2::{family2_f, family2_halfint_series, family2_limit, Family2Params};
pub use family3::{family3_limit, family3_pq_closed, Family3Params};
pub use hypergeometric::{
    kummer_m, kummer_m_derivs, kummer_residual, tricomi_u_special, tricomi_u_special_derivs, WithDerivatives,
};

use crate::bignum::BignumError;
use crate::cf::{CFSpec, CfError};

#[derive(Debug, thiserror::Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("series tail bound not met after {terms} terms (bound 1e{bound_log10:.1})")]
    TailBoundNotMet { terms: usize, bound_log10: f64 },
    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error(transparent)]
    Bignum(#[from] BignumError),
}

/// A member of one of the three families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Linear(Family1Params),
    Quadratic(Family2Params),
    Zeta(Family3Params),
}

impl Family {
    pub fn spec(&self) -> CFSpec {
        match self {
            Family::Linear(p) => p.spec(),
            Family::Quadratic(p) => p.spec(),
            Family::Zeta(p) => p.spec(),
        }
    }

    pub fn limit(&self, precision: u32) -> Result<ClosedFormValue, FamilyError> {
        match self {
            Family::Linear(p) => Ok(family1_limit(p, precision)),
            Family::Quadratic(p) => family2_limit(p, precision),
            Family::Zeta(p) => Ok(family3_limit(p, precision)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Family::Linear(p) => format!("family 1 (a = {}, k = {})", p.a, p.k),
            Family::Quadratic(p) => format!("family 2 (a = {}, b = {})", p.a, p.b),
            Family::Zeta(p) => format!("family 3 (k = {})", p.k),
        }
    }
}
