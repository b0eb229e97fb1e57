//! Exact and arbitrary-precision engine for general continued fractions
//! `[a(n) : b(n)] = a(1) + b(1)/(a(2) + b(2)/(a(3) + ...))`.
//!
//! * [`bignum`]: exact fractions, [`BigFloat`], constants and special functions.
//! * [`cf`]: polynomial term sequences, convergents, limit estimation and
//!   equivalence transformations.
//! * [`families`]: closed forms of three infinite families and the checks
//!   tying them to their convergents.
//! * [`scanner`]: enumeration of small specs and constant recognition.
//! * [`report`]: markdown verification reports.

pub mod bignum;
pub mod cf;
pub mod families;
pub mod report;
pub mod scanner;

pub use bignum::{BigFloat, Integer, Rational};
pub use cf::{CFSpec, PolySeq};
