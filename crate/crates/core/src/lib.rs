//! Contracted gauge algebra SU(2;j)×U(1) and the bosonic electroweak
//! Lagrangian over the j-graded coefficient ring.
//!
//! The crate is organised around the contraction parameter j, which can be
//! kept formal (a truncated power series), set to 1 (the standard theory),
//! set to the nilpotent unit ι with ι² = 0, or sent to 0:
//!
//! * [`jalg`] — scalar arithmetic in all four rings and the Taylor rule for
//!   analytic functions of nilpotent arguments;
//! * [`su2j`] — generators, commutators, one-parameter subgroups, the
//!   exponential map, the graded doublet with its two hermitian forms, and
//!   the U(1) / electromagnetic U(1) actions;
//! * [`ewlag`] — symbolic construction of the bosonic electroweak
//!   Lagrangian, its quadratic part, the mass spectrum, the contraction
//!   substitutions and the base/fiber split of the field space;
//! * [`verify`] — the named check suites the `contracto` CLI exposes.
//!
//! Randomised identity checks (the 1000-draw closed-form comparison, the
//! polynomial-identity oracle) run their trials through [`oracle`], which is
//! data-parallel when the `parallel` feature (default) is enabled and falls
//! back to a sequential loop otherwise; results are identical either way.

pub mod coeff;
pub mod ewlag;
pub mod jalg;
pub mod oracle;
pub mod su2j;
pub mod verify;

pub use coeff::{Coeff, Real};
pub use jalg::{AnalyticFn, EvalMode, JScalar, Ring, DEFAULT_TRUNC};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Error, Debug)]
pub enum Error {
    #[error("truncation order mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("scalar has no inverse: constant term vanishes")]
    NotInvertible,
    #[error("grading violation: {0}")]
    GradingViolation(String),
    #[error("generator index out of range: {0} (expected 1..=3)")]
    IndexOutOfRange(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
