// SPDX-License-Identifier: Apache-2.0
//! The modular j-function at CM points: certified evaluation, the explicit
//! estimates relating `|j|` to `|q|⁻¹`, heights and Hilbert class polynomials.

mod cm;
mod estimates;
mod hcp;
mod jfunc;

pub use cm::{cm_point, conjugate_values, tau_of_form, CMPoint};
pub use estimates::{
    dominance_check, height_of, verify_estimates, DominanceReport, EstimateReport, HeightReport,
};
pub use hcp::{cache_dir, class_polynomial, class_polynomial_cached, ClassPolynomial, CACHE_ENV};
pub use jfunc::{eval_j, j_coefficient, partial_sums_f64, qj_coefficients, tail_bound};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModularError {
    #[error("Im τ = {0} is below the fundamental-domain bound √3/2")]
    OutsideDomain(f64),
    #[error("precision exhausted after reaching {0} bits")]
    PrecisionExhausted(u32),
    #[error("class polynomial for Δ = {0}: coefficient rounding stayed ambiguous")]
    AmbiguousRounding(i64),
    #[error("class polynomial for Δ = {disc} changed under precision doubling")]
    UnstablePolynomial { disc: i64 },
    #[error("estimate violated: {0}")]
    EstimateViolated(String),
    #[error("cache I/O: {0}")]
    Cache(String),
    #[error(transparent)]
    Forms(#[from] crate::forms::FormsError),
}
