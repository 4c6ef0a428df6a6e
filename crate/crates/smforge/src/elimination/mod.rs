// SPDX-License-Identifier: Apache-2.0
//! Elimination of linear and multiplicative relations between singular
//! moduli, producing one report per case or discriminant pair.

mod cf;
mod linear;
mod matveev;
mod mult;
mod report;
mod system;
mod uniform;

pub use cf::{cf_reject, common_convergents, CfOutcome, CfProblem, CfVerdict};
pub use linear::{
    distinct_fields_linear, distinct_fields_reports, linear_small_reports, r_census,
    shared_field_pairs, small_disc_linear, small_linear_discriminants, SHARED_REAL_FIELDS,
    SMALL_DISC_LIMIT,
};
pub use matveev::{
    bound_n, distinct_fields_coefficient, linear_small_coefficient, matveev_exponent_coefficient,
    matveev_integer_coefficient, matveev_lower, MatveevParams, NBound, DISTINCT_FIELDS_PRINTED,
};
pub use mult::{
    independence_pairs, independence_reports, mult_negative_band, mult_negative_reports,
    mult_negative_uniform, mult_positive_reports, mult_positive_residual, mult_positive_thresholds,
    power_product_report, threshold_scan, Branch, ThresholdScan, PRINTED_DIVISOR,
    PRINTED_THRESHOLDS, SMALL_CLASS_NUMBER_BOUND, SOUND_DIVISOR, THRESHOLD_SCAN_MAX,
};
pub use report::{show, Assertion, Case, EliminationReport, Outcome, REPORT_VERSION};
pub use system::{
    all_intervals, conjugate_system, pair_frame, ratio_interval, ratio_interval_from_moduli,
    system_from_frame, table_system, ConjugatePair, ConjugateSystem, RatioInterval, SystemKind,
    TABLE_A, TABLE_A_PRIME,
};
pub use uniform::{
    big_disc_linear, printed_linear_bounds, printed_negative_bounds, shorthand_linear_bounds,
    uniform_linear_intervals, uniform_negative_ratios, UniformInterval, LINEAR_ROOT_MIN,
    MULT_NEGATIVE_ROOT_MIN, MULT_NEGATIVE_TABLE_ROOT,
};

use crate::forms::FormsError;
use crate::modular::ModularError;
use crate::numberfield::FieldError;
use crate::y0::Y0Error;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EliminationError {
    /// The inputs are outside the range the argument covers.
    #[error("precondition: {0}")]
    Precondition(String),
    /// The certificate could not be completed at the available precision.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Y0(#[from] Y0Error),
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Forms(#[from] FormsError),
}

/// Smallest `|Δ′|` with `Δ′ ≡ 1 mod 8`, `h(Δ′) = h(4Δ′) ≥ 3` and
/// `|Δ′| ≥ 1024`, used to label the family report of the uniform argument.
pub fn first_big_discriminant() -> i64 {
    (1024..)
        .map(|n: i64| -n)
        .find(|&v| {
            v.rem_euclid(8) == 1
                && crate::forms::Discriminant::new(v).is_ok_and(|d| {
                    let h = d.class_number();
                    h >= 3
                        && crate::forms::Discriminant::new(4 * v)
                            .is_ok_and(|b| b.class_number() == h)
                })
        })
        .expect("infinitely many")
}

/// Linear-equation reports: the uniform argument, every small `Δ′` with
/// `min ≤ |Δ′| ≤ max`, and the distinct-field pairs.
pub fn eliminate_linear(
    min: i64,
    max: i64,
    prec: u32,
) -> Vec<Result<EliminationReport, EliminationError>> {
    let mut out = Vec::new();
    if max >= SMALL_DISC_LIMIT {
        let first = first_big_discriminant();
        out.push(big_disc_linear(first).map(|mut r| {
            r.constant("applies_to", "Δ = 4Δ′, Δ′ ≡ 1 mod 8, |Δ′| ≥ 1024");
            r
        }));
    }
    if min < SMALL_DISC_LIMIT {
        out.extend(linear_small_reports(
            min,
            max.min(SMALL_DISC_LIMIT - 1),
            prec,
        ));
        out.extend(distinct_fields_reports(prec));
    }
    out
}

/// Multiplicative-relation reports for both signs of `mn` and the
/// independence checks.
pub fn eliminate_mult(prec: u32) -> Vec<Result<EliminationReport, EliminationError>> {
    let mut out = mult_negative_reports(prec);
    out.extend(mult_positive_reports(prec));
    out.extend(independence_reports());
    out
}

/// Tally of a batch of reports.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub eliminated: usize,
    pub survivors: Vec<[i64; 2]>,
    pub inconclusive: Vec<[i64; 2]>,
    pub errors: Vec<String>,
}

impl Summary {
    pub fn of(reports: &[Result<EliminationReport, EliminationError>]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            match r {
                Ok(rep) => match rep.outcome {
                    Outcome::Eliminated => s.eliminated += 1,
                    Outcome::Survivor => s.survivors.push(rep.discs),
                    Outcome::Inconclusive => s.inconclusive.push(rep.discs),
                },
                Err(e) => s.errors.push(e.to_string()),
            }
        }
        s
    }

    /// Nothing inconclusive and no errors.
    pub fn complete(&self) -> bool {
        self.inconclusive.is_empty() && self.errors.is_empty()
    }
}
