// SPDX-License-Identifier: Apache-2.0
//! The explicit estimates on `|j|`, the dominance of the `a = 1` conjugate,
//! and heights of singular moduli, each certified by ball comparisons.

use super::{cm_point, conjugate_values, CMPoint, ModularError};
use crate::arith::{funcs, precision_schedule, CertifiedReal, Dyadic, Mag, MAX_PRECISION};
use crate::forms::{Discriminant, ReducedForm};
use serde::Serialize;

/// Certified margins for the three estimates at one CM point. A margin is
/// the bound minus the estimated quantity (a lower bound for it, rounded to
/// f64 for display); only positive margins are ever reported.
#[derive(Clone, Debug, Serialize)]
pub struct EstimateReport {
    pub disc: i64,
    pub form: ReducedForm,
    pub im_tau: f64,
    /// `2079 − | |j| − |q|⁻¹ |`.
    pub margin_2079: f64,
    /// `2883|q| − |v(q)|` when `Im τ ≥ log 4158 / 2π`, otherwise skipped.
    pub margin_v: Option<f64>,
    /// `1/2 − |v(q)|` when `Im τ ≥ log 5766 / 2π`, otherwise skipped.
    pub margin_half: Option<f64>,
    /// `9 Im τ − log|j|`.
    pub margin_log: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DominanceReport {
    pub disc: i64,
    pub class_number: usize,
    /// Certified upper bound for `max |x| / |x₀|` over non-dominant conjugates
    /// (0 when `h = 1`).
    pub max_ratio_upper: f64,
    pub holds: bool,
    pub inconclusive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeightReport {
    pub disc: i64,
    pub class_number: usize,
    pub height_lower: f64,
    pub height_upper: f64,
    /// `9 √|Δ| / 2`.
    pub bound: f64,
    pub bound_holds: bool,
}

fn real_of_mag(m: &Mag, prec: u32) -> CertifiedReal {
    CertifiedReal::exact(Dyadic::from_mag(m), prec)
}

fn lower_f64(x: &CertifiedReal) -> f64 {
    x.lower().to_f64()
}

fn violated(what: &str, p: &CMPoint) -> ModularError {
    ModularError::EstimateViolated(format!("{what} at Δ = {}, form {}", p.disc, p.form))
}

/// Outcome of one attempt at a fixed precision.
enum Check<T> {
    Holds(T),
    Undecided,
}

/// Require `margin > 0`; a certainly negative margin is a violation, an
/// overlapping one asks for more precision.
fn positive(m: &CertifiedReal, what: &str, p: &CMPoint) -> Result<Check<f64>, ModularError> {
    if m.is_positive() {
        Ok(Check::Holds(lower_f64(m)))
    } else if m.is_negative() {
        Err(violated(what, p))
    } else {
        Ok(Check::Undecided)
    }
}

macro_rules! need {
    ($e:expr) => {
        match $e? {
            Check::Holds(v) => v,
            Check::Undecided => return Ok(Check::Undecided),
        }
    };
}

/// Check the three estimates at `point`, recomputing `j` at higher precision
/// while a margin is not yet separated from zero. A certainly violated
/// estimate is reported as an error: with correct numerics it cannot happen.
pub fn verify_estimates(point: &CMPoint) -> Result<EstimateReport, ModularError> {
    let mut current = point.clone();
    for p in precision_schedule(point.j_value.prec()) {
        if p > current.j_value.prec() {
            current = cm_point(point.disc, point.form, p)?;
        }
        if let Check::Holds(r) = check_at(&current)? {
            return Ok(r);
        }
    }
    Err(ModularError::PrecisionExhausted(MAX_PRECISION))
}

fn check_at(point: &CMPoint) -> Result<Check<EstimateReport>, ModularError> {
    let prec = point.j_value.prec().max(128);
    let im = point.tau.im().with_prec(prec);
    let two_pi_im = funcs::pi(prec).mul_2exp(1).mul(&im);
    let qinv = funcs::exp(&two_pi_im);
    let absj = point.j_value.abs().with_prec(prec);

    let m1 = CertifiedReal::from_int(2079, prec).sub(&absj.sub(&qinv).abs());
    let margin_2079 = need!(positive(&m1, "||j| - |q|^-1| <= 2079", point));

    // v(q) = log|j| − 2π Im τ; only defined away from the zeros of j, which
    // sit at the corners where Im τ < 1.326 anyway.
    let v = if qinv.certainly_gt(&CertifiedReal::from_int(4158, prec)) {
        let lj = funcs::log(&absj).ok_or_else(|| violated("log|j| undefined", point))?;
        Some(lj.sub(&two_pi_im).abs())
    } else {
        None
    };
    let margin_v = match &v {
        Some(v) => {
            let q = qinv.inv().ok_or_else(|| violated("|q| undefined", point))?;
            let m = q.mul_int(2883).sub(v);
            Some(need!(positive(&m, "|v(q)| <= 2883|q|", point)))
        }
        None => None,
    };
    let margin_half = match &v {
        Some(v) if qinv.certainly_gt(&CertifiedReal::from_int(5766, prec)) => {
            let m = CertifiedReal::ratio(1, 2, prec).sub(v);
            Some(need!(positive(&m, "|v(q)| <= 1/2", point)))
        }
        _ => None,
    };

    let nine_im = im.mul_int(9);
    let margin_log = if absj.certainly_lt(&CertifiedReal::from_int(1, prec)) {
        // log|j| < 0 < 9 Im τ.
        lower_f64(&nine_im)
    } else {
        let upper = real_of_mag(&absj.abs_upper(), prec);
        let lj = funcs::log(&upper).ok_or_else(|| violated("log|j| undefined", point))?;
        need!(positive(&nine_im.sub(&lj), "log|j| <= 9 Im tau", point))
    };

    Ok(Check::Holds(EstimateReport {
        disc: point.disc.value(),
        form: point.form,
        im_tau: im.to_f64(),
        margin_2079,
        margin_v,
        margin_half,
        margin_log,
    }))
}

/// Certify that every non-dominant conjugate is at most a tenth of the
/// dominant one in absolute value.
pub fn dominance_check(disc: Discriminant, prec: u32) -> Result<DominanceReport, ModularError> {
    let points = conjugate_values(disc, prec)?;
    Ok(dominance_from_points(disc, &points))
}

pub(crate) fn dominance_from_points(disc: Discriminant, points: &[CMPoint]) -> DominanceReport {
    let dominant = points.iter().find(|p| p.is_dominant());
    let x0 = match dominant {
        Some(p) => p.j_value.abs_lower(),
        None => Mag::ZERO,
    };
    let mut worst = Mag::ZERO;
    let mut inconclusive = x0.is_zero();
    if !inconclusive {
        for p in points.iter().filter(|p| !p.is_dominant()) {
            worst = worst.max(p.j_value.abs_upper().div_up(&x0));
        }
        // Rigorous: worst is an upper bound, so 10·worst < 1 proves the claim.
        inconclusive = worst.mul_up(&Mag::from_u64(10)) >= Mag::from_u64(1);
    }
    DominanceReport {
        disc: disc.value(),
        class_number: points.len(),
        max_ratio_upper: worst.to_f64(),
        holds: !inconclusive,
        inconclusive,
    }
}

/// `log max{1, |x|}` as a ball.
fn log_plus(x: &crate::arith::CertifiedComplex, prec: u32) -> Option<CertifiedReal> {
    let one = Mag::from_u64(1);
    let lo = x.abs_lower();
    let hi = x.abs_upper();
    let log_of = |m: &Mag| funcs::log(&real_of_mag(m, prec));
    let l = if lo > one {
        log_of(&lo)?.lower()
    } else {
        Dyadic::zero()
    };
    let u = if hi > one {
        log_of(&hi)?.upper()
    } else {
        Dyadic::zero()
    };
    Some(CertifiedReal::from_bounds(&l, &u, prec))
}

/// Absolute logarithmic height of the singular moduli of discriminant `disc`
/// and a check of `h(x) ≤ 9 √|Δ| / 2`.
pub fn height_of(disc: Discriminant, prec: u32) -> Result<HeightReport, ModularError> {
    let points = conjugate_values(disc, prec)?;
    let h = points.len();
    let mut sum = CertifiedReal::zero(prec);
    for p in &points {
        let l = log_plus(&p.j_value, prec).ok_or(ModularError::PrecisionExhausted(prec))?;
        sum = sum.add(&l);
    }
    let height = sum.div_int(h as i64);
    let bound = funcs::sqrt_int(disc.abs(), prec).mul_int(9).mul_2exp(-1);
    Ok(HeightReport {
        disc: disc.value(),
        class_number: h,
        height_lower: lower_f64(&height),
        height_upper: height.upper().to_f64(),
        bound: bound.to_f64(),
        bound_holds: height.certainly_le(&bound),
    })
}
