// SPDX-License-Identifier: Apache-2.0
//! Matveev's lower bound for linear forms in logarithms, and the bound on
//! `n` it implies.
//!
//! For `Λ = b₁ log α₁ + … + b_r log α_r ≠ 0` in a field of degree `d`,
//! `log|Λ| > −2^{6r+20} d^{2+r} A₁⋯A_r log(ed) log(eH)` where
//! `A_j ≥ max{h(α_j), |log α_j|/d, 0.16/d}` and `H ≥ max|b_j|`. The bound only
//! weakens when `d` is replaced by a larger number, so callers may pass an
//! upper bound for the degree as long as each `A_j` is valid for the true one.

use crate::arith::{funcs, CertifiedReal};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct MatveevParams {
    pub r: u32,
    pub d: u64,
    pub big_h: CertifiedReal,
    pub a: Vec<CertifiedReal>,
}

impl MatveevParams {
    /// `A_j ≥ max{height_j, log_abs_j / d_true, 0.16 / d_true}` for every `j`,
    /// with `d_true ≥ d_lower`.
    pub fn admissible(
        &self,
        heights: &[CertifiedReal],
        log_abs: &[CertifiedReal],
        d_lower: u64,
    ) -> bool {
        let prec = self.big_h.prec();
        let small = CertifiedReal::ratio(16, 100 * d_lower as i64, prec);
        self.a.len() == self.r as usize
            && heights.len() == self.a.len()
            && log_abs.len() == self.a.len()
            && self.a.iter().zip(heights).zip(log_abs).all(|((a, h), l)| {
                h.certainly_le(a)
                    && l.div_int(d_lower as i64).certainly_le(a)
                    && small.certainly_le(a)
            })
    }
}

/// `2^{6r+20} d^{2+r} A₁⋯A_r log(ed)`, the factor in front of `log(eH)`.
pub fn matveev_exponent_coefficient(r: u32, d: u64, a: &[CertifiedReal]) -> CertifiedReal {
    let prec = a.first().map_or(128, |x| x.prec());
    let mut c = CertifiedReal::from_int(integer_power_part(r, d), prec);
    for aj in a {
        c = c.mul(aj);
    }
    let ed = funcs::exp(&CertifiedReal::from_int(1, prec)).mul_int(d as i64);
    c.mul(&funcs::log(&ed).expect("e·d > 0"))
}

/// The lower bound on `log|Λ|`, with outward rounding.
pub fn matveev_lower(params: &MatveevParams) -> CertifiedReal {
    let prec = params.big_h.prec();
    let e = funcs::exp(&CertifiedReal::from_int(1, prec));
    let log_eh = funcs::log(&e.mul(&params.big_h)).expect("eH > 0");
    matveev_exponent_coefficient(params.r, params.d, &params.a)
        .mul(&log_eh)
        .neg()
}

fn integer_power_part(r: u32, d: u64) -> BigInt {
    (BigInt::one() << (6 * r + 20)) * BigInt::from(d).pow(2 + r)
}

/// The integer in front of `h^{2+r} ∏ (A_j / scale_j) log(ed)` when
/// `d = degree_factor · h` and `A_j = a_factors[j] · scale_j`.
pub fn matveev_integer_coefficient(r: u32, degree_factor: u64, a_factors: &[u64]) -> BigInt {
    a_factors
        .iter()
        .fold(integer_power_part(r, degree_factor), |acc, &f| {
            acc * BigInt::from(f)
        })
}

/// `Δ = 4Δ′`: `d ≤ 2h`, `A = (19√|Δ′|, 10√|Δ′|, 1)`.
pub fn linear_small_coefficient() -> BigInt {
    matveev_integer_coefficient(3, 2, &[19, 10, 1])
}

/// Distinct quadratic fields, real `L`: `d ≤ h`, `A = (10√|Δ|, 10√|Δ′|, 1)`.
pub fn distinct_fields_coefficient() -> BigInt {
    matveev_integer_coefficient(3, 1, &[10, 10, 1])
}

/// The constant printed for the distinct-fields case. It equals
/// `2^38 · 10`, one factor of ten short of `2^38 · A₁A₂/√(|Δ||Δ′|)` with the
/// admissible `A₁ = 10√|Δ|`, `A₂ = 10√|Δ′|`.
pub const DISTINCT_FIELDS_PRINTED: u64 = 2_748_779_069_440;

/// Constants from the bound on `n`.
#[derive(Clone, Debug, Serialize)]
pub struct NBound {
    pub c5: f64,
    pub c6: f64,
    #[serde(skip)]
    pub c5_ball: CertifiedReal,
    #[serde(skip)]
    pub c6_ball: CertifiedReal,
}

/// From `−K log(eκn) < log|Λ| ≤ log c₃′ + n log c₄` derive
/// `n / log(eκn) < c₅ = (K + log c₃′)/(−log c₄)` and then
/// `n < c₆ = (1 + 1/e) c₅ log(κ(1 + e) c₅)`. With `κ = 3` these are the
/// usual constants. The last step is certified directly: `s/log s` is
/// increasing for `s > e`, so `c₆/log(eκc₆) ≥ c₅` excludes every `n ≥ c₆`.
pub fn bound_n(
    c3p: &CertifiedReal,
    c4: &CertifiedReal,
    k: &CertifiedReal,
    kappa: i64,
) -> Result<NBound, String> {
    let prec = c4.prec();
    let one = CertifiedReal::from_int(1, prec);
    if !c4.certainly_lt(&one) || !c4.is_positive() {
        return Err(format!("c₄ = {c4} is not certified in (0, 1)"));
    }
    if !c3p.certainly_gt(&one) {
        return Err(format!("c₃′ = {c3p} is not certified above 1"));
    }
    let log_c4 = funcs::log(c4).ok_or("log c₄ undefined")?;
    let log_c3p = funcs::log(c3p).ok_or("log c₃′ undefined")?;
    let c5 = k.add(&log_c3p).div(&log_c4.neg()).ok_or("c₅ undefined")?;
    let e = funcs::exp(&one);
    let inner = c5.mul(&one.add(&e)).mul_int(kappa);
    let c6 = one
        .add(&one.div(&e).expect("e ≠ 0"))
        .mul(&c5)
        .mul(&funcs::log(&inner).ok_or("log undefined")?);
    let check = c6
        .div(&funcs::log(&e.mul(&c6).mul_int(kappa)).ok_or("log undefined")?)
        .ok_or("division")?;
    if !c5.certainly_le(&check) {
        return Err("c₆ does not exclude n ≥ c₆".into());
    }
    Ok(NBound {
        c5: c5.upper().to_f64(),
        c6: c6.upper().to_f64(),
        c5_ball: c5,
        c6_ball: c6,
    })
}
