// SPDX-License-Identifier: Apache-2.0
//! Continued-fraction rejection of `|θ − m/n| ≤ c₃′ c₄ⁿ / (n log|α|)` for
//! `1 ≤ n < c₆` and `m/n ∈ [c₁, c₂]`.
//!
//! Solutions fall into two kinds. If `m/n` is a convergent `p/q` of `θ`
//! (possibly unreduced, `n = kq`), then `|θ − p/q| > c₃′c₄^q/(q log|α|)`
//! rejects every multiple, because the right side only shrinks as `q` grows.
//! Otherwise Legendre's theorem gives `|θ − m/n| ≥ 1/(2n²)`, which forces
//! `n log(1/c₄) ≤ log(2c₃′n/log|α|)`. Iterating that bound from `c₆` leaves a
//! short range of `n` that is enumerated directly.

use crate::arith::{funcs, CertifiedReal};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Inputs of the rejection, all as certified balls.
#[derive(Clone, Debug)]
pub struct CfProblem {
    pub theta: CertifiedReal,
    pub log_alpha: CertifiedReal,
    pub c1: CertifiedReal,
    pub c2: CertifiedReal,
    pub c3p: CertifiedReal,
    pub c4: CertifiedReal,
    pub c6: CertifiedReal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CfVerdict {
    /// No `(m, n)` survives.
    Rejected,
    /// The ball around `θ` is too wide to fix all partial quotients below
    /// `c₆`; retry with more precision.
    NeedPrecision,
    /// The inequality could not be refuted at this pair.
    Failed { m: String, n: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct CfOutcome {
    pub verdict: CfVerdict,
    /// Convergents `p/q` with `q < c₆`, as decimal strings.
    pub convergents: Vec<(String, String)>,
    /// Successive bounds on `n` for non-convergent solutions.
    pub nonconvergent_bounds: Vec<f64>,
    /// Number of `(m, n)` checked by direct enumeration.
    pub enumerated: u64,
}

/// Convergents of every real in `[lo, hi]` with denominator below `limit`.
/// `None` when the endpoints disagree on a partial quotient before the
/// denominators pass `limit`.
pub fn common_convergents(
    lo: &BigRational,
    hi: &BigRational,
    limit: &BigRational,
) -> Option<Vec<(BigInt, BigInt)>> {
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let mut out = Vec::new();
    loop {
        let (fa, fb) = (a.floor().to_integer(), b.floor().to_integer());
        if fa != fb {
            // Later convergents differ between the endpoints, but if even the
            // smaller quotient pushes the denominator past `limit` none of
            // them matters.
            let q_next = fa.clone().min(fb.clone()) * &q1 + &q0;
            return (BigRational::from(q_next) >= *limit).then_some(out);
        }
        let p2 = &fa * &p1 + &p0;
        let q2 = &fa * &q1 + &q0;
        if BigRational::from(q2.clone()) >= *limit {
            return Some(out);
        }
        out.push((p2.clone(), q2.clone()));
        let (ra, rb) = (
            &a - BigRational::from(fa.clone()),
            &b - BigRational::from(fb),
        );
        if ra.is_zero() || rb.is_zero() {
            // An endpoint is this convergent; later quotients are not shared
            // and the check at `p2/q2` decides the outcome.
            return Some(out);
        }
        (a, b) = (rb.recip(), ra.recip());
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
}

fn ball_of(n: &BigInt, prec: u32) -> CertifiedReal {
    CertifiedReal::from_int(n.clone(), prec)
}

/// `|θ − m/n| > c₃′c₄ⁿ/(n log|α|)` certified, written as
/// `log|nθ − m| > n log c₄ + log(c₃′/log|α|)`.
fn refuted(
    pr: &CfProblem,
    m: &BigInt,
    n: &BigInt,
    log_c4: &CertifiedReal,
    log_k: &CertifiedReal,
) -> bool {
    let prec = pr.theta.prec();
    let diff = pr.theta.mul(&ball_of(n, prec)).sub(&ball_of(m, prec)).abs();
    if !diff.is_positive() {
        return false;
    }
    let Some(lhs) = funcs::log(&diff) else {
        return false;
    };
    let rhs = log_c4.mul(&ball_of(n, prec)).add(log_k);
    lhs.certainly_gt(&rhs)
}

/// Run the rejection.
pub fn cf_reject(pr: &CfProblem) -> CfOutcome {
    let prec = pr.theta.prec();
    let one = CertifiedReal::from_int(1, prec);
    let mut out = CfOutcome {
        verdict: CfVerdict::Rejected,
        convergents: Vec::new(),
        nonconvergent_bounds: Vec::new(),
        enumerated: 0,
    };
    if pr.c6.certainly_le(&one) {
        return out;
    }
    let (Some(log_c4), Some(log_k)) = (
        funcs::log(&pr.c4),
        pr.c3p.div(&pr.log_alpha).and_then(|k| funcs::log(&k)),
    ) else {
        out.verdict = CfVerdict::Failed {
            m: "-".into(),
            n: "-".into(),
        };
        return out;
    };

    let limit = pr.c6.upper().to_rational();
    let Some(convs) = common_convergents(
        &pr.theta.lower().to_rational(),
        &pr.theta.upper().to_rational(),
        &limit,
    ) else {
        out.verdict = CfVerdict::NeedPrecision;
        return out;
    };
    out.convergents = convs
        .iter()
        .map(|(p, q)| (p.to_string(), q.to_string()))
        .collect();
    for (p, q) in &convs {
        if p.is_positive() && !refuted(pr, p, q, &log_c4, &log_k) {
            out.verdict = CfVerdict::Failed {
                m: p.to_string(),
                n: q.to_string(),
            };
            return out;
        }
    }

    // Non-convergent solutions: n ≤ log(2c₃′n/log|α|)/(−log c₄), iterated.
    let two_k = pr.c3p.mul_int(2).div(&pr.log_alpha).expect("log|α| > 0");
    let neg_log_c4 = log_c4.neg();
    let mut bound = pr.c6.clone();
    for _ in 0..64 {
        out.nonconvergent_bounds.push(bound.upper().to_f64());
        let arg = two_k.mul(&bound);
        if arg.certainly_le(&one) {
            bound = CertifiedReal::zero(prec);
            break;
        }
        let Some(next) = funcs::log(&arg).and_then(|l| l.div(&neg_log_c4)) else {
            break;
        };
        if !next.certainly_lt(&bound) {
            break;
        }
        bound = next;
    }
    let last = bound.upper().to_f64();
    out.nonconvergent_bounds.push(last);
    let n_max = match bound.upper().floor().to_u64() {
        Some(n) if n <= 1_000_000 => n,
        _ => {
            out.verdict = CfVerdict::Failed {
                m: "-".into(),
                n: format!("≤ {last:.3e}"),
            };
            return out;
        }
    };
    for n in 1..=n_max {
        let nb = BigInt::from(n);
        let lo = pr.c1.lower().to_rational() * BigRational::from(nb.clone());
        let hi = pr.c2.upper().to_rational() * BigRational::from(nb.clone());
        let mut m = lo.ceil().to_integer().max(BigInt::one());
        while BigRational::from(m.clone()) <= hi {
            out.enumerated += 1;
            // Reduced fractions that are convergents were handled above, but
            // checking them again costs nothing and keeps this loop standalone.
            if m.gcd(&nb).is_one() && !refuted(pr, &m, &nb, &log_c4, &log_k) {
                out.verdict = CfVerdict::Failed {
                    m: m.to_string(),
                    n: n.to_string(),
                };
                return out;
            }
            m += 1;
        }
    }
    out
}
