// SPDX-License-Identifier: Apache-2.0
//! Exact q-expansion coefficients of `j` and certified evaluation.
//!
//! `j(τ) = q⁻¹ + 744 + Σ_{n≥1} c(n) qⁿ`. The coefficients come from
//! `q·j = E₄³ · ∏(1 − qⁿ)⁻²⁴`, computed with exact integers and cached.
//! Truncating after `c(K − 1)` leaves a tail bounded through the explicit
//! coefficient estimate `0 < c(n) ≤ e^{4π√n}`:
//!
//! ```text
//! Σ_{n≥K} c(n)|q|ⁿ ≤ e^{4π√K} |q|^K / (1 − e^{2π/√K} |q|)
//! ```
//!
//! because consecutive terms of the majorant shrink by at least
//! `e^{4π(√(n+1)−√n)}|q| ≤ e^{2π/√K}|q| < 1` on the fundamental domain.

use super::ModularError;
use crate::arith::{funcs, CertifiedComplex, CertifiedReal, Dyadic, Mag};
use num_bigint::BigInt;
use num_traits::Zero;
use std::sync::{Arc, RwLock};

static COEFFS: RwLock<Option<Arc<Vec<BigInt>>>> = RwLock::new(None);

fn divisor_sums(n: usize, k: u32) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); n + 1];
    for d in 1..=n {
        let dk = BigInt::from(d as u64).pow(k);
        let mut m = d;
        while m <= n {
            s[m] += &dk;
            m += d;
        }
    }
    s
}

fn convolve(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    crate::par::map_range(len, |k| {
        let mut acc = BigInt::zero();
        for i in 0..=k.min(a.len() - 1) {
            if k - i < b.len() {
                acc += &a[i] * &b[k - i];
            }
        }
        acc
    })
}

/// Coefficients of `q·j(q)`: entry `k` multiplies `q^k`, so entry 0 is 1,
/// entry 1 is 744 and entry `n + 1` is `c(n)`.
fn compute_coefficients(len: usize) -> Vec<BigInt> {
    let s3 = divisor_sums(len, 3);
    let s1 = divisor_sums(len, 1);
    let mut e4 = vec![BigInt::zero(); len];
    e4[0] = BigInt::from(1);
    for n in 1..len {
        e4[n] = &s3[n] * 240;
    }
    let e4sq = convolve(&e4, &e4, len);
    let e4cube = convolve(&e4sq, &e4, len);
    // g = ∏(1 − qⁿ)⁻²⁴ via n g_n = 24 Σ_{k=1}^{n} σ₁(k) g_{n−k}.
    let mut g = vec![BigInt::zero(); len];
    g[0] = BigInt::from(1);
    for n in 1..len {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            acc += &s1[k] * &g[n - k];
        }
        g[n] = acc * 24 / BigInt::from(n as u64);
    }
    convolve(&e4cube, &g, len)
}

/// Shared handle to at least `len` coefficients of `q·j`.
pub fn qj_coefficients(len: usize) -> Arc<Vec<BigInt>> {
    if let Some(c) = COEFFS.read().unwrap_or_else(|e| e.into_inner()).as_ref() {
        if c.len() >= len {
            return Arc::clone(c);
        }
    }
    let mut guard = COEFFS.write().unwrap_or_else(|e| e.into_inner());
    if let Some(c) = guard.as_ref() {
        if c.len() >= len {
            return Arc::clone(c);
        }
    }
    let have = guard.as_ref().map_or(0, |c| c.len());
    let target = len.max(2 * have).max(64);
    let c = Arc::new(compute_coefficients(target));
    *guard = Some(Arc::clone(&c));
    c
}

/// `c(n)` for `n ≥ −1` (`c(−1) = 1`, `c(0) = 744`).
pub fn j_coefficient(n: i64) -> BigInt {
    assert!(n >= -1);
    let k = (n + 1) as usize;
    qj_coefficients(k + 1)[k].clone()
}

/// Upper bound for the tail `Σ_{n≥K} e^{4π√n}|q|ⁿ` given a lower bound
/// `t` on `Im τ`, or `None` when the geometric ratio is not below 1.
pub fn tail_bound(k: usize, im_lower: &CertifiedReal, prec: u32) -> Option<Mag> {
    let wp = 64.max(prec / 4);
    let pi = funcs::pi(wp);
    let kk = CertifiedReal::from_int(k as i64, wp);
    let sk = kk.sqrt()?;
    let t = im_lower.clone().with_prec(wp);
    // log of the leading term: 4π√K − 2πK t.
    let lead = pi.mul_int(4).mul(&sk).sub(&pi.mul_int(2).mul(&kk).mul(&t));
    // log ratio: 2π/√K − 2π t.
    let ratio_log = pi.mul_int(2).div(&sk)?.sub(&pi.mul_int(2).mul(&t));
    if !ratio_log.is_negative() {
        return None;
    }
    let ratio = funcs::exp(&ratio_log);
    let one = CertifiedReal::from_int(1, wp);
    let denom = one.sub(&ratio);
    if !denom.is_positive() {
        return None;
    }
    let bound = funcs::exp(&lead).div(&denom)?;
    Some(bound.abs_upper())
}

/// Number of terms needed for an absolute tail below `2^-bits` (float guide
/// only; the bound itself is certified separately).
fn terms_needed(im: f64, bits: f64) -> usize {
    let two_pi = std::f64::consts::TAU;
    let target = -bits * std::f64::consts::LN_2;
    let mut k = 2usize;
    loop {
        let kf = k as f64;
        let v = 2.0 * two_pi * kf.sqrt() - two_pi * kf * im;
        if v < target - 2.0 && two_pi / kf.sqrt() < two_pi * im {
            return k;
        }
        k += 1;
        if k > 1_000_000 {
            return k;
        }
    }
}

/// Certified `j(τ)` for `τ` with `Im τ ≥ √3/2` (callers reduce to the
/// fundamental domain first). The radius is about `2^-prec · max(1, |j|)`.
pub fn eval_j(tau: &CertifiedComplex, prec: u32) -> Result<CertifiedComplex, ModularError> {
    let prec = prec.max(32);
    let im = tau.im();
    let min_im = CertifiedReal::ratio(86, 100, 64);
    if !im.certainly_gt(&min_im) {
        return Err(ModularError::OutsideDomain(im.to_f64()));
    }
    let im_f = im.to_f64();
    // |j| ≈ e^{2π Im τ}; aim for relative accuracy 2^-prec on that scale.
    let scale_bits = (std::f64::consts::TAU * im_f / std::f64::consts::LN_2).max(0.0);
    let k = terms_needed(im_f, (prec as f64 + 8.0 - scale_bits).max(16.0));
    let wp = prec + 40 + (k as f64).log2().ceil() as u32;
    let coeffs = qj_coefficients(k + 2);
    let tau_w = tau.clone().with_prec(wp);
    let q = funcs::q_of_tau(&tau_w);
    let qinv = funcs::q_of_tau(&tau_w.neg());
    // P(q) = Σ_{m=0}^{K-1} c(m) q^m with c(0) = 744, i.e. coefficients[m + 1].
    let mut acc = CertifiedComplex::zero(wp);
    for m in (0..k).rev() {
        let c = CertifiedComplex::from_real(&CertifiedReal::exact(
            Dyadic::from_int(coeffs[m + 1].clone()),
            wp,
        ));
        acc = acc.mul(&q).add(&c);
    }
    let lower = im.lower();
    let im_lo = CertifiedReal::exact(lower, wp);
    let tail = tail_bound(k, &im_lo, wp).ok_or(ModularError::OutsideDomain(im_f))?;
    let j = qinv.add(&acc).add_error(tail);
    Ok(j.with_prec(prec + 16))
}

/// Evaluate by the two-truncation comparison used as an independent check:
/// partial sums with `K` and `2K` terms, returned as floats.
pub fn partial_sums_f64(tau: (f64, f64), k: usize) -> ((f64, f64), (f64, f64)) {
    let coeffs = qj_coefficients(2 * k + 2);
    let (x, y) = tau;
    let r = (-std::f64::consts::TAU * y).exp();
    let th = std::f64::consts::TAU * x;
    let q = (r * th.cos(), r * th.sin());
    let eval = |n: usize| {
        let mut acc = (0.0f64, 0.0f64);
        for m in (0..n).rev() {
            let c = num_traits::ToPrimitive::to_f64(&coeffs[m + 1]).unwrap_or(f64::INFINITY);
            acc = (acc.0 * q.0 - acc.1 * q.1 + c, acc.0 * q.1 + acc.1 * q.0);
        }
        let inv = (1.0 / r * th.cos(), -1.0 / r * th.sin());
        (acc.0 + inv.0, acc.1 + inv.1)
    };
    (eval(k), eval(2 * k))
}


#[cfg(test)]
mod value_tests {
    use super::*;
    use crate::arith::funcs::sqrt_int;

    fn tau(re_num: i64, re_den: i64, d: u64, im_den: i64, prec: u32) -> CertifiedComplex {
        let re = CertifiedReal::ratio(re_num, re_den, prec);
        let im = sqrt_int(d, prec).div_int(im_den);
        CertifiedComplex::from_parts(&re, &im)
    }

    #[test]
    fn j_at_i_is_1728() {
        let j = eval_j(&tau(0, 1, 4, 2, 300), 256).unwrap();
        assert_eq!(j.re().unique_integer(), Some(BigInt::from(1728)));
        assert!(j.rad().log2_approx() < -64.0);
    }

    #[test]
    fn j_at_heegner_163() {
        let j = eval_j(&tau(-1, 2, 163, 2, 300), 256).unwrap();
        let expect: BigInt = "-262537412640768000".parse().unwrap();
        assert_eq!(j.re().unique_integer(), Some(expect));
        assert!(j.rad().log2_approx() < -40.0);
    }

    #[test]
    fn rejects_points_below_the_domain() {
        let t = tau(0, 1, 1, 2, 64);
        assert!(matches!(
            eval_j(&t, 64),
            Err(ModularError::OutsideDomain(_))
        ));
    }
}
