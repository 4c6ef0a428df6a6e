// SPDX-License-Identifier: Apache-2.0
//! Elementary transcendental functions on balls.
//!
//! Each routine evaluates a truncated series in ball arithmetic and then adds
//! an explicit bound for the discarded tail, so the enclosure covers every
//! point of the input ball.

use super::complex::CertifiedComplex;
use super::float::Dyadic;
use super::mag::Mag;
use super::real::CertifiedReal;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Mutex;

type ConstantCache = Mutex<BTreeMap<u32, CertifiedReal>>;

static PI_CACHE: ConstantCache = Mutex::new(BTreeMap::new());
static LN2_CACHE: ConstantCache = Mutex::new(BTreeMap::new());

/// Fixed-point `atan(1/k)` or `atanh(1/k)` scaled by `2^w`, with an error bound
/// in units of `2^-w`.
fn arc_inverse(k: u64, w: u64, hyperbolic: bool) -> (BigInt, u64) {
    let one = BigInt::one() << w;
    let k2 = BigInt::from(k * k);
    let mut power = &one / BigInt::from(k); // 2^w / k^(2n+1)
    let mut sum = BigInt::zero();
    let mut n: u64 = 0;
    let mut terms = 0u64;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * n + 1);
        if hyperbolic || n.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &k2;
        n += 1;
        terms += 1;
    }
    // Each truncated division loses < 1 unit (two per term), the tail is
    // below one unit, and the geometric rest of atanh is absorbed by +2.
    (sum, 2 * terms + 3)
}

/// Constants are computed at the power of two at or above `max(prec, 256)`
/// and rounded down from there, so the enclosure returned for a given
/// `prec` does not depend on which precisions were requested earlier.
fn cached_constant(
    cache: &ConstantCache,
    prec: u32,
    compute: impl Fn(u32) -> CertifiedReal,
) -> CertifiedReal {
    let level = prec.max(256).next_power_of_two();
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(level)
        .or_insert_with(|| compute(level))
        .clone()
        .with_prec(prec)
}

/// Enclosure of `pi` (Machin's formula).
pub fn pi(prec: u32) -> CertifiedReal {
    cached_constant(&PI_CACHE, prec, |p| {
        let w = p as u64 + 32;
        let (a, ea) = arc_inverse(5, w, false);
        let (b, eb) = arc_inverse(239, w, false);
        let mid = a * 16 - b * 4;
        let err = 16 * ea + 4 * eb;
        CertifiedReal::from_parts(
            Dyadic::new(mid, -(w as i64)),
            Mag::from_u64(err).mul_2exp(-(w as i64)),
            p,
        )
        .with_prec(p)
    })
}

/// Enclosure of `log 2 = 2 atanh(1/3)`.
pub fn ln2(prec: u32) -> CertifiedReal {
    cached_constant(&LN2_CACHE, prec, |p| {
        let w = p as u64 + 32;
        let (a, ea) = arc_inverse(3, w, true);
        CertifiedReal::from_parts(
            Dyadic::new(a * 2, -(w as i64)),
            Mag::from_u64(2 * ea).mul_2exp(-(w as i64)),
            p,
        )
        .with_prec(p)
    })
}

fn factorial_bound_log2(n: u64) -> f64 {
    (1..=n).map(|k| (k as f64).log2()).sum()
}

/// Number of Taylor terms so that `x^N / N! < 2^-bits` for `|x| <= 2^xlog`.
fn taylor_terms(xlog: f64, bits: f64) -> u64 {
    let mut n = 1u64;
    while n as f64 * xlog - factorial_bound_log2(n) > -bits {
        n += 1;
        if n > 100_000 {
            break;
        }
    }
    n
}

/// `exp(x)` for a real ball of moderate size (|x| < 2^40).
pub fn exp(x: &CertifiedReal) -> CertifiedReal {
    let prec = x.prec();
    let bound = x.abs_upper();
    assert!(bound.log2_approx() < 40.0, "exp argument too large");
    let k = (x.to_f64() / std::f64::consts::LN_2).round() as i64;
    let s = ((prec as f64).sqrt() / 2.0).ceil() as i64;
    let wp = prec + s as u32 + 16;
    let xr = x.clone().with_prec(wp);
    let r = xr.sub(&ln2(wp).mul_int(k));
    let rs = r.mul_2exp(-s);
    let rlog = rs.abs_upper().log2_approx().max(-(wp as f64));
    let n = taylor_terms(rlog, wp as f64 + 4.0);
    // Horner: 1 + r(1 + r/2(1 + r/3(...)))
    let one = CertifiedReal::from_int(1, wp);
    let mut acc = one.clone();
    for j in (1..=n).rev() {
        acc = one.add(&acc.mul(&rs).div_int(j as i64));
    }
    // Tail: sum_{j>n} |r|^j / j! <= 2 |r|^(n+1) / (n+1)!  since |r| < 1.
    let tail = tail_bound(&rs.abs_upper(), n + 1);
    let mut y = acc.add_error(tail);
    for _ in 0..s {
        y = y.sqr();
    }
    y.mul_2exp(k).with_prec(prec)
}

fn tail_bound(r: &Mag, m: u64) -> Mag {
    // 2 * r^m / m!, evaluated with upward rounding.
    let mut t = Mag::from_u64(2);
    for j in 1..=m {
        t = t.mul_up(r).div_up(&Mag::from_u64(j));
    }
    t
}

/// Natural logarithm of a certainly positive real ball.
pub fn log(x: &CertifiedReal) -> Option<CertifiedReal> {
    if !x.is_positive() {
        return None;
    }
    let prec = x.prec();
    let wp = prec + 16;
    let mut e = x.mid().top();
    let mut y = x.clone().with_prec(wp).mul_2exp(-e);
    if y.to_f64() < 0.7 {
        y = y.mul_2exp(1);
        e -= 1;
    }
    let one = CertifiedReal::from_int(1, wp);
    let z = y.sub(&one).div(&y.add(&one))?;
    let zb = z.abs_upper();
    let z2 = z.sqr();
    let zlog = zb.log2_approx();
    // Need |z|^(2N+3) below 2^-wp.
    let mut n = 0u64;
    while (2 * n + 3) as f64 * zlog > -(wp as f64 + 4.0) {
        n += 1;
        if n > 1_000_000 {
            return None;
        }
    }
    // Horner in z^2 for sum z^(2k+1)/(2k+1).
    let mut acc = CertifiedReal::zero(wp);
    for k in (0..=n).rev() {
        let c = one.div_int((2 * k + 1) as i64);
        acc = c.add(&acc.mul(&z2));
    }
    let series = acc.mul(&z).mul_2exp(1);
    // Tail 2 sum_{k>n} |z|^(2k+1)/(2k+1) <= 2|z|^(2n+3) / (1 - |z|^2).
    let mut t = Mag::from_u64(2);
    for _ in 0..(2 * n + 3) {
        t = t.mul_up(&zb);
    }
    let denom = Mag::from_u64(1).sub_down(&zb.mul_up(&zb));
    let tail = t.div_up(&denom);
    let res = series.add_error(tail).add(&ln2(wp).mul_int(e));
    Some(res.with_prec(prec))
}

/// `e^{i theta}` for a real ball `theta`.
pub fn expi(theta: &CertifiedReal) -> CertifiedComplex {
    let prec = theta.prec();
    let s = ((prec as f64).sqrt() / 2.0).ceil() as i64;
    let wp = prec + s as u32 + 16;
    let two_pi = pi(wp).mul_2exp(1);
    let k = (theta.to_f64() / std::f64::consts::TAU).round() as i64;
    let t = theta
        .clone()
        .with_prec(wp)
        .sub(&two_pi.mul_int(k))
        .mul_2exp(-s);
    let tb = t.abs_upper();
    let n = taylor_terms(tb.log2_approx().max(-(wp as f64)), wp as f64 + 4.0);
    // Real and imaginary parts of sum (i t)^j / j!.
    let one = CertifiedReal::from_int(1, wp);
    let mut c = CertifiedReal::zero(wp);
    let mut sn = CertifiedReal::zero(wp);
    let t2 = t.sqr();
    // Horner for cos: sum (-1)^k t^(2k)/(2k)!, sin: t sum (-1)^k t^(2k)/(2k+1)!
    let half = n / 2 + 1;
    for kk in (0..=half).rev() {
        let dc = ((2 * kk + 1) * (2 * kk + 2)) as i64;
        let ds = ((2 * kk + 2) * (2 * kk + 3)) as i64;
        c = one.sub(&c.mul(&t2).div_int(dc));
        sn = one.sub(&sn.mul(&t2).div_int(ds));
    }
    let sn = sn.mul(&t);
    let tail = tail_bound(&tb, 2 * half + 2);
    let mut z = CertifiedComplex::from_parts(&c.add_error(tail), &sn.add_error(tail));
    for _ in 0..s {
        z = z.sqr();
    }
    z.with_prec(prec)
}

/// Complex exponential.
pub fn cexp(z: &CertifiedComplex) -> CertifiedComplex {
    let m = exp(&z.re());
    expi(&z.im()).mul_real(&m)
}

/// `q = e^{2 pi i tau}`.
pub fn q_of_tau(tau: &CertifiedComplex) -> CertifiedComplex {
    let prec = tau.prec();
    let two_pi = pi(prec + 16).mul_2exp(1);
    let w = tau.clone().with_prec(prec + 16).mul_real(&two_pi).mul_i();
    cexp(&w).with_prec(prec)
}

/// `sqrt(n)` for a non-negative integer.
pub fn sqrt_int(n: u64, prec: u32) -> CertifiedReal {
    CertifiedReal::from_int(n, prec)
        .sqrt()
        .expect("non-negative")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let p = pi(200);
        assert!((p.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!(p.rad().log2_approx() < -190.0);
        // Cached higher precision still encloses.
        let p2 = pi(1000);
        assert!(p2.overlaps(&p));
    }

    #[test]
    fn exp_log_roundtrip() {
        for &(a, b) in &[(1i64, 3i64), (-7, 2), (50, 1), (1, 1000)] {
            let x = CertifiedReal::ratio(a, b, 256);
            let y = log(&exp(&x)).unwrap();
            assert!(y.overlaps(&x), "{a}/{b}");
            assert!(y.rad().log2_approx() < -200.0);
        }
        let e = exp(&CertifiedReal::from_int(1, 128));
        assert!((e.to_f64() - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn expi_on_unit_circle() {
        let t = CertifiedReal::ratio(17, 5, 256);
        let z = expi(&t);
        let (re, im) = z.to_f64_pair();
        assert!((re - 3.4f64.cos()).abs() < 1e-14);
        assert!((im - 3.4f64.sin()).abs() < 1e-14);
        assert!(z.rad().log2_approx() < -200.0);
        let one = z.abs();
        assert!(one.contains_rational(&num_rational::BigRational::from_integer(1.into())));
    }
}
