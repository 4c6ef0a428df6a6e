// SPDX-License-Identifier: Apache-2.0
//! Independent oracles shared by the integration tests.
//!
//! Everything here is deliberately naive: plain fixed-point integers, a
//! different arctangent formula for π, and brute-force enumeration, so that
//! agreement with the library is evidence rather than tautology.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Fixed-point number with `BITS` fractional bits.
pub const BITS: u64 = 400;

fn one() -> BigInt {
    BigInt::one() << BITS
}

fn atan_inv(k: u64) -> BigInt {
    let k2 = BigInt::from(k * k);
    let mut p = one() / BigInt::from(k);
    let mut s = BigInt::zero();
    let mut n = 0u64;
    while !p.is_zero() {
        let t = &p / BigInt::from(2 * n + 1);
        if n.is_multiple_of(2) {
            s += t;
        } else {
            s -= t;
        }
        p /= &k2;
        n += 1;
    }
    s
}

/// π by Gauss's formula 48 atan(1/18) + 32 atan(1/57) − 20 atan(1/239).
pub fn pi_fixed() -> BigInt {
    atan_inv(18) * 48 + atan_inv(57) * 32 - atan_inv(239) * 20
}

pub fn sqrt_fixed(n: u64) -> BigInt {
    (BigInt::from(n) << (2 * BITS)).sqrt()
}

pub fn mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> BITS
}

/// `e^{-x}` for fixed-point `x ≥ 0`, by halving and a plain Taylor sum.
pub fn exp_neg(x: &BigInt) -> BigInt {
    let halvings = 20u32;
    let y = -(x >> halvings);
    let mut term = one();
    let mut sum = one();
    let mut n = 1u64;
    while term.abs() > BigInt::from(0) {
        term = mul(&term, &y) / BigInt::from(n);
        sum += &term;
        n += 1;
    }
    for _ in 0..halvings {
        sum = mul(&sum, &sum);
    }
    sum
}

/// `Σ_{m<n} coeffs[m] r^m + 1/r` for a real fixed-point `r`, where
/// `coeffs[m]` multiplies `q^m` in `j − 1/q`.
pub fn j_truncated(coeffs: &[BigInt], r: &BigInt, n: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for m in (0..n).rev() {
        acc = mul(&acc, r) + (&coeffs[m] << BITS);
    }
    let inv = (BigInt::one() << (2 * BITS)) / r;
    acc + inv
}

/// Round a fixed-point value to the nearest integer.
pub fn round(x: &BigInt) -> BigInt {
    (x + (BigInt::one() << (BITS - 1))) >> BITS
}

/// All `(a, b, c)` with `b² − 4ac = d`, gcd 1, in the reduced region, by
/// scanning every `a ≤ |d|`, `|b| ≤ a`.
pub fn brute_forms(d: i64) -> Vec<(i64, i64, i64)> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let mut out = Vec::new();
    for a in 1..=d.abs() {
        for b in -a..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || gcd(gcd(a, b), c) != 1 {
                continue;
            }
            if (-a < b && b <= a && a < c) || (0 <= b && b <= a && a == c) {
                out.push((a, b, c));
            }
        }
    }
    out.sort();
    out
}
