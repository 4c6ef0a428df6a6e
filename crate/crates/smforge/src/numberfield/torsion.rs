// SPDX-License-Identifier: Apache-2.0
//! Roots of unity in a number field.

use super::element::FieldElement;
use super::field::{interpolate, Interp, NumberField};
use super::FieldError;
use crate::arith::{funcs, CertifiedComplex, Mag};
use crate::poly::{self, totient};
use num_bigint::BigInt;
use num_integer::Integer;
use std::sync::Arc;

/// Upper bound on assignments tried while constructing a root of unity.
const ASSIGNMENT_BUDGET: usize = 200_000;

/// Orders `k` with `φ(k) | n`, ascending. Any root of unity of a degree-`n`
/// field has such an order.
pub fn possible_orders(n: usize) -> Vec<u64> {
    let n = n as u64;
    // φ(k) ≥ √(k/2), so k ≤ 2n².
    (1..=2 * n * n + 2)
        .filter(|&k| n.is_multiple_of(totient(k)))
        .collect()
}

/// Exact multiplicative order of `x` if it is a root of unity.
pub fn root_of_unity_order(x: &FieldElement) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    // Cheap exclusion: some conjugate certainly off the unit circle.
    let one = Mag::from_u64(1);
    for z in x.embeddings(64) {
        if z.abs_lower() > one || z.abs_upper() < one {
            return None;
        }
    }
    possible_orders(x.field().degree)
        .into_iter()
        .find(|&d| x.pow(d as i64).is_some_and(|y| y.is_one()))
}

/// Orders that survive the residue-field test: if `ζ_k ∈ L` and `p ∤ k·disc`
/// then `k | p^f − 1` for every residue degree `f` above `p`.
fn sieve(field: &NumberField, candidates: Vec<u64>) -> Vec<u64> {
    let mut alive = candidates;
    let mut tested = 0;
    let mut p = 3u64;
    while tested < 24 && alive.len() > 1 {
        let is_prime = (2..p)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d));
        if is_prime && !field.discriminant.is_multiple_of(&BigInt::from(p)) {
            let degrees: Vec<u32> = poly::factor_mod_p(&field.defining_polynomial, p)
                .iter()
                .map(|f| (f.len() - 1) as u32)
                .collect();
            alive.retain(|&k| {
                k % p == 0
                    || degrees.iter().all(|&f| {
                        let q = BigInt::from(p).pow(f) - 1u32;
                        (q % k) == BigInt::from(0u32)
                    })
            });
            tested += 1;
        }
        p += 2;
    }
    alive
}

fn unit_root(a: u64, k: u64, prec: u32) -> CertifiedComplex {
    let two_pi = funcs::pi(prec + 16).mul_2exp(1);
    let theta = two_pi.mul_int(a as i64).div_int(k as i64);
    funcs::expi(&theta).with_prec(prec)
}

/// Try to realise a primitive `k`-th root of unity in `L` by choosing its
/// image under each pair of conjugate embeddings and interpolating.
fn construct_root(field: &Arc<NumberField>, k: u64) -> Result<Option<FieldElement>, FieldError> {
    let n = field.degree;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut seen = vec![false; n];
    for i in 0..n {
        if !seen[i] {
            let j = field.conjugate_embedding(i);
            seen[i] = true;
            seen[j] = true;
            pairs.push((i, j));
        }
    }
    let units: Vec<u64> = (1..k).filter(|a| a.gcd(&k) == 1).collect();
    let free = pairs.len() - 1;
    let total = (units.len() as f64).powi(free as i32);
    if total > ASSIGNMENT_BUDGET as f64 {
        return Err(FieldError::SearchExhausted(format!(
            "roots of unity of order {k} in degree {n}"
        )));
    }
    let phi = poly::cyclotomic(k);
    let mut choice = vec![0usize; free];
    loop {
        let mut exps = vec![0u64; n];
        exps[pairs[0].0] = 1;
        exps[pairs[0].1] = k - 1;
        for (t, &(i, j)) in pairs.iter().skip(1).enumerate() {
            let a = units[choice[t]];
            exps[i] = a;
            exps[j] = k - a;
        }
        let mut prec = field.embeddings[0].prec().max(128);
        loop {
            let thetas = field.embeddings_at(prec);
            let images: Vec<CertifiedComplex> =
                exps.iter().map(|&a| unit_root(a, k, prec)).collect();
            match interpolate(&field.defining_polynomial, &thetas, &images, prec) {
                Interp::Ints(g) => {
                    let p = field.defining_q();
                    let coords = poly::rem(
                        &poly::mul(&poly::from_ints(&g), field.derivative_inverse()),
                        &p,
                    );
                    let z = FieldElement::new(field, coords);
                    if z.eval_poly(&phi).is_zero() {
                        return Ok(Some(z));
                    }
                    break;
                }
                Interp::NotIntegral => break,
                Interp::Undecided => {
                    prec *= 2;
                    if prec > crate::arith::MAX_PRECISION {
                        return Err(FieldError::PrecisionExhausted(prec / 2));
                    }
                }
            }
        }
        // Next assignment.
        let mut t = 0;
        loop {
            if t == free {
                return Ok(None);
            }
            choice[t] += 1;
            if choice[t] < units.len() {
                break;
            }
            choice[t] = 0;
            t += 1;
        }
    }
}

/// A generator of the torsion subgroup of `L^×` and its order.
pub fn torsion_generator(field: &Arc<NumberField>) -> Result<(FieldElement, u64), FieldError> {
    let minus_one = FieldElement::from_int(field, -1);
    if !field.real_embeddings().is_empty() {
        return Ok((minus_one, 2));
    }
    let mut candidates: Vec<u64> = possible_orders(field.degree)
        .into_iter()
        .filter(|&k| k > 2 && k % 2 == 0)
        .collect();
    candidates = sieve(field, candidates);
    candidates.sort_unstable_by(|a, b| b.cmp(a));
    for k in candidates {
        if let Some(z) = construct_root(field, k)? {
            return Ok((z, k));
        }
    }
    Ok((minus_one, 2))
}

/// All roots of unity of `L`, as the powers `ζ⁰, ζ¹, …` of a generator.
pub fn roots_of_unity(field: &Arc<NumberField>) -> Result<Vec<FieldElement>, FieldError> {
    let (z, w) = torsion_generator(field)?;
    let mut out = Vec::with_capacity(w as usize);
    let mut cur = FieldElement::one(field);
    for _ in 0..w {
        out.push(cur.clone());
        cur = cur.mul(&z);
    }
    Ok(out)
}
