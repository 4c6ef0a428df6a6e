// SPDX-License-Identifier: Apache-2.0
//! Valuations at the primes above `p` of a number field given by a monic
//! integer defining polynomial `P(θ) = 0`.
//!
//! Write `P ≡ ∏ gᵢ^{eᵢ} mod p` and lift each coprime factor `gᵢ^{eᵢ}` to a
//! monic `Gᵢ` dividing `P` over `Z_p`, known modulo `p^k`. The map
//! `φᵢ(a(θ)) = v_p(N_{Q_p[X]/Gᵢ}(a))` is additive on `K^×` and equals
//! `Σ f_𝔭 v_𝔭` over the primes `𝔭` belonging to `Gᵢ`. When Dedekind's
//! criterion holds, `Z[θ]` is `p`-maximal, `Gᵢ` belongs to a single prime
//! with ramification `eᵢ` and residue degree `deg gᵢ`, and
//! `v_𝔭 = φᵢ / deg gᵢ`. Otherwise the factor may collect several primes and
//! only `φᵢ` itself is reported, except in quadratic fields where the
//! generator is replaced by a `p`-maximal one `(2θ + b)/p^k` or its
//! average with 1. Either way `α^m = ζβ^n` forces
//! `m φ(α) = n φ(β)`, which is all the independence test uses.
//!
//! The local norm is a determinant known modulo `p^k`, exact as soon as its
//! valuation is `< k`.

use super::element::{same_field, FieldElement};
use super::FieldError;
use crate::poly::{self, FpPoly, ZPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Trial-division bound for the primes dividing norms.
pub const TRIAL_DIVISION_BOUND: u64 = 100_000;

/// A prime ideal `𝔭 | p`, or a `p`-adic factor of the defining polynomial
/// when `Z[θ]` is not `p`-maximal. Identified by its residue polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub p: u64,
    /// Position of the factor in the sorted factorization of `P mod p`.
    pub tag: usize,
    pub residue_degree: usize,
    /// Multiplicity of the factor mod `p`; the ramification index when
    /// `prime` is set.
    pub ramification: usize,
    /// Monic irreducible factor of `P mod p`, ascending.
    pub factor: FpPoly,
    /// Whether this is a single prime ideal. When false, valuations are
    /// the additive map `φ` described above.
    pub prime: bool,
    /// The generator whose minimal polynomial was factored; `None` for `θ`.
    pub generator: Option<Arc<AltGenerator>>,
}

/// A generator `θ′ = t(θ)` other than `θ`, with the change of basis from
/// powers of `θ` to powers of `θ′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltGenerator {
    /// Monic integral minimal polynomial of `θ′`.
    pub minpoly: ZPoly,
    /// `to_alt · coords_θ = coords_θ′`.
    to_alt: Vec<Vec<BigRational>>,
}

impl AltGenerator {
    /// `t` gives `θ′` in the power basis of `θ`; `minpoly` must be its
    /// minimal polynomial.
    fn new(defining: &[BigInt], t: &[BigRational], minpoly: ZPoly) -> Option<AltGenerator> {
        let n = defining.len() - 1;
        let fq = poly::from_ints(defining);
        let mut cols = Vec::with_capacity(n);
        let mut cur: poly::QPoly = vec![poly::q(1)];
        for _ in 0..n {
            let mut c = cur.clone();
            c.resize(n, BigRational::zero());
            cols.push(c);
            cur = poly::rem(&poly::mul(&cur, t), &fq);
        }
        let basis: Vec<Vec<BigRational>> = (0..n)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Some(AltGenerator {
            minpoly,
            to_alt: invert(basis)?,
        })
    }

    /// `(a, D)` with `x = a(θ′)/D`.
    fn integral_parts(&self, x: &FieldElement) -> (ZPoly, BigInt) {
        let coords = x.coords();
        let c: Vec<BigRational> = self
            .to_alt
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&coords)
                    .fold(BigRational::zero(), |acc, (m, v)| acc + m * v)
            })
            .collect();
        let d = c.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        (
            c.iter()
                .map(|r| (r * BigRational::from(d.clone())).to_integer())
                .collect(),
            d,
        )
    }
}

/// Inverse of a square rational matrix, or `None` when singular.
fn invert(m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for c in a[col].iter_mut() {
            *c *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// For `θ² + bθ + c = 0`, a generator whose order is `p`-maximal: with
/// `D = b² − 4c = p^{2k} D′` and `k` as large as keeps `D′ ≡ 0, 1 mod 4`,
/// take `√D′ = (2θ + b)/p^k`, or `(1 + √D′)/2` when `D′ ≡ 1 mod 4`.
fn quadratic_generator(defining: &[BigInt], p: u64) -> Option<AltGenerator> {
    let (c, b) = (&defining[0], &defining[1]);
    let mut disc = b * b - BigInt::from(4) * c;
    let pb = BigInt::from(p);
    let p2 = &pb * &pb;
    let mut scale = BigInt::one();
    let four = BigInt::from(4);
    loop {
        let (quo, r) = disc.div_rem(&p2);
        if !r.is_zero() || !matches!(quo.mod_floor(&four).to_u8(), Some(0 | 1)) {
            break;
        }
        disc = quo;
        scale *= &pb;
    }
    if scale.is_one() {
        return None;
    }
    let inv = BigRational::new(BigInt::one(), scale);
    let root = vec![BigRational::from(b.clone()) * &inv, poly::q(2) * &inv];
    let (t, minpoly) = if disc.mod_floor(&four).is_one() {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let t = vec![(poly::q(1) + &root[0]) * &half, &root[1] * &half];
        (
            t,
            vec![
                (BigInt::one() - &disc) / &four,
                BigInt::from(-1),
                BigInt::one(),
            ],
        )
    } else {
        (root, vec![-disc, BigInt::zero(), BigInt::one()])
    };
    AltGenerator::new(defining, &t, minpoly)
}

/// Both valuations at a prime ideal dividing both elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationCertificate {
    pub prime: u64,
    pub prime_ideal_tag: usize,
    pub residue_degree: usize,
    pub v_alpha: i64,
    pub v_beta: i64,
}

/// The primes (or `p`-adic factors) above `p`.
pub fn primes_above(field: &super::NumberField, p: u64) -> Option<Vec<PrimeIdeal>> {
    if p < 2 {
        return None;
    }
    let f = &field.defining_polynomial;
    let (facs, prime, generator) = match poly::dedekind_factors(f, p) {
        Some(facs) => (facs, true, None),
        None => {
            let alt = (field.degree == 2)
                .then(|| quadratic_generator(f, p))
                .flatten();
            match alt.and_then(|g| Some((poly::dedekind_factors(&g.minpoly, p)?, g))) {
                Some((facs, g)) => (facs, true, Some(Arc::new(g))),
                None => (poly::factor_mod_p_multi(f, p), false, None),
            }
        }
    };
    Some(
        facs.into_iter()
            .enumerate()
            .map(|(tag, (factor, e))| PrimeIdeal {
                p,
                tag,
                residue_degree: factor.len() - 1,
                ramification: e,
                factor,
                prime,
                generator: generator.clone(),
            })
            .collect(),
    )
}

fn vp_int(n: &BigInt, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    while !m.is_zero() && m.is_multiple_of(&pb) {
        m /= &pb;
        v += 1;
    }
    v
}

/// `φ(p)` in the units `valuation` reports.
fn value_of_p(ideal: &PrimeIdeal) -> i64 {
    if ideal.prime {
        ideal.ramification as i64
    } else {
        (ideal.ramification * ideal.residue_degree) as i64
    }
}

/// The valuation of `a(θ)` for a nonzero integral polynomial `a`.
fn valuation_integral(a: &[BigInt], defining: &[BigInt], ideal: &PrimeIdeal) -> i64 {
    let p = ideal.p;
    let pb = BigInt::from(p);
    let content = a
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| vp_int(c, p))
        .min()
        .unwrap_or(0);
    let scale = pb.pow(content as u32);
    let a: ZPoly = a.iter().map(|c| c / &scale).collect();
    let f = ideal.residue_degree as u64;
    let local = poly::fp_pow(&ideal.factor, ideal.ramification, p);
    let mut k = 16u32;
    loop {
        // Monic: the lift only corrects coefficients below the leading one.
        let g = poly::hensel_lift(defining, &local, p, k);
        let modulus = pb.pow(k);
        let m = FieldElement::multiplication_matrix(&a, &g);
        let m: Vec<Vec<BigInt>> = m
            .into_iter()
            .map(|row| row.into_iter().map(|c| c.mod_floor(&modulus)).collect())
            .collect();
        let det = poly::det_int(m).mod_floor(&modulus);
        if !det.is_zero() {
            let v = vp_int(&det, p);
            if v < k as u64 {
                let v = if ideal.prime {
                    assert_eq!(v % f, 0, "local norm valuation is a multiple of f");
                    v / f
                } else {
                    v
                };
                return value_of_p(ideal) * content as i64 + v as i64;
            }
        }
        k *= 2;
        assert!(k <= 1 << 14, "valuation of a nonzero element is finite");
    }
}

/// `v_𝔭(x)` (or `φ(x)` for a non-prime factor), `None` for `x = 0`.
pub fn valuation(x: &FieldElement, ideal: &PrimeIdeal) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let (a, d, defining) = match &ideal.generator {
        None => {
            let (a, d) = x.integral_parts();
            (a, d, &x.field().defining_polynomial)
        }
        Some(g) => {
            let (a, d) = g.integral_parts(x);
            (a, d, &g.minpoly)
        }
    };
    let va = valuation_integral(&a, defining, ideal);
    Some(va - value_of_p(ideal) * vp_int(&d, ideal.p) as i64)
}

fn trial_primes(n: &BigInt, bound: u64, out: &mut BTreeSet<u64>) {
    let mut m = n.abs();
    if m.is_zero() {
        return;
    }
    let mut d = 2u64;
    while d <= bound && !m.is_one() {
        if let Some(v) = m.to_u64() {
            if d.saturating_mul(d) > v {
                // What is left is prime.
                if v <= bound {
                    out.insert(v);
                }
                return;
            }
        }
        let db = BigInt::from(d);
        if m.is_multiple_of(&db) {
            out.insert(d);
            while m.is_multiple_of(&db) {
                m /= &db;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
}

/// Rational primes below the trial-division bound where `x` may have
/// nonzero valuation: divisors of the norm of its integral numerator and of
/// its denominator.
pub fn support_primes(x: &FieldElement) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    if x.is_zero() {
        return out;
    }
    let (a, d) = x.integral_parts();
    let m = FieldElement::multiplication_matrix(&a, &x.field().defining_polynomial);
    trial_primes(&poly::det_int(m), TRIAL_DIVISION_BOUND, &mut out);
    trial_primes(&d, TRIAL_DIVISION_BOUND, &mut out);
    out
}

/// One row of a valuation table.
#[derive(Clone, Debug)]
pub struct ValuationRow {
    pub ideal: PrimeIdeal,
    pub v_alpha: i64,
    pub v_beta: i64,
}

/// Valuations of both elements at every usable prime ideal in their
/// combined support, plus the candidate primes that had to be skipped.
pub fn valuation_table(
    alpha: &FieldElement,
    beta: &FieldElement,
) -> Result<(Vec<ValuationRow>, Vec<u64>), FieldError> {
    if !same_field(alpha.field(), beta.field()) {
        return Err(FieldError::FieldMismatch);
    }
    if alpha.is_zero() || beta.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    let mut primes = support_primes(alpha);
    primes.extend(support_primes(beta));
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for p in primes {
        let Some(ideals) = primes_above(alpha.field(), p) else {
            skipped.push(p);
            continue;
        };
        for ideal in ideals {
            let va = valuation(alpha, &ideal).expect("nonzero");
            let vb = valuation(beta, &ideal).expect("nonzero");
            if va != 0 || vb != 0 {
                rows.push(ValuationRow {
                    ideal,
                    v_alpha: va,
                    v_beta: vb,
                });
            }
        }
    }
    Ok((rows, skipped))
}

/// The smallest usable prime ideal dividing both `α` and `β` (nonzero
/// valuation for each), or `None` when the computed supports share none.
/// All candidate primes being unusable is reported as an error so callers
/// fall back instead of reading it as disjoint supports.
pub fn valuations_at_common_prime(
    alpha: &FieldElement,
    beta: &FieldElement,
) -> Result<Option<ValuationCertificate>, FieldError> {
    let (rows, skipped) = valuation_table(alpha, beta)?;
    if rows.is_empty() && !skipped.is_empty() {
        return Err(FieldError::NoUsablePrime(skipped));
    }
    Ok(rows
        .into_iter()
        .find(|r| r.v_alpha != 0 && r.v_beta != 0)
        .map(|r| ValuationCertificate {
            prime: r.ideal.p,
            prime_ideal_tag: r.ideal.tag,
            residue_degree: r.ideal.residue_degree,
            v_alpha: r.v_alpha,
            v_beta: r.v_beta,
        }))
}
