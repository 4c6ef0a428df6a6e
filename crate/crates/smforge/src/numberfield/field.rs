// SPDX-License-Identifier: Apache-2.0
//! Number fields `Q(θ) = Q[X]/P` with certified complex embeddings.

use super::FieldError;
use crate::arith::{precision_schedule, CertifiedComplex, CertifiedReal, Dyadic, Mag};
use crate::modular::{conjugate_values, ClassPolynomial};
use crate::poly::{self, QPoly, ZPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::sync::{Arc, Mutex, OnceLock};

/// One generator handed to [`build_field`].
#[derive(Clone, Debug)]
pub enum Generator {
    /// A root of a Hilbert class polynomial, ordered like the reduced forms.
    Class(ClassPolynomial),
    /// `√d`, a root of `X² − d`; the root with positive real or imaginary
    /// part comes first.
    Quadratic(i64),
    /// A root of a monic integer polynomial, ascending coefficients.
    Polynomial(ZPoly),
}

impl Generator {
    /// Ascending monic integer polynomial.
    pub fn polynomial(&self) -> ZPoly {
        match self {
            Generator::Class(c) => c.ascending(),
            Generator::Quadratic(d) => vec![BigInt::from(-d), BigInt::zero(), BigInt::one()],
            Generator::Polynomial(p) => p.clone(),
        }
    }

    fn approximate(&self) -> Result<Vec<CertifiedComplex>, FieldError> {
        match self {
            Generator::Class(c) => {
                let pts = conjugate_values(c.disc, 128)?;
                Ok(pts.into_iter().map(|p| p.j_value).collect())
            }
            Generator::Quadratic(d) => {
                let s = crate::arith::funcs::sqrt_int(d.unsigned_abs(), 128);
                let z = CertifiedReal::zero(128);
                Ok(if *d < 0 {
                    vec![
                        CertifiedComplex::from_parts(&z, &s),
                        CertifiedComplex::from_parts(&z, &s.neg()),
                    ]
                } else {
                    vec![
                        CertifiedComplex::from_real(&s),
                        CertifiedComplex::from_real(&s.neg()),
                    ]
                })
            }
            Generator::Polynomial(p) => Ok(approximate_roots(p)),
        }
    }
}

/// A number field `Q[X]/P` for a monic irreducible integer `P`.
///
/// Embedding `i` sends the class of `X` to the certified root
/// `embeddings[i]`. Fields produced by [`build_field`] also record, for every
/// embedding, which root of each generator polynomial it selects, and the
/// generators themselves as polynomials in the primitive element.
#[derive(Debug)]
pub struct NumberField {
    /// Ascending, monic.
    pub defining_polynomial: ZPoly,
    pub degree: usize,
    pub embeddings: Vec<CertifiedComplex>,
    /// Discriminant of the defining polynomial.
    pub discriminant: BigInt,
    /// `labels[i][g]`: index of the root of generator `g` under embedding `i`.
    pub labels: Vec<Vec<usize>>,
    /// Generator `g` as a polynomial in the primitive element.
    pub generators: Vec<QPoly>,
    refined: Mutex<Vec<CertifiedComplex>>,
    derivative_inverse: OnceLock<QPoly>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.defining_polynomial == other.defining_polynomial
    }
}

impl NumberField {
    /// The field generated by the first root that isolation reports for
    /// `poly`. Reducible input yields the field of that root's minimal
    /// polynomial.
    pub fn from_polynomial(poly: ZPoly) -> Result<Arc<NumberField>, FieldError> {
        build_field(&[Generator::Polynomial(poly)])
    }

    pub fn rationals() -> Arc<NumberField> {
        NumberField::from_polynomial(vec![BigInt::zero(), BigInt::one()])
            .expect("X is a valid generator")
    }

    pub fn defining_q(&self) -> QPoly {
        poly::from_ints(&self.defining_polynomial)
    }

    /// Embedding images of the primitive element with radius at most about
    /// `2^-prec` relative to their size.
    pub fn embeddings_at(&self, prec: u32) -> Vec<CertifiedComplex> {
        let mut guard = self.refined.lock().expect("embedding cache poisoned");
        if guard[0].prec() >= prec {
            return guard.clone();
        }
        let fresh = certify_roots(&self.defining_polynomial, &guard, prec)
            .expect("refining certified simple roots cannot fail");
        debug_assert!(fresh.iter().zip(guard.iter()).all(|(a, b)| a.overlaps(b)));
        *guard = fresh.clone();
        fresh
    }

    /// Indices of embeddings whose image is real (certified by a symmetric
    /// inclusion disk centred on the real axis).
    pub fn real_embeddings(&self) -> Vec<usize> {
        (0..self.degree)
            .filter(|&i| self.embeddings[i].mid_im().is_zero())
            .collect()
    }

    pub fn is_totally_complex(&self) -> bool {
        self.real_embeddings().is_empty()
    }

    /// The embedding complex conjugate to embedding `i`.
    pub fn conjugate_embedding(&self, i: usize) -> usize {
        let c = self.embeddings[i].conj();
        (0..self.degree)
            .find(|&j| self.embeddings[j].overlaps(&c))
            .expect("conjugate roots are among the roots")
    }

    /// `1 / P′(θ)` in the field, cached.
    pub(crate) fn derivative_inverse(&self) -> &QPoly {
        self.derivative_inverse.get_or_init(|| {
            let p = self.defining_q();
            let d = poly::derivative(&p);
            let (g, s, _) = poly::xgcd(&d, &p);
            assert_eq!(g.len(), 1, "defining polynomial is squarefree");
            poly::rem(&s, &p)
        })
    }
}

// ---------------------------------------------------------------------------
// Roots.

fn bits_of(c: &BigInt) -> u64 {
    c.bits()
}

/// Working precision so that Horner evaluation near the roots loses at most
/// a handful of bits relative to `prec`.
fn working_precision(p: &[BigInt], roots: &[CertifiedComplex], prec: u32) -> u32 {
    let coeff_bits = p.iter().map(bits_of).max().unwrap_or(0);
    let r = roots
        .iter()
        .map(|z| z.abs_upper().log2_approx().max(0.0))
        .fold(0.0, f64::max);
    let n = p.len() as f64;
    prec + 64 + coeff_bits as u32 + (n * (r + 1.0)).ceil() as u32
}

fn horner2(p: &[BigInt], z: &CertifiedComplex, wp: u32) -> (CertifiedComplex, CertifiedComplex) {
    let mut v = CertifiedComplex::zero(wp);
    let mut d = CertifiedComplex::zero(wp);
    for c in p.iter().rev() {
        d = d.mul(z).add(&v);
        v = v
            .mul(z)
            .add(&CertifiedComplex::from_real(&CertifiedReal::from_int(
                c.clone(),
                wp,
            )));
    }
    (v, d)
}

/// Certified inclusion disks for all roots of a monic squarefree `p`,
/// starting from approximations in the same order.
///
/// Each approximation is refined by Newton's method; then with
/// `Wᵢ = p(zᵢ)/∏_{j≠i}(zᵢ − zⱼ)` the disks `D(zᵢ, n|Wᵢ|)` cover the roots and
/// each isolated disk contains exactly one. Centres that are nearly real are
/// first projected to the real axis: a certified symmetric disk with one
/// root proves that root real. `None` when the disks fail to separate.
pub fn certify_roots(
    p: &[BigInt],
    approx: &[CertifiedComplex],
    prec: u32,
) -> Option<Vec<CertifiedComplex>> {
    let n = p.len() - 1;
    assert_eq!(approx.len(), n, "one approximation per root");
    let wp = working_precision(p, approx, prec);
    let tol = Mag::pow2(-(prec as i64) - 16);
    let mut zs: Vec<CertifiedComplex> = Vec::with_capacity(n);
    for a in approx {
        let mut z = a.midpoint().with_prec(wp);
        for _ in 0..200 {
            let (v, d) = horner2(p, &z, wp);
            let Some(step) = v.div(&d) else { break };
            z = z.sub(&step).midpoint();
            let scale = z.abs_upper().max(Mag::from_u64(1));
            if step.abs_upper() <= tol.mul_up(&scale) {
                break;
            }
        }
        zs.push(z);
    }
    let projected: Vec<CertifiedComplex> = zs
        .iter()
        .map(|z| {
            let scale = z.abs_upper().max(Mag::from_u64(1));
            let small = Mag::pow2(-(prec as i64) / 2).mul_up(&scale);
            if z.mid_im().abs().mag_up() <= small {
                CertifiedComplex::from_mid_rad(z.mid_re().clone(), Dyadic::zero(), Mag::ZERO, wp)
            } else {
                z.clone()
            }
        })
        .collect();
    inclusion_disks(p, &projected, wp, prec).or_else(|| inclusion_disks(p, &zs, wp, prec))
}

fn inclusion_disks(
    p: &[BigInt],
    zs: &[CertifiedComplex],
    wp: u32,
    prec: u32,
) -> Option<Vec<CertifiedComplex>> {
    let n = zs.len();
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let (v, _) = horner2(p, &zs[i], wp);
        let mut den = CertifiedComplex::one(wp);
        for j in 0..n {
            if j != i {
                den = den.mul(&zs[i].sub(&zs[j]));
            }
        }
        let w = v.div(&den)?;
        radii.push(w.abs_upper().mul_up(&Mag::from_u64(n as u64)));
    }
    for i in 0..n {
        for j in i + 1..n {
            let gap = zs[i].sub(&zs[j]).abs_lower();
            if gap <= radii[i].add_up(&radii[j]) {
                return None;
            }
        }
    }
    Some(
        zs.iter()
            .zip(radii)
            .map(|(z, r)| {
                CertifiedComplex::from_mid_rad(z.mid_re().clone(), z.mid_im().clone(), r, prec)
            })
            .collect(),
    )
}

/// Double-precision Durand–Kerner approximations, adequate as Newton
/// starting points for the small explicit polynomials used as generators.
fn approximate_roots(p: &[BigInt]) -> Vec<CertifiedComplex> {
    use num_traits::ToPrimitive;
    let n = p.len() - 1;
    let c: Vec<f64> = p.iter().map(|x| x.to_f64().unwrap_or(f64::MAX)).collect();
    let bound = 1.0 + c[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            (
                bound.min(64.0) * 0.5 * t.cos(),
                bound.min(64.0) * 0.5 * t.sin(),
            )
        })
        .collect();
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let cdiv = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let v = c.iter().rev().fold((0.0, 0.0), |acc, &k| {
                let m = cmul(acc, z[i]);
                (m.0 + k, m.1)
            });
            let mut den = (1.0, 0.0);
            for j in 0..n {
                if j != i {
                    den = cmul(den, (z[i].0 - z[j].0, z[i].1 - z[j].1));
                }
            }
            let step = cdiv(v, den);
            if step.0.is_finite() && step.1.is_finite() {
                z[i] = (z[i].0 - step.0, z[i].1 - step.1);
                moved = moved.max(step.0.abs() + step.1.abs());
            }
        }
        if moved < 1e-14 {
            break;
        }
    }
    let f = |x: f64| {
        let (m, e) = frexp(x);
        Dyadic::new(
            BigInt::from((m * (1u64 << 53) as f64) as i64),
            e as i64 - 53,
        )
    };
    z.into_iter()
        .map(|(a, b)| CertifiedComplex::from_mid_rad(f(a), f(b), Mag::ZERO, 128))
        .collect()
}

fn frexp(x: f64) -> (f64, i32) {
    if x == 0.0 || !x.is_finite() {
        return (0.0, 0);
    }
    let e = x.abs().log2().floor() as i32 + 1;
    (x / 2f64.powi(e), e)
}

// ---------------------------------------------------------------------------
// Construction.

const MAX_ATTEMPTS: usize = 8;
const SUBSET_BUDGET: usize = 200_000;

/// Classification of a complex ball that should hold a rational integer.
pub(crate) enum Coef {
    Int(BigInt),
    NotInt,
    Undecided,
}

pub(crate) fn classify(c: &CertifiedComplex) -> Coef {
    let im = c.im();
    if !im.contains_zero() {
        return Coef::NotInt;
    }
    let re = c.re();
    let quarter = CertifiedReal::ratio(1, 4, 64);
    if let Some(n) = re.unique_integer() {
        if im.abs().certainly_lt(&quarter) {
            return Coef::Int(n);
        }
    }
    let lo = re.lower();
    let fl = lo.floor();
    if fl == re.upper().floor() && Dyadic::from_int(fl) < lo {
        return Coef::NotInt;
    }
    Coef::Undecided
}

fn ball_of_int(c: &BigInt, prec: u32) -> CertifiedComplex {
    CertifiedComplex::from_real(&CertifiedReal::from_int(c.clone(), prec))
}

/// `f(X)/(X − θ)` by synthetic division in ball arithmetic.
fn deflate(f: &[BigInt], theta: &CertifiedComplex, prec: u32) -> Vec<CertifiedComplex> {
    let n = f.len() - 1;
    let mut out = vec![CertifiedComplex::zero(prec); n];
    let mut acc = CertifiedComplex::zero(prec);
    for k in (1..=n).rev() {
        acc = acc.mul(theta).add(&ball_of_int(&f[k], prec));
        out[k - 1] = acc.clone();
    }
    out
}

/// Outcome of rounding an interpolation polynomial.
pub(crate) enum Interp {
    Ints(ZPoly),
    /// Some coefficient is certainly not an integer.
    NotIntegral,
    Undecided,
}

/// Integer polynomial `G = Σ_s y_s f(X)/(X − θ_s)`, so that `y = G(θ)/f′(θ)`.
pub(crate) fn interpolate(
    f: &[BigInt],
    thetas: &[CertifiedComplex],
    images: &[CertifiedComplex],
    prec: u32,
) -> Interp {
    let n = thetas.len();
    let mut g = vec![CertifiedComplex::zero(prec); n];
    for (t, y) in thetas.iter().zip(images) {
        for (k, q) in deflate(f, t, prec).into_iter().enumerate() {
            g[k] = g[k].add(&q.mul(y));
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut undecided = false;
    for c in &g {
        match classify(c) {
            Coef::Int(v) => out.push(v),
            Coef::NotInt => return Interp::NotIntegral,
            Coef::Undecided => undecided = true,
        }
    }
    if undecided {
        Interp::Undecided
    } else {
        Interp::Ints(poly::trim(out))
    }
}

/// All factor-degree sums modulo `p` that a rational factor could have.
fn degree_sums(c: &[BigInt], p: u64) -> Option<Vec<bool>> {
    if !poly::squarefree_mod(c, p) {
        return None;
    }
    let n = c.len() - 1;
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for f in poly::factor_mod_p(c, p) {
        let d = f.len() - 1;
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    Some(reach)
}

fn small_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 3u64;
    while out.len() < count {
        if (2..k)
            .take_while(|d| d * d <= k)
            .all(|d| !k.is_multiple_of(d))
        {
            out.push(k);
        }
        k += 2;
    }
    out
}

/// Degrees a rational factor of `c` could have, from factorization patterns
/// modulo several primes.
fn possible_factor_degrees(c: &[BigInt]) -> Vec<usize> {
    let n = c.len() - 1;
    let mut allowed = vec![true; n + 1];
    for p in small_primes(60) {
        if let Some(r) = degree_sums(c, p) {
            for (a, b) in allowed.iter_mut().zip(r) {
                *a &= b;
            }
        }
        if (1..n).all(|d| !allowed[d]) {
            break;
        }
    }
    (1..n).filter(|&d| allowed[d]).collect()
}

fn combinations(rest: &[usize], k: usize, out: &mut Vec<Vec<usize>>, budget: &mut usize) {
    fn go(
        rest: &[usize],
        k: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: &mut usize,
    ) {
        if *budget == 0 {
            return;
        }
        if k == 0 {
            out.push(cur.clone());
            *budget -= 1;
            return;
        }
        for i in 0..rest.len() {
            if rest.len() - i < k {
                break;
            }
            cur.push(rest[i]);
            go(&rest[i + 1..], k - 1, cur, out, budget);
            cur.pop();
        }
    }
    go(rest, k, &mut Vec::new(), out, budget);
}

/// Minimal polynomial of `thetas[0]` among the factors of the integer
/// polynomial `c` whose roots are `thetas`. `Ok(None)` asks for more precision.
fn minimal_factor(
    c: &[BigInt],
    thetas: &[CertifiedComplex],
    prec: u32,
) -> Result<Option<(ZPoly, Vec<usize>)>, FieldError> {
    let n = thetas.len();
    let all: Vec<usize> = (0..n).collect();
    let degrees = possible_factor_degrees(c);
    let mut budget = SUBSET_BUDGET;
    for d in degrees {
        let rest: Vec<usize> = (1..n).collect();
        let mut subsets = Vec::new();
        combinations(&rest, d - 1, &mut subsets, &mut budget);
        if budget == 0 {
            return Err(FieldError::SearchExhausted(format!(
                "minimal polynomial subset search over degree {n}"
            )));
        }
        for tail in subsets {
            let mut s = vec![0];
            s.extend(tail);
            let roots: Vec<CertifiedComplex> = s.iter().map(|&i| thetas[i].clone()).collect();
            let prod = poly::from_roots(&roots, prec);
            let mut ints = Vec::with_capacity(prod.len());
            let mut undecided = false;
            let mut not_int = false;
            for coef in &prod {
                match classify(coef) {
                    Coef::Int(v) => ints.push(v),
                    Coef::NotInt => {
                        not_int = true;
                        break;
                    }
                    Coef::Undecided => undecided = true,
                }
            }
            if not_int {
                continue;
            }
            if undecided {
                return Ok(None);
            }
            let (_, r) = poly::divrem(&poly::from_ints(c), &poly::from_ints(&ints));
            if !r.is_empty() {
                continue;
            }
            // The exact factor must vanish exactly on the chosen roots.
            let fq = poly::from_ints(&ints);
            let outside_ok = all
                .iter()
                .filter(|i| !s.contains(i))
                .all(|&i| !poly::eval_complex(&fq, &thetas[i]).contains_zero());
            if !outside_ok {
                return Ok(None);
            }
            return Ok(Some((ints, s)));
        }
    }
    Ok(Some((c.to_vec(), all)))
}

/// The field generated by the given algebraic integers.
///
/// A primitive element `θ = Σ kᵢ gᵢ` is tried for a few small multiplier
/// vectors. Its conjugates over every choice of generator roots are
/// certified distinct, `∏ (X − θ)` is rounded to an integer polynomial, the
/// factor vanishing at the first choice is isolated (irreducibility comes
/// from factorization patterns modulo small primes, a proper factor from an
/// exhaustive certified subset search), and each generator is recovered by
/// interpolation and checked by an exact polynomial identity.
pub fn build_field(gens: &[Generator]) -> Result<Arc<NumberField>, FieldError> {
    if gens.is_empty() {
        return Err(FieldError::BadGenerator);
    }
    let polys: Vec<ZPoly> = gens.iter().map(Generator::polynomial).collect();
    for p in &polys {
        if p.len() < 2 || !p.last().is_some_and(|c| c.is_one()) {
            return Err(FieldError::BadGenerator);
        }
    }
    let approx: Vec<Vec<CertifiedComplex>> = gens
        .iter()
        .map(Generator::approximate)
        .collect::<Result<_, _>>()?;
    let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
    for p in &polys {
        let deg = p.len() - 1;
        combos = combos
            .into_iter()
            .flat_map(|c| {
                (0..deg).map(move |i| {
                    let mut v = c.clone();
                    v.push(i);
                    v
                })
            })
            .collect();
    }
    for attempt in 0..MAX_ATTEMPTS {
        let ks: Vec<i64> = (0..gens.len()).map(|i| 1 + (attempt * i) as i64).collect();
        if let Some(f) = try_build(&polys, &approx, &combos, &ks)? {
            return Ok(Arc::new(f));
        }
        if gens.len() == 1 {
            break;
        }
    }
    Err(FieldError::PrimitiveElement(MAX_ATTEMPTS))
}

fn try_build(
    polys: &[ZPoly],
    approx: &[Vec<CertifiedComplex>],
    combos: &[Vec<usize>],
    ks: &[i64],
) -> Result<Option<NumberField>, FieldError> {
    let size: f64 = combos
        .iter()
        .map(|c| {
            let s: f64 = c
                .iter()
                .enumerate()
                .map(|(g, &i)| approx[g][i].abs_upper().to_f64() * ks[g].unsigned_abs() as f64)
                .sum();
            (1.0 + s).log2()
        })
        .sum();
    let start = 128 + size.ceil() as u32;
    for prec in precision_schedule(start) {
        let roots: Vec<Vec<CertifiedComplex>> = polys
            .iter()
            .zip(approx)
            .map(|(p, a)| certify_roots(p, a, prec).ok_or(FieldError::RootIsolation(p.len() - 1)))
            .collect::<Result<_, _>>()?;
        let thetas: Vec<CertifiedComplex> = combos
            .iter()
            .map(|c| {
                c.iter()
                    .enumerate()
                    .fold(CertifiedComplex::zero(prec), |acc, (g, &i)| {
                        acc.add(&roots[g][i].mul_int(ks[g]))
                    })
            })
            .collect();
        let distinct = (0..thetas.len())
            .all(|i| (i + 1..thetas.len()).all(|j| thetas[i].certainly_ne(&thetas[j])));
        if !distinct {
            if prec >= 4 * start {
                return Ok(None);
            }
            continue;
        }
        let Some(charpoly) = poly::round_to_ints(&poly::from_roots(&thetas, prec)) else {
            continue;
        };
        let Some((minpoly, subset)) = minimal_factor(&charpoly, &thetas, prec)? else {
            continue;
        };
        let field_thetas: Vec<CertifiedComplex> =
            subset.iter().map(|&i| thetas[i].clone()).collect();
        let mut gen_g = Vec::with_capacity(polys.len());
        let mut pinned = true;
        for g in 0..polys.len() {
            let images: Vec<CertifiedComplex> = subset
                .iter()
                .map(|&i| roots[g][combos[i][g]].clone())
                .collect();
            match interpolate(&minpoly, &field_thetas, &images, prec) {
                Interp::Ints(v) => gen_g.push(v),
                // The generator is not a polynomial in θ: θ is not primitive.
                Interp::NotIntegral => return Ok(None),
                Interp::Undecided => {
                    pinned = false;
                    break;
                }
            }
        }
        if !pinned {
            if prec >= 4 * start {
                return Ok(None);
            }
            continue;
        }
        let degree = minpoly.len() - 1;
        let discriminant = poly::discriminant(&poly::from_ints(&minpoly)).to_integer();
        let mut field = NumberField {
            defining_polynomial: minpoly,
            degree,
            embeddings: field_thetas.clone(),
            discriminant,
            labels: subset.iter().map(|&i| combos[i].clone()).collect(),
            generators: Vec::new(),
            refined: Mutex::new(field_thetas.clone()),
            derivative_inverse: OnceLock::new(),
        };
        let p = field.defining_q();
        for (g, gpoly) in gen_g.iter().enumerate() {
            let coords = poly::rem(
                &poly::mul(&poly::from_ints(gpoly), field.derivative_inverse()),
                &p,
            );
            // Exact check: the generator polynomial vanishes on the element.
            let val = eval_in_field(&polys[g], &coords, &p);
            if !val.is_empty() {
                return Ok(None);
            }
            // Its first image is the intended root.
            let img = poly::eval_complex(&coords, &field_thetas[0]);
            if !img.overlaps(&roots[g][combos[subset[0]][g]]) {
                return Ok(None);
            }
            field.generators.push(coords);
        }
        return Ok(Some(field));
    }
    Err(FieldError::PrecisionExhausted(crate::arith::MAX_PRECISION))
}

/// `f(a(θ)) mod P`.
pub(crate) fn eval_in_field(
    f: &[BigInt],
    a: &[num_rational::BigRational],
    p: &[num_rational::BigRational],
) -> QPoly {
    let mut acc: QPoly = Vec::new();
    for c in f.iter().rev() {
        acc = poly::rem(&poly::mul(&acc, a), p);
        acc = poly::add(&acc, &[poly::q(c.clone())]);
    }
    acc
}

/// Integer content helper used by the element code.
pub(crate) fn lcm_of_denominators(a: &[num_rational::BigRational]) -> BigInt {
    a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

pub(crate) fn abs_bits(a: &[num_rational::BigRational]) -> u64 {
    a.iter()
        .map(|c| c.numer().abs().bits() + c.denom().bits())
        .max()
        .unwrap_or(0)
}
