// SPDX-License-Identifier: Apache-2.0
//! Dense univariate polynomials over Q, Z and Z/pZ.
//!
//! Coefficient vectors are ascending (`c[i]` multiplies `Xⁱ`) and trimmed so
//! the last entry is nonzero; the zero polynomial is the empty vector.
//! Degrees in this crate stay small (a few dozen at most), so schoolbook
//! algorithms are used throughout.

use crate::arith::CertifiedComplex;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type QPoly = Vec<BigRational>;
pub type ZPoly = Vec<BigInt>;

pub fn q(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn trim<T: Zero>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Degree, with `None` for the zero polynomial.
pub fn degree<T>(p: &[T]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub fn from_ints(p: &[BigInt]) -> QPoly {
    trim(p.iter().map(|c| q(c.clone())).collect())
}

pub fn from_i64(p: &[i64]) -> QPoly {
    trim(p.iter().map(|&c| q(c)).collect())
}

/// Integer coefficients if every coefficient is integral.
pub fn to_ints(p: &[BigRational]) -> Option<ZPoly> {
    p.iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect()
}

pub fn add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

pub fn scale(a: &[BigRational], s: &BigRational) -> QPoly {
    trim(a.iter().map(|c| c * s).collect())
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut r: QPoly = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut quo = vec![BigRational::zero(); r.len() - db];
    for k in (0..quo.len()).rev() {
        let c = &r[k + db] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        quo[k] = c;
    }
    r.truncate(db);
    (trim(quo), trim(r))
}

pub fn rem(a: &[BigRational], b: &[BigRational]) -> QPoly {
    divrem(a, b).1
}

pub fn monic(a: &[BigRational]) -> QPoly {
    match a.last() {
        Some(l) => {
            let inv = l.recip();
            scale(a, &inv)
        }
        None => Vec::new(),
    }
}

/// Monic greatest common divisor.
pub fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// `(g, s, t)` with `s a + t b = g = gcd(a, b)` monic.
pub fn xgcd(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly, QPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![q(1)], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![q(1)]);
    while !r1.is_empty() {
        let (quo, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&quo, &s1));
        let t = sub(&t0, &mul(&quo, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.last().cloned() {
        Some(l) => {
            let inv = l.recip();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
        None => (Vec::new(), s0, t0),
    }
}

pub fn derivative<T>(a: &[T]) -> Vec<T>
where
    T: Clone + Zero + std::ops::Mul<BigInt, Output = T>,
{
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * BigInt::from(i))
            .collect(),
    )
}

pub fn eval(a: &[BigRational], x: &BigRational) -> BigRational {
    a.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub fn eval_int(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Evaluate a rational polynomial at a complex ball.
pub fn eval_complex(a: &[BigRational], x: &CertifiedComplex) -> CertifiedComplex {
    let prec = x.prec();
    let mut acc = CertifiedComplex::zero(prec);
    for c in a.iter().rev() {
        let cr = crate::arith::CertifiedReal::from_rational(c, prec);
        acc = acc.mul(x).add(&CertifiedComplex::from_real(&cr));
    }
    acc
}

/// Exact determinant of an integer matrix (Bareiss fraction-free elimination).
pub fn det_int(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Exact determinant of a rational matrix by Gaussian elimination.
pub fn det_rational(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut d = q(1);
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if piv != k {
            m.swap(piv, k);
            d = -d;
        }
        let p = m[k][k].clone();
        d *= &p;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &p;
            let (top, bottom) = m.split_at_mut(i);
            for (x, y) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *x -= &f * y;
            }
        }
    }
    d
}

/// Resultant through the Sylvester matrix.
pub fn resultant(a: &[BigRational], b: &[BigRational]) -> BigRational {
    let (Some(da), Some(db)) = (degree(a), degree(b)) else {
        return BigRational::zero();
    };
    let n = da + db;
    if n == 0 {
        return q(1);
    }
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for i in 0..db {
        for (j, c) in a.iter().rev().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..da {
        for (j, c) in b.iter().rev().enumerate() {
            m[db + i][i + j] = c.clone();
        }
    }
    det_rational(m)
}

/// Discriminant of a monic polynomial, `(−1)^{n(n−1)/2} Res(f, f′)`.
pub fn discriminant(a: &[BigRational]) -> BigRational {
    let n = degree(a).unwrap_or(0);
    let r = resultant(a, &derivative(a));
    let lead = a.last().cloned().unwrap_or_else(|| q(1));
    let v = r / lead;
    if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `∏ (X − r)` over the given complex balls.
pub fn from_roots(roots: &[CertifiedComplex], prec: u32) -> Vec<CertifiedComplex> {
    let mut poly = vec![CertifiedComplex::one(prec)];
    for r in roots {
        let mut next = vec![CertifiedComplex::zero(prec); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(r));
        }
        poly = next;
    }
    poly
}

/// Round a vector of complex balls to integers when each real part lies
/// within 1/4 of one integer and each imaginary part within 1/4 of zero.
pub fn round_to_ints(coeffs: &[CertifiedComplex]) -> Option<ZPoly> {
    let quarter = crate::arith::CertifiedReal::ratio(1, 4, 64);
    coeffs
        .iter()
        .map(|c| {
            let n = c.re().unique_integer()?;
            c.im().abs().certainly_lt(&quarter).then_some(n)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Arithmetic modulo a word-sized prime.

pub type FpPoly = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub fn reduce_mod(a: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    trim(
        a.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap_or(0))
            .collect(),
    )
}

fn fp_trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| {
                let x = *a.get(i).unwrap_or(&0);
                let y = *b.get(i).unwrap_or(&0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    fp_trim(out)
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = b.len() - 1;
    let inv = invmod(b[db], p);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), fp_trim(r));
    }
    let mut quo = vec![0u64; r.len() - db];
    for k in (0..quo.len()).rev() {
        let c = mulmod(r[k + db], inv, p);
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - mulmod(c, bj, p)) % p;
            }
        }
        quo[k] = c;
    }
    r.truncate(db);
    (fp_trim(quo), fp_trim(r))
}

fn fp_monic(a: &[u64], p: u64) -> FpPoly {
    match a.last() {
        Some(&l) => {
            let inv = invmod(l, p);
            a.iter().map(|&c| mulmod(c, inv, p)).collect()
        }
        None => Vec::new(),
    }
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let (mut x, mut y) = (fp_trim(a.to_vec()), fp_trim(b.to_vec()));
    while !y.is_empty() {
        let r = fp_divrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// `base^e mod m` for a polynomial modulus.
fn fp_powmod(base: &[u64], mut e: BigInt, m: &[u64], p: u64) -> FpPoly {
    let mut r: FpPoly = vec![1];
    let mut b = fp_divrem(base, m, p).1;
    let two = BigInt::from(2);
    while e > BigInt::zero() {
        if e.is_odd() {
            r = fp_divrem(&fp_mul(&r, &b, p), m, p).1;
        }
        b = fp_divrem(&fp_mul(&b, &b, p), m, p).1;
        e /= &two;
    }
    r
}

fn fp_derivative(a: &[u64], p: u64) -> FpPoly {
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect(),
    )
}

/// True when `a mod p` keeps its degree and is squarefree.
pub fn squarefree_mod(a: &[BigInt], p: u64) -> bool {
    let f = reduce_mod(a, p);
    if f.len() != a.len() {
        return false;
    }
    let g = fp_gcd(&f, &fp_derivative(&f, p), p);
    g.len() == 1
}

/// Tiny deterministic generator for the random splitting polynomials.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Split a product of distinct monic irreducibles of degree `d`.
fn equal_degree_split(f: &[u64], d: usize, p: u64, rng: &mut SplitMix, out: &mut Vec<FpPoly>) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.to_vec());
        return;
    }
    loop {
        let u: FpPoly = fp_trim((0..n).map(|_| rng.next() % p).collect());
        if u.len() < 2 {
            continue;
        }
        let w = if p == 2 {
            // Trace map u + u² + … + u^{2^{d−1}}.
            let mut acc = u.clone();
            let mut t = u.clone();
            for _ in 1..d {
                t = fp_divrem(&fp_mul(&t, &t, p), f, p).1;
                acc = fp_sub(&acc, &fp_sub(&[], &t, p), p);
            }
            acc
        } else {
            let e = (BigInt::from(p).pow(d as u32) - 1) / 2;
            fp_sub(&fp_powmod(&u, e, f, p), &[1], p)
        };
        let g = fp_gcd(f, &w, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = fp_monic(&fp_divrem(f, &g, p).0, p);
            equal_degree_split(&g, d, p, rng, out);
            equal_degree_split(&h, d, p, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a squarefree polynomial modulo `p` (distinct
/// degree followed by Cantor–Zassenhaus), sorted for determinism.
pub fn factor_mod_p(a: &[BigInt], p: u64) -> Vec<FpPoly> {
    let mut f = fp_monic(&reduce_mod(a, p), p);
    let mut out = Vec::new();
    let mut rng = SplitMix(0x5eed ^ p);
    let x: FpPoly = vec![0, 1];
    let mut xp = x.clone();
    let mut d = 0usize;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            out.push(f.clone());
            break;
        }
        xp = fp_powmod(&xp, BigInt::from(p), &f, p);
        let g = fp_gcd(&f, &fp_sub(&xp, &x, p), p);
        if g.len() > 1 {
            equal_degree_split(&g, d, p, &mut rng, &mut out);
            f = fp_monic(&fp_divrem(&f, &g, p).0, p);
            xp = fp_divrem(&xp, &f, p).1;
        }
    }
    out.sort();
    out
}

/// Monic irreducible factors of `a mod p` with their multiplicities, for
/// any `a` whose leading coefficient is a unit mod `p`. Sorted by factor.
pub fn factor_mod_p_multi(a: &[BigInt], p: u64) -> Vec<(FpPoly, usize)> {
    let mut f = fp_monic(&reduce_mod(a, p), p);
    let mut out = Vec::new();
    let mut rng = SplitMix(0x5eed ^ p);
    let x: FpPoly = vec![0, 1];
    let mut xp = x.clone();
    let mut d = 0usize;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            // Every factor has degree at least d, so f is irreducible.
            out.push((f.clone(), 1));
            break;
        }
        xp = fp_powmod(&xp, BigInt::from(p), &f, p);
        // x^{p^d} − x is squarefree, so g is the radical of the degree-d part.
        let g = fp_gcd(&f, &fp_sub(&xp, &x, p), p);
        if g.len() > 1 {
            let mut irr = Vec::new();
            equal_degree_split(&g, d, p, &mut rng, &mut irr);
            for h in irr {
                let mut e = 0;
                loop {
                    let (quo, r) = fp_divrem(&f, &h, p);
                    if !r.is_empty() {
                        break;
                    }
                    f = quo;
                    e += 1;
                }
                out.push((h, e));
            }
            f = fp_monic(&f, p);
            xp = fp_divrem(&xp, &f, p).1;
        }
    }
    out.sort();
    out
}

/// `a^e mod p`.
pub fn fp_pow(a: &[u64], e: usize, p: u64) -> FpPoly {
    (0..e).fold(vec![1], |acc, _| fp_mul(&acc, a, p))
}

/// Dedekind's criterion: for monic `f` with `f ≡ ∏ gᵢ^{eᵢ} mod p`, the order
/// `Z[X]/f` is `p`-maximal iff no `gᵢ` with `eᵢ ≥ 2` divides
/// `(f − g h)/p mod p`, where `g = ∏ gᵢ` and `h = ∏ gᵢ^{eᵢ−1}` are lifted
/// with coefficients in `[0, p)`. Returns the factorization when it holds.
pub fn dedekind_factors(f: &[BigInt], p: u64) -> Option<Vec<(FpPoly, usize)>> {
    let facs = factor_mod_p_multi(f, p);
    if facs.iter().all(|(_, e)| *e == 1) {
        return Some(facs);
    }
    let g = facs
        .iter()
        .fold(vec![1u64], |acc, (gi, _)| fp_mul(&acc, gi, p));
    let h = facs.iter().fold(vec![1u64], |acc, (gi, e)| {
        fp_mul(&acc, &fp_pow(gi, e - 1, p), p)
    });
    let to_z = |v: &[u64]| -> ZPoly { v.iter().map(|&c| BigInt::from(c)).collect() };
    let gh = zmul(&to_z(&g), &to_z(&h));
    let pb = BigInt::from(p);
    let big_f: ZPoly = (0..f.len().max(gh.len()))
        .map(|i| {
            let a = f.get(i).cloned().unwrap_or_default();
            let b = gh.get(i).cloned().unwrap_or_default();
            (a - b) / &pb
        })
        .collect();
    let fbar = reduce_mod(&big_f, p);
    let ok = facs
        .iter()
        .filter(|(_, e)| *e >= 2)
        .all(|(gi, _)| !fp_divrem(&fbar, gi, p).1.is_empty());
    ok.then_some(facs)
}

/// Lift a monic factor `g` of `f mod p` (with `f/g` coprime to `g` mod `p`)
/// to a monic `G ≡ g` dividing `f` modulo `p^k`.
pub fn hensel_lift(f: &[BigInt], g: &[u64], p: u64, k: u32) -> ZPoly {
    let fp = fp_monic(&reduce_mod(f, p), p);
    let h = fp_divrem(&fp, g, p).0;
    // Bezout s g + t h = 1 mod p.
    let (s, t) = fp_bezout(g, &h, p);
    let pb = BigInt::from(p);
    let to_z = |v: &[u64]| -> ZPoly { v.iter().map(|&c| BigInt::from(c)).collect() };
    let mut gz = to_z(g);
    let mut hz = to_z(&h);
    let fz: ZPoly = f.to_vec();
    let mut modulus = pb.clone();
    for _ in 1..k {
        // e = (f − G H) / p^i, reduced mod p.
        let gh = zmul(&gz, &hz);
        let e: ZPoly = (0..fz.len().max(gh.len()))
            .map(|i| {
                let a = fz.get(i).cloned().unwrap_or_default();
                let b = gh.get(i).cloned().unwrap_or_default();
                (a - b) / &modulus
            })
            .collect();
        let ep = reduce_mod(&e, p);
        // G += p^i (t e mod g), H += p^i (s e mod h).
        let dg = fp_divrem(&fp_mul(&t, &ep, p), g, p).1;
        let dh = fp_divrem(&fp_mul(&s, &ep, p), &h, p).1;
        for (i, c) in dg.iter().enumerate() {
            gz[i] += &modulus * BigInt::from(*c);
        }
        for (i, c) in dh.iter().enumerate() {
            hz[i] += &modulus * BigInt::from(*c);
        }
        modulus *= &pb;
    }
    gz.iter().map(|c| c.mod_floor(&modulus)).collect()
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn fp_bezout(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (quo, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&quo, &s1, p), p);
        let t = fp_sub(&t0, &fp_mul(&quo, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = invmod(r0[0], p);
    let sc = |v: &[u64]| v.iter().map(|&c| mulmod(c, inv, p)).collect::<FpPoly>();
    (sc(&s0), sc(&t0))
}

/// Rational roots of an integer polynomial (rational root theorem, with
/// trial divisors limited to `bound`); used only as a test oracle helper.
pub fn has_integer_root(a: &[BigInt], bound: u64) -> bool {
    if a.first().is_some_and(|c| c.is_zero()) {
        return true;
    }
    let c0 = a.first().map(|c| c.abs()).unwrap_or_default();
    (1..=bound).any(|d| {
        let db = BigInt::from(d);
        (c0.is_multiple_of(&db))
            && (eval_int(a, &db).is_zero() || eval_int(a, &-db.clone()).is_zero())
    })
}

/// Cyclotomic polynomial `Φ_k` with integer coefficients.
pub fn cyclotomic(k: u64) -> ZPoly {
    // X^k − 1 = ∏_{d | k} Φ_d.
    let mut num: QPoly = vec![BigRational::zero(); k as usize + 1];
    num[0] = q(-1);
    num[k as usize] = q(1);
    for d in 1..k {
        if k.is_multiple_of(d) {
            num = divrem(&num, &from_ints(&cyclotomic(d))).0;
        }
    }
    to_ints(&num).expect("cyclotomic polynomials are integral")
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}
