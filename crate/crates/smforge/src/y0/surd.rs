// SPDX-License-Identifier: Apache-2.0
//! Exact imaginary quadratic surds `p + q√d` with rational `p`, `q` and a
//! squarefree negative `d`.

use super::Y0Error;
use crate::arith::{funcs, CertifiedComplex, CertifiedReal};
use crate::forms::ReducedForm;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    pub p: BigRational,
    pub q: BigRational,
    /// Squarefree and negative.
    pub d: i64,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `(s, d0)` with `d = s² d0` and `d0` squarefree.
fn squarefree_split(d: i64) -> (i64, i64) {
    let mut s = 1i64;
    let mut rest = d;
    let mut f = 2i64;
    while f * f <= rest.abs() {
        while rest % (f * f) == 0 {
            rest /= f * f;
            s *= f;
        }
        f += 1;
    }
    (s, rest)
}

impl Surd {
    /// `p + q√radicand` for any negative radicand; the square part is
    /// absorbed into `q`. Requires `q > 0` so the point lies in the upper
    /// half plane.
    pub fn new(p: BigRational, q: BigRational, radicand: i64) -> Result<Surd, Y0Error> {
        if radicand >= 0 {
            return Err(Y0Error::BadSurd(format!(
                "radicand {radicand} is not negative"
            )));
        }
        let (s, d) = squarefree_split(radicand);
        let q = q * rat(s);
        if !q.is_positive() {
            return Err(Y0Error::NotInUpperHalfPlane);
        }
        Ok(Surd { p, q, d })
    }

    /// `τ = (−b + √Δ)/(2a)` of a reduced form.
    pub fn of_form(f: &ReducedForm) -> Surd {
        let two_a = BigInt::from(2 * f.a);
        Surd::new(
            BigRational::new(BigInt::from(-f.b), two_a.clone()),
            BigRational::new(BigInt::one(), two_a),
            f.discriminant(),
        )
        .expect("reduced forms give points of the upper half plane")
    }

    /// `|τ|² = p² + q²|d|`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p + &self.q * &self.q * rat(-self.d)
    }

    /// `(Im τ)² = q²|d|`.
    pub fn im_squared(&self) -> BigRational {
        &self.q * &self.q * rat(-self.d)
    }

    pub fn add_rational(&self, r: &BigRational) -> Surd {
        Surd {
            p: &self.p + r,
            q: self.q.clone(),
            d: self.d,
        }
    }

    pub fn add_int(&self, n: i64) -> Surd {
        self.add_rational(&rat(n))
    }

    /// Multiplication by a positive rational keeps the point in `H`.
    pub fn scale(&self, r: &BigRational) -> Surd {
        assert!(
            r.is_positive(),
            "scaling by a non-positive rational leaves H"
        );
        Surd {
            p: &self.p * r,
            q: &self.q * r,
            d: self.d,
        }
    }

    /// `−1/τ = −τ̄/|τ|²`, again in `H`.
    pub fn neg_inv(&self) -> Surd {
        let n = self.norm();
        Surd {
            p: -&self.p / &n,
            q: &self.q / &n,
            d: self.d,
        }
    }

    /// Möbius image `(aτ + b)/(cτ + d)` for an integer matrix of positive
    /// determinant.
    pub fn mobius(&self, m: [i64; 4]) -> Surd {
        let [a, b, c, dd] = m;
        let det = a * dd - b * c;
        assert!(det > 0, "matrix must have positive determinant");
        // (aτ+b)(cτ̄+d) / |cτ+d|², whose imaginary part is det·Im τ/|cτ+d|².
        let (p, q) = (&self.p, &self.q);
        let den_re = rat(c) * p + rat(dd);
        let den_im = rat(c) * q;
        let den = &den_re * &den_re + &den_im * &den_im * rat(-self.d);
        let num_re = rat(a) * p + rat(b);
        let num_im = rat(a) * q;
        // (num_re + num_im s)(den_re − den_im s) with s² = d.
        let re = &num_re * &den_re - &num_im * &den_im * rat(self.d);
        let im = &num_im * &den_re - &num_re * &den_im;
        Surd {
            p: re / &den,
            q: im / &den,
            d: self.d,
        }
    }

    /// Whether `τ` lies in the canonical fundamental domain:
    /// `−1/2 ≤ Re τ < 1/2`, `|τ| ≥ 1`, and `Re τ ≤ 0` when `|τ| = 1`.
    pub fn in_fundamental_domain(&self) -> bool {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let n = self.norm();
        self.p >= -half.clone()
            && self.p < half
            && n >= BigRational::one()
            && (n != BigRational::one() || !self.p.is_positive())
    }

    /// The canonical representative of the `SL₂(Z)`-orbit, found by the
    /// translate and invert loop in exact arithmetic.
    pub fn reduce(&self) -> Surd {
        let mut t = self.clone();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        loop {
            // Translate into −1/2 ≤ Re < 1/2.
            let shift = (&t.p + &half).floor();
            t = t.add_rational(&-shift);
            let n = t.norm();
            if n < BigRational::one() {
                t = t.neg_inv();
            } else {
                if n == BigRational::one() && t.p.is_positive() {
                    t = t.neg_inv();
                }
                return t;
            }
        }
    }

    pub fn to_ball(&self, prec: u32) -> CertifiedComplex {
        let wp = prec + 16;
        let re = CertifiedReal::from_rational(&self.p, wp);
        let im = funcs::sqrt_int(self.d.unsigned_abs(), wp)
            .mul(&CertifiedReal::from_rational(&self.q, wp));
        CertifiedComplex::from_parts(&re, &im).with_prec(prec)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}+{}*sqrt({}))", self.p, self.q, self.d)
    }
}

impl Serialize for Surd {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Y0Error> {
    let t = s.trim().trim_start_matches('+').trim();
    BigRational::from_str(t).map_err(|_| Y0Error::BadSurd(format!("not a rational number: {s:?}")))
}

impl FromStr for Surd {
    type Err = Y0Error;

    /// Accepts `(p+q*sqrt(D))`, with either part optional and `-` allowed,
    /// for example `(-1/2+1/2*sqrt(-23))`, `2*sqrt(-1)` or `sqrt(-7)`.
    fn from_str(text: &str) -> Result<Surd, Y0Error> {
        let bad = || Y0Error::BadSurd(text.to_string());
        let mut s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.starts_with('(') && s.ends_with(')') && s.matches('(').count() == 2 {
            s = s[1..s.len() - 1].to_string();
        }
        let k = s.find("sqrt(").ok_or_else(bad)?;
        let close = s[k..].find(')').map(|i| i + k).ok_or_else(bad)?;
        if close + 1 != s.len() {
            return Err(bad());
        }
        let radicand: i64 = s[k + 5..close].parse().map_err(|_| bad())?;
        let prefix = s[..k].strip_suffix('*').unwrap_or(&s[..k]);
        let split = prefix
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-') && !prefix[..i].ends_with('/'))
            .map(|(i, _)| i)
            .next_back();
        let (p_part, q_part) = match split {
            Some(i) => (&prefix[..i], &prefix[i..]),
            None => ("", prefix),
        };
        let p = if p_part.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(p_part)?
        };
        let q = match q_part {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other)?,
        };
        Surd::new(p, q, radicand)
    }
}
