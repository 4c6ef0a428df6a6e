// SPDX-License-Identifier: Apache-2.0
//! Hilbert class polynomials by expanding `∏ (X − j(τ))` over `T_Δ` in ball
//! arithmetic and rounding.
//!
//! A coefficient is accepted only when its ball lies within 1/4 of a single
//! integer and its imaginary part is within 1/4 of zero. The whole expansion
//! is then repeated at twice the precision and must round to the same
//! integers.

use super::{conjugate_values, ModularError};
use crate::arith::{precision_schedule, CertifiedComplex, DEFAULT_PRECISION};
use crate::forms::{enumerate_forms, Discriminant};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};

/// Environment variable naming the on-disk cache directory.
pub const CACHE_ENV: &str = "SMFORGE_CACHE";

/// Monic minimal polynomial of the singular moduli of one discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPolynomial {
    pub disc: Discriminant,
    /// Leading coefficient first, constant term last.
    #[serde(with = "crate::serde_big::vec")]
    pub coefficients: Vec<BigInt>,
}

impl ClassPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Coefficients with the constant term first.
    pub fn ascending(&self) -> Vec<BigInt> {
        self.coefficients.iter().rev().cloned().collect()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Cache file body: `Δ h` then the coefficients, constant term last.
    pub fn to_cache_string(&self) -> String {
        let coeffs: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        format!("{} {}\n{}\n", self.disc, self.degree(), coeffs.join(" "))
    }

    pub fn parse_cache(text: &str) -> Option<ClassPolynomial> {
        let mut lines = text.lines();
        let mut head = lines.next()?.split_whitespace();
        let d: i64 = head.next()?.parse().ok()?;
        let h: usize = head.next()?.parse().ok()?;
        let coefficients: Vec<BigInt> = lines
            .next()?
            .split_whitespace()
            .map(|t| t.parse().ok())
            .collect::<Option<_>>()?;
        let disc = Discriminant::new(d).ok()?;
        if coefficients.len() != h + 1 || !coefficients[0].is_one() {
            return None;
        }
        Some(ClassPolynomial { disc, coefficients })
    }
}

/// Rough bit size of the largest coefficient, from `|j(τ)| ≈ e^{π√|Δ|/a}`.
fn size_bits(disc: Discriminant) -> u32 {
    let s = (disc.abs() as f64).sqrt() * std::f64::consts::PI / std::f64::consts::LN_2;
    let total: f64 = enumerate_forms(disc)
        .iter()
        .map(|f| s / f.a as f64 + 12.0)
        .sum();
    total.ceil() as u32
}

/// Expand and round at one precision; `None` when some coefficient is not
/// yet pinned to an integer.
fn expand_and_round(disc: Discriminant, prec: u32) -> Result<Option<Vec<BigInt>>, ModularError> {
    let points = conjugate_values(disc, prec)?;
    let wp = prec + 32;
    // Ascending coefficients of the running product.
    let mut poly = vec![CertifiedComplex::one(wp)];
    for p in &points {
        let x = p.j_value.clone().with_prec(wp);
        let mut next = vec![CertifiedComplex::zero(wp); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(&x));
        }
        poly = next;
    }
    let quarter = crate::arith::CertifiedReal::ratio(1, 4, 64);
    let mut out = Vec::with_capacity(poly.len());
    for c in poly.iter().rev() {
        let Some(n) = c.re().unique_integer() else {
            return Ok(None);
        };
        if !c.im().abs().certainly_lt(&quarter) {
            return Ok(None);
        }
        out.push(n);
    }
    Ok(Some(out))
}

/// Compute the class polynomial, escalating precision as needed.
pub fn class_polynomial(disc: Discriminant, prec: u32) -> Result<ClassPolynomial, ModularError> {
    let start = prec.max(size_bits(disc) + 64);
    for p in precision_schedule(start) {
        let Some(coeffs) = expand_and_round(disc, p)? else {
            continue;
        };
        match expand_and_round(disc, 2 * p)? {
            Some(again) if again == coeffs => {
                return Ok(ClassPolynomial {
                    disc,
                    coefficients: coeffs,
                });
            }
            Some(_) => return Err(ModularError::UnstablePolynomial { disc: disc.value() }),
            None => continue,
        }
    }
    Err(ModularError::AmbiguousRounding(disc.value()))
}

/// Cache directory from the environment, if configured.
pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).map(PathBuf::from)
}

fn cache_path(dir: &Path, disc: Discriminant) -> PathBuf {
    dir.join(format!("hcp_{}.txt", disc.abs()))
}

/// Write-then-rename so concurrent readers see either nothing or a whole file.
fn write_atomic(path: &Path, body: &str) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("hcp"),
        std::process::id()
    ));
    fs::write(&tmp, body)?;
    fs::rename(&tmp, path)
}

/// Like [`class_polynomial`] but consulting the cache directory in `dir`
/// (or `SMFORGE_CACHE` when `dir` is `None`). Unreadable or malformed cache
/// entries are recomputed and overwritten.
pub fn class_polynomial_cached(
    disc: Discriminant,
    dir: Option<&Path>,
) -> Result<ClassPolynomial, ModularError> {
    let dir = dir.map(Path::to_path_buf).or_else(cache_dir);
    if let Some(dir) = &dir {
        let path = cache_path(dir, disc);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Some(p) = ClassPolynomial::parse_cache(&text) {
                if p.disc == disc && p.degree() == disc.class_number() {
                    return Ok(p);
                }
            }
        }
    }
    let p = class_polynomial(disc, DEFAULT_PRECISION)?;
    if let Some(dir) = &dir {
        write_atomic(&cache_path(dir, disc), &p.to_cache_string())
            .map_err(|e| ModularError::Cache(e.to_string()))?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cache_format_roundtrip() {
        let p = ClassPolynomial {
            disc: Discriminant::new(-4).unwrap(),
            coefficients: vec![BigInt::one(), BigInt::from(-1728)],
        };
        assert_eq!(p.to_cache_string(), "-4 1\n1 -1728\n");
        assert_eq!(ClassPolynomial::parse_cache(&p.to_cache_string()), Some(p));
        assert!(ClassPolynomial::parse_cache("-4 2\n1 -1728\n").is_none());
    }
}
