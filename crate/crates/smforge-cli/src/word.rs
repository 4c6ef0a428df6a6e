// SPDX-License-Identifier: Apache-2.0
//! Parser for the element syntax accepted by `indep`.
//!
//! An element is a product of factors joined by `*` or `/`. A factor is a
//! rational constant such as `5` or `-3/2`, or a singular modulus `j(Δ,i)`
//! with an optional integer exponent `^e`. The index `i` selects the `i`-th
//! reduced form of discriminant `Δ` in canonical order, starting at 0.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse element {input:?}: {reason}")]
pub struct ParseError {
    input: String,
    reason: String,
}

/// `j(disc, index)^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Letter {
    pub disc: i64,
    pub index: usize,
    pub exp: i64,
}

/// `constant · ∏ letters`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSpec {
    pub constant: BigRational,
    pub letters: Vec<Letter>,
}

impl ElementSpec {
    /// Discriminants in order of first appearance.
    pub fn discs(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for l in &self.letters {
            if !out.contains(&l.disc) {
                out.push(l.disc);
            }
        }
        out
    }
}

/// Split at top-level `*` and `/`, keeping the operator that precedes each
/// factor. Operators inside `j(...)` are not separators.
fn factors(s: &str) -> Vec<(bool, &str)> {
    let mut out = Vec::new();
    let (mut depth, mut start, mut divide) = (0usize, 0usize, false);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            '*' | '/' if depth == 0 => {
                // `-3/2` is a single rational factor, so `/` between two
                // digit runs stays inside the factor.
                let next_is_digit = s[i + 1..].starts_with(|d: char| d.is_ascii_digit());
                let prev_is_digit =
                    s[start..i].chars().all(|d| d.is_ascii_digit() || d == '-') && i > start;
                if c == '/' && next_is_digit && prev_is_digit {
                    continue;
                }
                out.push((divide, &s[start..i]));
                start = i + 1;
                divide = c == '/';
            }
            _ => {}
        }
    }
    out.push((divide, &s[start..]));
    out
}

fn parse_letter(f: &str) -> Option<Letter> {
    let rest = f.strip_prefix("j(")?;
    let close = rest.find(')')?;
    let (disc, index) = rest[..close].split_once(',')?;
    let tail = &rest[close + 1..];
    let exp = match tail.strip_prefix('^') {
        Some(e) => e.parse().ok()?,
        None if tail.is_empty() => 1,
        None => return None,
    };
    Some(Letter {
        disc: disc.parse().ok()?,
        index: index.parse().ok()?,
        exp,
    })
}

fn parse_constant(f: &str) -> Option<BigRational> {
    let (base, exp) = match f.split_once('^') {
        Some((b, e)) => (b, e.parse::<i32>().ok()?),
        None => (f, 1),
    };
    let r = BigRational::from_str(base).ok()?;
    if r.is_zero() {
        return None;
    }
    Some(num_traits::pow::Pow::pow(r, exp))
}

impl FromStr for ElementSpec {
    type Err = ParseError;

    fn from_str(input: &str) -> Result<ElementSpec, ParseError> {
        let fail = |reason: &str| ParseError {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(fail("empty"));
        }
        let mut spec = ElementSpec {
            constant: BigRational::one(),
            letters: Vec::new(),
        };
        for (divide, f) in factors(&s) {
            if f.is_empty() {
                return Err(fail("empty factor"));
            }
            let (negate, bare) = match f.strip_prefix('-') {
                Some(rest) if rest.starts_with("j(") => (true, rest),
                _ => (false, f),
            };
            if negate {
                spec.constant = -spec.constant;
            }
            if let Some(mut l) = parse_letter(bare) {
                if divide {
                    l.exp = -l.exp;
                }
                spec.letters.push(l);
            } else if let Some(c) = parse_constant(f) {
                spec.constant = if divide {
                    spec.constant / c
                } else {
                    spec.constant * c
                };
            } else {
                return Err(fail(&format!("bad factor {f:?}")));
            }
        }
        if spec.discs().len() > 2 {
            return Err(fail("at most two discriminants may appear"));
        }
        Ok(spec)
    }
}

/// Exponent ratio `k/l` as text, for the JSON verdict.
pub fn ratio_text(k: i64, l: i64) -> String {
    let r = BigRational::new(BigInt::from(k), BigInt::from(l));
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn products_and_quotients() {
        let s: ElementSpec = "j(-23,0)^2 * j(-92,1) / 5".parse().unwrap();
        assert_eq!(s.constant, BigRational::new(1.into(), 5.into()));
        assert_eq!(
            s.letters,
            vec![
                Letter {
                    disc: -23,
                    index: 0,
                    exp: 2
                },
                Letter {
                    disc: -92,
                    index: 1,
                    exp: 1
                }
            ]
        );
        assert_eq!(s.discs(), vec![-23, -92]);
    }

    #[test]
    fn rational_constants() {
        let s: ElementSpec = "-3/2".parse().unwrap();
        assert_eq!(s.constant, BigRational::new((-3).into(), 2.into()));
        let s: ElementSpec = "1728".parse().unwrap();
        assert!(s.letters.is_empty());
        let s: ElementSpec = "2^3/j(-7,0)".parse().unwrap();
        assert_eq!(s.constant, BigRational::from_integer(8.into()));
        assert_eq!(s.letters[0].exp, -1);
        let s: ElementSpec = "-j(-23,1)^3".parse().unwrap();
        assert_eq!(s.constant, -BigRational::one());
        assert_eq!(
            s.letters,
            vec![Letter {
                disc: -23,
                index: 1,
                exp: 3
            }]
        );
    }

    #[test]
    fn rejects_garbage() {
        for bad in [
            "",
            "j(-23)",
            "j(-23,0)^x",
            "0",
            "j(-3,0)*j(-4,0)*j(-7,0)",
            "x",
        ] {
            assert!(bad.parse::<ElementSpec>().is_err(), "{bad}");
        }
    }
}
