// SPDX-License-Identifier: Apache-2.0
//! Reduced positive definite binary quadratic forms of negative discriminant.
//!
//! `T_Δ` is the set of primitive triples `(a, b, c)` with `b² − 4ac = Δ` and
//! `−a < b ≤ a < c` or `0 ≤ b ≤ a = c`. Its size is the class number `h(Δ)`
//! and it parametrises the conjugates of the singular moduli of discriminant Δ.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormsError {
    #[error("{0} is not a negative discriminant (need Δ < 0 and Δ ≡ 0, 1 mod 4)")]
    InvalidDiscriminant(i64),
}

/// A validated negative discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Discriminant(i64);

impl TryFrom<i64> for Discriminant {
    type Error = FormsError;
    fn try_from(v: i64) -> Result<Self, FormsError> {
        Discriminant::new(v)
    }
}

impl From<Discriminant> for i64 {
    fn from(d: Discriminant) -> i64 {
        d.0
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Discriminant {
    pub fn new(value: i64) -> Result<Discriminant, FormsError> {
        if value < 0 && matches!(value.rem_euclid(4), 0 | 1) {
            Ok(Discriminant(value))
        } else {
            Err(FormsError::InvalidDiscriminant(value))
        }
    }

    pub fn value(&self) -> i64 {
        self.0
    }

    pub fn abs(&self) -> u64 {
        self.0.unsigned_abs()
    }

    /// `r₄(Δ) ∈ {0, 1}` with `Δ ≡ r₄ mod 4`.
    pub fn r4(&self) -> i64 {
        self.0.rem_euclid(4)
    }

    /// `h(Δ)`, memoised in a process-wide write-once table.
    pub fn class_number(&self) -> usize {
        static CACHE: OnceLock<RwLock<HashMap<i64, usize>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(&h) = cache.read().unwrap_or_else(|e| e.into_inner()).get(&self.0) {
            return h;
        }
        let h = enumerate(*self).len();
        cache
            .write()
            .unwrap_or_else(|e| e.into_inner())
            .entry(self.0)
            .or_insert(h);
        h
    }

    /// Largest odd-or-even divisor `f` with `Δ/f²` still a discriminant.
    pub fn fundamental_part(&self) -> (i64, i64) {
        let mut d = self.0;
        let mut f = 1i64;
        let mut p = 2i64;
        while p * p <= d.abs() {
            while d % (p * p) == 0 && Discriminant::new(d / (p * p)).is_ok() {
                d /= p * p;
                f *= p;
            }
            p += 1;
        }
        (d, f)
    }
}

/// `r₄(Δ)` for a raw integer, rejecting non-discriminants.
pub fn r4_of(value: i64) -> Result<i64, FormsError> {
    Ok(Discriminant::new(value)?.r4())
}

/// An element of `T_Δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Display for ReducedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl ReducedForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    pub fn is_reduced(&self) -> bool {
        (-self.a < self.b && self.b <= self.a && self.a < self.c)
            || (0 <= self.b && self.b <= self.a && self.a == self.c)
    }

    /// True when `j(τ)` is real, i.e. the form is equivalent to its opposite.
    pub fn is_ambiguous(&self) -> bool {
        self.b == 0 || self.b == self.a || self.a == self.c
    }

    /// The reduced form of the opposite class `(a, −b, c)`.
    pub fn opposite(&self) -> ReducedForm {
        reduce(self.a, -self.b, self.c)
    }
}

/// Reduce a positive definite form to the unique element of its class in `T_Δ`.
pub fn reduce(mut a: i64, mut b: i64, mut c: i64) -> ReducedForm {
    debug_assert!(a > 0 && c > 0);
    loop {
        // Normalise −a < b ≤ a.
        if b > a || b <= -a {
            let two_a = 2 * a;
            let k = Integer::div_floor(&(a - b), &two_a);
            let nb = b + k * two_a;
            c = (nb * nb - (b * b - 4 * a * c)) / (4 * a);
            b = nb;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        return ReducedForm { a, b, c };
    }
}

fn enumerate(d: Discriminant) -> Vec<ReducedForm> {
    let n = d.abs() as i64;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            let num = b * b + n;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let f = ReducedForm { a, b, c };
            if c >= a && f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out.sort_by_key(|f| (f.a, f.b));
    out
}

/// `T_Δ` in lexicographic `(a, b)` order.
pub fn enumerate_forms(d: Discriminant) -> Vec<ReducedForm> {
    enumerate(d)
}

pub fn class_number(d: Discriminant) -> usize {
    d.class_number()
}

/// The unique form with `a = 1`: `(1, r₄, (r₄ − Δ)/4)`.
pub fn dominant_form(d: Discriminant) -> ReducedForm {
    let r = d.r4();
    ReducedForm {
        a: 1,
        b: r,
        c: (r - d.value()) / 4,
    }
}

/// Result of [`leading_coeff_census`].
#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub disc: i64,
    pub a: i64,
    pub forms: Vec<ReducedForm>,
    /// Each structural claim checked for this `(Δ, a)`: `(description, holds)`.
    pub claims: Vec<(String, bool)>,
}

impl Census {
    pub fn count(&self) -> usize {
        self.forms.len()
    }

    pub fn all_claims_hold(&self) -> bool {
        self.claims.iter().all(|(_, ok)| *ok)
    }
}

/// Forms of `T_Δ` with first coefficient `a`, together with the applicable
/// counting claims (two forms with a = 2, 4, 8 above the thresholds 23, 71,
/// 239 for Δ ≡ 1 mod 8, none with a = 2 for Δ ≡ 4 mod 16).
pub fn leading_coeff_census(d: Discriminant, a: i64) -> Census {
    let forms: Vec<ReducedForm> = enumerate(d).into_iter().filter(|f| f.a == a).collect();
    let mut claims = Vec::new();
    let n = d.abs() as i64;
    let one_mod_8 = d.value().rem_euclid(8) == 1;
    for &(aa, thr) in &[(2i64, 23i64), (4, 71), (8, 239)] {
        if aa == a && one_mod_8 && n >= thr {
            claims.push((
                format!("Δ ≡ 1 mod 8, |Δ| ≥ {thr}: two forms with a = {aa}"),
                forms.len() == 2,
            ));
        }
    }
    if a == 2 && d.value().rem_euclid(16) == 4 {
        claims.push((
            "Δ ≡ 4 mod 16: no form with a = 2".to_string(),
            forms.is_empty(),
        ));
    }
    Census {
        disc: d.value(),
        a,
        forms,
        claims,
    }
}

/// Form class group of discriminant Δ, used internally to label the Galois
/// action on singular moduli (`σ_c(x_b) = x_{c·b}`).
#[derive(Clone, Debug)]
pub struct ClassGroup {
    pub disc: Discriminant,
    pub forms: Vec<ReducedForm>,
    index: HashMap<ReducedForm, usize>,
    table: Vec<Vec<usize>>,
}

impl ClassGroup {
    pub fn new(d: Discriminant) -> ClassGroup {
        let forms = enumerate(d);
        let index: HashMap<ReducedForm, usize> =
            forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let h = forms.len();
        let mut table = vec![vec![0usize; h]; h];
        for i in 0..h {
            for j in 0..h {
                let f = compose(&forms[i], &forms[j]);
                table[i][j] = index[&f];
            }
        }
        ClassGroup {
            disc: d,
            forms,
            index,
            table,
        }
    }

    pub fn order(&self) -> usize {
        self.forms.len()
    }

    /// Index of the principal form (always 0 in lexicographic order).
    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, f: &ReducedForm) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.index[&self.forms[i].opposite()]
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != self.identity() {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    /// True when every element has order at most 2.
    pub fn is_elementary_2(&self) -> bool {
        (0..self.order()).all(|i| self.mul(i, i) == self.identity())
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    // Returns (g, x, y) with a x + b y = g ≥ 0.
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = Integer::div_floor(&r0, &r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Gauss composition of two primitive forms of the same discriminant,
/// followed by reduction.
pub fn compose(f1: &ReducedForm, f2: &ReducedForm) -> ReducedForm {
    let d = f1.discriminant();
    debug_assert_eq!(d, f2.discriminant());
    let (a1, b1) = (f1.a as i128, f1.b as i128);
    let (a2, b2) = (f2.a as i128, f2.b as i128);
    let dd = d as i128;
    let s = (b1 + b2) / 2;
    // e = gcd(a1, a2, s) = u a1 + v a2 + w s.
    let (g1, x1, y1) = ext_gcd(a1 as i64, a2 as i64);
    let (e, x2, y2) = ext_gcd(g1, s as i64);
    let (u, v, w) = (
        (x2 as i128) * (x1 as i128),
        (x2 as i128) * (y1 as i128),
        y2 as i128,
    );
    let e = e as i128;
    let a3 = a1 * a2 / (e * e);
    let num = u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + dd) / 2;
    let b3 = (num / e).rem_euclid(2 * a3);
    let c3 = (b3 * b3 - dd) / (4 * a3);
    debug_assert_eq!(b3 * b3 - 4 * a3 * c3, dd);
    reduce_wide(a3, b3, c3)
}

fn reduce_wide(mut a: i128, mut b: i128, mut c: i128) -> ReducedForm {
    loop {
        if b > a || b <= -a {
            let two_a = 2 * a;
            let k = Integer::div_floor(&(a - b), &two_a);
            let nb = b + k * two_a;
            let d = b * b - 4 * a * c;
            c = (nb * nb - d) / (4 * a);
            b = nb;
        }
        if a > c {
            std::mem::swap(&mut a, &mut c);
            b = -b;
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        return ReducedForm {
            a: a as i64,
            b: b as i64,
            c: c as i64,
        };
    }
}

/// All discriminants `Δ` with `|Δ| ≤ bound` and `h(Δ) = h`.
pub fn discriminants_with_class_number(h: usize, bound: u64) -> Vec<Discriminant> {
    (3..=bound as i64)
        .filter_map(|n| Discriminant::new(-n).ok())
        .filter(|d| d.class_number() == h)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: i64) -> Discriminant {
        Discriminant::new(v).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(r4_of(-4), Ok(0));
        assert_eq!(r4_of(-23), Ok(1));
        assert_eq!(r4_of(-7), Ok(1));
        assert!(r4_of(-5).is_err());
        assert!(r4_of(5).is_err());
        assert_eq!(
            enumerate_forms(d(-3)),
            vec![ReducedForm { a: 1, b: 1, c: 1 }]
        );
        assert_eq!(
            enumerate_forms(d(-4)),
            vec![ReducedForm { a: 1, b: 0, c: 1 }]
        );
        assert_eq!(
            enumerate_forms(d(-23)),
            vec![
                ReducedForm { a: 1, b: 1, c: 6 },
                ReducedForm { a: 2, b: -1, c: 3 },
                ReducedForm { a: 2, b: 1, c: 3 }
            ]
        );
        assert_eq!(class_number(d(-96)), 4);
        assert_eq!(dominant_form(d(-92)), ReducedForm { a: 1, b: 0, c: 23 });
    }

    #[test]
    fn census_claims() {
        assert_eq!(leading_coeff_census(d(-23), 2).count(), 2);
        let c = leading_coeff_census(d(-92), 2);
        assert_eq!(c.count(), 0);
        assert!(c.all_claims_hold() && !c.claims.is_empty());
        assert_eq!(leading_coeff_census(d(-239), 8).count(), 2);
    }

    #[test]
    fn class_group_axioms() {
        for v in [-23i64, -39, -56, -84, -96, -156, -71, -479, -1031, -4 * 47] {
            let g = ClassGroup::new(d(v));
            let h = g.order();
            for i in 0..h {
                assert_eq!(g.mul(g.identity(), i), i);
                assert_eq!(g.mul(i, g.inv(i)), g.identity(), "Δ={v}");
                for j in 0..h {
                    assert_eq!(g.mul(i, j), g.mul(j, i));
                    for k in 0..h {
                        assert_eq!(g.mul(g.mul(i, j), k), g.mul(i, g.mul(j, k)), "Δ={v}");
                    }
                }
            }
        }
        // Cl(−23) is cyclic of order 3, Cl(−96) is (Z/2)².
        let g = ClassGroup::new(d(-23));
        assert_eq!(g.element_order(1), 3);
        assert!(ClassGroup::new(d(-96)).is_elementary_2());
        assert!(!ClassGroup::new(d(-56)).is_elementary_2());
    }
}
