// SPDX-License-Identifier: Apache-2.0
//! The modular curve `Y₀(2)`: exact membership of CM points, numeric
//! evaluation of `Φ_N(X, j(τ))`, and the pairing of conjugates it induces.
//!
//! `Φ_N(X, j(τ)) = ∏_{σ ∈ C(N)} (X − j(στ))` with `C(N)` the upper triangular
//! matrices `(a, b; 0, d)`, `ad = N`, `0 ≤ b < d`, `gcd(a, b, d) = 1`. For two
//! points of the fundamental domain `(j(τ), j(τ′))` lies on `Y₀(2)` exactly
//! when `τ` is one of a short list of `SL₂(Z)` images of `2τ′`, `τ′/2` and
//! `(τ′ + 1)/2`, which exact surd arithmetic can decide.

mod surd;

pub use surd::Surd;

use crate::arith::{CertifiedComplex, CertifiedReal};
use crate::forms::{ClassGroup, Discriminant};
use crate::modular::{eval_j, ModularError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Y0Error {
    #[error("not a quadratic surd: {0}")]
    BadSurd(String),
    #[error("point is not in the upper half plane")]
    NotInUpperHalfPlane,
    #[error("level must be positive")]
    BadLevel,
    #[error("pairing failed: {0}")]
    Pairing(String),
    #[error(transparent)]
    Modular(#[from] ModularError),
}

/// `(a, b; 0, d)` acting by `τ ↦ (aτ + b)/d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IsogenyMatrix {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

impl IsogenyMatrix {
    pub fn apply_surd(&self, t: &Surd) -> Surd {
        t.mobius([self.a, self.b, 0, self.d])
    }

    pub fn apply(&self, t: &CertifiedComplex) -> CertifiedComplex {
        t.mul_int(self.a)
            .add(&CertifiedComplex::from_int(self.b, t.prec()))
            .mul_real(&CertifiedReal::from_int(1, t.prec() + 8).div_int(self.d))
    }
}

/// The set `C(N)`, ordered by decreasing `a` and then increasing `b`.
#[derive(Clone, Debug, Serialize)]
pub struct IsogenyMatrixSet {
    pub level: u64,
    pub matrices: Vec<IsogenyMatrix>,
}

pub fn c_matrices(n: u64) -> Result<IsogenyMatrixSet, Y0Error> {
    if n == 0 {
        return Err(Y0Error::BadLevel);
    }
    let n = n as i64;
    let mut matrices = Vec::new();
    for a in (1..=n).rev().filter(|a| n % a == 0) {
        let d = n / a;
        for b in 0..d {
            if a.gcd(&b).gcd(&d) == 1 {
                matrices.push(IsogenyMatrix { a, b, d });
            }
        }
    }
    Ok(IsogenyMatrixSet {
        level: n as u64,
        matrices,
    })
}

/// Dedekind's `ψ(N) = N ∏_{p | N} (1 + 1/p)`, the size of `C(N)`.
pub fn psi(n: u64) -> u64 {
    let (mut num, mut m, mut p) = (n, n, 2u64);
    while p * p <= m {
        if m % p == 0 {
            num = num / p * (p + 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        num = num / m * (m + 1);
    }
    num
}

/// Move a ball into the fundamental domain. The matrix is chosen from the
/// midpoint; `j` is invariant under any choice, and `eval_j` checks that
/// the result is high enough in the half plane.
pub fn reduce_ball(tau: &CertifiedComplex) -> CertifiedComplex {
    let prec = tau.prec();
    let mut t = tau.clone();
    for _ in 0..200 {
        let (re, _) = t.to_f64_pair();
        let shift = (re + 0.5).floor() as i64;
        if shift != 0 {
            t = t.sub(&CertifiedComplex::from_int(shift, prec));
        }
        let (re, im) = t.to_f64_pair();
        if re * re + im * im < 1.0 - 1e-12 {
            match t.inv() {
                Some(inv) => t = inv.neg(),
                None => break,
            }
        } else {
            break;
        }
    }
    t
}

/// Certified value of `Φ_N(X, j(τ)) = ∏_{σ ∈ C(N)} (X − j(στ))`.
pub fn phi_n_eval(
    x: &CertifiedComplex,
    tau: &CertifiedComplex,
    n: u64,
    prec: u32,
) -> Result<CertifiedComplex, Y0Error> {
    let set = c_matrices(n)?;
    let mut acc = CertifiedComplex::one(prec);
    for m in &set.matrices {
        let st = reduce_ball(&m.apply(&tau.clone().with_prec(prec + 32)));
        let j = eval_j(&st, prec)?;
        acc = acc.mul(&x.sub(&j));
    }
    Ok(acc)
}

/// The transformation relating `τ` to `τ′` on `Y₀(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Y02Witness {
    /// `τ = 2τ′ + ε`.
    Double { eps: i64 },
    /// `τ = τ′/2`.
    Half,
    /// `τ = −2/τ′ + ε`.
    InvertedHalf { eps: i64 },
    /// `τ = (τ′ + 1)/2`.
    ShiftedHalf,
    /// `τ = −1/((τ′ + 1)/2 − ε′) + ε`.
    InvertedShiftedHalf { eps_prime: i64, eps: i64 },
    /// Matched only after reducing `στ′` to the fundamental domain.
    Reduced { factor: IsogenyMatrix },
}

impl Y02Witness {
    /// The factor `X − j(στ′)` of `Φ₂(X, j(τ′))` this witness makes vanish.
    pub fn factor(&self) -> IsogenyMatrix {
        match *self {
            Y02Witness::Double { .. } => IsogenyMatrix { a: 2, b: 0, d: 1 },
            Y02Witness::Half | Y02Witness::InvertedHalf { .. } => {
                IsogenyMatrix { a: 1, b: 0, d: 2 }
            }
            Y02Witness::ShiftedHalf | Y02Witness::InvertedShiftedHalf { .. } => {
                IsogenyMatrix { a: 1, b: 1, d: 2 }
            }
            Y02Witness::Reduced { factor } => factor,
        }
    }

    /// The image of `τ′` named by the witness.
    pub fn apply(&self, t: &Surd) -> Surd {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        match *self {
            Y02Witness::Double { eps } => {
                t.scale(&BigRational::from_integer(2.into())).add_int(eps)
            }
            Y02Witness::Half => t.scale(&half),
            Y02Witness::InvertedHalf { eps } => t.scale(&half).neg_inv().add_int(eps),
            Y02Witness::ShiftedHalf => t.add_int(1).scale(&half),
            Y02Witness::InvertedShiftedHalf { eps_prime, eps } => t
                .add_int(1)
                .scale(&half)
                .add_int(-eps_prime)
                .neg_inv()
                .add_int(eps),
            Y02Witness::Reduced { factor } => factor.apply_surd(t).reduce(),
        }
    }
}

fn listed_witnesses() -> Vec<Y02Witness> {
    let mut out = Vec::new();
    for eps in [0, 1, -1] {
        out.push(Y02Witness::Double { eps });
    }
    out.push(Y02Witness::Half);
    for eps in [0, 1, -1] {
        out.push(Y02Witness::InvertedHalf { eps });
    }
    out.push(Y02Witness::ShiftedHalf);
    for eps_prime in [0, 1] {
        for eps in [0, 1, -1] {
            out.push(Y02Witness::InvertedShiftedHalf { eps_prime, eps });
        }
    }
    out
}

/// Decide whether `(j(τ), j(τ′))` lies on `Y₀(2)`. Both points are first
/// reduced to the fundamental domain. The listed transformations are tried
/// first; as a complete fallback each `στ′` is reduced and compared.
pub fn on_y02(tau: &Surd, tau2: &Surd) -> Option<Y02Witness> {
    if tau.d != tau2.d {
        return None;
    }
    let t = tau.reduce();
    let t2 = tau2.reduce();
    if let Some(w) = listed_witnesses().into_iter().find(|w| w.apply(&t2) == t) {
        return Some(w);
    }
    c_matrices(2)
        .expect("level 2 is valid")
        .matrices
        .into_iter()
        .map(|factor| Y02Witness::Reduced { factor })
        .find(|w| w.apply(&t2) == t)
}

/// Outcome of the imaginary-part ratio check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ImRatio {
    Two,
    Half,
    /// `Im τ′ < 2` after reduction, so the statement does not apply.
    NotApplicable,
    /// The ratio is something else, which contradicts the lemma.
    Violation(String),
}

/// For a point of `Y₀(2)` with both coordinates in the fundamental domain
/// and `Im τ′ ≥ 2`, the ratio `Im τ / Im τ′` is `2` or `1/2`.
pub fn im_ratio_constraint(tau: &Surd, tau2: &Surd) -> ImRatio {
    let t = tau.reduce();
    let t2 = tau2.reduce();
    if t2.im_squared() < BigRational::from_integer(4.into()) {
        return ImRatio::NotApplicable;
    }
    if t.d != t2.d {
        return ImRatio::Violation(format!("different fields: {t} and {t2}"));
    }
    let ratio = &t.q / &t2.q;
    let two = BigRational::from_integer(2.into());
    if ratio == two {
        ImRatio::Two
    } else if ratio == two.recip() {
        ImRatio::Half
    } else {
        ImRatio::Violation(format!("Im τ / Im τ′ = {ratio}"))
    }
}

/// For `big = 4·small`, the unique form of `small` whose point is a
/// `Y₀(2)` partner of each form of `big`, indexed like the class groups.
pub fn partner_map(big: Discriminant, small: Discriminant) -> Result<Vec<usize>, Y0Error> {
    if big.value() != 4 * small.value() {
        return Err(Y0Error::Pairing(format!("{big} is not 4·{small}")));
    }
    let gb = ClassGroup::new(big);
    let gs = ClassGroup::new(small);
    let small_pts: Vec<Surd> = gs.forms.iter().map(Surd::of_form).collect();
    let mut map = Vec::with_capacity(gb.order());
    for f in &gb.forms {
        let t = Surd::of_form(f);
        let hits: Vec<usize> = (0..small_pts.len())
            .filter(|&i| on_y02(&t, &small_pts[i]).is_some())
            .collect();
        match hits.as_slice() {
            [i] => map.push(*i),
            _ => {
                return Err(Y0Error::Pairing(format!(
                    "form {f:?} of {big} has {} partners of discriminant {small}",
                    hits.len()
                )))
            }
        }
    }
    // Normalise so the identity maps to the identity.
    let shift = gs.inv(map[gb.identity()]);
    Ok(map.into_iter().map(|i| gs.mul(i, shift)).collect())
}
