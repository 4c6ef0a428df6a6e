// SPDX-License-Identifier: Apache-2.0
//! Multiplicative independence of two nonzero field elements.
//!
//! If `α^m = ζ β^n` with `(m, n) ≠ (0, 0)` then `m v_𝔭(α) = n v_𝔭(β)` at every
//! prime and `m log|ια| = n log|ιβ|` at every embedding. A prime dividing
//! both elements pins `m/n`, after which one exact power test decides. A
//! prime dividing exactly one of them forces the matching exponent to vanish.
//! When valuations say nothing, two embeddings whose log-modulus vectors have
//! a certified nonzero determinant prove independence outright.

use super::element::{same_field, FieldElement};
use super::torsion::root_of_unity_order;
use super::valuation::{valuation_table, ValuationCertificate};
use super::FieldError;
use crate::arith::{funcs, CertifiedComplex, CertifiedReal};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

/// Largest denominator tried when reconstructing an exponent ratio from
/// archimedean data.
pub const RATIO_DENOMINATOR_CAP: u64 = 1_000_000;
/// Largest exponent for which the exact power check is attempted.
const EXACT_EXPONENT_CAP: u64 = 4096;

/// Why two elements are independent.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IndependenceProof {
    /// A prime divides both; the forced ratio `α^k / β^l` is not a root of unity.
    CommonPrime {
        certificate: ValuationCertificate,
        k: i64,
        l: i64,
    },
    /// A prime divides exactly one of them and neither is a root of unity.
    OneSidedPrime {
        prime: u64,
        prime_ideal_tag: usize,
        v_alpha: i64,
        v_beta: i64,
    },
    /// `det [[log|ι₁α|, log|ι₁β|], [log|ι₂α|, log|ι₂β|]] ≠ 0`, certified.
    LogDeterminant(LogDeterminant),
}

/// Certified nonzero 2×2 log-modulus determinant.
#[derive(Clone, Debug, Serialize)]
pub struct LogDeterminant {
    pub embeddings: (usize, usize),
    pub lower: f64,
    pub upper: f64,
}

/// `α^k = ζ β^l` with `ζ` a root of unity of the given order.
#[derive(Clone, Debug)]
pub struct Dependence {
    pub k: i64,
    pub l: i64,
    pub zeta: FieldElement,
    pub zeta_order: u64,
}

#[derive(Clone, Debug)]
pub enum Independence {
    Independent(IndependenceProof),
    Dependent(Dependence),
    Inconclusive(String),
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent(_))
    }

    pub fn status(&self) -> &'static str {
        match self {
            Independence::Independent(_) => "independent",
            Independence::Dependent(_) => "dependent",
            Independence::Inconclusive(_) => "inconclusive",
        }
    }
}

fn normalise(k: i64, l: i64) -> (i64, i64) {
    let g = k.gcd(&l).max(1);
    let (k, l) = (k / g, l / g);
    if l < 0 || (l == 0 && k < 0) {
        (-k, -l)
    } else {
        (k, l)
    }
}

/// `α^k β^{−l}`.
fn twist(alpha: &FieldElement, beta: &FieldElement, k: i64, l: i64) -> Option<FieldElement> {
    Some(alpha.pow(k)?.mul(&beta.pow(-l)?))
}

fn dependence_if_torsion(
    alpha: &FieldElement,
    beta: &FieldElement,
    k: i64,
    l: i64,
) -> Option<Dependence> {
    let gamma = twist(alpha, beta, k, l)?;
    let order = root_of_unity_order(&gamma)?;
    Some(Dependence {
        k,
        l,
        zeta: gamma,
        zeta_order: order,
    })
}

/// Decide multiplicative independence of `α` and `β`; never claims
/// independence without a proof.
pub fn mult_independent(
    alpha: &FieldElement,
    beta: &FieldElement,
) -> Result<Independence, FieldError> {
    if !same_field(alpha.field(), beta.field()) {
        return Err(FieldError::FieldMismatch);
    }
    if alpha.is_zero() || beta.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    // Torsion elements are dependent on anything.
    if let Some(order) = root_of_unity_order(alpha) {
        return Ok(Independence::Dependent(Dependence {
            k: 1,
            l: 0,
            zeta: alpha.clone(),
            zeta_order: order,
        }));
    }
    if let Some(order) = root_of_unity_order(beta) {
        let zeta = beta.inv().expect("nonzero");
        return Ok(Independence::Dependent(Dependence {
            k: 0,
            l: 1,
            zeta,
            zeta_order: order,
        }));
    }

    let (rows, _skipped) = valuation_table(alpha, beta)?;
    if let Some(r) = rows.iter().find(|r| r.v_alpha != 0 && r.v_beta != 0) {
        // m v(α) = n v(β) forces (m, n) ∝ (v(β), v(α)).
        let (k, l) = normalise(r.v_beta, r.v_alpha);
        let certificate = ValuationCertificate {
            prime: r.ideal.p,
            prime_ideal_tag: r.ideal.tag,
            residue_degree: r.ideal.residue_degree,
            v_alpha: r.v_alpha,
            v_beta: r.v_beta,
        };
        return Ok(match dependence_if_torsion(alpha, beta, k, l) {
            Some(d) => Independence::Dependent(d),
            None => Independence::Independent(IndependenceProof::CommonPrime { certificate, k, l }),
        });
    }
    if let Some(r) = rows.first() {
        // Exactly one valuation is nonzero here, and neither element is torsion.
        return Ok(Independence::Independent(
            IndependenceProof::OneSidedPrime {
                prime: r.ideal.p,
                prime_ideal_tag: r.ideal.tag,
                v_alpha: r.v_alpha,
                v_beta: r.v_beta,
            },
        ));
    }
    archimedean(alpha, beta)
}

fn log_abs(z: &CertifiedComplex) -> Option<CertifiedReal> {
    if z.contains_zero() {
        return None;
    }
    funcs::log(&z.abs())
}

/// Search for a pair of embeddings with a certified nonzero log-modulus
/// determinant. Images must be listed in the same embedding order.
pub fn log_determinant_test(
    images_a: &[CertifiedComplex],
    images_b: &[CertifiedComplex],
) -> Option<LogDeterminant> {
    let la: Vec<Option<CertifiedReal>> = images_a.iter().map(log_abs).collect();
    let lb: Vec<Option<CertifiedReal>> = images_b.iter().map(log_abs).collect();
    let mut best: Option<LogDeterminant> = None;
    for i in 0..la.len() {
        for j in i + 1..la.len() {
            let (Some(ai), Some(bi), Some(aj), Some(bj)) = (&la[i], &lb[i], &la[j], &lb[j]) else {
                continue;
            };
            let det = ai.mul(bj).sub(&aj.mul(bi));
            if !det.contains_zero() {
                let cand = LogDeterminant {
                    embeddings: (i, j),
                    lower: det.lower().to_f64(),
                    upper: det.upper().to_f64(),
                };
                let better = best.as_ref().is_none_or(|b| {
                    cand.lower.abs().min(cand.upper.abs()) > b.lower.abs().min(b.upper.abs())
                });
                if better {
                    best = Some(cand);
                }
            }
        }
    }
    best
}

/// Convergents `p/q` of a rational number with `q ≤ cap`.
pub fn convergents(x: &BigRational, cap: u64) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    let (mut p0, mut q0) = (BigInt::from(0), BigInt::from(1));
    let (mut p1, mut q1) = (BigInt::from(1), BigInt::from(0));
    let mut r = x.clone();
    for _ in 0..200 {
        let a = r.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > BigInt::from(cap) {
            break;
        }
        out.push((p2.clone(), q2.clone()));
        let frac = &r - BigRational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        r = frac.recip();
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    out
}

fn archimedean(alpha: &FieldElement, beta: &FieldElement) -> Result<Independence, FieldError> {
    let mut parallel_at = None;
    for prec in [128u32, 256, 512, 1024] {
        let ia = alpha.embeddings(prec);
        let ib = beta.embeddings(prec);
        if let Some(w) = log_determinant_test(&ia, &ib) {
            return Ok(Independence::Independent(
                IndependenceProof::LogDeterminant(w),
            ));
        }
        parallel_at = Some((ia, ib));
    }
    // The log vectors look parallel: reconstruct the only possible ratio and
    // verify it exactly.
    let (ia, ib) = parallel_at.expect("loop ran");
    let la: Vec<Option<CertifiedReal>> = ia.iter().map(log_abs).collect();
    let lb: Vec<Option<CertifiedReal>> = ib.iter().map(log_abs).collect();
    let pick = (0..la.len()).find(|&i| la[i].as_ref().is_some_and(|x| !x.contains_zero()));
    let Some(i) = pick else {
        return Ok(Independence::Inconclusive(
            "all conjugates of α lie on the unit circle but α is not a root of unity".into(),
        ));
    };
    let (Some(a), Some(b)) = (&la[i], &lb[i]) else {
        return Ok(Independence::Inconclusive("log-modulus undefined".into()));
    };
    let Some(rho) = b.div(a) else {
        return Ok(Independence::Inconclusive(
            "log-modulus ratio undefined".into(),
        ));
    };
    // α^m = ζ β^n gives m/n = log|ιβ| / log|ια|.
    for (p, q) in convergents(&rho.mid_rational(), RATIO_DENOMINATOR_CAP) {
        let cand = BigRational::new(p.clone(), q.clone());
        if !rho.contains_rational(&cand) {
            continue;
        }
        let (Some(k), Some(l)) = (p.to_i64(), q.to_i64()) else {
            continue;
        };
        if k.unsigned_abs() > EXACT_EXPONENT_CAP || l.unsigned_abs() > EXACT_EXPONENT_CAP {
            break;
        }
        let (k, l) = normalise(k, l);
        if let Some(d) = dependence_if_torsion(alpha, beta, k, l) {
            return Ok(Independence::Dependent(d));
        }
    }
    Ok(Independence::Inconclusive(
        "log-modulus vectors parallel within error and no small exponent ratio verified".into(),
    ))
}
