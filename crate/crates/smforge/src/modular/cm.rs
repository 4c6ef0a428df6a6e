// SPDX-License-Identifier: Apache-2.0
//! CM points `τ = (−b + √Δ)/(2a)` attached to reduced forms.

use super::{eval_j, ModularError};
use crate::arith::{funcs, precision_schedule, CertifiedComplex, CertifiedReal, MAX_PRECISION};
use crate::forms::{enumerate_forms, Discriminant, ReducedForm};
use num_bigint::BigInt;
use num_rational::BigRational;

/// A CM point together with its certified j-value.
#[derive(Clone, Debug)]
pub struct CMPoint {
    pub disc: Discriminant,
    pub form: ReducedForm,
    pub tau: CertifiedComplex,
    pub j_value: CertifiedComplex,
}

impl CMPoint {
    /// `Im τ = √|Δ| / (2a)`.
    pub fn im_tau(&self) -> CertifiedReal {
        self.tau.im()
    }

    pub fn is_dominant(&self) -> bool {
        self.form.a == 1
    }
}

/// The point of the upper half plane attached to a reduced form. For reduced
/// forms it lies in the closed fundamental domain.
pub fn tau_of_form(form: &ReducedForm, prec: u32) -> CertifiedComplex {
    let d = form.discriminant();
    let re = BigRational::new(BigInt::from(-form.b), BigInt::from(2 * form.a));
    let re = CertifiedReal::from_rational(&re, prec + 8);
    let im = funcs::sqrt_int(d.unsigned_abs(), prec + 8).div_int(2 * form.a);
    CertifiedComplex::from_parts(&re, &im).with_prec(prec)
}

/// Evaluate `j` at the point of `form`, raising precision until the value has
/// at least `prec` relative bits or the ceiling is reached.
pub fn cm_point(disc: Discriminant, form: ReducedForm, prec: u32) -> Result<CMPoint, ModularError> {
    let mut last = None;
    for p in precision_schedule(prec) {
        let tau = tau_of_form(&form, p + 16);
        let j = eval_j(&tau, p)?;
        // Values near zero (j(ζ₃) = 0) cannot reach relative accuracy;
        // an absolute radius below 2^-prec is good enough there.
        let ok = j.rel_accuracy_bits() >= prec as i64 - 8 || j.rad().log2_approx() < -(prec as f64);
        if ok {
            return Ok(CMPoint {
                disc,
                form,
                tau,
                j_value: j,
            });
        }
        last = Some(p);
    }
    Err(ModularError::PrecisionExhausted(
        last.unwrap_or(MAX_PRECISION),
    ))
}

/// All conjugates of the singular moduli of discriminant `disc`, in the
/// canonical order of the reduced forms.
pub fn conjugate_values(disc: Discriminant, prec: u32) -> Result<Vec<CMPoint>, ModularError> {
    let forms = enumerate_forms(disc);
    crate::par::map(&forms, |f| cm_point(disc, *f, prec))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_in_fundamental_domain() {
        for d in [-3i64, -4, -23, -71, -163, -1027] {
            let disc = Discriminant::new(d).unwrap();
            for f in enumerate_forms(disc) {
                let (x, y) = tau_of_form(&f, 64).to_f64_pair();
                assert!(x.abs() <= 0.5 + 1e-12);
                assert!(x * x + y * y >= 1.0 - 1e-12);
            }
        }
    }
}
