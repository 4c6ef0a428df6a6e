// SPDX-License-Identifier: Apache-2.0
//! Exact elements of a [`NumberField`], stored as rational polynomials in the
//! primitive element reduced modulo the defining polynomial.

use super::field::{abs_bits, interpolate, lcm_of_denominators, Interp, NumberField};
use super::FieldError;
use crate::arith::{precision_schedule, CertifiedComplex};
use crate::poly::{self, QPoly, ZPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Arc<NumberField>,
    poly: QPoly,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field) && self.poly == other.poly
    }
}

impl Eq for FieldElement {}

pub(crate) fn same_field(a: &Arc<NumberField>, b: &Arc<NumberField>) -> bool {
    Arc::ptr_eq(a, b) || a.defining_polynomial == b.defining_polynomial
}

impl FieldElement {
    /// Reduce an arbitrary rational polynomial in the primitive element.
    pub fn new(field: &Arc<NumberField>, coords: QPoly) -> FieldElement {
        let poly = poly::rem(&poly::trim(coords), &field.defining_q());
        FieldElement {
            field: field.clone(),
            poly,
        }
    }

    pub fn from_int(field: &Arc<NumberField>, n: impl Into<BigInt>) -> FieldElement {
        FieldElement::new(field, vec![poly::q(n)])
    }

    pub fn from_rational(field: &Arc<NumberField>, r: BigRational) -> FieldElement {
        FieldElement::new(field, vec![r])
    }

    pub fn zero(field: &Arc<NumberField>) -> FieldElement {
        FieldElement {
            field: field.clone(),
            poly: Vec::new(),
        }
    }

    pub fn one(field: &Arc<NumberField>) -> FieldElement {
        FieldElement::from_int(field, 1)
    }

    /// The primitive element θ.
    pub fn theta(field: &Arc<NumberField>) -> FieldElement {
        FieldElement::new(field, vec![BigRational::zero(), BigRational::one()])
    }

    /// Generator `g` of a field produced by `build_field`.
    pub fn generator(field: &Arc<NumberField>, g: usize) -> FieldElement {
        FieldElement {
            field: field.clone(),
            poly: field.generators[g].clone(),
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    /// Coordinates in the power basis, padded to the field degree.
    pub fn coords(&self) -> Vec<BigRational> {
        let mut c = self.poly.clone();
        c.resize(self.field.degree, BigRational::zero());
        c
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.poly.len() == 1 && self.poly[0].is_one()
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.poly.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.poly[0].clone()),
            _ => None,
        }
    }

    fn check(&self, other: &FieldElement) {
        assert!(
            same_field(&self.field, &other.field),
            "elements of different fields"
        );
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        self.check(other);
        FieldElement {
            field: self.field.clone(),
            poly: poly::add(&self.poly, &other.poly),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.check(other);
        FieldElement {
            field: self.field.clone(),
            poly: poly::sub(&self.poly, &other.poly),
        }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            poly: self.poly.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &FieldElement) -> FieldElement {
        self.check(other);
        FieldElement::new(&self.field, poly::mul(&self.poly, &other.poly))
    }

    pub fn scale(&self, r: &BigRational) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            poly: poly::scale(&self.poly, r),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        let p = self.field.defining_q();
        let (g, s, _) = poly::xgcd(&self.poly, &p);
        // P is irreducible, so the gcd with a nonzero residue is 1.
        debug_assert_eq!(g.len(), 1);
        Some(FieldElement {
            field: self.field.clone(),
            poly: poly::rem(&s, &p),
        })
    }

    pub fn div(&self, other: &FieldElement) -> Option<FieldElement> {
        Some(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents need a nonzero element.
    pub fn pow(&self, e: i64) -> Option<FieldElement> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = FieldElement::one(&self.field);
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        Some(acc)
    }

    /// `f(self)` for an integer polynomial `f` (ascending).
    pub fn eval_poly(&self, f: &[BigInt]) -> FieldElement {
        let p = self.field.defining_q();
        FieldElement {
            field: self.field.clone(),
            poly: super::field::eval_in_field(f, &self.poly, &p),
        }
    }

    /// `(a, D)` with `self = a(θ)/D`, `a` integral and `D > 0` minimal.
    pub fn integral_parts(&self) -> (ZPoly, BigInt) {
        let d = lcm_of_denominators(&self.poly);
        let a = self
            .poly
            .iter()
            .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
            .collect();
        (a, d)
    }

    /// Matrix of multiplication by an integer polynomial `a(θ)` on the power
    /// basis of `Z[X]/G` for a monic integer `G`.
    pub(crate) fn multiplication_matrix(a: &[BigInt], g: &[BigInt]) -> Vec<Vec<BigInt>> {
        let n = g.len() - 1;
        let gq = poly::from_ints(g);
        let mut cols = Vec::with_capacity(n);
        let mut cur: QPoly = poly::rem(&poly::from_ints(a), &gq);
        for _ in 0..n {
            let mut col: Vec<BigInt> = poly::to_ints(&cur).expect("monic reduction stays integral");
            col.resize(n, BigInt::zero());
            cols.push(col);
            cur = poly::rem(&poly::mul(&cur, &poly::from_i64(&[0, 1])), &gq);
        }
        // Transpose so rows index the basis.
        (0..n)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect()
    }

    /// Absolute norm `N_{L/Q}`.
    pub fn norm(&self) -> BigRational {
        let (a, d) = self.integral_parts();
        let m = FieldElement::multiplication_matrix(&a, &self.field.defining_polynomial);
        let det = poly::det_int(m);
        BigRational::new(det, d.pow(self.field.degree as u32))
    }

    /// Working precision needed to evaluate this element to about `prec`
    /// bits, allowing for the size of its coefficients.
    fn eval_precision(&self, prec: u32) -> u32 {
        let theta_bits = self
            .field
            .embeddings
            .iter()
            .map(|z| z.abs_upper().log2_approx().max(0.0))
            .fold(0.0, f64::max);
        prec + 32
            + abs_bits(&self.poly) as u32
            + (self.field.degree as f64 * (theta_bits + 1.0)) as u32
    }

    /// Image under embedding `i`.
    pub fn embed(&self, i: usize, prec: u32) -> CertifiedComplex {
        self.embeddings(prec).swap_remove(i)
    }

    /// Images under all embeddings, in the field's embedding order.
    pub fn embeddings(&self, prec: u32) -> Vec<CertifiedComplex> {
        let wp = self.eval_precision(prec);
        self.field
            .embeddings_at(wp)
            .iter()
            .map(|t| poly::eval_complex(&self.poly, t).with_prec(prec.max(64)))
            .collect()
    }

    /// Recover the element whose embedding images are `images_at(prec)` and
    /// whose multiple by `denominator` is an algebraic integer.
    ///
    /// The candidate comes from rounding `Σ y_s P(X)/(X − θ_s)` to integers
    /// and dividing by `P′(θ)` exactly. Callers certify that it is the
    /// intended number with an exact identity such as a vanishing minimal
    /// polynomial; this routine only checks that the images agree.
    pub fn from_images<F>(
        field: &Arc<NumberField>,
        denominator: &BigInt,
        images_at: F,
    ) -> Result<FieldElement, FieldError>
    where
        F: Fn(u32) -> Result<Vec<CertifiedComplex>, FieldError>,
    {
        let start = field.embeddings[0].prec().max(128);
        let p = field.defining_q();
        let mut last = start;
        for prec in precision_schedule(start) {
            last = prec;
            let thetas = field.embeddings_at(prec);
            let images: Vec<CertifiedComplex> = images_at(prec)?
                .into_iter()
                .map(|y| {
                    y.mul(&CertifiedComplex::from_real(
                        &crate::arith::CertifiedReal::from_int(denominator.clone(), prec),
                    ))
                })
                .collect();
            if images.len() != field.degree {
                return Err(FieldError::Interpolation(format!(
                    "expected {} images, got {}",
                    field.degree,
                    images.len()
                )));
            }
            let g = match interpolate(&field.defining_polynomial, &thetas, &images, prec) {
                Interp::Ints(g) => g,
                Interp::Undecided => continue,
                Interp::NotIntegral => {
                    return Err(FieldError::Interpolation(
                        "images are not those of an integral element".into(),
                    ))
                }
            };
            let coords = poly::rem(
                &poly::mul(&poly::from_ints(&g), field.derivative_inverse()),
                &p,
            );
            let coords = poly::scale(
                &coords,
                &BigRational::new(BigInt::one(), denominator.clone()),
            );
            let elt = FieldElement {
                field: field.clone(),
                poly: coords,
            };
            let scale = CertifiedComplex::from_real(&crate::arith::CertifiedReal::from_int(
                denominator.clone(),
                prec,
            ));
            let ok = elt
                .embeddings(prec)
                .iter()
                .zip(&images)
                .all(|(a, b)| a.mul(&scale).overlaps(b));
            if ok {
                return Ok(elt);
            }
            return Err(FieldError::Interpolation(
                "images are not those of a field element".into(),
            ));
        }
        Err(FieldError::PrecisionExhausted(last))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "({a})·θ")?,
                _ => write!(f, "({a})·θ^{i}")?,
            }
        }
        Ok(())
    }
}
