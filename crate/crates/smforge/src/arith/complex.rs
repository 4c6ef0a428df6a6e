// SPDX-License-Identifier: Apache-2.0
//! Complex balls: a dyadic midpoint `re + i im` and a disk radius.

use super::float::Dyadic;
use super::mag::Mag;
use super::real::CertifiedReal;
use std::fmt;

/// A complex number known to lie in the closed disk of radius `rad` around
/// `re + i im`.
#[derive(Clone, Debug)]
pub struct CertifiedComplex {
    pub(crate) re: Dyadic,
    pub(crate) im: Dyadic,
    pub(crate) rad: Mag,
    pub(crate) prec: u32,
}

impl CertifiedComplex {
    pub fn zero(prec: u32) -> CertifiedComplex {
        CertifiedComplex {
            re: Dyadic::zero(),
            im: Dyadic::zero(),
            rad: Mag::ZERO,
            prec,
        }
    }

    pub fn one(prec: u32) -> CertifiedComplex {
        CertifiedComplex::from_real(&CertifiedReal::from_int(1, prec))
    }

    pub fn from_int(n: i64, prec: u32) -> CertifiedComplex {
        CertifiedComplex::from_real(&CertifiedReal::from_int(n, prec))
    }

    pub fn from_real(x: &CertifiedReal) -> CertifiedComplex {
        CertifiedComplex {
            re: x.mid.clone(),
            im: Dyadic::zero(),
            rad: x.rad,
            prec: x.prec,
        }
    }

    /// Disk enclosing the rectangle spanned by two real balls.
    pub fn from_parts(re: &CertifiedReal, im: &CertifiedReal) -> CertifiedComplex {
        CertifiedComplex {
            re: re.mid.clone(),
            im: im.mid.clone(),
            rad: re.rad.add_up(&im.rad),
            prec: re.prec.max(im.prec),
        }
    }

    /// Disk with the given dyadic center and radius, rounded to `prec`.
    pub fn from_mid_rad(re: Dyadic, im: Dyadic, rad: Mag, prec: u32) -> CertifiedComplex {
        CertifiedComplex { re, im, rad, prec }.rounded()
    }

    /// The exact midpoint, with zero radius.
    pub fn midpoint(&self) -> CertifiedComplex {
        CertifiedComplex {
            re: self.re.clone(),
            im: self.im.clone(),
            rad: Mag::ZERO,
            prec: self.prec,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn mid_re(&self) -> &Dyadic {
        &self.re
    }

    pub fn mid_im(&self) -> &Dyadic {
        &self.im
    }

    pub fn with_prec(mut self, prec: u32) -> CertifiedComplex {
        self.prec = prec;
        self.rounded()
    }

    pub fn add_error(mut self, extra: Mag) -> CertifiedComplex {
        self.rad = self.rad.add_up(&extra);
        self
    }

    fn rounded(mut self) -> CertifiedComplex {
        let (r, e1) = self.re.round(self.prec);
        let (i, e2) = self.im.round(self.prec);
        self.re = r;
        self.im = i;
        self.rad = self.rad.add_up(&e1).add_up(&e2);
        self
    }

    pub fn re(&self) -> CertifiedReal {
        CertifiedReal::from_parts(self.re.clone(), self.rad, self.prec)
    }

    pub fn im(&self) -> CertifiedReal {
        CertifiedReal::from_parts(self.im.clone(), self.rad, self.prec)
    }

    fn mid_abs_up(&self) -> Mag {
        let a = self.re.mag_up();
        let b = self.im.mag_up();
        a.mul_up(&a).add_up(&b.mul_up(&b)).sqrt_up()
    }

    fn mid_abs_down(&self) -> Mag {
        let a = self.re.mag_down();
        let b = self.im.mag_down();
        a.mul_down(&a).add_down(&b.mul_down(&b)).sqrt_down()
    }

    pub fn abs_upper(&self) -> Mag {
        self.mid_abs_up().add_up(&self.rad)
    }

    pub fn abs_lower(&self) -> Mag {
        self.mid_abs_down().sub_down(&self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    /// `|z|` as a real ball.
    pub fn abs(&self) -> CertifiedReal {
        let n = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let m = CertifiedReal::exact(n, self.prec + 8)
            .sqrt()
            .expect("norm is non-negative")
            .with_prec(self.prec);
        m.add_error(self.rad)
    }

    pub fn conj(&self) -> CertifiedComplex {
        CertifiedComplex {
            re: self.re.clone(),
            im: self.im.neg(),
            rad: self.rad,
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> CertifiedComplex {
        CertifiedComplex {
            re: self.re.neg(),
            im: self.im.neg(),
            rad: self.rad,
            prec: self.prec,
        }
    }

    pub fn mul_i(&self) -> CertifiedComplex {
        CertifiedComplex {
            re: self.im.neg(),
            im: self.re.clone(),
            rad: self.rad,
            prec: self.prec,
        }
    }

    pub fn add(&self, o: &CertifiedComplex) -> CertifiedComplex {
        CertifiedComplex {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
            rad: self.rad.add_up(&o.rad),
            prec: self.prec.max(o.prec),
        }
        .rounded()
    }

    pub fn sub(&self, o: &CertifiedComplex) -> CertifiedComplex {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &CertifiedComplex) -> CertifiedComplex {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        let rad = self
            .mid_abs_up()
            .mul_up(&o.rad)
            .add_up(&o.mid_abs_up().mul_up(&self.rad))
            .add_up(&self.rad.mul_up(&o.rad));
        CertifiedComplex {
            re,
            im,
            rad,
            prec: self.prec.max(o.prec),
        }
        .rounded()
    }

    pub fn sqr(&self) -> CertifiedComplex {
        self.mul(self)
    }

    pub fn mul_real(&self, x: &CertifiedReal) -> CertifiedComplex {
        self.mul(&CertifiedComplex::from_real(x))
    }

    pub fn mul_int(&self, n: i64) -> CertifiedComplex {
        let d = Dyadic::from_int(n);
        CertifiedComplex {
            re: self.re.mul(&d),
            im: self.im.mul(&d),
            rad: self.rad.mul_up(&Mag::from_u64(n.unsigned_abs())),
            prec: self.prec,
        }
        .rounded()
    }

    pub fn mul_2exp(&self, e: i64) -> CertifiedComplex {
        CertifiedComplex {
            re: self.re.mul_2exp(e),
            im: self.im.mul_2exp(e),
            rad: self.rad.mul_2exp(e),
            prec: self.prec,
        }
    }

    /// Reciprocal; `None` when the disk contains zero.
    pub fn inv(&self) -> Option<CertifiedComplex> {
        let lo = self.abs_lower();
        if lo.is_zero() {
            return None;
        }
        let prec = self.prec;
        let n = CertifiedReal::exact(self.re.mul(&self.re).add(&self.im.mul(&self.im)), prec + 8);
        let a = CertifiedReal::exact(self.re.clone(), prec + 8).div(&n)?;
        let b = CertifiedReal::exact(self.im.neg(), prec + 8).div(&n)?;
        let mid = CertifiedComplex::from_parts(&a, &b).with_prec(prec);
        if self.rad.is_zero() {
            return Some(mid);
        }
        // |1/w - 1/m| <= r / (|w| |m|).
        let spread = self.rad.div_up(&lo.mul_down(&self.mid_abs_down()));
        Some(mid.add_error(spread))
    }

    pub fn div(&self, o: &CertifiedComplex) -> Option<CertifiedComplex> {
        Some(self.mul(&o.inv()?))
    }

    pub fn pow(&self, mut n: u64) -> CertifiedComplex {
        let mut base = self.clone();
        let mut acc = CertifiedComplex::one(self.prec);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// Relative accuracy in bits, capped at the working precision.
    pub fn rel_accuracy_bits(&self) -> i64 {
        if self.rad.is_zero() {
            return self.prec as i64;
        }
        let m = self.mid_abs_up();
        if m.is_zero() {
            return i64::MIN / 4;
        }
        ((m.log2_approx() - self.rad.log2_approx()).floor() as i64).min(self.prec as i64)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// True when the two disks are certainly disjoint.
    pub fn certainly_ne(&self, o: &CertifiedComplex) -> bool {
        !self.sub(o).contains_zero()
    }

    pub fn overlaps(&self, o: &CertifiedComplex) -> bool {
        !self.certainly_ne(o)
    }
}

impl fmt::Display for CertifiedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[({:.17e}) + ({:.17e})i +/- {:.3e}]",
            self.re.to_f64(),
            self.im.to_f64(),
            self.rad.to_f64()
        )
    }
}
