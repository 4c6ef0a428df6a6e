// SPDX-License-Identifier: Apache-2.0
//! Real balls: a dyadic midpoint with an upper-rounded radius.

use super::float::Dyadic;
use super::mag::Mag;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::cmp::Ordering;
use std::fmt;

/// A real number known to lie in `[mid - rad, mid + rad]`.
#[derive(Clone, Debug)]
pub struct CertifiedReal {
    pub(crate) mid: Dyadic,
    pub(crate) rad: Mag,
    pub(crate) prec: u32,
}

impl CertifiedReal {
    pub fn exact(mid: Dyadic, prec: u32) -> CertifiedReal {
        CertifiedReal {
            mid,
            rad: Mag::ZERO,
            prec,
        }
    }

    pub fn from_parts(mid: Dyadic, rad: Mag, prec: u32) -> CertifiedReal {
        CertifiedReal { mid, rad, prec }
    }

    pub fn zero(prec: u32) -> CertifiedReal {
        CertifiedReal::exact(Dyadic::zero(), prec)
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> CertifiedReal {
        CertifiedReal::exact(Dyadic::from_int(n), prec).rounded()
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> CertifiedReal {
        let (mid, rad) = Dyadic::from_rational(q, prec);
        CertifiedReal { mid, rad, prec }
    }

    /// Ball enclosing `a/b` for machine integers.
    pub fn ratio(a: i64, b: i64, prec: u32) -> CertifiedReal {
        CertifiedReal::from_rational(&BigRational::new(a.into(), b.into()), prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(mut self, prec: u32) -> CertifiedReal {
        self.prec = prec;
        self.rounded()
    }

    /// Widen the radius by `extra`.
    pub fn add_error(mut self, extra: Mag) -> CertifiedReal {
        self.rad = self.rad.add_up(&extra);
        self
    }

    fn rounded(mut self) -> CertifiedReal {
        let (m, e) = self.mid.round(self.prec);
        self.mid = m;
        self.rad = self.rad.add_up(&e);
        self
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&Dyadic::from_mag(&self.rad))
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&Dyadic::from_mag(&self.rad))
    }

    /// Upper bound of `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        self.mid.mag_up().add_up(&self.rad)
    }

    /// Lower bound of `|x|` over the ball (zero if the ball meets zero).
    pub fn abs_lower(&self) -> Mag {
        self.mid.mag_down().sub_down(&self.rad)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.mag_down() <= self.rad
    }

    pub fn is_positive(&self) -> bool {
        self.lower().sign() == num_bigint::Sign::Plus
    }

    pub fn is_negative(&self) -> bool {
        self.upper().sign() == num_bigint::Sign::Minus
    }

    /// `Some(ordering)` when the balls are separated, `None` when they overlap.
    pub fn certified_cmp(&self, other: &CertifiedReal) -> Option<Ordering> {
        if self.upper() < other.lower() {
            Some(Ordering::Less)
        } else if self.lower() > other.upper() {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    pub fn certainly_lt(&self, other: &CertifiedReal) -> bool {
        self.certified_cmp(other) == Some(Ordering::Less)
    }

    pub fn certainly_gt(&self, other: &CertifiedReal) -> bool {
        self.certified_cmp(other) == Some(Ordering::Greater)
    }

    pub fn certainly_le(&self, other: &CertifiedReal) -> bool {
        self.upper() <= other.lower()
    }

    /// True when the ball contains the exact rational `q`.
    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let lo = self.lower().to_rational();
        let hi = self.upper().to_rational();
        &lo <= q && q <= &hi
    }

    pub fn overlaps(&self, other: &CertifiedReal) -> bool {
        self.certified_cmp(other).is_none()
    }

    pub fn neg(&self) -> CertifiedReal {
        CertifiedReal {
            mid: self.mid.neg(),
            rad: self.rad,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> CertifiedReal {
        if self.contains_zero() {
            // [0, max(|lo|,|hi|)] enclosed by a ball centred at half of it.
            let hi = self.abs_upper();
            let half = hi.mul_2exp(-1);
            CertifiedReal {
                mid: Dyadic::from_mag(&half),
                rad: half,
                prec: self.prec,
            }
        } else if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn add(&self, other: &CertifiedReal) -> CertifiedReal {
        CertifiedReal {
            mid: self.mid.add(&other.mid),
            rad: self.rad.add_up(&other.rad),
            prec: self.prec.max(other.prec),
        }
        .rounded()
    }

    pub fn sub(&self, other: &CertifiedReal) -> CertifiedReal {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CertifiedReal) -> CertifiedReal {
        let r = self
            .mid
            .mag_up()
            .mul_up(&other.rad)
            .add_up(&other.mid.mag_up().mul_up(&self.rad))
            .add_up(&self.rad.mul_up(&other.rad));
        CertifiedReal {
            mid: self.mid.mul(&other.mid),
            rad: r,
            prec: self.prec.max(other.prec),
        }
        .rounded()
    }

    pub fn mul_int(&self, n: i64) -> CertifiedReal {
        let m = Mag::from_u64(n.unsigned_abs());
        CertifiedReal {
            mid: self.mid.mul(&Dyadic::from_int(n)),
            rad: self.rad.mul_up(&m),
            prec: self.prec,
        }
        .rounded()
    }

    pub fn mul_2exp(&self, e: i64) -> CertifiedReal {
        CertifiedReal {
            mid: self.mid.mul_2exp(e),
            rad: self.rad.mul_2exp(e),
            prec: self.prec,
        }
    }

    pub fn sqr(&self) -> CertifiedReal {
        self.mul(self)
    }

    /// Quotient; `None` when the divisor ball contains zero.
    pub fn div(&self, other: &CertifiedReal) -> Option<CertifiedReal> {
        let den_lo = other.abs_lower();
        if den_lo.is_zero() {
            return None;
        }
        let prec = self.prec.max(other.prec);
        let q = if self.mid.is_zero() {
            Dyadic::zero()
        } else {
            let shift = prec as i64 + 2 + other.mid.bits() as i64 - self.mid.bits() as i64;
            let num = if shift >= 0 {
                &self.mid.man << shift as usize
            } else {
                &self.mid.man >> (-shift) as usize
            };
            let quot = &num / &other.mid.man;
            Dyadic::new(quot, self.mid.exp - other.mid.exp - shift)
        };
        // |x/y - q| <= |mid_x/mid_y - q| + (r_x + |q| r_y) / (|y| - r_y).
        let trunc = Mag::pow2(
            self.mid.exp
                - other.mid.exp
                - (prec as i64 + 2 + other.mid.bits() as i64 - self.mid.bits() as i64)
                + 2,
        );
        let trunc = if self.mid.is_zero() { Mag::ZERO } else { trunc };
        let spread = self
            .rad
            .add_up(&q.mag_up().add_up(&trunc).mul_up(&other.rad))
            .div_up(&den_lo);
        Some(
            CertifiedReal {
                mid: q,
                rad: trunc.add_up(&spread),
                prec,
            }
            .rounded(),
        )
    }

    pub fn inv(&self) -> Option<CertifiedReal> {
        CertifiedReal::from_int(1, self.prec).div(self)
    }

    pub fn div_int(&self, n: i64) -> CertifiedReal {
        self.div(&CertifiedReal::from_int(n, self.prec))
            .expect("nonzero integer divisor")
    }

    /// Square root; `None` unless the ball is certainly non-negative.
    pub fn sqrt(&self) -> Option<CertifiedReal> {
        if self.lower().sign() == num_bigint::Sign::Minus {
            return None;
        }
        if self.mid.is_zero() {
            return Some(CertifiedReal::zero(self.prec));
        }
        let prec = self.prec;
        // Scale mantissa to about 2*prec bits with an even exponent.
        let mut shift = 2 * prec as i64 + 4 - self.mid.bits() as i64;
        if (self.mid.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = if shift >= 0 {
            &self.mid.man << shift as usize
        } else {
            &self.mid.man >> (-shift) as usize
        };
        let s = m.sqrt();
        let e = (self.mid.exp - shift) / 2;
        let mid = Dyadic::new(s, e);
        // Truncation of m and of the integer sqrt each cost at most one ulp
        // of the result; the input radius contributes r / sqrt(lower).
        let ulp = Mag::pow2(e + 1);
        let lo = self.lower();
        let spread = if self.rad.is_zero() {
            Mag::ZERO
        } else if lo.sign() == num_bigint::Sign::Plus {
            self.rad.div_up(&lo.mag_down().sqrt_down())
        } else {
            // Ball touches zero: bound by sqrt(upper).
            self.upper().mag_up().sqrt_up()
        };
        Some(
            CertifiedReal {
                mid,
                rad: ulp.add_up(&spread),
                prec,
            }
            .rounded(),
        )
    }

    pub fn pow(&self, mut n: u64) -> CertifiedReal {
        let mut base = self.clone();
        let mut acc = CertifiedReal::from_int(1, self.prec);
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

    pub fn max(&self, other: &CertifiedReal) -> CertifiedReal {
        // Enclosure of max over both balls.
        let hi = if self.upper() >= other.upper() {
            self.upper()
        } else {
            other.upper()
        };
        let lo = if self.lower() >= other.lower() {
            self.lower()
        } else {
            other.lower()
        };
        CertifiedReal::from_bounds(&lo, &hi, self.prec.max(other.prec))
    }

    pub fn min(&self, other: &CertifiedReal) -> CertifiedReal {
        self.neg().max(&other.neg()).neg()
    }

    /// Smallest ball containing `[lo, hi]`.
    pub fn from_bounds(lo: &Dyadic, hi: &Dyadic, prec: u32) -> CertifiedReal {
        let sum = lo.add(hi).mul_2exp(-1);
        let half = hi.sub(lo).mul_2exp(-1);
        CertifiedReal {
            mid: sum,
            rad: half.mag_up(),
            prec,
        }
        .rounded()
    }

    /// Hull of two balls.
    pub fn union(&self, other: &CertifiedReal) -> CertifiedReal {
        let lo = std::cmp::min(self.lower(), other.lower());
        let hi = std::cmp::max(self.upper(), other.upper());
        CertifiedReal::from_bounds(&lo, &hi, self.prec.max(other.prec))
    }

    /// Relative accuracy in bits (`log2(|mid| / rad)`), capped at `prec`.
    pub fn rel_accuracy_bits(&self) -> i64 {
        if self.rad.is_zero() {
            return self.prec as i64;
        }
        if self.mid.is_zero() {
            return i64::MIN / 4;
        }
        ((self.mid.top() as f64 - self.rad.log2_approx()).floor() as i64).min(self.prec as i64)
    }

    /// An exact rational lying in the ball (its midpoint).
    pub fn mid_rational(&self) -> BigRational {
        self.mid.to_rational()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.mid.is_zero() && self.rad.is_zero()
    }

    /// Integer `n` if the ball contains exactly one integer and lies within
    /// distance `< 1/4` of it.
    pub fn unique_integer(&self) -> Option<BigInt> {
        let n = self.mid.round_to_int();
        let nd = Dyadic::from_int(n.clone());
        let quarter = Dyadic::new(BigInt::from(1), -2);
        let lo_ok = self.lower() > nd.sub(&quarter);
        let hi_ok = self.upper() < nd.add(&quarter);
        if lo_ok && hi_ok {
            Some(n)
        } else {
            None
        }
    }

    pub fn radius_f64(&self) -> f64 {
        self.rad.to_f64()
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.17e} +/- {:.3e}]",
            self.mid.to_f64(),
            self.rad.to_f64()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> CertifiedReal {
        CertifiedReal::ratio(a, b, 128)
    }

    #[test]
    fn field_operations_enclose() {
        let third = r(1, 3);
        let x = third.mul_int(3);
        assert!(x.contains_rational(&BigRational::from_integer(1.into())));
        let y = r(2, 7).div(&r(3, 11)).unwrap();
        assert!(y.contains_rational(&BigRational::new(22.into(), 21.into())));
        let s = r(2, 1).sqrt().unwrap();
        let sq = s.sqr();
        assert!(sq.contains_rational(&BigRational::from_integer(2.into())));
        assert!(sq.rad.log2_approx() < -100.0);
    }

    #[test]
    fn comparisons_need_separation() {
        let a = r(1, 3);
        let b = r(1, 3).add_error(Mag::pow2(-10));
        assert!(a.certified_cmp(&b).is_none());
        assert!(r(1, 3).certainly_lt(&r(1, 2)));
        assert_eq!(r(7, 2).unique_integer(), None);
        assert_eq!(r(41, 10).unique_integer(), Some(BigInt::from(4)));
    }
}
