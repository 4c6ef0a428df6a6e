// SPDX-License-Identifier: Apache-2.0
//! Exact dyadic numbers `man * 2^exp` used as ball midpoints.

use super::mag::Mag;
use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub(crate) man: BigInt,
    pub(crate) exp: i64,
}

impl Dyadic {
    pub fn zero() -> Dyadic {
        Dyadic {
            man: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn new(man: BigInt, exp: i64) -> Dyadic {
        Dyadic { man, exp }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Dyadic {
        Dyadic {
            man: n.into(),
            exp: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.man.sign()
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            man: -&self.man,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            man: self.man.abs(),
            exp: self.exp,
        }
    }

    pub fn mul_2exp(&self, e: i64) -> Dyadic {
        Dyadic {
            man: self.man.clone(),
            exp: self.exp + e,
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.exp >= other.exp {
            let d = (self.exp - other.exp) as usize;
            Dyadic {
                man: (&self.man << d) + &other.man,
                exp: other.exp,
            }
        } else {
            let d = (other.exp - self.exp) as usize;
            Dyadic {
                man: &self.man + (&other.man << d),
                exp: self.exp,
            }
        }
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic {
            man: &self.man * &other.man,
            exp: self.exp + other.exp,
        }
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Position of the leading bit: `|self| < 2^top()`.
    pub fn top(&self) -> i64 {
        self.man.bits() as i64 + self.exp
    }

    /// Round to at most `prec` significant bits, returning the rounded value
    /// and an upper bound on the rounding error.
    pub fn round(&self, prec: u32) -> (Dyadic, Mag) {
        let bits = self.man.bits();
        if bits <= prec as u64 {
            return (self.clone(), Mag::ZERO);
        }
        let shift = bits - prec as u64;
        let man = &self.man >> shift;
        let exp = self.exp + shift as i64;
        (Dyadic { man, exp }, Mag::pow2(exp))
    }

    pub fn mag_up(&self) -> Mag {
        Mag::from_bigint_up(&self.man, self.exp)
    }

    pub fn mag_down(&self) -> Mag {
        Mag::from_bigint_down(&self.man, self.exp)
    }

    pub fn from_mag(m: &Mag) -> Dyadic {
        Dyadic {
            man: BigInt::from(m.mantissa()),
            exp: m.exponent(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.man.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (&self.man >> shift as usize).to_f64().unwrap_or(0.0);
        let e = (self.exp + shift).clamp(-4000, 4000) as i32;
        if e < -1000 {
            return top * 2f64.powi(-1000) * 2f64.powi(e + 1000);
        }
        top * 2f64.powi(e)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as usize)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Nearest-below dyadic approximation of a rational with `prec` bits.
    pub fn from_rational(q: &BigRational, prec: u32) -> (Dyadic, Mag) {
        if q.is_zero() {
            return (Dyadic::zero(), Mag::ZERO);
        }
        let num = q.numer();
        let den = q.denom();
        let shift = prec as i64 + den.bits() as i64 - num.bits() as i64 + 2;
        let scaled = if shift >= 0 {
            num << shift as usize
        } else {
            num >> (-shift) as usize
        };
        let (quot, rem) = scaled.div_rem(den);
        let exact = rem.is_zero() && shift >= 0;
        let d = Dyadic {
            man: quot,
            exp: -shift,
        };
        let err = if exact {
            Mag::ZERO
        } else {
            Mag::pow2(-shift + 1)
        };
        let (r, e2) = d.round(prec);
        (r, err.add_up(&e2))
    }

    /// Floor of the value as an integer.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as usize
        } else {
            self.man.div_floor(&(BigInt::one() << (-self.exp) as usize))
        }
    }

    /// Nearest integer (ties toward +infinity).
    pub fn round_to_int(&self) -> BigInt {
        self.add(&Dyadic {
            man: BigInt::one(),
            exp: -1,
        })
        .floor()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sub(other)
            .man
            .sign()
            .cmp(&Sign::NoSign)
            .then(Ordering::Equal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = Dyadic::new(BigInt::from(3), -2);
        let b = Dyadic::new(BigInt::from(5), 1);
        assert_eq!(a.add(&b).to_f64(), 10.75);
        assert_eq!(a.mul(&b).to_f64(), 7.5);
        assert!(a < b);
        assert_eq!(Dyadic::new(BigInt::from(-7), -1).floor(), BigInt::from(-4));
        assert_eq!(
            Dyadic::new(BigInt::from(5), -1).round_to_int(),
            BigInt::from(3)
        );
    }

    #[test]
    fn rational_conversion_bounds() {
        let q = BigRational::new(BigInt::from(1), BigInt::from(3));
        let (d, e) = Dyadic::from_rational(&q, 64);
        let diff = (d.to_rational() - &q).abs();
        assert!(diff <= Dyadic::from_mag(&e).to_rational());
    }
}
