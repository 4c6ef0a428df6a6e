// SPDX-License-Identifier: Apache-2.0
//! Low-precision non-negative magnitudes used as ball radii.
//!
//! A `Mag` is the dyadic number `man * 2^exp` with a 32-bit mantissa. Every
//! operation names its rounding direction so that radius bookkeeping stays
//! rigorous: `_up` results are upper bounds of the exact value and `_down`
//! results are lower bounds.

use num_bigint::{BigInt, Sign};
use std::cmp::Ordering;

const MAN_BITS: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    fn norm(man: u128, exp: i64, up: bool) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        let bits = 128 - man.leading_zeros();
        if bits <= MAN_BITS {
            return Mag {
                man: man as u64,
                exp,
            };
        }
        let shift = bits - MAN_BITS;
        let mut m = man >> shift;
        if up && (m << shift) != man {
            m += 1;
        }
        // A carry may push the mantissa to 33 bits; that is still fine for
        // products since 33 + 33 bits fit comfortably in u128.
        Mag {
            man: m as u64,
            exp: exp + shift as i64,
        }
    }

    pub fn from_u64(v: u64) -> Mag {
        Mag::norm(v as u128, 0, true)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Mag {
        Mag { man: 1, exp: e }
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    pub fn mantissa(&self) -> u64 {
        self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Upper bound of `|n| * 2^e`.
    pub fn from_bigint_up(n: &BigInt, e: i64) -> Mag {
        Mag::from_bigint(n, e, true)
    }

    /// Lower bound of `|n| * 2^e`.
    pub fn from_bigint_down(n: &BigInt, e: i64) -> Mag {
        Mag::from_bigint(n, e, false)
    }

    fn from_bigint(n: &BigInt, e: i64, up: bool) -> Mag {
        if n.sign() == Sign::NoSign {
            return Mag::ZERO;
        }
        let mag = n.magnitude();
        let bits = mag.bits();
        if bits <= 64 {
            let v = mag.iter_u64_digits().next().unwrap_or(0);
            return Mag::norm(v as u128, e, up);
        }
        let shift = bits - 64;
        let top = mag >> shift;
        let v = top.iter_u64_digits().next().unwrap_or(0);
        let lost = up && (top << shift) != *mag;
        let m = Mag::norm(v as u128, e + shift as i64, up);
        if lost {
            m.add_up(&Mag { man: 1, exp: m.exp })
        } else {
            m
        }
    }

    /// Approximate value as f64 (for heuristics only).
    pub fn to_f64(&self) -> f64 {
        if self.man == 0 {
            return 0.0;
        }
        let e = self.exp.clamp(-2000, 2000) as i32;
        (self.man as f64) * 2f64.powi(e)
    }

    /// Binary logarithm estimate: `log2(man) + exp`.
    pub fn log2_approx(&self) -> f64 {
        if self.man == 0 {
            return f64::NEG_INFINITY;
        }
        (self.man as f64).log2() + self.exp as f64
    }

    fn align(a: &Mag, b: &Mag, up: bool) -> (u128, u128, i64) {
        // Bring both to the smaller exponent when the shift is modest;
        // otherwise the smaller term only contributes a rounding unit.
        let (hi, lo) = if a.exp >= b.exp { (a, b) } else { (b, a) };
        let d = hi.exp - lo.exp;
        if d <= 60 {
            ((hi.man as u128) << d, lo.man as u128, lo.exp)
        } else {
            let tiny = if up && lo.man != 0 { 1 } else { 0 };
            ((hi.man as u128) << 2, tiny, hi.exp - 2)
        }
    }

    pub fn add_up(&self, other: &Mag) -> Mag {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (x, y, e) = Mag::align(self, other, true);
        Mag::norm(x + y, e, true)
    }

    pub fn add_down(&self, other: &Mag) -> Mag {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (x, y, e) = Mag::align(self, other, false);
        Mag::norm(x + y, e, false)
    }

    /// Lower bound of `self - other`, clamped at zero.
    pub fn sub_down(&self, other: &Mag) -> Mag {
        if other.is_zero() {
            return *self;
        }
        if *self <= *other {
            return Mag::ZERO;
        }
        // `other` rounded up keeps the difference a lower bound.
        let (x, y, e) = if self.exp >= other.exp {
            let d = self.exp - other.exp;
            if d > 60 {
                // other < 2^-28 * self; subtract one unit of self's scale.
                let m = (self.man as u128) << 2;
                return Mag::norm(m.saturating_sub(1), self.exp - 2, false);
            }
            ((self.man as u128) << d, other.man as u128, other.exp)
        } else {
            let d = other.exp - self.exp;
            (self.man as u128, (other.man as u128) << d, self.exp)
        };
        Mag::norm(x.saturating_sub(y), e, false)
    }

    pub fn mul_up(&self, other: &Mag) -> Mag {
        Mag::norm(
            self.man as u128 * other.man as u128,
            self.exp + other.exp,
            true,
        )
    }

    pub fn mul_down(&self, other: &Mag) -> Mag {
        Mag::norm(
            self.man as u128 * other.man as u128,
            self.exp + other.exp,
            false,
        )
    }

    pub fn mul_2exp(&self, e: i64) -> Mag {
        if self.is_zero() {
            return *self;
        }
        Mag {
            man: self.man,
            exp: self.exp + e,
        }
    }

    /// Upper bound of `self / other`. Panics if `other` is zero.
    pub fn div_up(&self, other: &Mag) -> Mag {
        assert!(!other.is_zero(), "division of magnitude by zero");
        if self.is_zero() {
            return Mag::ZERO;
        }
        let num = (self.man as u128) << 64;
        let q = num / other.man as u128 + 1;
        Mag::norm(q, self.exp - other.exp - 64, true)
    }

    pub fn div_down(&self, other: &Mag) -> Mag {
        assert!(!other.is_zero(), "division of magnitude by zero");
        if self.is_zero() {
            return Mag::ZERO;
        }
        let num = (self.man as u128) << 64;
        let q = num / other.man as u128;
        Mag::norm(q, self.exp - other.exp - 64, false)
    }

    /// Upper bound of the square root.
    pub fn sqrt_up(&self) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        // Make the exponent even and the mantissa large.
        let mut m = (self.man as u128) << 64;
        let mut e = self.exp - 64;
        if e.rem_euclid(2) != 0 {
            m <<= 1;
            e -= 1;
        }
        let mut r = isqrt_u128(m);
        if r * r < m {
            r += 1;
        }
        Mag::norm(r, e / 2, true)
    }

    pub fn sqrt_down(&self) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let mut m = (self.man as u128) << 64;
        let mut e = self.exp - 64;
        if e.rem_euclid(2) != 0 {
            m <<= 1;
            e -= 1;
        }
        Mag::norm(isqrt_u128(m), e / 2, false)
    }

    pub fn max(self, other: Mag) -> Mag {
        if self >= other {
            self
        } else {
            other
        }
    }
}

fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    // Newton clean-up from the float estimate.
    loop {
        let y = (x + n / x.max(1)) / 2;
        if y >= x && x * x <= n {
            break;
        }
        x = y;
        if x == 0 {
            break;
        }
    }
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.man == 0, other.man == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let la = 64 - self.man.leading_zeros() as i64 + self.exp;
        let lb = 64 - other.man.leading_zeros() as i64 + other.exp;
        if la != lb {
            return la.cmp(&lb);
        }
        let (x, y, _) = Mag::align(self, other, false);
        if self.exp >= other.exp {
            x.cmp(&y)
        } else {
            y.cmp(&x)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_directions() {
        let a = Mag::from_u64(3);
        let b = Mag::from_u64(7);
        assert_eq!(a.mul_up(&b).to_f64(), 21.0);
        let q = a.div_up(&b).to_f64();
        assert!(q >= 3.0 / 7.0);
        let qd = a.div_down(&b).to_f64();
        assert!(qd <= 3.0 / 7.0);
        assert!(Mag::from_u64(2).sqrt_up().to_f64() >= std::f64::consts::SQRT_2);
        assert!(Mag::from_u64(2).sqrt_down().to_f64() <= std::f64::consts::SQRT_2);
        assert_eq!(b.sub_down(&a).to_f64(), 4.0);
    }

    #[test]
    fn bigint_bounds() {
        let n: BigInt = BigInt::from(1u64) << 200;
        let n = n + 12345;
        let up = Mag::from_bigint_up(&n, 0);
        let down = Mag::from_bigint_down(&n, 0);
        assert!(up > down);
        assert!(up.log2_approx() >= 200.0);
    }
}
