// SPDX-License-Identifier: Apache-2.0
//! Certified ball arithmetic over the reals and complexes.
//!
//! Numbers carry a dyadic midpoint and a rigorous radius; comparisons only
//! succeed when the balls are separated. Precision escalation is the
//! caller's job (see [`Precision`]).

mod complex;
mod float;
pub mod funcs;
mod mag;
mod real;

pub use complex::CertifiedComplex;
pub use float::Dyadic;
pub use mag::Mag;
pub use real::CertifiedReal;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;
/// Largest precision reached by automatic escalation.
pub const MAX_PRECISION: u32 = 16384;

/// Doubling schedule `start, 2 start, ...` capped at [`MAX_PRECISION`].
pub fn precision_schedule(start: u32) -> impl Iterator<Item = u32> {
    let mut p = start.max(64);
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = p.min(MAX_PRECISION);
        if cur >= MAX_PRECISION {
            done = true;
        }
        p = p.saturating_mul(2);
        Some(cur)
    })
}
