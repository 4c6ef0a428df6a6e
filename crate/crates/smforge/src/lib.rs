// SPDX-License-Identifier: Apache-2.0
//! Certified computations around singular moduli.
//!
//! The crate decides whether linear relations `A x^m + B y^n + C = 0` or
//! multiplicative relations `x^m y^n in Q^x` can hold between singular
//! moduli `x`, `y` of equal class number, and produces machine-checkable
//! transcripts of every inequality it relies on.

pub mod arith;
pub mod elimination;
pub mod forms;
pub mod modular;
pub mod numberfield;
pub mod par;
pub mod poly;
mod serde_big;
pub mod y0;
