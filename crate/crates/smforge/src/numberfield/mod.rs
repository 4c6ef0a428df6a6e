// SPDX-License-Identifier: Apache-2.0
//! Exact arithmetic in the fields generated by singular moduli: primitive
//! elements, valuations, roots of unity and multiplicative independence.

mod element;
mod field;
mod galois;
mod indep;
mod torsion;
mod valuation;

pub use element::FieldElement;
pub use field::{build_field, certify_roots, Generator, NumberField};
pub use galois::{
    homomorphisms, rational_power_product_test, shared_field_frame, Conjugates, Embedding, Family,
    GaloisFrame, PowerProductReport, SigmaOutcome, Word, EXACT_FALLBACK_DEGREE,
};
pub use indep::{
    convergents, log_determinant_test, mult_independent, Dependence, Independence,
    IndependenceProof, LogDeterminant, RATIO_DENOMINATOR_CAP,
};
pub use torsion::{possible_orders, root_of_unity_order, roots_of_unity, torsion_generator};
pub use valuation::{
    primes_above, support_primes, valuation, valuation_table, valuations_at_common_prime,
    PrimeIdeal, ValuationCertificate, ValuationRow, TRIAL_DIVISION_BOUND,
};

use crate::modular::ModularError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("generators must be monic non-constant integer polynomials")]
    BadGenerator,
    #[error("no primitive element found after {0} attempts")]
    PrimitiveElement(usize),
    #[error("root isolation failed for a polynomial of degree {0}")]
    RootIsolation(usize),
    #[error("precision exhausted after reaching {0} bits")]
    PrecisionExhausted(u32),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("zero where a nonzero element is required")]
    DivisionByZero,
    #[error("interpolation failed: {0}")]
    Interpolation(String),
    #[error("search bound exceeded: {0}")]
    SearchExhausted(String),
    #[error("every candidate prime divides the polynomial discriminant: {0:?}")]
    NoUsablePrime(Vec<u64>),
    #[error("inconsistent Galois labels: {0}")]
    Labels(String),
    #[error(transparent)]
    Modular(#[from] ModularError),
}
