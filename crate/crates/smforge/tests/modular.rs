// SPDX-License-Identifier: Apache-2.0

mod common;

use num_bigint::BigInt;
use num_traits::Zero;
use smforge::arith::{CertifiedComplex, CertifiedReal};
use smforge::forms::{dominant_form, Discriminant};
use smforge::modular::{
    class_polynomial, class_polynomial_cached, cm_point, conjugate_values, dominance_check, eval_j,
    height_of, qj_coefficients, verify_estimates,
};

fn disc(d: i64) -> Discriminant {
    Discriminant::new(d).unwrap()
}

/// `j − 1/q` coefficients as used by the fixed-point oracle.
fn oracle_coeffs(n: usize) -> Vec<BigInt> {
    qj_coefficients(n + 2)[1..=n + 1].to_vec()
}

#[test]
fn two_truncation_oracle_at_i() {
    // q = e^{-2π}; truncations at N and 2N must agree and round to 1728.
    let c = oracle_coeffs(120);
    let r = common::exp_neg(&(common::pi_fixed() * 2));
    let a = common::j_truncated(&c, &r, 60);
    let b = common::j_truncated(&c, &r, 120);
    assert!(((&a - &b) >> (common::BITS - 80)).is_zero());
    assert_eq!(common::round(&a), BigInt::from(1728));
    let j = eval_j(
        &smforge::modular::tau_of_form(&dominant_form(disc(-4)), 300),
        256,
    )
    .unwrap();
    assert_eq!(j.re().unique_integer(), Some(BigInt::from(1728)));
    assert!(j.rad().log2_approx() < -64.0);
}

#[test]
fn two_truncation_oracle_at_163() {
    // q = −e^{−π√163}.
    let c = oracle_coeffs(40);
    let x = common::mul(&common::pi_fixed(), &common::sqrt_fixed(163));
    let r = -common::exp_neg(&x);
    let a = common::j_truncated(&c, &r, 20);
    let b = common::j_truncated(&c, &r, 40);
    assert!(((&a - &b) >> (common::BITS - 80)).is_zero());
    let expect: BigInt = "-262537412640768000".parse().unwrap();
    assert_eq!(common::round(&a), expect);
    let p = cm_point(disc(-163), dominant_form(disc(-163)), 256).unwrap();
    assert_eq!(p.j_value.re().unique_integer(), Some(expect));
    assert!(p.j_value.rad().log2_approx() < -40.0);
}

#[test]
fn j_vanishes_at_the_corner() {
    let p = cm_point(disc(-3), dominant_form(disc(-3)), 256).unwrap();
    assert!(p.j_value.contains_zero());
    assert!(p.j_value.rad().log2_approx() < -64.0);
}

#[test]
fn truncation_orders_agree_on_random_points() {
    // Points of D on a deterministic grid; the float partial sums at N and
    // 2N must sit inside the certified ball (up to float error).
    for k in 0..12 {
        let x = -0.5 + k as f64 / 11.0;
        let y = (1.0 - x * x).sqrt().max(0.87) + 0.05 * k as f64;
        let tau = CertifiedComplex::from_parts(
            &CertifiedReal::ratio((x * 1e6).round() as i64, 1_000_000, 128),
            &CertifiedReal::ratio((y * 1e6).round() as i64, 1_000_000, 128),
        );
        let (xr, yr) = tau.to_f64_pair();
        let j = eval_j(&tau, 128).unwrap();
        let (n1, n2) = smforge::modular::partial_sums_f64((xr, yr), 40);
        let (jr, ji) = j.to_f64_pair();
        let scale = jr.hypot(ji).max(1.0);
        assert!((n1.0 - n2.0).abs() / scale < 1e-9);
        assert!((n2.0 - jr).abs() / scale < 1e-9 && (n2.1 - ji).abs() / scale < 1e-9);
    }
}

#[test]
fn doubling_precision_shrinks_radius() {
    let tau = smforge::modular::tau_of_form(&dominant_form(disc(-23)), 600);
    let a = eval_j(&tau, 128).unwrap();
    let b = eval_j(&tau, 256).unwrap();
    assert!(a.overlaps(&b));
    assert!(b.rad().log2_approx() <= a.rad().log2_approx() - 64.0);
}

#[test]
fn estimates_on_examples() {
    let r =
        verify_estimates(&cm_point(disc(-163), dominant_form(disc(-163)), 256).unwrap()).unwrap();
    assert!(r.margin_v.is_some() && r.margin_half.is_some() && r.margin_log > 0.0);
    let r = verify_estimates(&cm_point(disc(-4), dominant_form(disc(-4)), 256).unwrap()).unwrap();
    assert!(r.margin_v.is_none() && r.margin_2079 > 0.0 && r.margin_log > 0.0);
    let r =
        verify_estimates(&cm_point(disc(-1027), dominant_form(disc(-1027)), 256).unwrap()).unwrap();
    assert!(r.margin_half.unwrap() > 0.0);
}

#[test]
fn estimates_hold_for_all_conjugates_up_to_2000() {
    let mut d = -3i64;
    while d >= -2000 {
        if let Ok(dd) = Discriminant::new(d) {
            for p in conjugate_values(dd, 128).unwrap() {
                verify_estimates(&p).unwrap();
            }
        }
        d -= 1;
    }
}

#[test]
fn dominance_on_examples_and_range() {
    for d in [-11i64, -23, -92] {
        let r = dominance_check(disc(d), 128).unwrap();
        assert!(r.holds, "{d}");
    }
    let mut d = -11i64;
    while d >= -2000 {
        if let Ok(dd) = Discriminant::new(d) {
            assert!(dominance_check(dd, 128).unwrap().holds, "{d}");
        }
        d -= 1;
    }
}

#[test]
fn heights_respect_the_bound() {
    let r = height_of(disc(-4), 128).unwrap();
    let l1728 = 1728f64.ln();
    assert!(r.height_lower <= l1728 && l1728 <= r.height_upper && r.bound == 9.0);
    assert!(r.bound_holds);
    let r = height_of(disc(-163), 128).unwrap();
    assert!((r.height_lower - 40.109).abs() < 1e-2 && (r.bound - 57.45).abs() < 1e-2);
    // Oracle for −23: (1/3) Σ log max(1, |x_k|) from the float j-values.
    let r = height_of(disc(-23), 128).unwrap();
    let oracle: f64 = conjugate_values(disc(-23), 64)
        .unwrap()
        .iter()
        .map(|p| {
            let (a, b) = p.j_value.to_f64_pair();
            a.hypot(b).max(1.0).ln()
        })
        .sum::<f64>()
        / 3.0;
    assert!((r.height_lower - oracle).abs() < 1e-9);
    for d in (3..=600).map(|k| -(k as i64)) {
        if let Ok(dd) = Discriminant::new(d) {
            assert!(height_of(dd, 96).unwrap().bound_holds, "{d}");
        }
    }
}

#[test]
fn class_polynomials_small() {
    let p = class_polynomial(disc(-4), 128).unwrap();
    assert_eq!(p.coefficients, vec![BigInt::from(1), BigInt::from(-1728)]);
    let p = class_polynomial(disc(-163), 128).unwrap();
    let c: BigInt = "262537412640768000".parse().unwrap();
    assert_eq!(p.coefficients, vec![BigInt::from(1), c]);
    let p = class_polynomial(disc(-23), 128).unwrap();
    assert_eq!(p.degree(), 3);
    // Rational-root test: a monic integer cubic is irreducible iff it has no
    // integer root, and any integer root lies near a real root.
    for p0 in conjugate_values(disc(-23), 64).unwrap() {
        let (re, im) = p0.j_value.to_f64_pair();
        if im.abs() < 1e-6 {
            for k in -2..=2 {
                let n = BigInt::from(re.round() as i64 + k);
                assert!(!p.eval(&n).is_zero());
            }
        }
    }
    let expect: Vec<BigInt> = ["1", "3491750", "-5151296875", "12771880859375"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(p.coefficients, expect);
}

#[test]
fn class_polynomials_stable_up_to_1024() {
    let ds = (3..=1024i64)
        .map(|k| -k)
        .filter(|d| Discriminant::new(*d).is_ok());
    for d in ds {
        let dd = disc(d);
        let p = class_polynomial(dd, 128).unwrap();
        assert_eq!(p.degree(), dd.class_number(), "{d}");
        assert!(p.coefficients[0] == BigInt::from(1));
    }
}

#[test]
fn cache_roundtrip_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let a = class_polynomial_cached(disc(-23), Some(dir.path())).unwrap();
    let path = dir.path().join("hcp_23.txt");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("-23 3\n1 3491750 "));
    assert!(text.trim_end().ends_with("12771880859375"));
    let b = class_polynomial_cached(disc(-23), Some(dir.path())).unwrap();
    assert_eq!(a, b);
}
