// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use smforge::arith::{funcs, CertifiedReal};
use smforge::elimination::*;
use smforge::forms::Discriminant;

const PREC: u32 = 256;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn real(x: f64) -> CertifiedReal {
    CertifiedReal::from_rational(&BigRational::from_float(x).unwrap(), PREC)
}

/// Reduced forms of discriminant `d` by brute force: `(h, ambiguous)`.
fn reduced_form_census(d: i64) -> (usize, usize) {
    let n = -d;
    let (mut h, mut amb) = (0, 0);
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b * b + n) % (4 * a) != 0 {
                continue;
            }
            let c = (b * b + n) / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if num_integer::gcd(num_integer::gcd(a, b), c) != 1 {
                continue;
            }
            h += 1;
            if b == 0 || b == a || a == c {
                amb += 1;
            }
        }
        a += 1;
    }
    (h, amb)
}

#[test]
fn r_census_matches_brute_force() {
    for (dp, r) in r_census() {
        let (h, amb) = reduced_form_census(4 * dp);
        assert_eq!(r, (h + amb) / 2, "Δ′ = {dp}");
    }
}

#[test]
fn only_two_small_discriminants_have_fewer_than_three_rows() {
    let small: Vec<i64> = r_census()
        .into_iter()
        .filter(|&(_, r)| r < 3)
        .map(|(d, _)| d)
        .collect();
    assert_eq!(small, vec![-23, -31]);
}

#[test]
fn rank_three_census() {
    let three: Vec<i64> = r_census()
        .into_iter()
        .filter(|&(_, r)| r == 3)
        .map(|(d, _)| d)
        .collect();
    assert_eq!(three, vec![-39, -47, -55, -63, -79, -103, -127]);
}

#[test]
fn rank_two_discriminants_survive_the_linear_sweep() {
    for dp in [-23, -31] {
        let rep = small_disc_linear(dp, PREC).unwrap();
        assert_eq!(rep.outcome, Outcome::Survivor);
        assert_eq!(rep.discs, [4 * dp, dp]);
    }
}

#[test]
fn small_discriminant_list_has_equal_class_numbers() {
    let list = small_linear_discriminants();
    assert!(!list.is_empty());
    for d in list {
        let (h, _) = reduced_form_census(d);
        let (h4, _) = reduced_form_census(4 * d);
        assert!(h >= 3 && h == h4, "Δ′ = {d}");
    }
}

#[test]
fn matveev_integer_constants() {
    // 2^38 · 2^5 · 19 · 10 and 2^38 · 100, computed by hand.
    let two38 = BigInt::from(1u64 << 38);
    assert_eq!(linear_small_coefficient(), &two38 * 32 * 190);
    assert_eq!(linear_small_coefficient().to_string(), "1671257674219520");
    assert_eq!(distinct_fields_coefficient(), &two38 * 100);
    assert_eq!(BigInt::from(DISTINCT_FIELDS_PRINTED), &two38 * 10);
}

#[test]
fn matveev_lower_bound_is_monotone_in_height() {
    let a = vec![real(2.0), real(3.0), real(0.5)];
    let lo = matveev_lower(&MatveevParams {
        r: 3,
        d: 4,
        big_h: real(10.0),
        a: a.clone(),
    });
    let hi = matveev_lower(&MatveevParams {
        r: 3,
        d: 4,
        big_h: real(1000.0),
        a,
    });
    assert!(hi.certainly_lt(&lo));
}

#[test]
fn bound_n_satisfies_its_certificate() {
    let nb = bound_n(&real(5.0), &real(0.25), &real(1.0e12), 3).unwrap();
    assert!(nb.c6 > nb.c5);
    // n / log(3e n) < c₅ fails at n = c₆.
    let c6 = nb.c6;
    assert!(c6 / (3.0 * std::f64::consts::E * c6).ln() >= nb.c5 * (1.0 - 1e-12));
    assert!(bound_n(&real(5.0), &real(1.5), &real(1.0), 3).is_err());
}

fn problem(theta: CertifiedReal, c1: f64, c2: f64, c3p: f64, c4: f64, c6: f64) -> CfProblem {
    CfProblem {
        theta,
        log_alpha: real(1.0),
        c1: real(c1),
        c2: real(c2),
        c3p: real(c3p),
        c4: real(c4),
        c6: real(c6),
    }
}

#[test]
fn planted_solution_is_found() {
    // θ within 10⁻⁵⁰ of 1/3: the convergent 1/3 violates the bound.
    let theta = CertifiedReal::from_rational(
        &(rat(1, 3) + BigRational::new(1.into(), BigInt::from(10).pow(50))),
        PREC,
    );
    let out = cf_reject(&problem(theta, 0.3, 0.4, 1.5, 0.2, 1000.0));
    assert_eq!(
        out.verdict,
        CfVerdict::Failed {
            m: "1".into(),
            n: "3".into()
        }
    );
}

#[test]
fn badly_approximable_theta_is_rejected() {
    let theta = funcs::sqrt_int(2, PREC).sub(&CertifiedReal::from_int(1, PREC));
    let out = cf_reject(&problem(theta, 0.3, 0.5, 1.5, 0.1, 200.0));
    assert_eq!(out.verdict, CfVerdict::Rejected);
    // √2 − 1 = [0; 2, 2, 2, …].
    let qs: Vec<&str> = out.convergents.iter().map(|(_, q)| q.as_str()).collect();
    assert_eq!(qs, ["1", "2", "5", "12", "29", "70", "169"]);
}

#[test]
fn common_convergents_stop_at_disagreement() {
    // π = [3; 7, 15, 1, 292, …]: below 1000 the convergents end at 355/113.
    let pi = funcs::pi(PREC);
    let (lo, hi) = (pi.lower().to_rational(), pi.upper().to_rational());
    let cs = common_convergents(&lo, &hi, &rat(1000, 1)).unwrap();
    assert_eq!(cs.len(), 4);
    let last = cs.last().unwrap();
    assert_eq!(
        (last.0.clone(), last.1.clone()),
        (BigInt::from(355), BigInt::from(113))
    );
    assert!(common_convergents(&rat(1, 3), &rat(1, 2), &rat(1000, 1)).is_none());
}

#[test]
fn thresholds_of_the_positive_case() {
    let eq = threshold_scan(Branch::Equal, PREC);
    let first = threshold_scan(Branch::BigFirst, PREC);
    let printed = threshold_scan(
        Branch::BigSecond {
            divisor: PRINTED_DIVISOR,
        },
        PREC,
    );
    let sound = threshold_scan(
        Branch::BigSecond {
            divisor: SOUND_DIVISOR,
        },
        PREC,
    );
    assert_eq!(eq.threshold, PRINTED_THRESHOLDS[0]);
    assert_eq!(first.threshold, PRINTED_THRESHOLDS[1]);
    assert_eq!((printed.threshold, sound.threshold), (367, 542));
    assert!([eq, first, printed, sound].iter().all(|s| s.tail_certified));
}

#[test]
fn threshold_branches_agree_with_floating_point() {
    // Independent f64 evaluation of the first branch just above and at 109.
    let lhs =
        |d: f64| 3000.0 * (std::f64::consts::PI * d.sqrt() / 3.0).exp() * (1e-8f64).min(d.powi(-3));
    assert!(lhs(109.0) <= 1.71);
    assert!((110..3000).all(|d| lhs(d as f64) > 1.71));
}

#[test]
fn residual_list_contains_the_bound_phase_survivors() {
    let (_, scans) = mult_positive_thresholds(PREC);
    let residual = mult_positive_residual(&scans);
    assert!(residual.contains(&(-71, -71)));
    assert!(residual.contains(&(-95, -95)));
}

#[test]
fn uniform_linear_intervals_cover_sampled_discriminants() {
    let (u23, u34) = uniform_linear_intervals(PREC).unwrap();
    let samples: Vec<i64> = (1024..5000)
        .map(|n: i64| -n)
        .filter(|&v| {
            v.rem_euclid(8) == 1 && Discriminant::new(v).is_ok_and(|d| d.class_number() >= 8)
        })
        .step_by(37)
        .take(10)
        .collect();
    assert_eq!(samples.len(), 10);
    for dp in samples {
        let sys = table_system(Discriminant::new(dp).unwrap(), 4, PREC).unwrap();
        for (u, (i, j)) in [(&u23, (2, 3)), (&u34, (3, 4))] {
            let iv = ratio_interval(&sys, i, j).unwrap();
            let centre = iv.log_y.div(&iv.log_x).unwrap();
            assert!(
                u.lo() <= centre.lower().to_rational() && centre.upper().to_rational() <= u.hi(),
                "Δ′ = {dp}, rows {i},{j}"
            );
            assert!(iv.lo().to_rational() < u.hi() && u.lo() < iv.hi().to_rational());
        }
    }
}

#[test]
fn uniform_intervals_are_disjoint() {
    let (a, b) = uniform_linear_intervals(PREC).unwrap();
    assert!(a.hi() < b.lo() || b.hi() < a.lo());
}

#[test]
fn linear_sweep_leaves_only_rank_two_survivors() {
    let s = Summary::of(&eliminate_linear(3, 1023, PREC));
    assert!(s.complete(), "{s:?}");
    assert_eq!(s.survivors, vec![[-92, -23], [-124, -31]]);
}

#[test]
fn multiplicative_sweep_is_complete() {
    let s = Summary::of(&eliminate_mult(PREC));
    assert!(s.complete(), "{s:?}");
    assert!(s.survivors.is_empty());
}

#[test]
fn reports_serialize_deterministically() {
    let a = serde_json::to_string(&small_disc_linear(-71, PREC).unwrap()).unwrap();
    let b = serde_json::to_string(&small_disc_linear(-71, PREC).unwrap()).unwrap();
    assert_eq!(a, b);
    let back: EliminationReport = serde_json::from_str(&a).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), a);
}

#[test]
fn power_product_reports_do_not_depend_on_scheduling() {
    let pairs = independence_pairs();
    let par = smforge::par::map(&pairs[..6], |&(a, b)| {
        power_product_report(Case::IndepCheck, a, b).unwrap()
    });
    let seq = smforge::par::map_seq(&pairs[..6], |&(a, b)| {
        power_product_report(Case::IndepCheck, a, b).unwrap()
    });
    assert_eq!(par, seq);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Plant three collinear points `(x_i^m, y_i^n)`: choose `x₁, x₂, y₁, y₂,
    /// y₃` and solve for `x₃`. Whenever the interval is defined it must
    /// contain the true `m/n`.
    #[test]
    fn ratio_interval_contains_planted_ratio(
        m in 1u32..6,
        n in 1u32..6,
        lx1 in 8.0f64..14.0,
        gap_x in 2.0f64..5.0,
        ly1 in 8.0f64..14.0,
        gap_y2 in 2.0f64..5.0,
        gap_y3 in 2.0f64..5.0,
    ) {
        let (m, n) = (m as f64, n as f64);
        let (x1, x2) = (lx1.exp(), (lx1 - gap_x).exp());
        let (y1, y2, y3) = (ly1.exp(), (ly1 - gap_y2).exp(), (ly1 - gap_y2 - gap_y3).exp());
        let (p1, p2) = ((x1.powf(m), y1.powf(n)), (x2.powf(m), y2.powf(n)));
        let t = (y3.powf(n) - p1.1) / (p2.1 - p1.1);
        let x3m = p1.0 + t * (p2.0 - p1.0);
        prop_assume!(x3m > 0.0);
        let x3 = x3m.powf(1.0 / m);
        prop_assume!(x3 < x2 && x3 > 0.0);
        // Moduli from f64 carry rounding error; widen each by a relative 1e-12.
        let ball = |v: f64| {
            let r = real(v);
            r.add(&CertifiedReal::from_bounds(&real(-v * 1e-12).lower(), &real(v * 1e-12).upper(), PREC))
        };
        let (bx, by) = ([ball(x1), ball(x2), ball(x3)], [ball(y1), ball(y2), ball(y3)]);
        if let Ok(iv) = ratio_interval_from_moduli([&bx[0], &bx[1], &bx[2]], [&by[0], &by[1], &by[2]], 2, 3) {
            let truth = BigRational::from_float(m / n).unwrap();
            prop_assert!(iv.lo().to_rational() <= truth && truth <= iv.hi().to_rational());
        }
    }
}
