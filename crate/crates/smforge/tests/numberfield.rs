// SPDX-License-Identifier: Apache-2.0

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use smforge::forms::Discriminant;
use smforge::modular::class_polynomial_cached;
use smforge::numberfield::{
    build_field, mult_independent, rational_power_product_test, root_of_unity_order,
    roots_of_unity, shared_field_frame, valuations_at_common_prime, Family, FieldElement,
    GaloisFrame, Generator, Independence, IndependenceProof, NumberField,
};
use smforge::numberfield::{primes_above, valuation};
use std::sync::Arc;

fn disc(d: i64) -> Discriminant {
    Discriminant::new(d).unwrap()
}

fn field(coeffs: &[i64]) -> Arc<NumberField> {
    NumberField::from_polynomial(coeffs.iter().map(|&c| BigInt::from(c)).collect()).unwrap()
}

fn int(f: &Arc<NumberField>, n: i64) -> FieldElement {
    FieldElement::from_int(f, n)
}

fn hcp(d: i64) -> Generator {
    Generator::Class(class_polynomial_cached(disc(d), None).unwrap())
}

/// Plain trial-division valuation, as an oracle for rational integers.
fn vp(mut n: i64, p: i64) -> i64 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

fn assert_generators_are_roots(f: &Arc<NumberField>, gens: &[Generator]) {
    for (i, g) in gens.iter().enumerate() {
        let x = FieldElement::generator(f, i);
        assert!(
            x.eval_poly(&g.polynomial()).is_zero(),
            "generator {i} is not a root"
        );
    }
}

#[test]
fn field_degrees_of_small_examples() {
    let cases: Vec<(Vec<Generator>, usize)> = vec![
        (
            vec![Generator::Polynomial(vec![
                BigInt::from(-1728),
                BigInt::one(),
            ])],
            1,
        ),
        (vec![hcp(-23)], 3),
        (vec![Generator::Quadratic(-23), hcp(-23)], 6),
        (vec![Generator::Quadratic(2), Generator::Quadratic(3)], 4),
    ];
    for (gens, degree) in cases {
        let f = build_field(&gens).unwrap();
        assert_eq!(f.degree, degree);
        assert_eq!(f.embeddings.len(), degree);
        assert_generators_are_roots(&f, &gens);
    }
}

#[test]
fn cubic_class_field_has_one_real_place() {
    let f = build_field(&[hcp(-23)]).unwrap();
    assert_eq!(f.real_embeddings().len(), 1);
    let h = build_field(&[Generator::Quadratic(-23), hcp(-23)]).unwrap();
    assert!(h.is_totally_complex());
}

#[test]
fn product_of_conjugates_matches_constant_term() {
    // Vieta: the three conjugates multiply to minus the constant term.
    let frame = GaloisFrame::single(disc(-23));
    let (f, labels) = frame.exact_field().unwrap();
    let mut prod = FieldElement::one(&f);
    for b in 0..3 {
        prod = prod.mul(&frame.exact_conjugate(&f, &labels, Family::X, b).unwrap());
    }
    let c0 = class_polynomial_cached(disc(-23), None)
        .unwrap()
        .ascending()[0]
        .clone();
    assert_eq!(prod.as_rational(), Some(BigRational::from_integer(-c0)));
}

#[test]
fn roots_of_unity_counts() {
    // w(Q(ζ_m)) = lcm(2, m); real fields have ±1.
    let cases: Vec<(Vec<i64>, usize)> = vec![
        (vec![0, 1], 2),
        (vec![-2, 0, 1], 2),
        (vec![1, 0, 1], 4),
        (vec![3, 0, 1], 6),
        (vec![1, 0, 0, 0, 1], 8),
        (vec![1, 1, 1, 1, 1], 10),
        (vec![1, 0, -1, 0, 1], 12),
    ];
    for (poly, w) in cases {
        let f = field(&poly);
        let mu = roots_of_unity(&f).unwrap();
        assert_eq!(mu.len(), w, "field {poly:?}");
        for z in &mu {
            assert!(z.pow(w as i64).unwrap().is_one());
            assert!(mu.contains(&z.inv().unwrap()));
            for u in &mu {
                assert!(mu.contains(&z.mul(u)));
            }
        }
        let orders: std::collections::BTreeSet<u64> =
            mu.iter().map(|z| root_of_unity_order(z).unwrap()).collect();
        assert!(orders.contains(&(w as u64)));
    }
}

#[test]
fn ring_class_field_has_only_sign_roots_of_unity() {
    let h = build_field(&[Generator::Quadratic(-23), hcp(-23)]).unwrap();
    assert_eq!(roots_of_unity(&h).unwrap().len(), 2);
}

#[test]
fn valuations_of_rational_examples() {
    let q = NumberField::rationals();
    let c = valuations_at_common_prime(&int(&q, 1728), &int(&q, 287496))
        .unwrap()
        .unwrap();
    assert_eq!(c.prime, 2);
    assert_eq!((c.v_alpha, c.v_beta), (vp(1728, 2), vp(287496, 2)));
    assert_eq!((c.v_alpha, c.v_beta), (6, 3));
    let c = valuations_at_common_prime(&int(&q, 4), &int(&q, 8))
        .unwrap()
        .unwrap();
    assert_eq!((c.v_alpha, c.v_beta), (2, 3));
}

#[test]
fn units_share_no_prime() {
    let f = field(&[-1, -2, 1]); // θ = 1 + √2
    let u = FieldElement::theta(&f);
    let v = u.pow(3).unwrap();
    assert_eq!(valuations_at_common_prime(&u, &v).unwrap(), None);
}

#[test]
fn independence_of_rational_examples() {
    let q = NumberField::rationals();
    let r = mult_independent(&int(&q, 1728), &int(&q, 287496)).unwrap();
    assert!(matches!(
        r,
        Independence::Independent(IndependenceProof::CommonPrime { .. })
    ));
    match mult_independent(&int(&q, 4), &int(&q, 8)).unwrap() {
        Independence::Dependent(d) => {
            assert_eq!((d.k, d.l), (3, 2));
            assert!(d.zeta.is_one());
        }
        other => panic!("expected dependence, got {}", other.status()),
    }
    assert!(mult_independent(&int(&q, 2), &int(&q, 3))
        .unwrap()
        .is_independent());
}

#[test]
fn element_is_dependent_on_itself() {
    for poly in [vec![0, 1], vec![-1, -2, 1], vec![3, 0, 1]] {
        let f = field(&poly);
        let a = FieldElement::theta(&f).add(&int(&f, 2));
        match mult_independent(&a, &a).unwrap() {
            Independence::Dependent(d) => assert_eq!((d.k, d.l), (1, 1)),
            other => panic!("{poly:?}: {}", other.status()),
        }
    }
    // A unit exercises the archimedean route.
    let f = field(&[-1, -2, 1]);
    let u = FieldElement::theta(&f);
    match mult_independent(&u, &u.pow(2).unwrap()).unwrap() {
        Independence::Dependent(d) => assert_eq!((d.k, d.l), (2, 1)),
        other => panic!("unit: {}", other.status()),
    }
}

fn random_element(f: &Arc<NumberField>, rng: &mut StdRng) -> FieldElement {
    let coords = (0..f.degree)
        .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))))
        .collect();
    FieldElement::new(f, coords)
}

#[test]
fn constructed_dependent_pairs_are_recognised() {
    let fields = [
        field(&[0, 1]),
        field(&[1, 0, 1]),
        field(&[1, 1, 1]),
        field(&[-2, 0, 1]),
        build_field(&[hcp(-23)]).unwrap(),
    ];
    let mu: Vec<Vec<FieldElement>> = fields.iter().map(|f| roots_of_unity(f).unwrap()).collect();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut checked = 0;
    while checked < 100 {
        let i = checked % fields.len();
        let f = &fields[i];
        let g = random_element(f, &mut rng);
        if g.is_zero() || root_of_unity_order(&g).is_some() {
            continue;
        }
        let a = rng.gen_range(1i64..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let b = rng.gen_range(1i64..=5);
        let zeta = &mu[i][rng.gen_range(0..mu[i].len())];
        let alpha = zeta.mul(&g.pow(a).unwrap());
        let beta = g.pow(b).unwrap();
        match mult_independent(&alpha, &beta).unwrap() {
            Independence::Dependent(d) => {
                // α^k = ζ′ β^l must hold exactly, with (k, l) ∝ (b, a).
                let lhs = alpha.pow(d.k).unwrap();
                let rhs = d.zeta.mul(&beta.pow(d.l).unwrap());
                assert_eq!(lhs, rhs);
                assert!(d.zeta.pow(d.zeta_order as i64).unwrap().is_one());
                assert_eq!(d.k * a, d.l * b, "γ = {g}, a = {a}, b = {b}");
            }
            other => panic!("γ = {g}, a = {a}, b = {b}: {}", other.status()),
        }
        checked += 1;
    }
}

#[test]
fn exact_arithmetic_round_trips() {
    let f = build_field(&[Generator::Quadratic(-23), hcp(-23)]).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..10 {
        let a = random_element(&f, &mut rng);
        let b = random_element(&f, &mut rng);
        if a.is_zero() {
            continue;
        }
        assert_eq!(a.mul(&b).div(&a).unwrap(), b);
        // Embeddings are ring homomorphisms.
        let (ea, eb, eab) = (
            a.embeddings(128),
            b.embeddings(128),
            a.mul(&b).embeddings(128),
        );
        for i in 0..f.degree {
            assert!(ea[i].mul(&eb[i]).overlaps(&eab[i]));
        }
        let n = a.norm();
        let prod = ea.iter().skip(1).fold(ea[0].clone(), |acc, z| acc.mul(z));
        assert!(prod.re().contains_rational(&n));
    }
}

#[test]
fn equal_discriminants_swap_is_not_certified() {
    // With y the other conjugate of x, every σ gives x/x^σ = y^σ/y.
    let frame = GaloisFrame::single(disc(-15));
    let report = rational_power_product_test(&frame, 1).unwrap();
    assert!(report.applicable);
    assert!(!report.certified());
    let trivial = GaloisFrame::single(disc(-4));
    assert!(!rational_power_product_test(&trivial, 0).unwrap().applicable);
}

#[test]
fn shared_field_pair_is_certified() {
    let (frame, f, labels) = shared_field_frame(disc(-96), disc(-192)).unwrap();
    assert_eq!(f.degree, 4);
    for b in 0..frame.y.class_number() {
        let y = frame.exact_conjugate(&f, &labels, Family::Y, b).unwrap();
        assert!(!y.is_zero());
        let report = rational_power_product_test(&frame, b).unwrap();
        assert!(report.certified(), "y class {b}");
    }
}

#[test]
fn distinct_class_groups_are_rejected() {
    assert!(shared_field_frame(disc(-23), disc(-31)).is_err());
}

#[test]
fn zero_and_rational_edge_cases() {
    let q = NumberField::rationals();
    assert!(mult_independent(&int(&q, 0), &int(&q, 3)).is_err());
    assert!(matches!(
        mult_independent(&int(&q, -1), &int(&q, 3)).unwrap(),
        Independence::Dependent(_)
    ));
    assert_eq!(
        int(&q, 5).norm(),
        BigRational::from_integer(BigInt::from(5))
    );
}

#[test]
fn ramified_prime_in_maximal_order() {
    // Z[√−5] is 2-maximal and (2) = 𝔭², with N(1 + √−5) = 6.
    let f = field(&[5, 0, 1]);
    let ps = primes_above(&f, 2).unwrap();
    assert_eq!(ps.len(), 1);
    assert!(ps[0].prime);
    assert_eq!((ps[0].ramification, ps[0].residue_degree), (2, 1));
    let one_plus = FieldElement::new(&f, vec![BigRational::one(), BigRational::one()]);
    assert_eq!(valuation(&int(&f, 2), &ps[0]), Some(2));
    assert_eq!(valuation(&one_plus, &ps[0]), Some(1));
}

#[test]
fn index_divisor_of_quadratic_order() {
    // 2 divides [O : Z[√−23]] and splits, since −23 ≡ 1 mod 8. The element
    // (1 + √−23)/2 has norm 6, so it lies in exactly one prime above 2.
    let f = field(&[23, 0, 1]);
    let ps = primes_above(&f, 2).unwrap();
    assert_eq!(ps.len(), 2);
    assert!(ps
        .iter()
        .all(|p| p.prime && p.ramification == 1 && p.residue_degree == 1));
    let half = BigRational::new(1.into(), 2.into());
    let omega = FieldElement::new(&f, vec![half.clone(), half]);
    let mut vs: Vec<i64> = ps.iter().map(|p| valuation(&omega, p).unwrap()).collect();
    vs.sort();
    assert_eq!(vs, vec![0, 1]);
    assert!(ps.iter().all(|p| valuation(&int(&f, 2), p) == Some(1)));
}

#[test]
fn coarse_factor_is_additive() {
    // θ = 2φ with φ³ = φ + 1, so θ³ − 4θ − 8 = 0 and Z[θ] is far from
    // 2-maximal. The factor above 2 is reported as the 2-adic norm map.
    let f = field(&[-8, -4, 0, 1]);
    let ps = primes_above(&f, 2).unwrap();
    assert_eq!(ps.len(), 1);
    assert!(!ps[0].prime);
    let theta = FieldElement::theta(&f);
    assert_eq!(valuation(&theta, &ps[0]), Some(vp(8, 2)));
    assert_eq!(valuation(&int(&f, 2), &ps[0]), Some(3));
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..20 {
        let (x, y) = (random_element(&f, &mut rng), random_element(&f, &mut rng));
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let vx = valuation(&x, &ps[0]).unwrap();
        let vy = valuation(&y, &ps[0]).unwrap();
        assert_eq!(valuation(&x.mul(&y), &ps[0]), Some(vx + vy));
    }
}

#[test]
fn valuations_are_additive_at_every_prime() {
    let mut rng = StdRng::seed_from_u64(5);
    for coeffs in [
        &[23i64, 0, 1][..],
        &[5, 0, 1],
        &[-17, 0, 1],
        &[-1, -1, 0, 1],
    ] {
        let f = field(coeffs);
        for p in [2u64, 3, 5, 17, 23] {
            for ideal in primes_above(&f, p).unwrap() {
                for _ in 0..5 {
                    let (x, y) = (random_element(&f, &mut rng), random_element(&f, &mut rng));
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    let vx = valuation(&x, &ideal).unwrap();
                    let vy = valuation(&y, &ideal).unwrap();
                    assert_eq!(
                        valuation(&x.mul(&y), &ideal),
                        Some(vx + vy),
                        "{coeffs:?} at {p}"
                    );
                }
            }
        }
    }
}

#[test]
fn real_quadratic_pair_with_split_two_is_certified() {
    // Both j-ratios are supported only above 2, which splits in Q(√17).
    let (fr, ..) = shared_field_frame(disc(-51), disc(-187)).unwrap();
    let out = rational_power_product_test(&fr, 0).unwrap();
    assert!(out.certified());
}
