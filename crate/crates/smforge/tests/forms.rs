// SPDX-License-Identifier: Apache-2.0

mod common;

use proptest::prelude::*;
use smforge::forms::{
    class_number, compose, discriminants_with_class_number, enumerate_forms, reduce, ClassGroup,
    Discriminant,
};

/// Reduced forms found by scanning `3a² ≤ |d|`, `−a < b ≤ a`. Any reduced
/// form has `a ≤ c`, so `4a² ≤ 4ac = b² − d ≤ a² + |d|` bounds the scan.
fn scan_forms(d: i64) -> Vec<(i64, i64, i64)> {
    let n = -d;
    let mut out = Vec::new();
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
            if num_integer::gcd(num_integer::gcd(a, b), c) == 1 {
                out.push((a, b, c));
            }
        }
        a += 1;
    }
    out.sort_unstable();
    out
}

fn library_forms(d: i64) -> Vec<(i64, i64, i64)> {
    let mut v: Vec<_> = enumerate_forms(Discriminant::new(d).unwrap())
        .iter()
        .map(|f| (f.a, f.b, f.c))
        .collect();
    v.sort_unstable();
    v
}

#[test]
fn scan_agrees_with_unbounded_search() {
    for n in 3..=300i64 {
        if Discriminant::new(-n).is_ok() {
            let mut wide = common::brute_forms(-n);
            wide.sort_unstable();
            assert_eq!(scan_forms(-n), wide, "Δ = {}", -n);
        }
    }
}

#[test]
fn enumeration_matches_scan_up_to_4000() {
    for n in 3..=4000i64 {
        match Discriminant::new(-n) {
            Ok(_) => assert_eq!(library_forms(-n), scan_forms(-n), "Δ = {}", -n),
            Err(_) => assert!(!matches!((-n).rem_euclid(4), 0 | 1)),
        }
    }
}

#[test]
fn class_number_one_and_two() {
    let one: Vec<i64> = discriminants_with_class_number(1, 4000)
        .iter()
        .map(|d| d.value())
        .collect();
    assert_eq!(
        one,
        vec![-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163]
    );
    assert_eq!(discriminants_with_class_number(2, 4000).len(), 29);
}

#[test]
fn invalid_discriminants_are_rejected() {
    for v in [0, 1, 5, -1, -2, -5, -6] {
        assert!(Discriminant::new(v).is_err(), "{v}");
    }
}

#[test]
fn class_group_of_minus_23_is_cyclic_of_order_three() {
    let g = ClassGroup::new(Discriminant::new(-23).unwrap());
    assert_eq!(g.order(), 3);
    assert!((0..3)
        .filter(|&i| i != g.identity())
        .all(|i| g.element_order(i) == 3));
}

fn valid_disc() -> impl Strategy<Value = i64> {
    (3i64..20_000).prop_filter_map("not a discriminant", |n| {
        Discriminant::new(-n).ok().map(|_| -n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduction_lands_on_an_enumerated_form(d in valid_disc(), k in -20i64..20, s in 0usize..64) {
        // Move a reduced form by τ ↦ τ + k and check reduction undoes it.
        let forms = enumerate_forms(Discriminant::new(d).unwrap());
        let f = forms[s % forms.len()];
        let (a, b) = (f.a, f.b + 2 * k * f.a);
        let c = (b * b - d) / (4 * a);
        prop_assert_eq!(reduce(a, b, c), f);
    }

    #[test]
    fn composition_is_a_group_law(d in valid_disc(), i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let g = ClassGroup::new(Discriminant::new(d).unwrap());
        let h = g.order();
        let (i, j, k) = (i % h, j % h, k % h);
        prop_assert_eq!(g.mul(i, j), g.mul(j, i));
        prop_assert_eq!(g.mul(g.mul(i, j), k), g.mul(i, g.mul(j, k)));
        prop_assert_eq!(g.mul(i, g.inv(i)), g.identity());
        prop_assert_eq!(g.mul(i, g.identity()), i);
        prop_assert_eq!(h, class_number(Discriminant::new(d).unwrap()));
        let composed = compose(&g.forms[i], &g.forms[j]);
        prop_assert_eq!(Some(g.mul(i, j)), g.index_of(&composed));
    }
}
