// SPDX-License-Identifier: Apache-2.0
//! Acceptance run: one line per criterion, `PASS`, `DEVIATION` or `FAIL`.
//!
//! `DEVIATION` marks a criterion whose mathematical content is certified but
//! where a literal printed constant is not what sound arithmetic produces.
//! The line says which constant and what was obtained instead. Only `FAIL`
//! makes the process exit nonzero.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use smforge::arith::CertifiedReal;
use smforge::elimination::{self, *};
use smforge::forms::{
    discriminants_with_class_number, dominant_form, enumerate_forms, Discriminant,
};
use smforge::modular::{
    class_polynomial, cm_point, conjugate_values, eval_j, tau_of_form, verify_estimates,
};
use smforge::numberfield::{
    build_field, mult_independent, primes_above, root_of_unity_order, roots_of_unity, valuation,
    FieldElement, Generator, Independence, NumberField,
};
use smforge::y0::{on_y02, phi_n_eval, Surd};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

const PREC: u32 = 256;

type Criterion = (&'static str, fn() -> Verdict);

enum Verdict {
    Pass(String),
    Deviation(String),
    Fail(String),
}

use Verdict::{Deviation, Fail, Pass};

fn disc(d: i64) -> Discriminant {
    Discriminant::new(d).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn scan_forms(d: i64) -> Vec<(i64, i64, i64)> {
    let n = -d;
    let mut out = Vec::new();
    let mut a = 1;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b * b + n) % (4 * a) == 0 {
                let c = (b * b + n) / (4 * a);
                if !(c < a || (c == a && b < 0)) && num_integer::gcd(num_integer::gcd(a, b), c) == 1
                {
                    out.push((a, b, c));
                }
            }
        }
        a += 1;
    }
    out.sort_unstable();
    out
}

fn forms_oracle() -> Verdict {
    for n in 3..=4000i64 {
        let Ok(d) = Discriminant::new(-n) else {
            continue;
        };
        let mut lib: Vec<_> = enumerate_forms(d).iter().map(|f| (f.a, f.b, f.c)).collect();
        lib.sort_unstable();
        if lib != scan_forms(-n) {
            return Fail(format!("forms differ at Δ = {}", -n));
        }
    }
    let one: Vec<i64> = discriminants_with_class_number(1, 4000)
        .iter()
        .map(|d| d.value())
        .collect();
    if one != [-3, -4, -7, -8, -11, -12, -16, -19, -27, -28, -43, -67, -163] {
        return Fail(format!("h = 1 list {one:?}"));
    }
    let two = discriminants_with_class_number(2, 4000).len();
    if two != 29 {
        return Fail(format!("{two} discriminants with h = 2"));
    }
    Pass("3 ≤ |Δ| ≤ 4000 agree with the scan; 13 with h = 1, 29 with h = 2".into())
}

fn j_numerics() -> Verdict {
    let c: Vec<BigInt> = smforge::modular::qj_coefficients(122)[1..=121].to_vec();
    let r = common::exp_neg(&(common::pi_fixed() * 2));
    let oracle_i = common::round(&common::j_truncated(&c, &r, 120));
    let r163 = -common::exp_neg(&common::mul(&common::pi_fixed(), &common::sqrt_fixed(163)));
    let oracle_163 = common::round(&common::j_truncated(&c, &r163, 40));
    let j_i = eval_j(&tau_of_form(&dominant_form(disc(-4)), 512), 512).unwrap();
    let j_163 = cm_point(disc(-163), dominant_form(disc(-163)), 512)
        .unwrap()
        .j_value;
    let expect_163: BigInt = "-262537412640768000".parse().unwrap();
    for (name, j, oracle, want) in [
        ("i", &j_i, &oracle_i, BigInt::from(1728)),
        ("(−1+√−163)/2", &j_163, &oracle_163, expect_163),
    ] {
        if j.re().unique_integer() != Some(want.clone()) || *oracle != want {
            return Fail(format!("j({name}) does not round to {want}"));
        }
        if j.rad().log2_approx() >= -40.0 {
            return Fail(format!("j({name}) radius 2^{:.1}", j.rad().log2_approx()));
        }
    }
    let mut worst = f64::INFINITY;
    let mut points = 0;
    for n in 3..=2000i64 {
        let Ok(d) = Discriminant::new(-n) else {
            continue;
        };
        for p in conjugate_values(d, 128).unwrap() {
            match verify_estimates(&p) {
                Ok(rep) => worst = worst.min(rep.margin_2079),
                Err(e) => return Fail(e.to_string()),
            }
            points += 1;
        }
    }
    Pass(format!("1728 and −262537412640768000 certified at 512 bits; ≤ 2079 margin ≥ {worst:.3} at {points} CM points"))
}

fn class_polynomials() -> Verdict {
    let mut count = 0;
    let mut max_degree = 0;
    for n in 3..=1024i64 {
        let Ok(d) = Discriminant::new(-n) else {
            continue;
        };
        // Each polynomial is only returned once rounding at p and 2p agree.
        let p = match class_polynomial(d, 128) {
            Ok(p) => p,
            Err(e) => return Fail(format!("Δ = {}: {e}", -n)),
        };
        if p.degree() != d.class_number() {
            return Fail(format!(
                "Δ = {}: degree {} vs h = {}",
                -n,
                p.degree(),
                d.class_number()
            ));
        }
        count += 1;
        max_degree = max_degree.max(p.degree());
    }
    Pass(format!(
        "{count} polynomials stable under doubling, degree = h, largest degree {max_degree}"
    ))
}

fn uniform_linear() -> Verdict {
    let Ok((u23, u34)) = uniform_linear_intervals(PREC) else {
        return Fail("intervals undefined".into());
    };
    let samples: Vec<i64> = (1024..5000)
        .map(|n: i64| -n)
        .filter(|&v| {
            v.rem_euclid(8) == 1 && Discriminant::new(v).is_ok_and(|d| d.class_number() >= 8)
        })
        .step_by(37)
        .take(10)
        .collect();
    for &dp in &samples {
        let Ok(sys) = table_system(disc(dp), 4, PREC) else {
            return Fail(format!("no system at {dp}"));
        };
        for (u, (i, j)) in [(&u23, (2, 3)), (&u34, (3, 4))] {
            let Ok(iv) = ratio_interval(&sys, i, j) else {
                return Fail(format!("rows {i},{j} at {dp}"));
            };
            let centre = iv.log_y.div(&iv.log_x).unwrap();
            if !(u.lo() <= centre.lower().to_rational() && centre.upper().to_rational() <= u.hi()) {
                return Fail(format!(
                    "Δ′ = {dp}, rows (1,{i},{j}) outside the uniform interval"
                ));
            }
        }
    }
    if !(u23.hi() < u34.lo()) {
        return Fail("uniform intervals overlap".into());
    }
    let f = |q: &BigRational| elimination_f64(q);
    let text = format!(
        "10 sampled Δ′ covered; (1,2,3) ⊂ [{:.4}, {:.4}], (1,3,4) ⊂ [{:.4}, {:.4}], disjoint",
        f(&u23.lo()),
        f(&u23.hi()),
        f(&u34.lo()),
        f(&u34.hi())
    );
    let [p23, p34] = printed_linear_bounds();
    if u23.contained_in(&p23.0, &p23.1) && u34.contained_in(&p34.0, &p34.1) {
        Pass(format!("{text}, inside the printed bounds"))
    } else {
        let [s23, _] = shorthand_linear_bounds();
        Deviation(format!(
            "{text}; printed [0.279, 0.294] not contained (its own slack gives lower end {:.4})",
            f(&s23.0)
        ))
    }
}

fn elimination_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn census() -> Verdict {
    let rs = r_census();
    let three: Vec<i64> = rs
        .iter()
        .filter(|&&(_, r)| r == 3)
        .map(|&(d, _)| d)
        .collect();
    let small: Vec<i64> = rs
        .iter()
        .filter(|&&(_, r)| r < 3)
        .map(|&(d, _)| d)
        .collect();
    if three != [-39, -47, -55, -63, -79, -103, -127] || small != [-23, -31] {
        return Fail(format!("r = 3: {three:?}, r < 3: {small:?}"));
    }
    Pass("r = 3 for {−39, −47, −55, −63, −79, −103, −127}; r < 3 for {−23, −31}".into())
}

fn matveev() -> Verdict {
    let main = linear_small_coefficient();
    if main.to_string() != "1671257674219520" {
        return Fail(format!("exponent coefficient {main}"));
    }
    let sound = distinct_fields_coefficient();
    let printed = BigInt::from(DISTINCT_FIELDS_PRINTED);
    if sound == printed {
        Pass("1671257674219520 and 2748779069440 reproduced".into())
    } else {
        Deviation(format!(
            "1671257674219520 reproduced; distinct-field constant is {sound} with admissible heights, printed {printed} is a tenth of it"
        ))
    }
}

fn linear_pipeline() -> Verdict {
    let start = Instant::now();
    let reports = eliminate_linear(0, i64::MAX, PREC);
    let s = Summary::of(&reports);
    if !s.complete() {
        return Fail(format!(
            "inconclusive {:?}, errors {:?}",
            s.inconclusive, s.errors
        ));
    }
    if s.survivors != [[-92, -23], [-124, -31]] {
        return Fail(format!("survivors {:?}", s.survivors));
    }
    let cf_runs: Vec<i64> = reports
        .iter()
        .filter_map(|r| {
            r.as_ref()
                .ok()?
                .constants
                .get("convergents_checked")?
                .as_i64()
        })
        .collect();
    Pass(format!(
        "survivors (−92,−23), (−124,−31); {} eliminated, {} CF runs with {} convergents in total, {:.1}s",
        s.eliminated,
        cf_runs.len(),
        cf_runs.iter().sum::<i64>(),
        start.elapsed().as_secs_f64()
    ))
}

fn mult_pipeline() -> Verdict {
    let ((l_lo, l_hi), (r_lo, r_hi)) = printed_negative_bounds();
    let _ = (l_lo, r_hi);
    if !(l_hi < r_lo) {
        return Fail("0.501/1.749 < 0.749/1.876 not certified".into());
    }
    let Ok((n2, n3)) = uniform_negative_ratios(MULT_NEGATIVE_ROOT_MIN, PREC) else {
        return Fail("mn < 0 ratios undefined".into());
    };
    if !(n2.hi() < n3.lo()) {
        return Fail("mn < 0 uniform ratios overlap".into());
    }
    let (_, scans) = mult_positive_thresholds(PREC);
    if !scans.iter().all(|s| s.tail_certified) {
        return Fail("threshold tails not certified".into());
    }
    let got = [scans[0].threshold, scans[1].threshold, scans[2].threshold];
    if got[..2] != PRINTED_THRESHOLDS[..2] {
        return Fail(format!("thresholds {got:?}"));
    }
    let residual = mult_positive_residual(&scans);
    if !residual.contains(&(-71, -71)) || !residual.contains(&(-95, -95)) {
        return Fail("−71 and −95 missing from the residual list".into());
    }
    let s = Summary::of(&eliminate_mult(PREC));
    if !s.complete() || !s.survivors.is_empty() {
        return Fail(format!("{s:?}"));
    }
    let text = format!(
        "mn < 0 sides disjoint; thresholds 109 and 12 reproduced; {} cases eliminated, no survivors",
        s.eliminated
    );
    if got[2] == PRINTED_THRESHOLDS[2] {
        Pass(text)
    } else {
        Deviation(format!(
            "{text}; printed bound 310 not reproduced: the printed inequality gives {}, the sound divisor {}, and every pair up to it is checked",
            got[2], scans[3].threshold
        ))
    }
}

fn random_element(f: &Arc<NumberField>, rng: &mut StdRng) -> FieldElement {
    let coords = (0..f.degree)
        .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-3i64..=3))))
        .collect();
    FieldElement::new(f, coords)
}

fn field(coeffs: &[i64]) -> Arc<NumberField> {
    NumberField::from_polynomial(coeffs.iter().map(|&c| BigInt::from(c)).collect()).unwrap()
}

fn independence() -> Verdict {
    let hcp23 = Generator::Class(class_polynomial(disc(-23), 128).unwrap());
    let fields = [
        field(&[0, 1]),
        field(&[1, 0, 1]),
        field(&[1, 1, 1]),
        field(&[-2, 0, 1]),
        build_field(&[hcp23]).unwrap(),
    ];
    let mu: Vec<Vec<FieldElement>> = fields.iter().map(|f| roots_of_unity(f).unwrap()).collect();
    let mut rng = StdRng::seed_from_u64(0xacce);
    let mut checked = 0;
    while checked < 100 {
        let i = checked % fields.len();
        let g = random_element(&fields[i], &mut rng);
        if g.is_zero() || root_of_unity_order(&g).is_some() {
            continue;
        }
        let a = rng.gen_range(1i64..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let b = rng.gen_range(1i64..=5);
        let zeta = &mu[i][rng.gen_range(0..mu[i].len())];
        let alpha = zeta.mul(&g.pow(a).unwrap());
        let beta = g.pow(b).unwrap();
        match mult_independent(&alpha, &beta) {
            Ok(Independence::Dependent(d)) => {
                let exact = alpha.pow(d.k).unwrap() == d.zeta.mul(&beta.pow(d.l).unwrap());
                if !exact
                    || d.k * a != d.l * b
                    || !d.zeta.pow(d.zeta_order as i64).unwrap().is_one()
                {
                    return Fail(format!("wrong relation for γ = {g}, a = {a}, b = {b}"));
                }
            }
            Ok(other) => return Fail(format!("γ = {g}, a = {a}, b = {b}: {}", other.status())),
            Err(e) => return Fail(e.to_string()),
        }
        checked += 1;
    }
    let q = NumberField::rationals();
    let r = mult_independent(
        &FieldElement::from_int(&q, 1728),
        &FieldElement::from_int(&q, 287496),
    );
    if !r.as_ref().is_ok_and(|r| r.is_independent()) {
        return Fail("(1728, 287496) not certified independent".into());
    }
    Pass("100 planted dependent pairs recovered exactly; (1728, 287496) independent".into())
}

fn properties() -> Verdict {
    // Valuation additivity.
    let mut rng = StdRng::seed_from_u64(10);
    for coeffs in [
        &[23i64, 0, 1][..],
        &[5, 0, 1],
        &[-17, 0, 1],
        &[-1, -1, 0, 1],
    ] {
        let f = field(coeffs);
        for p in [2u64, 3, 5, 23] {
            for ideal in primes_above(&f, p).unwrap() {
                for _ in 0..4 {
                    let (x, y) = (random_element(&f, &mut rng), random_element(&f, &mut rng));
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    let (vx, vy) = (valuation(&x, &ideal), valuation(&y, &ideal));
                    if valuation(&x.mul(&y), &ideal) != vx.zip(vy).map(|(a, b)| a + b) {
                        return Fail(format!("valuation not additive in {coeffs:?} at {p}"));
                    }
                }
            }
        }
    }
    // Exact Y₀(2) membership against the numeric modular polynomial: an
    // exact witness makes Φ₂ vanish, and no witness leaves it nonzero.
    let mut pairs = 0;
    for d in [-7i64, -15, -23, -31, -39, -47, -55, -71, -79] {
        let (big, small) = (enumerate_forms(disc(4 * d)), enumerate_forms(disc(d)));
        for f in &big {
            let t = Surd::of_form(f);
            let x = eval_j(&t.to_ball(320), PREC).unwrap();
            for g in &small {
                let t2 = Surd::of_form(g);
                let v = phi_n_eval(&x, &t2.to_ball(320), 2, PREC).unwrap();
                if on_y02(&t, &t2).is_some() != v.contains_zero() {
                    return Fail(format!("Y₀(2) disagreement at Δ′ = {d}"));
                }
                pairs += 1;
            }
        }
    }
    // Planted dependence is never rejected by the continued-fraction step.
    for (m, n) in [(1i64, 3i64), (2, 7), (3, 10), (5, 17)] {
        let eps = BigRational::new(1.into(), BigInt::from(10).pow(60));
        let theta = CertifiedReal::from_rational(&(rat(m, n) + eps), PREC);
        let real =
            |x: f64| CertifiedReal::from_rational(&BigRational::from_float(x).unwrap(), PREC);
        let pr = CfProblem {
            theta,
            log_alpha: real(1.0),
            c1: real(0.2),
            c2: real(0.5),
            c3p: real(1.5),
            c4: real(0.2),
            c6: real(1000.0),
        };
        if cf_reject(&pr).verdict == CfVerdict::Rejected {
            return Fail(format!("planted {m}/{n} rejected"));
        }
    }
    // Determinism of reports and of the parallel map.
    let a = serde_json::to_string(&small_disc_linear(-71, PREC).unwrap()).unwrap();
    let b = serde_json::to_string(&small_disc_linear(-71, PREC).unwrap()).unwrap();
    let pairs_pp = independence_pairs();
    let par = smforge::par::map(&pairs_pp[..4], |&(x, y)| {
        power_product_report(Case::IndepCheck, x, y).ok()
    });
    let seq = smforge::par::map_seq(&pairs_pp[..4], |&(x, y)| {
        power_product_report(Case::IndepCheck, x, y).ok()
    });
    if a != b || par != seq {
        return Fail("reports are not deterministic".into());
    }
    Pass(format!("valuation additivity, {pairs} Y₀(2) exact/numeric pairs, planted CF solutions, determinism"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("forms and class numbers", forms_oracle),
        ("j-function numerics", j_numerics),
        ("class polynomials", class_polynomials),
        ("uniform big-discriminant intervals", uniform_linear),
        ("r = 3 census", census),
        ("Matveev constants", matveev),
        ("linear pipeline", linear_pipeline),
        ("multiplicative pipeline", mult_pipeline),
        ("independence soundness", independence),
        ("property suites", properties),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &verdict {
            Pass(d) => ("PASS", d),
            Deviation(d) => ("DEVIATION", d),
            Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {tag:<9} {name} ({secs:.1}s): {detail}",
            k + 1
        );
    }
    let _ = elimination::REPORT_VERSION;
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
