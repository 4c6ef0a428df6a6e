// SPDX-License-Identifier: Apache-2.0
//! The linear equation `A x^m + B y^n + C = 0` for the finitely many pairs
//! left after the uniform argument.
//!
//! For `Δ = 4Δ′` with `|Δ′| < 1024` the maximal conjugate system decides the
//! route: with `r ≥ 4` rows two disjoint `m/n` intervals finish the pair,
//! with `r = 3` a linear form in three logarithms is bounded below by
//! Matveev's theorem and the remaining range of `n` is cleared with
//! continued fractions, and with `r < 3` nothing can be said. Pairs of
//! discriminants with distinct imaginary quadratic fields sharing a real
//! field `Q(x) = Q(y)` go through the `r = 3` route as well.

use super::cf::{cf_reject, CfProblem, CfVerdict};
use super::matveev::{bound_n, matveev_exponent_coefficient, MatveevParams};
use super::report::{show, Case, EliminationReport, Outcome};
use super::system::{
    all_intervals, pair_frame, ratio_interval, system_from_frame, ConjugateSystem, RatioInterval,
};
use super::EliminationError;
use crate::arith::{funcs, CertifiedComplex, CertifiedReal, MAX_PRECISION};
use crate::forms::Discriminant;
use crate::numberfield::{log_determinant_test, Family, GaloisFrame, Word};
use crate::par;

/// Smallest `|Δ′|` handled by the uniform argument.
pub const SMALL_DISC_LIMIT: i64 = 1024;

/// The discriminants of the distinct-field table, grouped by the real field
/// `Q(x)` they generate; degree 1 is omitted.
pub const SHARED_REAL_FIELDS: &[(&str, usize, &[i64])] = &[
    ("Q(√2)", 2, &[-24, -32, -64, -88]),
    ("Q(√3)", 2, &[-36, -48]),
    (
        "Q(√5)",
        2,
        &[-15, -20, -35, -40, -60, -75, -100, -115, -235],
    ),
    ("Q(√13)", 2, &[-52, -91, -403]),
    ("Q(√17)", 2, &[-51, -187]),
    ("Q(√2,√3)", 4, &[-96, -192, -288]),
    ("Q(√3,√5)", 4, &[-180, -240]),
    ("Q(√5,√13)", 4, &[-195, -520, -715]),
    ("Q(√2,√5)", 4, &[-120, -160, -280, -760]),
    ("Q(√5,√17)", 4, &[-340, -595]),
    ("Q(√2,√3,√5)", 8, &[-480, -960]),
];

/// Unordered pairs `{Δ, Δ′}` of one row of the table with degree in
/// `degrees`, listed with `Δ` before `Δ′` in row order.
pub fn shared_field_pairs(degrees: &[usize]) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for &(_, deg, discs) in SHARED_REAL_FIELDS {
        if !degrees.contains(&deg) {
            continue;
        }
        for (k, &a) in discs.iter().enumerate() {
            for &b in &discs[k + 1..] {
                out.push((a, b));
            }
        }
    }
    out
}

/// `Δ′` with `3 ≤ |Δ′| < 1024`, `h(Δ′) ≥ 3` and `h(4Δ′) = h(Δ′)`.
pub fn small_linear_discriminants() -> Vec<i64> {
    (3..SMALL_DISC_LIMIT)
        .filter_map(|n| Discriminant::new(-n).ok())
        .filter(|d| {
            let h = d.class_number();
            h >= 3
                && Discriminant::new(4 * d.value())
                    .map(|b| b.class_number() == h)
                    .unwrap_or(false)
        })
        .map(|d| d.value())
        .collect()
}

/// `(Δ′, r)` for every small discriminant, where `r` counts the conjugate
/// rows of `(x, y)` after discarding one of each complex couple.
pub fn r_census() -> Vec<(i64, usize)> {
    small_linear_discriminants()
        .into_iter()
        .map(|dp| {
            let g = crate::forms::ClassGroup::new(Discriminant::new(4 * dp).expect("valid"));
            (dp, (0..g.order()).filter(|&c| c <= g.inv(c)).count())
        })
        .collect()
}

fn disc(v: i64) -> Result<Discriminant, EliminationError> {
    Ok(Discriminant::new(v)?)
}

/// Which Matveev data apply to the pair.
#[derive(Clone, Copy, Debug)]
enum Field {
    /// `Δ = 4Δ′`: everything lives in `K(x₁)`, of degree `2h`.
    RingClass,
    /// Distinct quadratic fields: everything lives in the real field `Q(x)`.
    SharedReal,
}

/// Linear equation for `Δ = 4Δ′`, `|Δ′| < 1024`.
pub fn small_disc_linear(dprime: i64, prec: u32) -> Result<EliminationReport, EliminationError> {
    let dp = disc(dprime)?;
    let big = disc(4 * dprime)?;
    if dprime.unsigned_abs() as i64 >= SMALL_DISC_LIMIT
        || dp.class_number() < 3
        || big.class_number() != dp.class_number()
    {
        return Err(EliminationError::Precondition(format!(
            "small-discriminant route needs |Δ′| < 1024 and h(4Δ′) = h(Δ′) ≥ 3, got {dprime}"
        )));
    }
    let frame = pair_frame(big, dp)?;
    let system = system_from_frame(&frame, prec)?;
    let case = if system.r >= 4 {
        Case::LinearSmallR4
    } else {
        Case::LinearSmallR3
    };
    let mut rep = EliminationReport::new(case, big.value(), dprime);
    rep.constant("h", system.total as i64);
    rep.constant("r", system.r as i64);
    rep.note("rows paired through exact Y₀(2) partners; one of each complex couple removed");
    record_dominance(&mut rep, &system);
    if system.r < 3 {
        rep.note("fewer than three usable conjugates");
        return Ok(rep.finish(Outcome::Survivor));
    }
    if system.r >= 4 {
        if let Some(done) = disjoint_intervals(&mut rep, &system) {
            return Ok(rep.finish(done));
        }
        rep.note("no disjoint pair of intervals; falling back to rows (1,2,3) with Matveev");
    }
    let outcome = r3_route(&mut rep, &frame, &system, Field::RingClass)?;
    Ok(rep.finish(outcome))
}

/// Linear equation for a pair with distinct imaginary quadratic fields and
/// equal real fields of degree `h ≥ 3`.
pub fn distinct_fields_linear(
    d: i64,
    dprime: i64,
    prec: u32,
) -> Result<EliminationReport, EliminationError> {
    let (dx, dy) = (disc(d)?, disc(dprime)?);
    if dx.class_number() < 3 {
        return Err(EliminationError::Precondition(format!("h({d}) < 3")));
    }
    let frame = pair_frame(dx, dy)?;
    let system = system_from_frame(&frame, prec)?;
    let mut rep = EliminationReport::new(Case::LinearDistinctFields, d, dprime);
    rep.constant("h", system.total as i64);
    rep.constant("r", system.r as i64);
    rep.note("Q(x) = Q(y) certified by exact interpolation of y in Q(x)");
    record_dominance(&mut rep, &system);
    if system.r < 3 {
        return Ok(rep.finish(Outcome::Survivor));
    }
    let outcome = r3_route(&mut rep, &frame, &system, Field::SharedReal)?;
    Ok(rep.finish(outcome))
}

fn record_dominance(rep: &mut EliminationReport, system: &ConjugateSystem) {
    let (rx, ry) = system.cross_ratios();
    rep.ball("max_ratio_x", &rx);
    rep.ball("max_ratio_y", &ry);
    rep.check(
        "row 1 holds the dominant values of both discriminants",
        true,
    );
}

/// Look for two certified disjoint intervals; both must contain `m/n`.
fn disjoint_intervals(rep: &mut EliminationReport, system: &ConjugateSystem) -> Option<Outcome> {
    let ivs: Vec<RatioInterval> = all_intervals(system)
        .into_iter()
        .filter_map(Result::ok)
        .collect();
    rep.constant("usable_intervals", ivs.len() as i64);
    for (k, a) in ivs.iter().enumerate() {
        for b in &ivs[k + 1..] {
            if a.disjoint_from(b) {
                rep.constant("interval_a", a.summary());
                rep.constant("interval_b", b.summary());
                rep.check(
                    format!(
                        "intervals from rows (1,{},{}) and (1,{},{}) are disjoint",
                        a.i, a.j, b.i, b.j
                    ),
                    true,
                );
                return Some(Outcome::Eliminated);
            }
        }
    }
    None
}

/// `x^{e}` for `0 < x < 1` and a real exponent `e > 0`, rounded outward.
fn rpow(x: &CertifiedReal, e: &CertifiedReal) -> Option<CertifiedReal> {
    Some(funcs::exp(&e.mul(&funcs::log(x)?)))
}

/// `c₃` and `c₄` for rows `(1,2,3)` in the orientation of the interval.
fn c3_c4(
    system: &ConjugateSystem,
    iv: &RatioInterval,
) -> Result<(CertifiedReal, CertifiedReal), String> {
    let (x1, x2, x3) = (system.abs_x(1), system.abs_x(2), system.abs_x(3));
    let (y1, y2, y3) = (system.abs_y(1), system.abs_y(2), system.abs_y(3));
    let one = CertifiedReal::from_int(1, x1.prec());
    let q = |a: &CertifiedReal, b: &CertifiedReal| a.div(b).ok_or_else(|| "division".to_string());
    // m ≥ c₁ n with c₁ the certified lower end, so |t|^m ≤ (|t|^{c₁})^n.
    let c1 = CertifiedReal::exact(iv.lo(), x1.prec());
    let p = |a: &CertifiedReal| rpow(a, &c1).ok_or_else(|| "power".to_string());
    let (terms, den) = if iv.eps == 1 {
        let (a, b) = (q(&y3, &y2)?, q(&x3, &x1)?);
        (
            vec![a.clone(), p(&b)?, q(&y3, &y1)?, p(&q(&x3, &x2)?)?],
            one.sub(&a).sub(&b),
        )
    } else {
        let (a, b) = (q(&y2, &y3)?, q(&x2, &x1)?);
        (
            vec![p(&q(&x3, &x2)?)?, a.clone(), p(&b)?],
            one.sub(&a).sub(&b),
        )
    };
    if !den.is_positive() {
        return Err("denominator of c₃ is not positive".into());
    }
    let c4 = terms
        .iter()
        .skip(1)
        .fold(terms[0].clone(), |acc, t| acc.max(t));
    let c3 = CertifiedReal::from_int(4, x1.prec())
        .div(&den)
        .ok_or("c₃ undefined")?;
    Ok((c3, c4))
}

/// Upper bound on the height of a singular modulus from its conjugates.
fn height_upper(values: &[CertifiedComplex]) -> Option<CertifiedReal> {
    let prec = values.first()?.prec();
    let zero = CertifiedReal::zero(prec);
    let mut s = zero.clone();
    for v in values {
        s = s.add(&funcs::log(&v.abs())?.max(&zero));
    }
    Some(s.div_int(values.len() as i64))
}

/// Number of certified distinct values among the images of a word, a lower
/// bound on its degree.
fn distinct_images(frame: &GaloisFrame, w: &Word, prec: u32) -> usize {
    let Ok(imgs) = frame.images(w, prec) else {
        return 1;
    };
    let mut reps: Vec<&CertifiedComplex> = Vec::new();
    for v in &imgs {
        if reps.iter().all(|r| r.certainly_ne(v)) {
            reps.push(v);
        }
    }
    reps.len().max(1)
}

/// Rows `(1,2,3)`: Matveev, the bound on `n` and the continued fractions.
fn r3_route(
    rep: &mut EliminationReport,
    frame: &GaloisFrame,
    system: &ConjugateSystem,
    field: Field,
) -> Result<Outcome, EliminationError> {
    let prec = system.prec;
    let iv = match ratio_interval(system, 2, 3) {
        Ok(iv) => iv,
        Err(e) => {
            rep.check(format!("rows (1,2,3) give an interval: {e}"), false);
            return Ok(Outcome::Inconclusive);
        }
    };
    rep.constant("interval_123", iv.summary());
    let one = CertifiedReal::from_int(1, prec);
    if !rep.less("c₁ > 0", &CertifiedReal::zero(prec), &iv.lower) {
        return Ok(Outcome::Inconclusive);
    }
    let (c3, c4) = c3_c4(system, &iv).map_err(EliminationError::Inconclusive)?;
    let c3p = c3
        .div(&one.sub(&iv.m_bound))
        .ok_or_else(|| EliminationError::Inconclusive("c₃′".into()))?;
    rep.ball("c3", &c3);
    rep.ball("c3_prime", &c3p);
    rep.ball("c4", &c4);
    rep.note("the θ estimate is taken with c₄; no separate constant c₄′ is defined");
    if !rep.less("c₄ < 1", &c4, &one) {
        return Ok(Outcome::Inconclusive);
    }

    // Λ ≠ 0: α = x₁/x₂ and β = y₁/y_k multiplicatively independent.
    let class = |k: usize| system.pairs[k - 1].class.expect("frame rows carry labels");
    let k_beta = if iv.eps == 1 { 2 } else { 3 };
    let alpha: Word = vec![
        (Family::X, frame.px[class(1)], 1),
        (Family::X, frame.px[class(2)], -1),
    ];
    let beta: Word = vec![
        (Family::Y, frame.py[class(1)], 1),
        (Family::Y, frame.py[class(k_beta)], -1),
    ];
    let mut witness = None;
    for p in [prec.max(128), 2 * prec.max(128)] {
        if let (Ok(a), Ok(b)) = (frame.images(&alpha, p), frame.images(&beta, p)) {
            witness = log_determinant_test(&a, &b);
            if witness.is_some() {
                break;
            }
        }
    }
    match &witness {
        Some(w) => {
            rep.constant(
                "independence_witness",
                serde_json::to_value(w).expect("serialisable"),
            );
            rep.check(
                "α, β multiplicatively independent (log-modulus determinant ≠ 0)",
                true,
            );
        }
        None => {
            rep.check("α, β multiplicatively independent", false);
            return Ok(Outcome::Inconclusive);
        }
    }

    // Matveev data.
    let h = system.total as i64;
    let (d, a1_scale, a2_scale, a_fac) = match field {
        Field::RingClass => {
            let s = funcs::sqrt_int(system.disc_y.abs(), prec);
            (2 * h as u64, s.clone(), s, (19, 10))
        }
        Field::SharedReal => (
            h as u64,
            funcs::sqrt_int(system.disc_x.abs(), prec),
            funcs::sqrt_int(system.disc_y.abs(), prec),
            (10, 10),
        ),
    };
    let a = vec![
        a1_scale.mul_int(a_fac.0),
        a2_scale.mul_int(a_fac.1),
        one.clone(),
    ];
    let d_lower = distinct_images(frame, &alpha, prec)
        .max(distinct_images(frame, &beta, prec))
        .max(2) as u64;
    let pi = funcs::pi(prec);
    let hx = height_upper(&frame.x.values(prec)?)
        .ok_or_else(|| EliminationError::Inconclusive("h(x)".into()))?;
    let hy = height_upper(&frame.y.values(prec)?)
        .ok_or_else(|| EliminationError::Inconclusive("h(y)".into()))?;
    let heights = [hx.mul_int(2), hy.mul_int(2), CertifiedReal::zero(prec)];
    let log_abs = [iv.log_x.abs().add(&pi), iv.log_y.abs().add(&pi), pi.clone()];
    let c2 = iv.upper.upper().to_f64().max(1.0);
    let kappa = c2.ceil() as i64 + 2;
    let params = MatveevParams {
        r: 3,
        d,
        big_h: one.clone(),
        a: a.clone(),
    };
    rep.constant("d", d as i64);
    rep.constant("d_lower", d_lower as i64);
    rep.constant("kappa", kappa);
    rep.ball("A1", &a[0]);
    rep.ball("A2", &a[1]);
    if !rep.check(
        "A_j ≥ max{h(α_j), |log α_j|/d, 0.16/d}",
        params.admissible(&heights, &log_abs, d_lower),
    ) {
        return Ok(Outcome::Inconclusive);
    }
    let k = matveev_exponent_coefficient(3, d, &a);
    rep.ball("matveev_K", &k);
    let nb = match bound_n(&c3p, &c4, &k, kappa) {
        Ok(nb) => nb,
        Err(e) => {
            rep.check(format!("bound on n: {e}"), false);
            return Ok(Outcome::Inconclusive);
        }
    };
    rep.constant("c5", nb.c5);
    rep.constant("c6", nb.c6);
    rep.check("c₆/log(eκc₆) ≥ c₅", true);

    // θ needs about 2 log₂ c₆ bits beyond the working precision.
    let need = (2.0 * nb.c6.log2()).ceil() as u32 + 128;
    let mut p = prec.max(need).next_multiple_of(64);
    loop {
        let sys = system_from_frame(frame, p)?;
        let iv_p = ratio_interval(&sys, 2, 3).map_err(EliminationError::Inconclusive)?;
        let widen = |x: &CertifiedReal| x.clone().with_prec(p);
        let problem = CfProblem {
            theta: iv_p.log_y.div(&iv_p.log_x).expect("log|α| > 0"),
            log_alpha: iv_p.log_x.clone(),
            c1: widen(&iv.lower),
            c2: widen(&iv.upper),
            c3p: widen(&c3p),
            c4: widen(&c4),
            c6: widen(&nb.c6_ball),
        };
        let out = cf_reject(&problem);
        match out.verdict {
            CfVerdict::NeedPrecision if p < MAX_PRECISION => {
                p = (2 * p).min(MAX_PRECISION);
                continue;
            }
            CfVerdict::Rejected => {
                rep.constant("theta", show(&problem.theta));
                rep.constant("convergents_checked", out.convergents.len() as i64);
                rep.constant(
                    "convergents",
                    out.convergents
                        .iter()
                        .map(|(p, q)| format!("{p}/{q}"))
                        .collect::<Vec<_>>(),
                );
                rep.constant("nonconvergent_bounds", out.nonconvergent_bounds.clone());
                rep.constant("enumerated_small_n", out.enumerated as i64);
                rep.constant("theta_precision", p as i64);
                rep.check(
                    "log|θq − p| > q log c₄ + log(c₃′/log|α|) for every convergent with q < c₆",
                    true,
                );
                rep.check("no non-convergent solution below the iterated bound", true);
                return Ok(Outcome::Eliminated);
            }
            other => {
                rep.check(format!("continued-fraction rejection: {other:?}"), false);
                return Ok(Outcome::Inconclusive);
            }
        }
    }
}

/// All reports for the linear equation with `|Δ′|` between `min` and `max`
/// (inclusive), plus the distinct-field pairs.
pub fn linear_small_reports(
    min: i64,
    max: i64,
    prec: u32,
) -> Vec<Result<EliminationReport, EliminationError>> {
    let discs: Vec<i64> = small_linear_discriminants()
        .into_iter()
        .filter(|d| (min..=max).contains(&d.abs()))
        .collect();
    par::map(&discs, |&dp| small_disc_linear(dp, prec))
}

/// Reports for every distinct-field pair with `h ≥ 3`.
pub fn distinct_fields_reports(prec: u32) -> Vec<Result<EliminationReport, EliminationError>> {
    let pairs = shared_field_pairs(&[4, 8]);
    par::map(&pairs, |&(a, b)| distinct_fields_linear(a, b, prec))
}
