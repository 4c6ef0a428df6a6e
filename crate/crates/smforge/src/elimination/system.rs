// SPDX-License-Identifier: Apache-2.0
//! Conjugate systems of a CM point and the `m/n` intervals they force.
//!
//! A system lists the conjugates `(x_i, y_i)` of a CM point whose
//! coordinates are the dominant singular moduli of `Δ` and `Δ′`. Pairs are
//! matched through Galois labels: for `Δ = 4Δ′` via the exact `Y₀(2)`
//! partner of each form, for distinct quadratic fields via the
//! identification certified by interpolation.

use super::EliminationError;
use crate::arith::{funcs, precision_schedule, CertifiedComplex, CertifiedReal, Dyadic};
use crate::forms::{ClassGroup, Discriminant, ReducedForm};
use crate::modular::cm_point;
use crate::numberfield::{shared_field_frame, GaloisFrame};
use crate::y0::{on_y02, partner_map, Surd};
use num_rational::BigRational;
use serde::Serialize;
use std::cmp::Ordering;

#[derive(Clone, Debug)]
pub struct ConjugatePair {
    pub x: CertifiedComplex,
    pub y: CertifiedComplex,
    pub form_x: ReducedForm,
    pub form_y: ReducedForm,
    /// Index in the frame's class group, when the row came from a frame.
    pub class: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    /// All conjugates, one of each complex-conjugate couple removed, sorted
    /// by decreasing `|x|`.
    Maximal,
    /// The explicit rows with `a = 1, 8, 16, 32` and `a′ = 1, 2, 4, 8`.
    Table,
}

#[derive(Clone, Debug)]
pub struct ConjugateSystem {
    pub disc_x: Discriminant,
    pub disc_y: Discriminant,
    pub kind: SystemKind,
    /// Number of conjugates before pruning.
    pub total: usize,
    /// Rows `1..=r`, stored from index 0.
    pub pairs: Vec<ConjugatePair>,
    pub r: usize,
    pub prec: u32,
}

impl ConjugateSystem {
    /// `|x_i|` for a 1-based row index.
    pub fn abs_x(&self, i: usize) -> CertifiedReal {
        self.pairs[i - 1].x.abs()
    }

    pub fn abs_y(&self, i: usize) -> CertifiedReal {
        self.pairs[i - 1].y.abs()
    }

    /// Upper bounds for `max_{i>1} |x_i/x_1|` and `max_{i>1} |y_i/y_1|`.
    pub fn cross_ratios(&self) -> (CertifiedReal, CertifiedReal) {
        let ratio = |f: &dyn Fn(usize) -> CertifiedReal| {
            let top = f(1);
            (2..=self.r)
                .map(|i| f(i).div(&top).expect("dominant value is nonzero"))
                .fold(CertifiedReal::zero(self.prec), |a, b| a.max(&b))
        };
        (ratio(&|i| self.abs_x(i)), ratio(&|i| self.abs_y(i)))
    }
}

/// Galois frame for a pair of discriminants with equal class numbers and
/// `Q(x) = Q(y)`.
pub fn pair_frame(dx: Discriminant, dy: Discriminant) -> Result<GaloisFrame, EliminationError> {
    use crate::numberfield::Conjugates;
    if dx.class_number() != dy.class_number() {
        return Err(EliminationError::Precondition(format!("h({dx}) ≠ h({dy})")));
    }
    let (x, y) = (Conjugates::new(dx), Conjugates::new(dy));
    if dx == dy {
        return Ok(GaloisFrame::single(dx));
    }
    let id = |g: &ClassGroup| (0..g.order()).collect::<Vec<_>>();
    if dx.value() == 4 * dy.value() {
        let group = x.group.clone();
        let (px, py) = (id(&group), partner_map(dx, dy)?);
        return Ok(GaloisFrame::new(group, x, y, px, py, vec![1, -1])?);
    }
    if dy.value() == 4 * dx.value() {
        let group = y.group.clone();
        let (px, py) = (partner_map(dy, dx)?, id(&group));
        return Ok(GaloisFrame::new(group, x, y, px, py, vec![1, -1])?);
    }
    Ok(shared_field_frame(dx, dy)?.0)
}

fn certified_order(a: &CertifiedReal, b: &CertifiedReal) -> Ordering {
    a.certified_cmp(b)
        .unwrap_or_else(|| a.to_f64().total_cmp(&b.to_f64()))
}

/// Strictly decreasing, certified.
fn strictly_decreasing(v: &[CertifiedReal]) -> bool {
    v.windows(2).all(|w| w[0].certainly_gt(&w[1]))
}

/// The maximal conjugate system of a frame at working precision `prec`,
/// escalating until the sorting is certified.
pub fn system_from_frame(
    frame: &GaloisFrame,
    prec: u32,
) -> Result<ConjugateSystem, EliminationError> {
    let g = &frame.group;
    // Complex conjugation maps the row of `c` to the row of `c⁻¹`.
    let kept: Vec<usize> = (0..g.order()).filter(|&c| c <= g.inv(c)).collect();
    let mut last = prec;
    for p in precision_schedule(prec) {
        last = p;
        let xv = frame.x.values(p)?;
        let yv = frame.y.values(p)?;
        let mut rows: Vec<ConjugatePair> = kept
            .iter()
            .map(|&c| ConjugatePair {
                x: xv[frame.px[c]].clone(),
                y: yv[frame.py[c]].clone(),
                form_x: frame.x.group.forms[frame.px[c]],
                form_y: frame.y.group.forms[frame.py[c]],
                class: Some(c),
            })
            .collect();
        rows.sort_by(|a, b| certified_order(&b.x.abs(), &a.x.abs()));
        let xs: Vec<CertifiedReal> = rows.iter().map(|r| r.x.abs()).collect();
        let mut ys: Vec<CertifiedReal> = rows.iter().map(|r| r.y.abs()).collect();
        ys.sort_by(|a, b| certified_order(b, a));
        if !(strictly_decreasing(&xs) && strictly_decreasing(&ys)) {
            continue;
        }
        if rows[0].form_x.a != 1 || rows[0].form_y.a != 1 {
            return Err(EliminationError::Precondition(format!(
                "largest conjugate pair of ({}, {}) is not dominant-dominant",
                frame.x.disc, frame.y.disc
            )));
        }
        let r = rows.len();
        return Ok(ConjugateSystem {
            disc_x: frame.x.disc,
            disc_y: frame.y.disc,
            kind: SystemKind::Maximal,
            total: g.order(),
            pairs: rows,
            r,
            prec: p,
        });
    }
    Err(EliminationError::Inconclusive(format!(
        "moduli of the conjugates of ({}, {}) not separated at {last} bits",
        frame.x.disc, frame.y.disc
    )))
}

/// The maximal conjugate system of the CM point `(x, y)` of dominant values.
pub fn conjugate_system(
    dx: Discriminant,
    dy: Discriminant,
    prec: u32,
) -> Result<ConjugateSystem, EliminationError> {
    system_from_frame(&pair_frame(dx, dy)?, prec)
}

/// Leading coefficients of the explicit rows for `Δ = 4Δ′`, `Δ′ ≡ 1 mod 8`:
/// `x_i` comes from a form of `Δ` with `a = A[i]` and `y_i` from a form of
/// `Δ′` with `a = A′[i]`, so `Im τ_i = √|Δ′|/A[i]` and `Im τ′_i = √|Δ′|/(2A′[i])`.
pub const TABLE_A: [i64; 4] = [1, 8, 16, 32];
pub const TABLE_A_PRIME: [i64; 4] = [1, 2, 4, 8];

/// The first `rows` explicit conjugates for `Δ = 4Δ′`. Every pairing is
/// checked with an exact `Y₀(2)` witness.
pub fn table_system(
    dprime: Discriminant,
    rows: usize,
    prec: u32,
) -> Result<ConjugateSystem, EliminationError> {
    if dprime.value().rem_euclid(8) != 1 {
        return Err(EliminationError::Precondition(format!(
            "{dprime} is not 1 mod 8"
        )));
    }
    let big = Discriminant::new(4 * dprime.value())?;
    let big_forms = crate::forms::enumerate_forms(big);
    let small_forms = crate::forms::enumerate_forms(dprime);
    let mut forms = Vec::new();
    for (&a, &ap) in TABLE_A.iter().zip(&TABLE_A_PRIME).take(rows) {
        let found = big_forms.iter().filter(|f| f.a == a).find_map(|f| {
            let t = Surd::of_form(f);
            small_forms
                .iter()
                .filter(|g| g.a == ap)
                .find(|g| on_y02(&t, &Surd::of_form(g)).is_some())
                .map(|g| (*f, *g))
        });
        match found {
            Some(pair) => forms.push(pair),
            None => {
                return Err(EliminationError::Precondition(format!(
                    "no form with a = {a} of {big} has a Y₀(2) partner with a = {ap}"
                )))
            }
        }
    }
    let mut last = prec;
    for p in precision_schedule(prec) {
        last = p;
        let mut pairs = Vec::new();
        for (fx, fy) in &forms {
            pairs.push(ConjugatePair {
                x: cm_point(big, *fx, p)?.j_value,
                y: cm_point(dprime, *fy, p)?.j_value,
                form_x: *fx,
                form_y: *fy,
                class: None,
            });
        }
        let xs: Vec<CertifiedReal> = pairs.iter().map(|r| r.x.abs()).collect();
        let ys: Vec<CertifiedReal> = pairs.iter().map(|r| r.y.abs()).collect();
        if strictly_decreasing(&xs) && strictly_decreasing(&ys) {
            return Ok(ConjugateSystem {
                disc_x: big,
                disc_y: dprime,
                kind: SystemKind::Table,
                total: big_forms.len(),
                pairs,
                r: rows,
                prec: p,
            });
        }
    }
    Err(EliminationError::Inconclusive(format!(
        "table rows of {dprime} not separated at {last} bits"
    )))
}

/// Certified bounds on `m/n` from the rows `(1, i, j)`.
#[derive(Clone, Debug)]
pub struct RatioInterval {
    pub i: usize,
    pub j: usize,
    /// `1` when `|y_i| > |y_j|`, `0` when the orientation is reversed.
    pub eps: u8,
    pub m_bound: CertifiedReal,
    /// Ball around the lower endpoint expression; its lower end bounds `m/n`.
    pub lower: CertifiedReal,
    pub upper: CertifiedReal,
    /// `log|x₁/x_i|`.
    pub log_x: CertifiedReal,
    /// `log|y₁/y_i|` or `log|y₁/y_j|` depending on the orientation.
    pub log_y: CertifiedReal,
}

impl RatioInterval {
    pub fn lo(&self) -> Dyadic {
        self.lower.lower()
    }

    pub fn hi(&self) -> Dyadic {
        self.upper.upper()
    }

    /// Certified `[lo, hi] ⊆ [a, b]`.
    pub fn contained_in(&self, a: &BigRational, b: &BigRational) -> bool {
        &self.lo().to_rational() >= a && &self.hi().to_rational() <= b
    }

    /// Certified empty intersection.
    pub fn disjoint_from(&self, other: &RatioInterval) -> bool {
        self.hi() < other.lo() || other.hi() < self.lo()
    }

    /// Both endpoints as a ball, for arithmetic on `m/n`.
    pub fn hull(&self) -> CertifiedReal {
        CertifiedReal::from_bounds(&self.lo(), &self.hi(), self.lower.prec())
    }

    pub fn summary(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": [1, self.i, self.j],
            "eps": self.eps,
            "M": [self.m_bound.lower().to_f64(), self.m_bound.upper().to_f64()],
            "lower": self.lo().to_f64(),
            "upper": self.hi().to_f64(),
        })
    }
}

fn log_ratio(a: &CertifiedReal, b: &CertifiedReal) -> Option<CertifiedReal> {
    funcs::log(&a.div(b)?)
}

fn ratio(a: &CertifiedReal, b: &CertifiedReal) -> Result<CertifiedReal, String> {
    a.div(b)
        .ok_or_else(|| "division by a ball containing zero".to_string())
}

/// `M` and the forced interval for `m/n` from the rows `(1, i, j)` of a
/// system, or the reason the rows are unusable.
///
/// With `|y_i| > |y_j|`, collinearity of the three points gives
/// `(x₁/x_i)^m (y₁/y_i)^{−n} − 1 = N/D` with
/// `|N/D| ≤ M = (|y_j/y_i| + |x_j/x₁| + |y_j/y₁| + |x_j/x_i|) / (1 − |y_j/y_i| − |x_j/x₁|)`
/// for all `m, n ≥ 1`. In the reverse orientation the same expansion gives
/// `(x₁/x_i)^m (y₁/y_j)^{−n} + 1` bounded by
/// `(|x_j/x_i|(1 + |y_i/y₁|) + |y_i/y_j| + |x_i/x₁|) / (1 − |y_i/y_j| − |x_i/x₁|)`.
/// In both cases `|m log|x₁/x_i| − n log|y₁/y_•|| ≤ M/(1 − M)`.
pub fn ratio_interval(
    system: &ConjugateSystem,
    i: usize,
    j: usize,
) -> Result<RatioInterval, String> {
    if !(1 < i && i < j && j <= system.r) {
        return Err(format!(
            "rows (1, {i}, {j}) out of range for r = {}",
            system.r
        ));
    }
    let (x1, xi, xj) = (system.abs_x(1), system.abs_x(i), system.abs_x(j));
    let (y1, yi, yj) = (system.abs_y(1), system.abs_y(i), system.abs_y(j));
    ratio_interval_from_moduli([&x1, &xi, &xj], [&y1, &yi, &yj], i, j)
}

/// The same interval from the moduli `(|x₁|, |x_i|, |x_j|)` and
/// `(|y₁|, |y_i|, |y_j|)` directly.
pub fn ratio_interval_from_moduli(
    x: [&CertifiedReal; 3],
    y: [&CertifiedReal; 3],
    i: usize,
    j: usize,
) -> Result<RatioInterval, String> {
    let [x1, xi, xj] = x;
    let [y1, yi, yj] = y;
    let prec = x1.prec();
    let one = CertifiedReal::from_int(1, prec);
    let (eps, num, den, log_y) = if yi.certainly_gt(yj) {
        let a = ratio(yj, yi)?;
        let b = ratio(xj, x1)?;
        let num = a.add(&b).add(&ratio(yj, y1)?).add(&ratio(xj, xi)?);
        (1u8, num, one.sub(&a).sub(&b), log_ratio(y1, yi))
    } else if yj.certainly_gt(yi) {
        let a = ratio(yi, yj)?;
        let b = ratio(xi, x1)?;
        let num = ratio(xj, xi)?
            .mul(&one.add(&ratio(yi, y1)?))
            .add(&a)
            .add(&b);
        (0u8, num, one.sub(&a).sub(&b), log_ratio(y1, yj))
    } else {
        return Err(format!("|y_{i}| and |y_{j}| are not separated"));
    };
    if !den.is_positive() {
        return Err("denominator of M is not certified positive".into());
    }
    let m_bound = num.div(&den).ok_or("M undefined")?;
    if !m_bound.certainly_lt(&one) {
        return Err(format!("M = {} is not certified below 1", m_bound));
    }
    let log_x = log_ratio(x1, xi).ok_or("log|x₁/x_i| undefined")?;
    let log_y = log_y.ok_or("log|y₁/y_•| undefined")?;
    if !log_x.is_positive() {
        return Err("|x₁| > |x_i| not certified".into());
    }
    let one_m = one.sub(&m_bound);
    let den = one_m.mul(&log_x);
    let core = one_m.mul(&log_y);
    let lower = core
        .sub(&m_bound)
        .div(&den)
        .ok_or("interval endpoint undefined")?;
    let upper = core
        .add(&m_bound)
        .div(&den)
        .ok_or("interval endpoint undefined")?;
    Ok(RatioInterval {
        i,
        j,
        eps,
        m_bound,
        lower,
        upper,
        log_x,
        log_y,
    })
}

/// All usable intervals `(1, i, j)` with `1 < i < j ≤ r`.
pub fn all_intervals(system: &ConjugateSystem) -> Vec<Result<RatioInterval, String>> {
    let mut out = Vec::new();
    for i in 2..=system.r {
        for j in i + 1..=system.r {
            out.push(ratio_interval(system, i, j));
        }
    }
    out
}
