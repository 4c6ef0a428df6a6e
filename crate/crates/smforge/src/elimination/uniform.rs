// SPDX-License-Identifier: Apache-2.0
//! Arguments that hold for every discriminant above a threshold at once.
//!
//! For a point `τ ∈ D` write `log|j(τ)| = 2π Im τ + e(τ)`. From
//! `||j| − |q|⁻¹| ≤ 2079` we get `e ≤ log(1 + 2079|q|)` everywhere, and from
//! `|v(q)| ≤ 2883|q|` we get `|e| ≤ 2883|q|` once `Im τ ≥ log 4158 / 2π`.
//! Both bounds decrease with `Im τ`, so evaluating them at the smallest
//! admissible `√|Δ′|` covers every larger discriminant.

use super::report::{show, Case, EliminationReport, Outcome};
use super::system::{TABLE_A, TABLE_A_PRIME};
use super::EliminationError;
use crate::arith::{funcs, CertifiedReal};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::sync::OnceLock;

/// Smallest `√|Δ′|` covered by the uniform linear argument (`|Δ′| ≥ 1024`).
pub const LINEAR_ROOT_MIN: i64 = 32;

/// Smallest `√|Δ′|` for which the uniform `mn < 0` comparison is certified
/// from the lemmas alone; below it `x₃` sits under `Im τ = 1.326`.
pub const MULT_NEGATIVE_ROOT_MIN: i64 = 22;

/// Threshold `√|Δ′| ≥ 16` used for the three explicit rows in the `mn < 0`
/// case (`|Δ′| ≥ 256`).
pub const MULT_NEGATIVE_TABLE_ROOT: i64 = 16;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Bounds on `e(τ)` for all `τ ∈ D` with `Im τ ≥ im`.
struct Offsets {
    /// `e ≤ up`.
    up: CertifiedReal,
    /// `e ≥ −down`, when the lower estimate applies.
    down: Option<CertifiedReal>,
}

fn offsets(im: &CertifiedReal) -> Offsets {
    let prec = im.prec();
    let two_pi = funcs::pi(prec).mul_int(2);
    let q = funcs::exp(&two_pi.mul(im).neg());
    let one = CertifiedReal::from_int(1, prec);
    let coarse = funcs::log(&one.add(&q.mul_int(2079))).expect("positive argument");
    let threshold = funcs::log(&CertifiedReal::from_int(4158, prec))
        .expect("positive")
        .div(&two_pi)
        .expect("nonzero");
    if !im.certainly_gt(&threshold) {
        return Offsets {
            up: coarse,
            down: None,
        };
    }
    let v = q.mul_int(2883);
    Offsets {
        up: coarse.min(&v),
        down: Some(v),
    }
}

/// A conjugate with `Im τ = √|Δ′| · k`.
struct Row {
    k: BigRational,
    off: Offsets,
}

fn row(k: BigRational, root: i64, prec: u32) -> Row {
    let im = CertifiedReal::from_rational(&(&k * BigInt::from(root)), prec);
    Row {
        k,
        off: offsets(&im),
    }
}

/// Upper bound on `|P/Q|` for `k_P < k_Q` at `√|Δ′| = root`, valid for all
/// larger roots.
fn ratio_up(p: &Row, q: &Row, root: i64, prec: u32) -> Result<CertifiedReal, String> {
    let down = q
        .off
        .down
        .as_ref()
        .ok_or("lower estimate unavailable for the denominator")?;
    let gap = CertifiedReal::from_rational(&((&p.k - &q.k) * BigInt::from(root)), prec);
    let expo = funcs::pi(prec)
        .mul_int(2)
        .mul(&gap)
        .add(&p.off.up)
        .add(down);
    Ok(funcs::exp(&expo))
}

/// `|e_P − e_Q|` bound, needing two-sided estimates at both points.
fn diff_bound(p: &Row, q: &Row) -> Result<CertifiedReal, String> {
    let (Some(dp), Some(dq)) = (&p.off.down, &q.off.down) else {
        return Err("two-sided estimate unavailable".into());
    };
    Ok(p.off.up.max(dp).add(&q.off.up.max(dq)))
}

/// A uniform interval for `m/n` (or for `−m/n` in the `mn < 0` case).
#[derive(Clone, Debug)]
pub struct UniformInterval {
    pub rows: (usize, usize),
    pub m_bound: CertifiedReal,
    pub lower: CertifiedReal,
    pub upper: CertifiedReal,
}

impl UniformInterval {
    pub fn lo(&self) -> BigRational {
        self.lower.lower().to_rational()
    }

    pub fn hi(&self) -> BigRational {
        self.upper.upper().to_rational()
    }

    pub fn contained_in(&self, a: &BigRational, b: &BigRational) -> bool {
        &self.lo() >= a && &self.hi() <= b
    }
}

/// `cy/cx ∓ E/(cx·root ± δx)`, the interval forced by
/// `|t (cx s ± δx) − (cy s ± δy)| ≤ slack` for every `s ≥ root`.
fn forced_interval(
    cx: &CertifiedReal,
    cy: &CertifiedReal,
    dx: &CertifiedReal,
    dy: &CertifiedReal,
    slack: &CertifiedReal,
    root: i64,
) -> Option<(CertifiedReal, CertifiedReal)> {
    let centre = cy.div(cx)?;
    let e = dy.add(slack).add(&dx.mul(&centre));
    let s = cx.mul_int(root);
    let lower = centre.sub(&e.div(&s)?);
    let upper = centre.add(&e.div(&s.sub(dx))?);
    Some((lower, upper))
}

/// Uniform interval for the rows `(1, i, j)` of the explicit table, with the
/// forward orientation `|y_i| > |y_j|` (`a′_i < a′_j`).
fn linear_interval(i: usize, j: usize, root: i64, prec: u32) -> Result<UniformInterval, String> {
    let xr = |t: usize| row(rat(1, TABLE_A[t - 1]), root, prec);
    let yr = |t: usize| row(rat(1, 2 * TABLE_A_PRIME[t - 1]), root, prec);
    let (x1, xi, xj) = (xr(1), xr(i), xr(j));
    let (y1, yi, yj) = (yr(1), yr(i), yr(j));
    let a = ratio_up(&yj, &yi, root, prec)?;
    let b = ratio_up(&xj, &x1, root, prec)?;
    let c = ratio_up(&yj, &y1, root, prec)?;
    let d = ratio_up(&xj, &xi, root, prec)?;
    let one = CertifiedReal::from_int(1, prec);
    let den = one.sub(&a).sub(&b);
    let m_bound = a.add(&b).add(&c).add(&d).div(&den).ok_or("M undefined")?;
    if !m_bound.certainly_lt(&one) {
        return Err("M not below 1".into());
    }
    let slack = m_bound.div(&one.sub(&m_bound)).ok_or("M/(1−M) undefined")?;
    let two_pi = funcs::pi(prec).mul_int(2);
    let cx = two_pi.mul(&CertifiedReal::from_rational(&(&x1.k - &xi.k), prec));
    let cy = two_pi.mul(&CertifiedReal::from_rational(&(&y1.k - &yi.k), prec));
    let dx = diff_bound(&x1, &xi)?;
    let dy = diff_bound(&y1, &yi)?;
    let (lower, upper) =
        forced_interval(&cx, &cy, &dx, &dy, &slack, root).ok_or("interval undefined")?;
    Ok(UniformInterval {
        rows: (i, j),
        m_bound,
        lower,
        upper,
    })
}

/// The two uniform intervals for `|Δ′| ≥ 1024`, rows `(1,2,3)` and `(1,3,4)`.
pub fn uniform_linear_intervals(prec: u32) -> Result<(UniformInterval, UniformInterval), String> {
    Ok((
        linear_interval(2, 3, LINEAR_ROOT_MIN, prec)?,
        linear_interval(3, 4, LINEAR_ROOT_MIN, prec)?,
    ))
}

/// The intervals printed for the big-discriminant argument.
pub fn printed_linear_bounds() -> [(BigRational, BigRational); 2] {
    [
        (rat(279, 1000), rat(294, 1000)),
        (rat(392, 1000), rat(409, 1000)),
    ]
}

/// What `|c₁ m − c₂ n| ≤ 0.001 + 0.01(m + n)` yields for `m/n`, exactly.
/// This is the slack the printed derivation actually supports.
pub fn shorthand_linear_bounds() -> [(BigRational, BigRational); 2] {
    let solve = |c1: BigRational, c2: BigRational| {
        let (e, k) = (rat(1, 1000), rat(1, 100));
        let lo = (&c2 - &e - &k) / (&c1 + &k);
        let hi = (&c2 + &e + &k) / (&c1 - &k);
        (lo, hi)
    };
    [solve(rat(7, 4), rat(1, 2)), solve(rat(15, 8), rat(3, 4))]
}

static UNIFORM_LINEAR: OnceLock<Result<(UniformInterval, UniformInterval), String>> =
    OnceLock::new();

fn cached_linear() -> &'static Result<(UniformInterval, UniformInterval), String> {
    UNIFORM_LINEAR.get_or_init(|| uniform_linear_intervals(256))
}

/// The linear equation for `Δ = 4Δ′`, `|Δ′| ≥ 1024`. The certificate does not
/// depend on `Δ′`; only the preconditions do.
pub fn big_disc_linear(dprime: i64) -> Result<EliminationReport, EliminationError> {
    if dprime >= 0 || dprime.rem_euclid(8) != 1 || dprime.unsigned_abs() < 1024 {
        return Err(EliminationError::Precondition(format!(
            "big-discriminant argument needs Δ′ ≡ 1 mod 8 and |Δ′| ≥ 1024, got {dprime}"
        )));
    }
    let mut rep = EliminationReport::new(Case::LinearBig, 4 * dprime, dprime);
    let (first, second) = cached_linear()
        .as_ref()
        .map_err(|e| EliminationError::Inconclusive(e.clone()))?;
    rep.note("rows (1,8,16,32)/(1,2,4,8) paired by Y₀(2); Im τ = √|Δ′|/a, Im τ′ = √|Δ′|/(2a′)");
    rep.note("all bounds evaluated at √|Δ′| = 32 and decreasing in √|Δ′|");
    for (name, iv) in [("rows_123", first), ("rows_134", second)] {
        rep.ball(&format!("{name}_M"), &iv.m_bound);
        rep.constant(
            &format!("{name}_interval"),
            vec![iv.lower.lower().to_f64(), iv.upper.upper().to_f64()],
        );
        rep.less(
            format!("{name}: M < 1"),
            &iv.m_bound,
            &CertifiedReal::from_int(1, 256),
        );
    }
    let [p1, p2] = printed_linear_bounds();
    rep.check(
        "rows (1,2,3) interval inside [0.279, 0.294]",
        first.contained_in(&p1.0, &p1.1),
    );
    rep.check(
        "rows (1,3,4) interval inside [0.392, 0.409]",
        second.contained_in(&p2.0, &p2.1),
    );
    let disjoint = first.hi() < second.lo();
    rep.transcript.push(super::report::Assertion {
        claim: "upper end of rows (1,2,3) < lower end of rows (1,3,4)".into(),
        lhs: Some(show(&first.upper)),
        rhs: Some(show(&second.lower)),
        holds: disjoint,
    });
    let [s1, s2] = shorthand_linear_bounds();
    rep.constant("shorthand_rows_123", vec![f64_of(&s1.0), f64_of(&s1.1)]);
    rep.constant("shorthand_rows_134", vec![f64_of(&s2.0), f64_of(&s2.1)]);
    rep.check(
        "shorthand bounds with |O(1)| ≤ 1 are also disjoint",
        s1.1 < s2.0,
    );
    let outcome = if rep.transcript_holds() {
        Outcome::Eliminated
    } else {
        Outcome::Inconclusive
    };
    Ok(rep.finish(outcome))
}

pub(crate) fn f64_of(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Uniform bounds on `log|y₁/y_i| / log|x₁/x_i|` for `i = 2, 3`.
pub fn uniform_negative_ratios(
    root: i64,
    prec: u32,
) -> Result<(UniformInterval, UniformInterval), String> {
    let make = |i: usize| -> Result<UniformInterval, String> {
        let x1 = row(rat(1, TABLE_A[0]), root, prec);
        let xi = row(rat(1, TABLE_A[i - 1]), root, prec);
        let y1 = row(rat(1, 2 * TABLE_A_PRIME[0]), root, prec);
        let yi = row(rat(1, 2 * TABLE_A_PRIME[i - 1]), root, prec);
        let two_pi = funcs::pi(prec).mul_int(2);
        let cx = two_pi.mul(&CertifiedReal::from_rational(&(&x1.k - &xi.k), prec));
        let cy = two_pi.mul(&CertifiedReal::from_rational(&(&y1.k - &yi.k), prec));
        let dx = diff_bound(&x1, &xi)?;
        let dy = diff_bound(&y1, &yi)?;
        let zero = CertifiedReal::zero(prec);
        let (lower, upper) =
            forced_interval(&cx, &cy, &dx, &dy, &zero, root).ok_or("interval undefined")?;
        Ok(UniformInterval {
            rows: (1, i),
            m_bound: zero,
            lower,
            upper,
        })
    };
    Ok((make(2)?, make(3)?))
}

/// The two sides of `(1/2 + O)/(7/4 + O) = (3/4 + O)/(15/8 + O)` with
/// `|O| ≤ 1/1000`, as exact extreme values.
pub fn printed_negative_bounds() -> ((BigRational, BigRational), (BigRational, BigRational)) {
    let o = rat(1, 1000);
    let side = |a: BigRational, b: BigRational| ((&a - &o) / (&b + &o), (&a + &o) / (&b - &o));
    (side(rat(1, 2), rat(7, 4)), side(rat(3, 4), rat(15, 8)))
}
