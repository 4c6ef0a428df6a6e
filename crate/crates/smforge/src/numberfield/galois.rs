// SPDX-License-Identifier: Apache-2.0
//! Galois labels for two families of singular moduli inside one ring class
//! field, and the power-product test built on them.
//!
//! Conjugates are indexed by reduced forms, that is by elements of the form
//! class group. With `G` the class group of the larger order and surjections
//! `π_x`, `π_y` onto the two class groups, every embedding of the compositum
//! is a pair `(c, e)` with `c ∈ G` and `e = ±1`, acting by
//! `x_b ↦ x_{π_x(c)·b^e}` and `y_b ↦ y_{π_y(c)·b^e}`. The sign `−1` is complex
//! conjugation composed with `σ_{c⁻¹}`, which inverts labels because
//! conjugation sends a form to its opposite. Real fields (generalized
//! dihedral groups with trivial conjugation action) use `e = +1` only.

use super::element::FieldElement;
use super::field::{build_field, Generator, NumberField};
use super::indep::{
    log_determinant_test, mult_independent, Independence, IndependenceProof, LogDeterminant,
};
use super::FieldError;
use crate::arith::CertifiedComplex;
use crate::forms::{ClassGroup, Discriminant};
use crate::modular::{class_polynomial_cached, conjugate_values};
use serde::Serialize;
use std::sync::{Arc, Mutex};

/// An embedding `(c, e)` of the compositum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Embedding {
    pub class: usize,
    pub sign: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    X,
    Y,
}

/// The singular moduli of one discriminant, indexed like its class group.
#[derive(Debug)]
pub struct Conjugates {
    pub disc: Discriminant,
    pub group: ClassGroup,
    cache: Mutex<Option<Vec<CertifiedComplex>>>,
}

impl Conjugates {
    pub fn new(disc: Discriminant) -> Arc<Conjugates> {
        Arc::new(Conjugates {
            disc,
            group: ClassGroup::new(disc),
            cache: Mutex::new(None),
        })
    }

    /// Certified values with at least `prec` bits, cached.
    pub fn values(&self, prec: u32) -> Result<Vec<CertifiedComplex>, FieldError> {
        let mut guard = self.cache.lock().expect("conjugate cache poisoned");
        if let Some(v) = guard.as_ref() {
            if v[0].prec() >= prec {
                return Ok(v.clone());
            }
        }
        let v: Vec<CertifiedComplex> = conjugate_values(self.disc, prec)?
            .into_iter()
            .map(|p| p.j_value)
            .collect();
        *guard = Some(v.clone());
        Ok(v)
    }

    pub fn class_number(&self) -> usize {
        self.group.order()
    }
}

/// A multiplicative word in labelled conjugates: `∏ family_b^exponent`.
pub type Word = Vec<(Family, usize, i64)>;

/// Two families of conjugates with their Galois labels.
#[derive(Debug)]
pub struct GaloisFrame {
    /// Class group of the larger order.
    pub group: ClassGroup,
    pub x: Arc<Conjugates>,
    pub y: Arc<Conjugates>,
    /// `π_x`, `π_y` as tables indexed by `group`.
    pub px: Vec<usize>,
    pub py: Vec<usize>,
    /// `[1, −1]` when complex conjugation acts nontrivially, `[1]` otherwise.
    pub signs: Vec<i8>,
}

fn is_hom(src: &ClassGroup, dst: &ClassGroup, map: &[usize]) -> bool {
    map.len() == src.order()
        && map[src.identity()] == dst.identity()
        && (0..src.order())
            .all(|a| (0..src.order()).all(|b| map[src.mul(a, b)] == dst.mul(map[a], map[b])))
}

impl GaloisFrame {
    /// Validate the surjections and assemble the frame.
    pub fn new(
        group: ClassGroup,
        x: Arc<Conjugates>,
        y: Arc<Conjugates>,
        px: Vec<usize>,
        py: Vec<usize>,
        signs: Vec<i8>,
    ) -> Result<GaloisFrame, FieldError> {
        for (fam, map) in [(&x, &px), (&y, &py)] {
            if !is_hom(&group, &fam.group, map) {
                return Err(FieldError::Labels(format!(
                    "map from Cl({}) to Cl({}) is not a homomorphism",
                    group.disc, fam.disc
                )));
            }
            let mut hit = vec![false; fam.group.order()];
            map.iter().for_each(|&i| hit[i] = true);
            if !hit.iter().all(|&h| h) {
                return Err(FieldError::Labels("labelling map is not surjective".into()));
            }
        }
        Ok(GaloisFrame {
            group,
            x,
            y,
            px,
            py,
            signs,
        })
    }

    /// Both families equal: the conjugates of one discriminant.
    pub fn single(disc: Discriminant) -> GaloisFrame {
        let c = Conjugates::new(disc);
        let id: Vec<usize> = (0..c.class_number()).collect();
        GaloisFrame {
            group: c.group.clone(),
            x: c.clone(),
            y: c,
            px: id.clone(),
            py: id,
            signs: vec![1, -1],
        }
    }

    pub fn embeddings(&self) -> Vec<Embedding> {
        self.signs
            .iter()
            .flat_map(|&sign| (0..self.group.order()).map(move |class| Embedding { class, sign }))
            .collect()
    }

    pub fn identity(&self) -> Embedding {
        Embedding {
            class: self.group.identity(),
            sign: 1,
        }
    }

    fn family(&self, f: Family) -> (&Conjugates, &[usize]) {
        match f {
            Family::X => (&self.x, &self.px),
            Family::Y => (&self.y, &self.py),
        }
    }

    /// Label of the image of `family_b` under an embedding.
    pub fn act(&self, f: Family, b: usize, g: Embedding) -> usize {
        let (c, map) = self.family(f);
        let grp = &c.group;
        let b = if g.sign < 0 { grp.inv(b) } else { b };
        grp.mul(map[g.class], b)
    }

    /// Word obtained by applying an automorphism to every letter.
    pub fn apply(&self, w: &Word, g: Embedding) -> Word {
        w.iter()
            .map(|&(f, b, e)| (f, self.act(f, b, g), e))
            .collect()
    }

    /// Images of a word under all embeddings, in [`Self::embeddings`] order.
    pub fn images(&self, w: &Word, prec: u32) -> Result<Vec<CertifiedComplex>, FieldError> {
        let xv = self.x.values(prec)?;
        let yv = if Arc::ptr_eq(&self.x, &self.y) {
            xv.clone()
        } else {
            self.y.values(prec)?
        };
        let mut out = Vec::new();
        for g in self.embeddings() {
            let mut acc = CertifiedComplex::one(prec);
            for &(f, b, e) in w {
                let v = match f {
                    Family::X => &xv[self.act(f, b, g)],
                    Family::Y => &yv[self.act(f, b, g)],
                };
                let p = v.pow(e.unsigned_abs());
                acc = if e < 0 {
                    acc.div(&p).ok_or(FieldError::DivisionByZero)?
                } else {
                    acc.mul(&p)
                };
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// The compositum as an exact field, with its embeddings translated into
    /// labels.
    pub fn exact_field(&self) -> Result<(Arc<NumberField>, Vec<Embedding>), FieldError> {
        let disc = self.group.disc;
        let hcp = class_polynomial_cached(disc, None)?;
        let with_conj = self.signs.len() == 2;
        let field = if with_conj {
            build_field(&[Generator::Quadratic(disc.value()), Generator::Class(hcp)])?
        } else {
            build_field(&[Generator::Class(hcp)])?
        };
        let labels = field
            .labels
            .iter()
            .map(|l| {
                if with_conj {
                    // Root 0 of X² − Δ is +i√|Δ|, fixed by Gal(H/K).
                    Embedding {
                        class: l[1],
                        sign: if l[0] == 0 { 1 } else { -1 },
                    }
                } else {
                    Embedding {
                        class: l[0],
                        sign: 1,
                    }
                }
            })
            .collect();
        Ok((field, labels))
    }

    /// The conjugate `family_b` as an exact element, verified by its class
    /// polynomial.
    pub fn exact_conjugate(
        &self,
        field: &Arc<NumberField>,
        labels: &[Embedding],
        f: Family,
        b: usize,
    ) -> Result<FieldElement, FieldError> {
        let (c, _) = self.family(f);
        let conj = c;
        let e = FieldElement::from_images(field, &num_bigint::BigInt::from(1), |prec| {
            let v = conj.values(prec)?;
            Ok(labels
                .iter()
                .map(|&g| v[self.act(f, b, g)].clone())
                .collect())
        })?;
        let hcp = class_polynomial_cached(c.disc, None)?;
        if !e.eval_poly(&hcp.ascending()).is_zero() {
            return Err(FieldError::Labels(format!(
                "interpolated conjugate of Δ = {} is not a root of its class polynomial",
                c.disc
            )));
        }
        Ok(e)
    }

    /// A word as an exact element.
    pub fn exact_word(
        &self,
        field: &Arc<NumberField>,
        labels: &[Embedding],
        w: &Word,
    ) -> Result<FieldElement, FieldError> {
        let mut acc = FieldElement::one(field);
        for &(f, b, e) in w {
            let v = self.exact_conjugate(field, labels, f, b)?;
            acc = acc.mul(&v.pow(e).ok_or(FieldError::DivisionByZero)?);
        }
        Ok(acc)
    }
}

/// Every homomorphism `src → dst` (bijective ones only if asked), as tables.
pub fn homomorphisms(src: &ClassGroup, dst: &ClassGroup, bijective: bool) -> Vec<Vec<usize>> {
    // Greedy generating set of `src`.
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![false; src.order()];
    span[src.identity()] = true;
    let close = |span: &mut Vec<bool>, gens: &[usize]| loop {
        let mut grew = false;
        for a in 0..src.order() {
            if span[a] {
                for &g in gens {
                    let b = src.mul(a, g);
                    if !span[b] {
                        span[b] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            break;
        }
    };
    while let Some(g) = (0..src.order()).find(|&a| !span[a]) {
        gens.push(g);
        close(&mut span, &gens);
    }
    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    loop {
        if let Some(map) = extend(src, dst, &gens, &images) {
            let ok = !bijective || {
                let mut hit = vec![false; dst.order()];
                map.iter().for_each(|&i| hit[i] = true);
                map.len() == dst.order() && hit.iter().all(|&h| h)
            };
            if ok {
                out.push(map);
            }
        }
        let mut t = 0;
        loop {
            if t == gens.len() {
                return out;
            }
            images[t] += 1;
            if images[t] < dst.order() {
                break;
            }
            images[t] = 0;
            t += 1;
        }
    }
}

/// The homomorphism sending `gens[i] ↦ images[i]`, if it is well defined.
fn extend(
    src: &ClassGroup,
    dst: &ClassGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map: Vec<Option<usize>> = vec![None; src.order()];
    map[src.identity()] = Some(dst.identity());
    let mut queue = vec![src.identity()];
    while let Some(a) = queue.pop() {
        let ma = map[a].expect("queued elements are mapped");
        for (&g, &mg) in gens.iter().zip(images) {
            let b = src.mul(a, g);
            let mb = dst.mul(ma, mg);
            match map[b] {
                Some(v) if v != mb => return None,
                Some(_) => {}
                None => {
                    map[b] = Some(mb);
                    queue.push(b);
                }
            }
        }
    }
    let map: Vec<usize> = map.into_iter().collect::<Option<_>>()?;
    is_hom(src, dst, &map).then_some(map)
}

/// Frame for two discriminants with equal real fields `Q(x) = Q(y)` and
/// elementary abelian class groups. The identification of the class groups
/// is found by search and certified by checking exactly that the
/// interpolated `y` is a root of its class polynomial. Also returns the field
/// and labels used for the certificate.
pub fn shared_field_frame(
    dx: Discriminant,
    dy: Discriminant,
) -> Result<(GaloisFrame, Arc<NumberField>, Vec<Embedding>), FieldError> {
    let x = Conjugates::new(dx);
    let y = Conjugates::new(dy);
    if !x.group.is_elementary_2() || x.class_number() != y.class_number() {
        return Err(FieldError::Labels(format!(
            "Q(x) = Q(y) needs equal elementary 2-groups, Δ = {dx}, Δ′ = {dy}"
        )));
    }
    let id: Vec<usize> = (0..x.class_number()).collect();
    let mut probe = None;
    for psi in homomorphisms(&x.group, &y.group, true) {
        let frame = GaloisFrame::new(
            x.group.clone(),
            x.clone(),
            y.clone(),
            id.clone(),
            psi,
            vec![1],
        )?;
        let (field, labels) = match &probe {
            Some(p) => Clone::clone(p),
            None => {
                let p = frame.exact_field()?;
                probe = Some(p.clone());
                p
            }
        };
        match frame.exact_conjugate(&field, &labels, Family::Y, y.group.identity()) {
            Ok(_) => return Ok((frame, field, labels)),
            Err(FieldError::Interpolation(_)) | Err(FieldError::Labels(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(FieldError::Labels(format!(
        "y of Δ′ = {dy} does not lie in Q(x) for Δ = {dx}"
    )))
}

/// Outcome for one automorphism.
#[derive(Clone, Debug, Serialize)]
pub struct SigmaOutcome {
    pub sigma: Embedding,
    pub certified: bool,
    pub witness: Option<LogDeterminant>,
    /// Exact certificate, used when no log-modulus determinant separates.
    pub exact: Option<IndependenceProof>,
    pub note: Option<String>,
}

/// Result of the power-product test for `x = x_1` (dominant) and `y = y_b`.
#[derive(Clone, Debug, Serialize)]
pub struct PowerProductReport {
    pub x_disc: i64,
    pub y_disc: i64,
    pub y_class: usize,
    pub applicable: bool,
    /// The automorphism that certified `x^m y^n ∉ Q^×`, if any.
    pub sigma: Option<Embedding>,
    pub tried: Vec<SigmaOutcome>,
}

impl PowerProductReport {
    pub fn certified(&self) -> bool {
        self.sigma.is_some()
    }
}

/// Look for an automorphism `σ` making `x/x^σ` and `y^σ/y` multiplicatively
/// independent. If `x^m y^n = r ∈ Q^×` then applying `σ` and dividing gives
/// `(x/x^σ)^m = (y^σ/y)^n`, so independence forces `m = n = 0`.
///
/// Independence is certified by a nonzero log-modulus determinant over two
/// embeddings, with images read off the Galois labels.
pub fn rational_power_product_test(
    frame: &GaloisFrame,
    y_class: usize,
) -> Result<PowerProductReport, FieldError> {
    let x0 = frame.x.group.identity();
    let mut report = PowerProductReport {
        x_disc: frame.x.disc.value(),
        y_disc: frame.y.disc.value(),
        y_class,
        applicable: frame.group.order() > 1,
        sigma: None,
        tried: Vec::new(),
    };
    if !report.applicable {
        return Ok(report);
    }
    let x_word: Word = vec![(Family::X, x0, 1)];
    for g in frame.embeddings() {
        if g == frame.identity() {
            continue;
        }
        let xs = frame.act(Family::X, x0, g);
        let ys = frame.act(Family::Y, y_class, g);
        if xs == x0 || ys == y_class {
            report.tried.push(SigmaOutcome {
                sigma: g,
                certified: false,
                witness: None,
                exact: None,
                note: Some("σ fixes x or y, so one side is 1".into()),
            });
            continue;
        }
        let a: Word = vec![x_word[0], (Family::X, xs, -1)];
        let b: Word = vec![(Family::Y, ys, 1), (Family::Y, y_class, -1)];
        let mut witness = None;
        for prec in [128u32, 384] {
            let ia = frame.images(&a, prec)?;
            let ib = frame.images(&b, prec)?;
            witness = log_determinant_test(&ia, &ib);
            if witness.is_some() {
                break;
            }
        }
        let certified = witness.is_some();
        report.tried.push(SigmaOutcome {
            sigma: g,
            certified,
            witness,
            exact: None,
            note: None,
        });
        if certified {
            report.sigma = Some(g);
            return Ok(report);
        }
    }
    exact_fallback(frame, y_class, &mut report)?;
    Ok(report)
}

/// Largest compositum degree for which the exact fallback is attempted.
pub const EXACT_FALLBACK_DEGREE: usize = 24;

/// Exact version of the test through valuations and roots of unity. Needed
/// whenever the log-modulus vectors of both ratios are forced onto one line,
/// as in real quadratic fields or cubic ring class fields.
fn exact_fallback(
    frame: &GaloisFrame,
    y_class: usize,
    report: &mut PowerProductReport,
) -> Result<(), FieldError> {
    if frame.group.order() * frame.signs.len() > EXACT_FALLBACK_DEGREE {
        return Ok(());
    }
    let (field, labels) = frame.exact_field()?;
    let x0 = frame.x.group.identity();
    for g in frame.embeddings() {
        let xs = frame.act(Family::X, x0, g);
        let ys = frame.act(Family::Y, y_class, g);
        if g == frame.identity() || xs == x0 || ys == y_class {
            continue;
        }
        let a = frame.exact_word(
            &field,
            &labels,
            &vec![(Family::X, x0, 1), (Family::X, xs, -1)],
        )?;
        let b = frame.exact_word(
            &field,
            &labels,
            &vec![(Family::Y, ys, 1), (Family::Y, y_class, -1)],
        )?;
        let outcome = mult_independent(&a, &b)?;
        let note = Some(format!("exact test: {}", outcome.status()));
        let exact = match outcome {
            Independence::Independent(p) => Some(p),
            _ => None,
        };
        let certified = exact.is_some();
        report.tried.push(SigmaOutcome {
            sigma: g,
            certified,
            witness: None,
            exact,
            note,
        });
        if certified {
            report.sigma = Some(g);
            return Ok(());
        }
    }
    Ok(())
}
