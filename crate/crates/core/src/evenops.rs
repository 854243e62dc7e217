//! Even operations `Set(ℤ, ℤ) ⊗̂ K(BU)`.
//!
//! An [`EvenOp`] is a finite sum of pure tensors `f ⊗ x`. It acts on an
//! element `α` of a λ-ring model by `(f ⊗ x)(α) = f(ε(α)) · x(α − ε(α))`,
//! where `x` is evaluated by `λᵏι ↦ λᵏ(α − ε(α))`.
//!
//! Operations produced by normalisation or composition are only known on
//! the window `[−W, W]`; they are flagged as windowed and refuse to act on
//! elements whose augmentation falls outside it.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kbu::{coadd, colinear, compose_kbu, comult, cozero, KbuElem};
use crate::models::LambdaRingModel;
use crate::poly::{Family, IntPoly, Monomial, PolyJson, Polynomials};
use crate::setzz::{fn_coadd, FnZZ, Window};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenOp {
    summands: Vec<(FnZZ, KbuElem)>,
    trunc: u32,
    window: Window,
    windowed: bool,
}

impl EvenOp {
    pub fn new(summands: Vec<(FnZZ, KbuElem)>, trunc: u32, window: Window) -> Result<EvenOp> {
        for (_, x) in &summands {
            if x.trunc() != trunc {
                return Err(Error::TruncationMismatch(trunc, x.trunc()));
            }
        }
        Ok(EvenOp { summands, trunc, window, windowed: false })
    }

    pub fn pure(f: FnZZ, x: KbuElem, window: Window) -> EvenOp {
        let trunc = x.trunc();
        EvenOp { summands: vec![(f, x)], trunc, window, windowed: false }
    }

    pub fn zero(trunc: u32, window: Window) -> EvenOp {
        EvenOp { summands: Vec::new(), trunc, window, windowed: false }
    }

    /// `Σ_n χ_n ⊗ x_n`, valid on the window only.
    pub(crate) fn from_indicators(map: BTreeMap<i64, KbuElem>, trunc: u32, window: Window) -> EvenOp {
        let summands = map
            .into_iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(n, x)| (FnZZ::chi(n), x))
            .collect();
        EvenOp { summands, trunc, window, windowed: true }
    }

    pub fn summands(&self) -> &[(FnZZ, KbuElem)] {
        &self.summands
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Whether the operation is only determined on the window.
    pub fn is_windowed(&self) -> bool {
        self.windowed
    }

    /// `Σ_i f_i(e) x_i`, the K(BU) part seen by elements of augmentation `e`.
    pub fn component_at(&self, e: &BigInt) -> Result<KbuElem> {
        if self.windowed && !self.window.contains(e) {
            return Err(Error::WindowExhausted { window: self.window.width(), value: e.clone() });
        }
        let mut p = IntPoly::zero();
        for (f, x) in &self.summands {
            let v = f.eval(e);
            if !v.is_zero() {
                p = p + x.poly().scale(&v);
            }
        }
        Ok(KbuElem::new(p, self.trunc).expect("summands share the truncation"))
    }

    /// Nonzero components on the window.
    pub fn indicator_map(&self) -> BTreeMap<i64, KbuElem> {
        self.window
            .points()
            .map(|n| (n, self.component_at(&BigInt::from(n)).expect("point lies in the window")))
            .filter(|(_, x)| !x.is_zero())
            .collect()
    }

    /// The indicator normal form `Σ_n χ_n ⊗ x_n` over the window.
    pub fn normalised(&self) -> EvenOp {
        EvenOp::from_indicators(self.indicator_map(), self.trunc, self.window)
    }

    /// Whether every left factor is a distinct in-window indicator.
    pub fn is_normalised(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.summands.iter().all(|(f, _)| match f {
            FnZZ::Chi(d) => self.window.contains(d) && seen.insert(d.clone()),
            _ => false,
        })
    }

    /// Equality of the two operations on the window.
    pub fn equiv(&self, other: &EvenOp) -> bool {
        self.trunc == other.trunc && self.window == other.window && self.indicator_map() == other.indicator_map()
    }

    fn compatible(&self, other: &EvenOp) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        if self.window != other.window {
            return Err(Error::WindowMismatch(self.window.width(), other.window.width()));
        }
        Ok(())
    }

    pub fn add(&self, other: &EvenOp) -> Result<EvenOp> {
        self.compatible(other)?;
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        Ok(EvenOp { summands, windowed: self.windowed || other.windowed, ..self.clone() })
    }

    pub fn scale(&self, c: &BigInt) -> EvenOp {
        EvenOp {
            summands: self.summands.iter().map(|(f, x)| (f.clone(), x.scale(c))).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> EvenOp {
        self.scale(&-BigInt::one())
    }

    pub fn sub(&self, other: &EvenOp) -> Result<EvenOp> {
        self.add(&other.neg())
    }

    /// `(f ⊗ x)(g ⊗ y) = fg ⊗ xy`.
    pub fn mul(&self, other: &EvenOp) -> Result<EvenOp> {
        self.compatible(other)?;
        let mut summands = Vec::new();
        for (f, x) in &self.summands {
            for (g, y) in &other.summands {
                summands.push((FnZZ::Prod(vec![f.clone(), g.clone()]), x.mul(y)?));
            }
        }
        Ok(EvenOp { summands, windowed: self.windowed || other.windowed, ..self.clone() })
    }

    fn max_lambda(&self) -> u32 {
        self.summands.iter().map(|(_, x)| x.poly().max_index(Family::Lambda)).max().unwrap_or(0)
    }
}

impl fmt::Display for EvenOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        for (n, (g, x)) in self.summands.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            match g {
                FnZZ::Chi(d) => write!(f, "χ_{d}")?,
                FnZZ::Id => f.write_str("ι")?,
                other => write!(f, "{other}")?,
            }
            write!(f, "⊗({x})")?;
        }
        Ok(())
    }
}

/// `1 ⊗ λ¹ι + ι ⊗ 1`.
pub fn identity_op(trunc: u32, window: Window) -> Result<EvenOp> {
    EvenOp::new(
        vec![
            (FnZZ::constant(1), KbuElem::generator(1, trunc)?),
            (FnZZ::Id, KbuElem::one(trunc)?),
        ],
        trunc,
        window,
    )
}

/// `ε⁺(f ⊗ x) = f(0) ε⁺(x)`.
pub fn op_cozero(r: &EvenOp) -> BigInt {
    r.summands.iter().map(|(f, x)| f.eval(&BigInt::zero()) * cozero(x)).sum()
}

/// `ε×(f ⊗ x) = f(1) ε⁺(x)`.
pub fn op_counit(r: &EvenOp) -> BigInt {
    r.summands.iter().map(|(f, x)| f.eval(&BigInt::one()) * cozero(x)).sum()
}

fn eval_kbu(x: &IntPoly, seq: &[IntPoly], model: &LambdaRingModel) -> IntPoly {
    model.reduce(&x.eval_in(&Polynomials, |v| seq[v.index as usize].clone()))
}

/// The action of `r` on an element of a λ-ring model.
pub fn act(r: &EvenOp, model: &LambdaRingModel, alpha: &IntPoly) -> Result<IntPoly> {
    let alpha = model.element(alpha)?;
    let e = model.augmentation(&alpha);
    if r.windowed && !r.window.contains(&e) {
        return Err(Error::WindowExhausted { window: r.window.width(), value: e });
    }
    let reduced = &alpha - &IntPoly::constant(e.clone());
    let seq = model.lambda_sequence(&reduced, r.max_lambda())?;
    let mut out = IntPoly::zero();
    for (f, x) in &r.summands {
        let v = f.eval(&e);
        if !v.is_zero() {
            out = out + eval_kbu(x.poly(), &seq, model).scale(&v);
        }
    }
    Ok(out)
}

/// Pairs `(r, s)` with `rs = d` and both in the window. For `d = 0` these
/// are `(0, s)` and `(r, 0)`.
pub fn divisor_pairs(d: i64, w: Window) -> Vec<(i64, i64)> {
    let bound = i64::from(w.width());
    if d == 0 {
        let mut out: Vec<(i64, i64)> = (-bound..=bound).map(|s| (0, s)).collect();
        out.extend((-bound..=bound).filter(|&r| r != 0).map(|r| (r, 0)));
        return out;
    }
    let mut out = Vec::new();
    for r in 1..=d.unsigned_abs().min(bound as u64) as i64 {
        if d % r == 0 {
            for sign in [1, -1] {
                let (r, s) = (sign * r, d / (sign * r));
                if s.abs() <= bound {
                    out.push((r, s));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// `(χ_d ⊗ x) ∘ (g ⊗ y) = Σ_{rs=d} χ_r(ε⁺y) · (χ_s ∘ g) ⊗ γ(s)(x) ∘ (y − ε⁺y)`,
/// evaluated at the given window points.
pub fn compose_tensor(
    d: i64,
    x: &KbuElem,
    g: &FnZZ,
    y: &KbuElem,
    window: Window,
    points: &[i64],
) -> Result<BTreeMap<i64, KbuElem>> {
    let bound = i64::from(window.width());
    if d.abs() > bound {
        return Err(Error::WindowExhausted { window: window.width(), value: BigInt::from(d) });
    }
    let e = cozero(y);
    let y0 = y.sub(&KbuElem::constant(e.clone(), y.trunc())?)?;
    let values: Vec<(i64, BigInt)> = points.iter().map(|&n| (n, g.eval_i64(n))).collect();
    // Pairs the window cannot supply: some point needs (r, s) = (ε⁺y, g(n))
    // with rs = d but r or s outside the window.
    for (_, s) in &values {
        if &e * s == BigInt::from(d) && (!window.contains(&e) || !window.contains(s)) {
            let value = if window.contains(&e) { s.clone() } else { e.clone() };
            return Err(Error::WindowExhausted { window: window.width(), value });
        }
    }
    let mut out: BTreeMap<i64, KbuElem> = BTreeMap::new();
    for (r, s) in divisor_pairs(d, window) {
        if BigInt::from(r) != e {
            continue;
        }
        let hits: Vec<i64> = values.iter().filter(|(_, v)| v == &BigInt::from(s)).map(|(n, _)| *n).collect();
        if hits.is_empty() {
            continue;
        }
        let term = compose_kbu(&colinear(&BigInt::from(s), x), &y0)?;
        for n in hits {
            let slot = out.entry(n).or_insert_with(|| KbuElem::raw(IntPoly::zero(), x.trunc()));
            *slot = slot.add(&term)?;
        }
    }
    Ok(out)
}

/// Composition with a left operand already in indicator normal form.
pub fn compose_normalised(r: &EvenOp, s: &EvenOp) -> Result<EvenOp> {
    r.compatible(s)?;
    if !r.is_normalised() {
        return Err(Error::NotNormalised);
    }
    let window = r.window;
    let points: Vec<i64> = window.points().collect();
    let left: Vec<(i64, &KbuElem)> = r
        .summands
        .iter()
        .map(|(f, x)| match f {
            FnZZ::Chi(d) => (d.to_i64().expect("in-window index"), x),
            _ => unreachable!("checked by is_normalised"),
        })
        .collect();
    let mut out: BTreeMap<i64, KbuElem> = BTreeMap::new();
    let mut accumulate = |part: BTreeMap<i64, KbuElem>| -> Result<()> {
        for (n, x) in part {
            let slot = out.entry(n).or_insert_with(|| KbuElem::raw(IntPoly::zero(), x.trunc()));
            *slot = slot.add(&x)?;
        }
        Ok(())
    };
    if let [(g, y)] = s.summands.as_slice() {
        // s(α) lands at augmentation ε⁺(y)·g(ε(α)); r must be known there.
        let e = cozero(y);
        for &n in &points {
            let v = &e * g.eval_i64(n);
            if !window.contains(&v) {
                return Err(Error::WindowExhausted { window: window.width(), value: v });
            }
        }
        for (d, x) in &left {
            accumulate(compose_tensor(*d, x, g, y, window, &points)?)?;
        }
    } else {
        let comps = s.indicator_map();
        let zero = KbuElem::raw(IntPoly::zero(), s.trunc);
        for &n in &points {
            let y = comps.get(&n).unwrap_or(&zero);
            let e = cozero(y);
            if !window.contains(&e) {
                return Err(Error::WindowExhausted { window: window.width(), value: e });
            }
            let g = FnZZ::chi(n);
            for (d, x) in &left {
                let mut part = compose_tensor(*d, x, &g, y, window, &[n])?;
                if let Some(v) = part.remove(&n) {
                    accumulate(BTreeMap::from([(n, v)]))?;
                }
            }
        }
    }
    Ok(EvenOp::from_indicators(out, r.trunc, window))
}

/// `r ∘ s`, normalising `r` to indicator form first.
pub fn compose_even(r: &EvenOp, s: &EvenOp) -> Result<EvenOp> {
    let left = if r.is_normalised() { r.clone() } else { r.normalised() };
    compose_normalised(&left, s)
}

/// `Σ c · (χ_i ⊗ a) ⊗ (χ_j ⊗ b)`, keyed by `(i, a, j, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenTensor {
    trunc: u32,
    window: Window,
    terms: BTreeMap<(i64, Monomial, i64, Monomial), BigInt>,
}

impl EvenTensor {
    fn new(trunc: u32, window: Window) -> EvenTensor {
        EvenTensor { trunc, window, terms: BTreeMap::new() }
    }

    fn add_term(&mut self, key: (i64, Monomial, i64, Monomial), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &EvenTensor) -> Result<EvenTensor> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        if self.window != other.window {
            return Err(Error::WindowMismatch(self.window.width(), other.window.width()));
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn terms(&self) -> &BTreeMap<(i64, Monomial, i64, Monomial), BigInt> {
        &self.terms
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// `Σ c · (χ_i ⊗ a)(α) · (χ_j ⊗ b)(β)`.
    pub fn act_pair(&self, model: &LambdaRingModel, alpha: &IntPoly, beta: &IntPoly) -> Result<IntPoly> {
        let alpha = model.element(alpha)?;
        let beta = model.element(beta)?;
        let (ea, eb) = (model.augmentation(&alpha), model.augmentation(&beta));
        for e in [&ea, &eb] {
            if !self.window.contains(e) {
                return Err(Error::WindowExhausted { window: self.window.width(), value: e.clone() });
            }
        }
        let (ea, eb) = (ea.to_i64().unwrap(), eb.to_i64().unwrap());
        let n = self.trunc;
        let sa = model.lambda_sequence(&(&alpha - &IntPoly::constant(ea)), n)?;
        let sb = model.lambda_sequence(&(&beta - &IntPoly::constant(eb)), n)?;
        let mut out = IntPoly::zero();
        for ((i, a, j, b), c) in self.terms.range((ea, Monomial::one(), i64::MIN, Monomial::one())..) {
            if *i != ea {
                break;
            }
            if *j != eb {
                continue;
            }
            let left = eval_kbu(&IntPoly::monomial(a.clone(), 1), &sa, model);
            let right = eval_kbu(&IntPoly::monomial(b.clone(), 1), &sb, model);
            out = out + model.mul(&left, &right).scale(c);
        }
        Ok(out)
    }

    /// `ε⁺ ⊗ ε⁺` applied to both factors.
    pub fn counit_pair(&self, left: &BigInt, right: &BigInt) -> BigInt {
        self.terms
            .iter()
            .filter(|((i, a, j, b), _)| a.is_one() && b.is_one() && BigInt::from(*i) == *left && BigInt::from(*j) == *right)
            .map(|(_, c)| c.clone())
            .sum()
    }
}

impl fmt::Display for EvenTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, ((i, a, j, b), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "({c})*")?;
            }
            write!(f, "(χ_{i}⊗{a})⊗(χ_{j}⊗{b})")?;
        }
        Ok(())
    }
}

/// `r ⊗ s` in indicator form over the window square.
pub fn op_outer(r: &EvenOp, s: &EvenOp) -> Result<EvenTensor> {
    r.compatible(s)?;
    let mut out = EvenTensor::new(r.trunc, r.window);
    let (rm, sm) = (r.indicator_map(), s.indicator_map());
    for (i, x) in &rm {
        for (j, y) in &sm {
            for (a, ca) in x.poly().terms() {
                for (b, cb) in y.poly().terms() {
                    out.add_term((*i, a.clone(), *j, b.clone()), ca * cb);
                }
            }
        }
    }
    Ok(out)
}

/// `Δ⁺(f ⊗ x) = Σ f(i+j) · (χ_i ⊗ x_(1)) ⊗ (χ_j ⊗ x_(2))` on the window.
pub fn op_coadd(r: &EvenOp) -> EvenTensor {
    let mut out = EvenTensor::new(r.trunc, r.window);
    for (f, x) in &r.summands {
        let ft = fn_coadd(f, r.window);
        let kt = coadd(x);
        for (ij, fc) in ft.terms() {
            for (k, kc) in kt.terms() {
                out.add_term((ij[0], k[0].clone(), ij[1], k[1].clone()), fc * kc);
            }
        }
    }
    out
}

/// `Δ×(f ⊗ b) = Σ_{r,s} f(rs) · (χ_r ⊗ b_(1)[1] γ(s)(b_(2))) ⊗ (χ_s ⊗ b_(1)[2] γ(r)(b_(3)))`
/// over the window square.
pub fn op_comult(r: &EvenOp) -> Result<EvenTensor> {
    let mut out = EvenTensor::new(r.trunc, r.window);
    let pts: Vec<i64> = r.window.points().collect();
    let mut gamma: BTreeMap<(i64, Monomial), IntPoly> = BTreeMap::new();
    let mut colin = |k: i64, m: &Monomial, trunc: u32| -> IntPoly {
        gamma
            .entry((k, m.clone()))
            .or_insert_with(|| colinear(&BigInt::from(k), &KbuElem::raw(IntPoly::monomial(m.clone(), 1), trunc)).poly().clone())
            .clone()
    };
    for (f, b) in &r.summands {
        // b_(1) ⊗ b_(2) ⊗ b_(3), then b_(1) ↦ b_(1)[1] ⊗ b_(1)[2].
        let three = coadd(b).expand_factor(0, coadd);
        let mut four: BTreeMap<[Monomial; 4], BigInt> = BTreeMap::new();
        for (k, c) in three.terms() {
            let m1 = KbuElem::raw(IntPoly::monomial(k[0].clone(), 1), r.trunc);
            for (pq, c2) in comult(&m1).terms() {
                *four.entry([pq[0].clone(), pq[1].clone(), k[1].clone(), k[2].clone()]).or_default() += c * c2;
            }
        }
        for &rr in &pts {
            for &ss in &pts {
                let v = f.eval_i64(rr * ss);
                if v.is_zero() {
                    continue;
                }
                for ([p, q, m2, m3], c) in &four {
                    if c.is_zero() {
                        continue;
                    }
                    let left = &IntPoly::monomial(p.clone(), 1) * &colin(ss, m2, r.trunc);
                    let right = &IntPoly::monomial(q.clone(), 1) * &colin(rr, m3, r.trunc);
                    for (lm, lc) in left.terms() {
                        for (rm, rc) in right.terms() {
                            out.add_term((rr, lm.clone(), ss, rm.clone()), &v * c * lc * rc);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvenOpJson {
    pub trunc: u32,
    pub window: u32,
    #[serde(default)]
    pub windowed: bool,
    pub summands: Vec<SummandJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandJson {
    pub f: String,
    pub x: PolyJson,
}

impl EvenOp {
    /// Summands sorted by their function and polynomial text.
    pub fn to_json(&self) -> EvenOpJson {
        let mut rows: Vec<(String, String, PolyJson)> = self
            .summands
            .iter()
            .map(|(f, x)| (f.to_string(), x.poly().to_string(), x.poly().to_json()))
            .collect();
        rows.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        EvenOpJson {
            trunc: self.trunc,
            window: self.window.width(),
            windowed: self.windowed,
            summands: rows.into_iter().map(|(f, _, x)| SummandJson { f, x }).collect(),
        }
    }

    pub fn from_json(doc: &EvenOpJson) -> Result<EvenOp> {
        let window = Window::new(doc.window)?;
        let mut summands = Vec::with_capacity(doc.summands.len());
        for s in &doc.summands {
            let f: FnZZ = s.f.parse()?;
            let x = KbuElem::new(IntPoly::from_json(&s.x)?, doc.trunc)?;
            summands.push((f, x));
        }
        let mut op = EvenOp::new(summands, doc.trunc, window)?;
        op.windowed = doc.windowed;
        Ok(op)
    }

    pub fn from_json_str(s: &str) -> Result<EvenOp> {
        let doc: EvenOpJson = serde_json::from_str(s).map_err(|e| Error::parse(e.column(), e.to_string()))?;
        EvenOp::from_json(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: u32 = 4;

    fn w(n: u32) -> Window {
        Window::new(n).unwrap()
    }

    fn k(s: &str) -> KbuElem {
        KbuElem::new(s.parse().unwrap(), N).unwrap()
    }

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    fn op(parts: &[(FnZZ, &str)], win: u32) -> EvenOp {
        EvenOp::new(parts.iter().map(|(f, x)| (f.clone(), k(x))).collect(), N, w(win)).unwrap()
    }

    #[test]
    fn action_examples() {
        let z = LambdaRingModel::projective(2);
        let r = op(&[(FnZZ::chi(2), "λ1")], 4);
        assert_eq!(act(&r, &z, &p("2 + u")).unwrap(), p("u"));
        assert_eq!(act(&r, &z, &p("1 + u")).unwrap(), p("0"));
        let eps = op(&[(FnZZ::Id, "1")], 4);
        assert_eq!(act(&eps, &z, &p("3 - u^2")).unwrap(), p("3"));
        let sphere = LambdaRingModel::sphere();
        assert_eq!(act(&op(&[(FnZZ::constant(1), "λ2")], 4), &sphere, &p("u")).unwrap(), p("-u"));
    }

    #[test]
    fn identity_acts_trivially() {
        let id = identity_op(N, w(4)).unwrap();
        let m = LambdaRingModel::suspended(2);
        for a in ["x1 + u", "3*x1*x2 - 2", "u - 1", "0"] {
            assert_eq!(act(&id, &m, &p(a)).unwrap(), p(a));
        }
    }

    #[test]
    fn counits() {
        let id = identity_op(N, w(4)).unwrap();
        assert_eq!(op_cozero(&id), BigInt::zero());
        assert_eq!(op_counit(&id), BigInt::one());
        assert_eq!(op_cozero(&op(&[(FnZZ::constant(1), "1")], 2)), BigInt::one());
    }

    #[test]
    fn divisor_pair_enumeration() {
        assert_eq!(divisor_pairs(1, w(3)), vec![(-1, -1), (1, 1)]);
        assert_eq!(divisor_pairs(4, w(3)), vec![(-2, -2), (2, 2)]);
        assert_eq!(divisor_pairs(-2, w(2)), vec![(-2, 1), (-1, 2), (1, -2), (2, -1)]);
        assert_eq!(divisor_pairs(0, w(1)).len(), 5);
    }

    #[test]
    fn unit_laws() {
        let id = identity_op(N, w(4)).unwrap();
        let s = op(&[(FnZZ::chi(2), "λ1"), (FnZZ::constant(3), "1")], 4);
        assert!(compose_even(&id, &s).unwrap().equiv(&s));
        assert!(compose_even(&s, &id).unwrap().equiv(&s));
    }

    #[test]
    fn composition_matches_action() {
        let m = LambdaRingModel::projective(2);
        let win = 4;
        let r = op(&[(FnZZ::chi(0), "λ1^2 - λ2"), (FnZZ::chi(1), "λ2 + 2"), (FnZZ::Id, "λ1")], win);
        let s = op(&[(FnZZ::constant(1), "λ1"), (FnZZ::chi(-1), "3 + λ2")], win);
        let rs = compose_even(&r, &s).unwrap();
        for a in ["u", "1 + u", "-1 + 2*u", "2 - u^2", "u^2"] {
            let direct = act(&r, &m, &act(&s, &m, &p(a)).unwrap()).unwrap();
            assert_eq!(act(&rs, &m, &p(a)).unwrap(), direct, "{a}");
        }
    }

    #[test]
    fn chi_zero_against_constants() {
        let m = LambdaRingModel::projective(2);
        let r = op(&[(FnZZ::chi(0), "λ1")], 3);
        for c in 0..=2 {
            let s = op(&[(FnZZ::constant(c), "1")], 3);
            let rs = compose_even(&r, &s).unwrap();
            for a in ["u", "1 + u", "2"] {
                let direct = act(&r, &m, &act(&s, &m, &p(a)).unwrap()).unwrap();
                assert_eq!(act(&rs, &m, &p(a)).unwrap(), direct);
            }
        }
    }

    #[test]
    fn window_errors() {
        let r = op(&[(FnZZ::chi(1), "λ1")], 2);
        let s = op(&[(FnZZ::Prod(vec![FnZZ::Id, FnZZ::Id]), "1")], 2);
        assert!(matches!(compose_even(&r, &s), Err(Error::WindowExhausted { .. })));
        let rs = compose_even(&r, &op(&[(FnZZ::constant(1), "λ1")], 2)).unwrap();
        assert!(matches!(act(&rs, &LambdaRingModel::integers(), &p("5")), Err(Error::WindowExhausted { .. })));
        let raw = op(&[(FnZZ::chi(1), "λ1")], 2);
        assert!(matches!(compose_normalised(&raw.add(&raw).unwrap(), &raw), Err(Error::NotNormalised)));
    }

    #[test]
    fn coproducts_match_action() {
        let m = LambdaRingModel::projective(2);
        let r = op(&[(FnZZ::constant(1), "λ2"), (FnZZ::chi(1), "λ1^2 + 1"), (FnZZ::Id, "λ1")], 3);
        let add = op_coadd(&r);
        let mul = op_comult(&r).unwrap();
        for (a, b) in [("u", "1 + u"), ("1", "1 - u"), ("-1 + u^2", "2*u")] {
            let (a, b) = (p(a), p(b));
            assert_eq!(add.act_pair(&m, &a, &b).unwrap(), act(&r, &m, &(&a + &b)).unwrap());
            assert_eq!(mul.act_pair(&m, &a, &b).unwrap(), act(&r, &m, &m.mul(&a, &b)).unwrap());
        }
    }

    #[test]
    fn product_on_split_model() {
        let m = LambdaRingModel::split(2);
        let r = op(&[(FnZZ::constant(1), "λ2")], 2);
        let mul = op_comult(&r).unwrap();
        let (a, b) = (p("x1"), p("x2 + x1 - 1"));
        assert_eq!(mul.act_pair(&m, &a, &b).unwrap(), act(&r, &m, &m.mul(&a, &b)).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let r = op(&[(FnZZ::chi(2), "λ1"), (FnZZ::constant(3), "1")], 4);
        let text = serde_json::to_string(&r.to_json()).unwrap();
        let back = EvenOp::from_json_str(&text).unwrap();
        assert!(back.equiv(&r));
        assert!(EvenOp::from_json_str(r#"{"trunc":2,"window":0,"summands":[]}"#).is_err());
    }
}
