//! The ℤ/2-graded plethory with looping.
//!
//! The odd part is the exterior algebra on `l¹, l², …` (truncated at `N`).
//! Looping `Ω` sends even operations to odd ones and back:
//! `Ω(f ⊗ λᵏι) = f(0) lᵏ` on indecomposables, and
//! `Ω(lᵏ) = 1 ⊗ Pᴸ_k(1, −1, …, (−1)^{k−1}; λ¹ι, …, λᵏι)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evenops::{act, compose_even, identity_op, op_coadd, op_comult, op_cozero, op_outer, EvenOp};
use crate::exterior::Exterior;
use crate::kbu::{coadd, KbuElem, KbuTensor};
use crate::models::LambdaRingModel;
use crate::poly::{Family, IntPoly, Monomial, Var};
use crate::report::{Property, Report};
use crate::setzz::{FnZZ, Window};
use crate::symmetric::{left_linearise, newton_psi, universal_pij, universal_pk};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OddOp {
    ext: Exterior,
    trunc: u32,
}

impl OddOp {
    pub fn new(ext: Exterior, trunc: u32) -> Result<OddOp> {
        if trunc == 0 {
            return Err(Error::InvalidIndex("truncation level must be positive".into()));
        }
        if ext.max_index() > trunc {
            return Err(Error::TruncationExceeded { needed: ext.max_index(), trunc });
        }
        Ok(OddOp { ext, trunc })
    }

    /// `lᵏ`.
    pub fn generator(k: u32, trunc: u32) -> Result<OddOp> {
        if k == 0 {
            return Err(Error::InvalidIndex("l^0 is not defined".into()));
        }
        OddOp::new(Exterior::generator(k), trunc)
    }

    pub fn unit(c: impl Into<BigInt>, trunc: u32) -> Result<OddOp> {
        OddOp::new(Exterior::unit(c), trunc)
    }

    pub fn zero(trunc: u32) -> Result<OddOp> {
        OddOp::new(Exterior::zero(), trunc)
    }

    pub fn ext(&self) -> &Exterior {
        &self.ext
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.ext.is_zero()
    }

    fn same_level(&self, other: &OddOp) -> Result<()> {
        if self.trunc == other.trunc {
            Ok(())
        } else {
            Err(Error::TruncationMismatch(self.trunc, other.trunc))
        }
    }

    pub fn add(&self, other: &OddOp) -> Result<OddOp> {
        self.same_level(other)?;
        OddOp::new(self.ext.add(&other.ext), self.trunc)
    }

    pub fn sub(&self, other: &OddOp) -> Result<OddOp> {
        self.same_level(other)?;
        OddOp::new(self.ext.sub(&other.ext), self.trunc)
    }

    pub fn scale(&self, c: &BigInt) -> OddOp {
        OddOp { ext: self.ext.scale(c), trunc: self.trunc }
    }

    pub fn wedge(&self, other: &OddOp) -> Result<OddOp> {
        self.same_level(other)?;
        OddOp::new(self.ext.wedge(&other.ext), self.trunc)
    }
}

impl fmt::Display for OddOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ext.render("l"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OddOpJson {
    pub trunc: u32,
    pub terms: Vec<WedgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WedgeJson {
    pub coeff: String,
    pub wedge: Vec<u32>,
}

impl OddOp {
    pub fn to_json(&self) -> OddOpJson {
        OddOpJson {
            trunc: self.trunc,
            terms: self
                .ext
                .terms()
                .iter()
                .map(|(k, c)| WedgeJson { coeff: c.to_string(), wedge: k.clone() })
                .collect(),
        }
    }
}

/// Bidegrees `(deg_•, deg_*)` of the two parts.
pub const EVEN_BIDEGREE: (i32, i32) = (0, 0);
pub const ODD_BIDEGREE: (i32, i32) = (-1, -1);

/// An element of the ℤ/2-graded plethory: an even and an odd part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedOp {
    pub even: EvenOp,
    pub odd: OddOp,
}

impl GradedOp {
    pub fn new(even: EvenOp, odd: OddOp) -> Result<GradedOp> {
        if even.trunc() != odd.trunc() {
            return Err(Error::TruncationMismatch(even.trunc(), odd.trunc()));
        }
        Ok(GradedOp { even, odd })
    }

    /// The identities `ι₀ = 1 ⊗ λ¹ι + ι ⊗ 1` and `ι₁ = l¹`, as pure parts.
    pub fn iota(parity: u8, trunc: u32, window: Window) -> Result<GradedOp> {
        match parity % 2 {
            0 => GradedOp::new(identity_op(trunc, window)?, OddOp::zero(trunc)?),
            _ => GradedOp::new(EvenOp::zero(trunc, window), OddOp::generator(1, trunc)?),
        }
    }

    pub fn bidegrees(&self) -> [(i32, i32); 2] {
        [EVEN_BIDEGREE, ODD_BIDEGREE]
    }
}

fn linear_lambda_coefficients(x: &IntPoly) -> BTreeMap<u32, BigInt> {
    x.terms()
        .filter_map(|(m, c)| match m.pairs() {
            [(v, 1)] if v.family == Family::Lambda => Some((v.index, c.clone())),
            _ => None,
        })
        .collect()
}

/// `Ω: f ⊗ x ↦ f(0) · (linear part of x with λᵏι ↦ lᵏ)`.
pub fn loop_even(r: &EvenOp) -> Result<OddOp> {
    let c = op_cozero(r);
    if !c.is_zero() {
        return Err(Error::NotAugmented(c));
    }
    let mut ext = Exterior::zero();
    for (f, x) in r.summands() {
        let f0 = f.eval(&BigInt::zero());
        if f0.is_zero() {
            continue;
        }
        for (k, c) in linear_lambda_coefficients(x.poly()) {
            ext = ext.add(&Exterior::generator(k).scale(&(&f0 * c)));
        }
    }
    OddOp::new(ext, r.trunc())
}

/// `Pᴸ_k(1, −1, …, (−1)^{k−1}; λ¹ι, …, λᵏι)`.
pub fn loop_generator_image(k: u32, trunc: u32) -> Result<KbuElem> {
    let pl = left_linearise(&*universal_pk(k)?);
    let p = pl.substitute(|v| {
        Some(match v.family {
            Family::X => IntPoly::constant(if v.index % 2 == 1 { 1 } else { -1 }),
            _ => IntPoly::var(Var::lambda(v.index)),
        })
    });
    KbuElem::new(p, trunc)
}

/// `Ω: lᵏ ↦ 1 ⊗ Pᴸ_k(…)`; wedges of two or more generators go to zero.
pub fn loop_odd(x: &OddOp, window: Window) -> Result<EvenOp> {
    let c = x.ext.unit_part();
    if !c.is_zero() {
        return Err(Error::NotAugmented(c));
    }
    let mut p = IntPoly::zero();
    for (k, c) in x.ext.linear_part() {
        p = p + loop_generator_image(k, x.trunc)?.poly().scale(&c);
    }
    Ok(EvenOp::pure(FnZZ::constant(1), KbuElem::new(p, x.trunc)?, window))
}

/// Coefficient of `λ_{ij}` in `P_{i,j}`.
pub fn linear_pij_coefficient(i: u32, j: u32) -> Result<BigInt> {
    Ok(universal_pij(i, j)?.coeff(&Monomial::var(Var::lambda(i * j))))
}

/// `x ∘ y` for odd operations; `y` must be a combination of generators.
pub fn compose_odd(x: &OddOp, y: &OddOp) -> Result<OddOp> {
    x.same_level(y)?;
    let c = y.ext.unit_part();
    if !c.is_zero() {
        return Err(Error::NotReduced(c));
    }
    if y.ext.terms().keys().any(|k| k.len() > 1) {
        return Err(Error::Unsupported("odd composition with a decomposable right operand".into()));
    }
    let lin = y.ext.linear_part();
    let n = x.trunc;
    let mut images: BTreeMap<u32, Exterior> = BTreeMap::new();
    for i in x.ext.terms().keys().flatten().copied() {
        if images.contains_key(&i) {
            continue;
        }
        let mut img = Exterior::zero();
        for (j, cj) in &lin {
            let ij = i * j;
            if ij > n {
                return Err(Error::TruncationExceeded { needed: ij, trunc: n });
            }
            img = img.add(&Exterior::generator(ij).scale(&(cj * linear_pij_coefficient(i, *j)?)));
        }
        images.insert(i, img);
    }
    OddOp::new(x.ext.map_generators(|i| images[&i].clone()), n)
}

/// `Ω²(f ⊗ λᵖι)` computed independently of [`loop_generator_image`]:
/// substitute `x_i ↦ (−1)^{i−1} u` into `P_p` and read off the `u`-coefficient.
pub fn double_loop_reference(p: u32, trunc: u32) -> Result<KbuElem> {
    let u = IntPoly::var(Var::u());
    let sub = universal_pk(p)?.substitute(|v| match v.family {
        Family::X => Some(if v.index % 2 == 1 { u.clone() } else { -&u }),
        _ => None,
    });
    let mut out = IntPoly::zero();
    for (m, c) in sub.terms() {
        if m.exponent(Var::u()) == 1 {
            let rest = Monomial::from_pairs(
                m.pairs().iter().filter(|(v, _)| v.family == Family::Y).map(|&(v, e)| (Var::lambda(v.index), e)),
            );
            out.add_term(rest, c.clone());
        }
    }
    KbuElem::new(out, trunc)
}

fn generator_op(f: FnZZ, k: u32, trunc: u32, window: Window) -> Result<EvenOp> {
    Ok(EvenOp::pure(f, KbuElem::generator(k, trunc)?, window))
}

/// Left factors used to build generator corpora: the indicators on the
/// window plus the constant 1.
fn indicator_basis(window: Window) -> Vec<FnZZ> {
    window.points().map(FnZZ::chi).chain([FnZZ::constant(1)]).collect()
}

fn is_primitive_kbu(x: &KbuElem) -> Result<bool> {
    let one = KbuElem::one(x.trunc())?;
    let expected = KbuTensor::pure(&[x, &one])?.add(&KbuTensor::pure(&[&one, x])?)?;
    Ok(coadd(x) == expected)
}

/// Whether `Δ⁺r = r ⊗ 1 + 1 ⊗ r` on the window.
pub fn is_primitive_even(r: &EvenOp) -> Result<bool> {
    let one = EvenOp::pure(FnZZ::constant(1), KbuElem::one(r.trunc())?, r.window());
    let lhs = op_coadd(r);
    let rhs = op_outer(r, &one)?.add(&op_outer(&one, r)?)?;
    Ok(lhs == rhs)
}

/// Verifies looping axioms (1), (3), (4) on the generator corpus and (2)
/// through the action on the suspended split model.
pub fn check_looping_axioms(trunc: u32, window: Window) -> Result<Report> {
    let basis = indicator_basis(window);
    let mut gens = Vec::new();
    for f in &basis {
        for k in 1..=trunc {
            gens.push((f.clone(), k, generator_op(f.clone(), k, trunc, window)?));
        }
    }

    let mut ax1 = Property::new("axiom-1");
    for (i, (f, k, a)) in gens.iter().enumerate() {
        for (g, l, b) in &gens[i..] {
            let r = loop_even(&a.mul(b)?);
            ax1.record_result(r.map(|o| o.is_zero()), || format!("Ω(({f}⊗λ{k})·({g}⊗λ{l})) ≠ 0"));
        }
        let r = loop_even(a);
        ax1.record_result(r.map(|o| o.ext.terms().keys().all(|w| w.len() == 1)), || format!("Ω({f}⊗λ{k}) is not primitive"));
    }
    for k in 1..=trunc {
        let r = loop_odd(&OddOp::generator(k, trunc)?, window);
        ax1.record_result(r.and_then(|e| is_primitive_even(&e)), || format!("Ω(l{k}) is not primitive"));
        let r = OddOp::generator(1, trunc)?.wedge(&OddOp::generator(k, trunc)?);
        ax1.record_result(r.and_then(|w| loop_odd(&w, window)).map(|e| e.summands().iter().all(|(_, x)| x.is_zero())), || {
            format!("Ω(l1∧l{k}) ≠ 0")
        });
    }

    let mut ax3 = Property::new("axiom-3");
    let small: Vec<&(FnZZ, u32, EvenOp)> = gens.iter().collect();
    for (f, i, r) in &small {
        for (g, j, s) in &small {
            if i * j > trunc {
                continue;
            }
            let lhs = compose_even(r, s).and_then(|rs| loop_even(&rs));
            let rhs = loop_even(r).and_then(|a| loop_even(s).and_then(|b| compose_odd(&a, &b)));
            let ok = match (lhs, rhs) {
                (Ok(a), Ok(b)) => Ok(a == b),
                (Err(e), _) | (_, Err(e)) => Err(e),
            };
            ax3.record_result(ok, || format!("Ω(({f}⊗λ{i})∘({g}⊗λ{j}))"));
        }
    }
    for i in 1..=trunc {
        for j in 1..=trunc / i {
            let ok = (|| -> Result<bool> {
                let li = OddOp::generator(i, trunc)?;
                let lj = OddOp::generator(j, trunc)?;
                let lhs = loop_odd(&compose_odd(&li, &lj)?, window)?;
                let rhs = compose_even(&loop_odd(&li, window)?, &loop_odd(&lj, window)?)?;
                Ok(lhs.equiv(&rhs))
            })();
            ax3.record_result(ok, || format!("Ω(l{i}∘l{j})"));
        }
    }

    let mut ax4 = Property::new("axiom-4");
    let id = identity_op(trunc, window)?;
    let l1 = OddOp::generator(1, trunc)?;
    ax4.record_result(loop_even(&id).map(|o| o == l1), || "Ω(ι₀) ≠ l¹".into());
    let linear = EvenOp::pure(FnZZ::constant(1), KbuElem::generator(1, trunc)?, window);
    ax4.record_result(loop_odd(&l1, window).map(|e| e.equiv(&linear)), || "Ω(l¹) ≠ 1⊗λ¹ι".into());

    let mut ax2 = Property::new("axiom-2");
    let model = LambdaRingModel::suspended(2);
    let xs = ["x1", "x1 + x2 - 1", "2*x2", "x1*x2 - x2 + 1"];
    let y0s = ["x1 - 1", "x1*x2 - x2", "2*x2 - x1 - 1"];
    for f in [FnZZ::constant(1), FnZZ::chi(0), FnZZ::chi(1), FnZZ::chi(2)] {
        for k in 1..=trunc.min(3) {
            let r = generator_op(f.clone(), k, trunc, window)?;
            for x in xs {
                for y0 in y0s {
                    let ok = axiom2_instance(&r, &model, &x.parse()?, &y0.parse()?);
                    ax2.record_result(ok, || format!("{f}⊗λ{k} on ({x})·u·({y0})"));
                }
            }
        }
    }
    Ok(Report::new("looping", vec![ax1, ax2, ax3, ax4]))
}

/// Axiom (2) on one instance: the odd class `u·y0` (with `ε(y0) = 0`)
/// multiplied by an even class `x`. The `u`-coefficient of `r(x·u·y0)` must
/// equal `Σ r_[1](x) · (Ω r_[2])(u·y0)`, where an odd operation acts on `u·y0`
/// through its loop, `(Ω s)(u·y0) = u · (Ω Ω s)(y0)`.
pub fn axiom2_instance(r: &EvenOp, model: &LambdaRingModel, x: &IntPoly, y0: &IntPoly) -> Result<bool> {
    let u = IntPoly::var(Var::u());
    let lhs = act(r, model, &model.mul(&model.mul(x, &u), y0))?;
    let lhs_u = u_coefficient(&lhs);
    let ex = model.augmentation(x);
    let split = op_comult(r)?;
    let mut rhs = IntPoly::zero();
    let trunc = r.trunc();
    let window = r.window();
    for ((i, a, j, b), c) in split.terms() {
        if BigInt::from(*i) != ex {
            continue;
        }
        let left = EvenOp::pure(FnZZ::chi(*i), KbuElem::new(IntPoly::monomial(a.clone(), 1), trunc)?, window);
        let right = EvenOp::pure(FnZZ::chi(*j), KbuElem::new(IntPoly::monomial(b.clone(), 1), trunc)?, window);
        let eps = op_cozero(&right);
        let reduced = right.sub(&EvenOp::pure(FnZZ::constant(1), KbuElem::constant(eps, trunc)?, window))?;
        let odd = loop_even(&reduced)?;
        if odd.is_zero() {
            continue;
        }
        let back = loop_odd(&odd, window)?;
        let term = model.mul(&act(&left, model, x)?, &act(&back, model, y0)?);
        rhs = rhs + term.scale(c);
    }
    Ok(model.reduce(&lhs_u) == model.reduce(&rhs))
}

fn u_coefficient(p: &IntPoly) -> IntPoly {
    let mut out = IntPoly::zero();
    for (m, c) in p.terms() {
        if m.exponent(Var::u()) == 1 {
            out.add_term(Monomial::from_pairs(m.pairs().iter().filter(|(v, _)| v.family != Family::U).copied()), c.clone());
        }
    }
    out
}

/// The two defining relations of the looping ideal, for `p ≤ p_max` and
/// every indicator on the window.
pub fn main_relations_check(p_max: u32, trunc: u32, window: Window) -> Result<Report> {
    if p_max > trunc {
        return Err(Error::TruncationExceeded { needed: p_max, trunc });
    }
    let mut r1 = Property::new("relation-1");
    let mut r2 = Property::new("relation-2");
    let mut fs = indicator_basis(window);
    fs.push(FnZZ::Id);
    for p in 1..=p_max {
        let base = loop_even(&generator_op(FnZZ::constant(1), p, trunc, window)?)?;
        let reference = double_loop_reference(p, trunc)?;
        for f in &fs {
            let f0 = f.eval(&BigInt::zero());
            let r = generator_op(f.clone(), p, trunc, window)?;
            let once = loop_even(&r);
            r1.record_result(once.as_ref().map(|o| *o == base.scale(&f0)).map_err(|e| e.to_string()), || {
                format!("Ω({f}⊗λ{p})")
            });
            let expected = EvenOp::pure(FnZZ::Const(f0.clone()), reference.clone(), window);
            let twice = once.and_then(|o| loop_odd(&o, window));
            r2.record_result(twice.map(|t| t.equiv(&expected)), || format!("Ω²({f}⊗λ{p})"));
        }
    }
    Ok(Report::new("main-relations", vec![r1, r2]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Even,
    Odd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartElem {
    Even(EvenOp),
    Odd(OddOp),
}

impl fmt::Display for PartElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartElem::Even(e) => e.fmt(f),
            PartElem::Odd(o) => o.fmt(f),
        }
    }
}

/// The augmentation ideal, primitives and indecomposables of one part.
#[derive(Debug, Clone)]
pub struct AugmentationView {
    pub part: Part,
    pub primitives: Vec<PartElem>,
    pub indecomposables: Vec<PartElem>,
}

impl AugmentationView {
    /// Membership in `IP = ker ε⁺`.
    pub fn in_ip(&self, x: &PartElem) -> bool {
        match x {
            PartElem::Even(r) => op_cozero(r).is_zero(),
            PartElem::Odd(o) => o.ext.unit_part().is_zero(),
        }
    }
}

/// Even part: primitives `ι ⊗ 1` and `1 ⊗ ψᵏ` (each verified), indecomposables
/// `1 ⊗ λᵏι`. Odd part: `lᵏ` for both.
pub fn augmentation_view(part: Part, trunc: u32, window: Window) -> Result<AugmentationView> {
    match part {
        Part::Even => {
            let mut primitives = vec![EvenOp::pure(FnZZ::Id, KbuElem::one(trunc)?, window)];
            for k in 1..=trunc {
                primitives.push(EvenOp::pure(FnZZ::constant(1), KbuElem::new(newton_psi(k)?, trunc)?, window));
            }
            for p in &primitives {
                if !is_primitive_even(p)? {
                    return Err(Error::Unsupported(format!("{p} failed the primitivity check")));
                }
            }
            let indecomposables = (1..=trunc)
                .map(|k| generator_op(FnZZ::constant(1), k, trunc, window).map(PartElem::Even))
                .collect::<Result<_>>()?;
            Ok(AugmentationView { part, primitives: primitives.into_iter().map(PartElem::Even).collect(), indecomposables })
        }
        Part::Odd => {
            let gens: Vec<PartElem> = (1..=trunc)
                .map(|k| OddOp::generator(k, trunc).map(PartElem::Odd))
                .collect::<Result<_>>()?;
            Ok(AugmentationView { part, primitives: gens.clone(), indecomposables: gens })
        }
    }
}

/// Whether a K(BU) element is primitive for `Δ⁺`.
pub fn kbu_is_primitive(x: &KbuElem) -> Result<bool> {
    is_primitive_kbu(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: u32 = 4;

    fn w(n: u32) -> Window {
        Window::new(n).unwrap()
    }

    fn l(k: u32) -> OddOp {
        OddOp::generator(k, N).unwrap()
    }

    fn k(s: &str) -> KbuElem {
        KbuElem::new(s.parse().unwrap(), N).unwrap()
    }

    fn pure(f: FnZZ, x: &str) -> EvenOp {
        EvenOp::pure(f, k(x), w(3))
    }

    #[test]
    fn loop_even_examples() {
        for i in 1..=N {
            assert_eq!(loop_even(&pure(FnZZ::constant(1), &format!("λ{i}"))).unwrap(), l(i));
        }
        assert!(loop_even(&pure(FnZZ::Id, "1")).unwrap().is_zero());
        assert!(loop_even(&pure(FnZZ::constant(1), "λ1*λ2")).unwrap().is_zero());
        assert!(matches!(loop_even(&pure(FnZZ::constant(1), "1")), Err(Error::NotAugmented(_))));
    }

    #[test]
    fn loop_odd_examples() {
        assert!(loop_odd(&l(1), w(3)).unwrap().equiv(&pure(FnZZ::constant(1), "λ1")));
        assert!(loop_odd(&l(2), w(3)).unwrap().equiv(&pure(FnZZ::constant(1), "2*λ2 - λ1^2")));
        assert!(loop_odd(&l(1).wedge(&l(2)).unwrap(), w(3)).unwrap().indicator_map().is_empty());
        assert!(matches!(loop_odd(&OddOp::unit(1, N).unwrap(), w(3)), Err(Error::NotAugmented(_))));
    }

    #[test]
    fn compose_odd_examples() {
        for i in 1..=N {
            assert_eq!(compose_odd(&l(1), &l(i)).unwrap(), l(i));
            assert_eq!(compose_odd(&l(i), &l(1)).unwrap(), l(i));
        }
        assert_eq!(compose_odd(&l(2), &l(2)).unwrap(), l(4).scale(&BigInt::from(-1)));
        let w12 = l(1).wedge(&l(2)).unwrap();
        assert_eq!(compose_odd(&w12, &l(1)).unwrap(), w12);
        assert!(matches!(compose_odd(&l(3), &l(2)), Err(Error::TruncationExceeded { needed: 6, trunc: 4 })));
        assert!(matches!(compose_odd(&l(1), &w12), Err(Error::Unsupported(_))));
        let unital = l(1).add(&OddOp::unit(1, N).unwrap()).unwrap();
        assert!(matches!(compose_odd(&l(1), &unital), Err(Error::NotReduced(_))));
    }

    #[test]
    fn double_loop_reference_agrees() {
        for p in 1..=N {
            assert_eq!(double_loop_reference(p, N).unwrap(), loop_generator_image(p, N).unwrap());
        }
        assert_eq!(double_loop_reference(2, N).unwrap(), k("2*λ2 - λ1^2"));
    }

    #[test]
    fn main_relation_examples() {
        assert!(loop_even(&pure(FnZZ::chi(3), "λ1")).unwrap().is_zero());
        let twice = loop_odd(&loop_even(&pure(FnZZ::chi(0), "λ1")).unwrap(), w(3)).unwrap();
        assert!(twice.equiv(&pure(FnZZ::constant(1), "λ1")));
        let report = main_relations_check(3, N, w(2)).unwrap();
        assert!(report.passed, "{}", report.render_text());
    }

    #[test]
    fn looping_axioms_hold() {
        let report = check_looping_axioms(N, w(2)).unwrap();
        assert!(report.passed, "{}", report.render_text());
    }

    #[test]
    fn axiom_three_on_lambda_two() {
        let r = pure(FnZZ::constant(1), "λ2");
        let lhs = loop_even(&compose_even(&r, &r).unwrap()).unwrap();
        assert_eq!(lhs, compose_odd(&l(2), &l(2)).unwrap());
        let sq = r.mul(&pure(FnZZ::constant(1), "λ1")).unwrap();
        assert!(loop_even(&pure(FnZZ::constant(1), "λ1").mul(&pure(FnZZ::constant(1), "λ1")).unwrap()).unwrap().is_zero());
        assert!(loop_even(&sq).unwrap().is_zero());
    }

    #[test]
    fn augmentation_views() {
        let even = augmentation_view(Part::Even, N, w(2)).unwrap();
        assert_eq!(even.primitives.len(), N as usize + 1);
        assert!(kbu_is_primitive(&KbuElem::generator(1, N).unwrap()).unwrap());
        assert!(kbu_is_primitive(&k("λ1^2 - 2*λ2")).unwrap());
        assert!(!kbu_is_primitive(&KbuElem::generator(2, N).unwrap()).unwrap());
        assert!(even.in_ip(&PartElem::Even(pure(FnZZ::constant(1), "λ2"))));
        assert!(!even.in_ip(&PartElem::Even(pure(FnZZ::constant(1), "1"))));
        let odd = augmentation_view(Part::Odd, N, w(2)).unwrap();
        assert_eq!(odd.indecomposables.len(), N as usize);
        assert!(!odd.in_ip(&PartElem::Odd(OddOp::unit(2, N).unwrap())));
    }

    #[test]
    fn graded_identities() {
        let i0 = GradedOp::iota(0, N, w(2)).unwrap();
        assert_eq!(loop_even(&i0.even).unwrap(), GradedOp::iota(1, N, w(2)).unwrap().odd);
        assert_eq!(i0.bidegrees(), [(0, 0), (-1, -1)]);
    }
}
