//! The biring K(BU) = ℤ[[λ¹ι, λ²ι, …]] at a finite filtration level.
//!
//! An element at level `N` is a polynomial in `λ_1..λ_N`; the quotient
//! drops every `λ_m` with `m > N`. Composition `x ∘ y` is computed by
//! substituting `λ_k ↦ λ^k(y)`, where the sequence `λ^k(y)` is built from
//! the generators (`λ^i(λ_j) = P_{i,j}`) with the additive and
//! multiplicative rules of a λ-ring.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Family, IntPoly, Monomial, Polynomials, Ring, Var};
use crate::symmetric::{lambda_of_integer, universal_pij_upto, universal_pk};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KbuElem {
    poly: IntPoly,
    trunc: u32,
}

impl KbuElem {
    /// Checks that `poly` only involves `λ_1..λ_trunc`.
    pub fn new(poly: IntPoly, trunc: u32) -> Result<KbuElem> {
        check_trunc(trunc)?;
        for v in poly.variables() {
            if v.family != Family::Lambda {
                return Err(Error::InvalidIndex(format!("{v} is not a λ variable")));
            }
            if v.index > trunc {
                return Err(Error::TruncationExceeded { needed: v.index, trunc });
            }
        }
        Ok(KbuElem { poly, trunc })
    }

    /// Projects `poly` to level `trunc`, dropping terms with larger indices.
    pub fn truncated(poly: &IntPoly, trunc: u32) -> Result<KbuElem> {
        check_trunc(trunc)?;
        KbuElem::new(poly.filter(|m| m.max_index(Family::Lambda) <= trunc), trunc)
    }

    pub(crate) fn raw(poly: IntPoly, trunc: u32) -> KbuElem {
        debug_assert!(poly.max_index(Family::Lambda) <= trunc);
        KbuElem { poly, trunc }
    }

    /// `λᵏι`, which is zero when `k > trunc`.
    pub fn generator(k: u32, trunc: u32) -> Result<KbuElem> {
        check_trunc(trunc)?;
        if k == 0 {
            return Err(Error::InvalidIndex("λ^0ι is the unit, not a generator".into()));
        }
        Ok(KbuElem::raw(if k <= trunc { IntPoly::var(Var::lambda(k)) } else { IntPoly::zero() }, trunc))
    }

    pub fn constant(c: impl Into<BigInt>, trunc: u32) -> Result<KbuElem> {
        check_trunc(trunc)?;
        Ok(KbuElem::raw(IntPoly::constant(c), trunc))
    }

    pub fn one(trunc: u32) -> Result<KbuElem> {
        KbuElem::constant(1, trunc)
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// The filtration projection to level `m ≤ trunc`.
    pub fn project(&self, m: u32) -> Result<KbuElem> {
        if m > self.trunc {
            return Err(Error::TruncationMismatch(self.trunc, m));
        }
        KbuElem::truncated(&self.poly, m)
    }

    fn same_level(&self, other: &KbuElem) -> Result<()> {
        if self.trunc == other.trunc {
            Ok(())
        } else {
            Err(Error::TruncationMismatch(self.trunc, other.trunc))
        }
    }

    pub fn add(&self, other: &KbuElem) -> Result<KbuElem> {
        self.same_level(other)?;
        Ok(KbuElem::raw(&self.poly + &other.poly, self.trunc))
    }

    pub fn sub(&self, other: &KbuElem) -> Result<KbuElem> {
        self.same_level(other)?;
        Ok(KbuElem::raw(&self.poly - &other.poly, self.trunc))
    }

    pub fn mul(&self, other: &KbuElem) -> Result<KbuElem> {
        self.same_level(other)?;
        Ok(KbuElem::raw(&self.poly * &other.poly, self.trunc))
    }

    pub fn scale(&self, c: &BigInt) -> KbuElem {
        KbuElem::raw(self.poly.scale(c), self.trunc)
    }

    pub fn neg(&self) -> KbuElem {
        KbuElem::raw(-&self.poly, self.trunc)
    }

    pub fn pow(&self, e: u32) -> KbuElem {
        KbuElem::raw(self.poly.pow(e), self.trunc)
    }

    /// Applies the ring map determined by the images of the generators.
    fn ring_map(&self, mut image: impl FnMut(u32) -> IntPoly) -> KbuElem {
        let out = self.poly.substitute(|v| Some(image(v.index)));
        KbuElem::raw(out.filter(|m| m.max_index(Family::Lambda) <= self.trunc), self.trunc)
    }

    fn tensor_map(&self, arity: usize, image: impl FnMut(u32) -> TensorTerms) -> KbuTensor {
        let ring = TensorRing { arity };
        let mut image = image;
        let terms = self.poly.eval_in(&ring, |v| image(v.index));
        KbuTensor { trunc: self.trunc, arity, terms }
    }
}

impl fmt::Display for KbuElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

fn check_trunc(trunc: u32) -> Result<()> {
    if trunc == 0 {
        Err(Error::InvalidIndex("truncation level must be positive".into()))
    } else {
        Ok(())
    }
}

/// `ε⁺`: every generator to zero.
pub fn cozero(x: &KbuElem) -> BigInt {
    x.poly.constant_term()
}

/// `Δ⁺(λᵏι) = Σ_{i+j=k} λⁱι ⊗ λʲι`, extended multiplicatively.
pub fn coadd(x: &KbuElem) -> KbuTensor {
    x.tensor_map(2, |k| {
        let mut t = TensorTerms::new();
        for i in 0..=k {
            t.insert(vec![lambda_mono(i), lambda_mono(k - i)], BigInt::one());
        }
        t
    })
}

/// `Δ×(λᵏι) = P_k(λ ⊗ 1; 1 ⊗ λ)`, extended multiplicatively.
pub fn comult(x: &KbuElem) -> KbuTensor {
    x.tensor_map(2, |k| {
        let pk = universal_pk(k).expect("generator index is positive");
        let mut t = TensorTerms::new();
        for (m, c) in pk.terms() {
            let left = Monomial::from_pairs(m.pairs().iter().filter(|(v, _)| v.family == Family::X).map(|&(v, e)| (Var::lambda(v.index), e)));
            let right = Monomial::from_pairs(m.pairs().iter().filter(|(v, _)| v.family == Family::Y).map(|&(v, e)| (Var::lambda(v.index), e)));
            t.insert(vec![left, right], c.clone());
        }
        t
    })
}

/// The co-additive inverse: `Σ_{i+j=k} λⁱι σ(λʲι) = 0` for `k ≥ 1`.
pub fn antipode(x: &KbuElem) -> KbuElem {
    let n = x.poly.max_index(Family::Lambda);
    let mut sigma = vec![IntPoly::one()];
    for k in 1..=n {
        let mut s = IntPoly::zero();
        for i in 1..=k {
            s = s - &IntPoly::var(Var::lambda(i)) * &sigma[(k - i) as usize];
        }
        sigma.push(s);
    }
    x.ring_map(|k| sigma[k as usize].clone())
}

/// `γ(κ)`: precomposition with multiplication by `κ`.
pub fn colinear(kappa: &BigInt, x: &KbuElem) -> KbuElem {
    let n = x.poly.max_index(Family::Lambda);
    let images: Vec<IntPoly> = (0..=n)
        .map(|k| {
            if k == 0 {
                return IntPoly::one();
            }
            universal_pk(k).expect("k >= 1").substitute(|v| {
                Some(match v.family {
                    Family::X => IntPoly::constant(lambda_of_integer(kappa, v.index)),
                    _ => IntPoly::var(Var::lambda(v.index)),
                })
            })
        })
        .collect();
    x.ring_map(|k| images[k as usize].clone())
}

/// `x ∘ y` for `y` in the augmentation ideal.
pub fn compose_kbu(x: &KbuElem, y: &KbuElem) -> Result<KbuElem> {
    x.same_level(y)?;
    let c = cozero(y);
    if !c.is_zero() {
        return Err(Error::NotReduced(c));
    }
    let seq = lambda_sequence(&y.poly, x.poly.max_index(Family::Lambda), x.trunc);
    Ok(x.ring_map(|k| seq[k as usize].clone()))
}

/// `[1, λ¹(y), …, λˡᵉⁿ(y)]` modulo `λ_m` for `m > n`.
pub(crate) fn lambda_sequence(y: &IntPoly, len: u32, n: u32) -> Vec<IntPoly> {
    let mut seq = unit_sequence(len);
    for (m, c) in y.terms() {
        let term = scaled_sequence(c, &monomial_sequence(m, len, n), n);
        seq = convolve(&seq, &term, n);
    }
    seq
}

fn unit_sequence(len: u32) -> Vec<IntPoly> {
    let mut s = vec![IntPoly::zero(); len as usize + 1];
    s[0] = IntPoly::one();
    s
}

fn truncate(p: IntPoly, n: u32) -> IntPoly {
    if p.max_index(Family::Lambda) <= n {
        p
    } else {
        p.filter(|m| m.max_index(Family::Lambda) <= n)
    }
}

fn convolve(a: &[IntPoly], b: &[IntPoly], n: u32) -> Vec<IntPoly> {
    (0..a.len())
        .map(|k| {
            let mut s = IntPoly::zero();
            for i in 0..=k {
                if !a[i].is_zero() && !b[k - i].is_zero() {
                    s = s + &a[i] * &b[k - i];
                }
            }
            truncate(s, n)
        })
        .collect()
}

/// `λ^k(a·b) = P_k(λ(a); λ(b))`.
fn product_sequence(a: &[IntPoly], b: &[IntPoly], n: u32) -> Vec<IntPoly> {
    let mut out = unit_sequence(a.len() as u32 - 1);
    for k in 1..a.len() {
        let pk = universal_pk(k as u32).expect("k >= 1");
        let p = pk.eval_in(&Polynomials, |v| match v.family {
            Family::X => a[v.index as usize].clone(),
            _ => b[v.index as usize].clone(),
        });
        out[k] = truncate(p, n);
    }
    out
}

/// `λ^k(c·m) = P_k(λ(c); λ(m))`.
fn scaled_sequence(c: &BigInt, seq: &[IntPoly], n: u32) -> Vec<IntPoly> {
    if c.is_one() {
        return seq.to_vec();
    }
    let ints: Vec<IntPoly> = (0..seq.len() as u32).map(|i| IntPoly::constant(lambda_of_integer(c, i))).collect();
    product_sequence(&ints, seq, n)
}

type SequenceCache = Mutex<HashMap<(u32, u32, u32), Arc<Vec<IntPoly>>>>;

fn generator_cache() -> &'static SequenceCache {
    static CACHE: OnceLock<SequenceCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn generator_sequence(j: u32, len: u32, n: u32) -> Arc<Vec<IntPoly>> {
    if let Some(s) = generator_cache().lock().unwrap().get(&(j, len, n)) {
        return s.clone();
    }
    let mut s = unit_sequence(len);
    for i in 1..=len {
        s[i as usize] = (*universal_pij_upto(i, j, n)).clone();
    }
    let s = Arc::new(s);
    generator_cache().lock().unwrap().insert((j, len, n), s.clone());
    s
}

fn monomial_sequence(m: &Monomial, len: u32, n: u32) -> Vec<IntPoly> {
    let mut acc: Option<Vec<IntPoly>> = None;
    for &(v, e) in m.pairs() {
        let g = generator_sequence(v.index, len, n);
        for _ in 0..e {
            acc = Some(match acc {
                None => g.to_vec(),
                Some(a) => product_sequence(&a, &g, n),
            });
        }
    }
    // The empty monomial is the unit 1, whose λ-sequence is (1, 1, 0, 0, …).
    acc.unwrap_or_else(|| {
        let mut s = unit_sequence(len);
        if len >= 1 {
            s[1] = IntPoly::one();
        }
        s
    })
}

fn lambda_mono(i: u32) -> Monomial {
    if i == 0 {
        Monomial::one()
    } else {
        Monomial::var(Var::lambda(i))
    }
}

pub(crate) type TensorTerms = BTreeMap<Vec<Monomial>, BigInt>;

/// Tensor powers of the polynomial ring, as sparse maps from tuples of
/// monomials to coefficients.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TensorRing {
    pub arity: usize,
}

pub(crate) fn add_into(t: &mut TensorTerms, key: Vec<Monomial>, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = t.entry(key.clone()).or_default();
    *slot += c;
    if slot.is_zero() {
        t.remove(&key);
    }
}

impl Ring for TensorRing {
    type Elem = TensorTerms;

    fn zero(&self) -> TensorTerms {
        TensorTerms::new()
    }

    fn one(&self) -> TensorTerms {
        self.from_int(&BigInt::one())
    }

    fn from_int(&self, c: &BigInt) -> TensorTerms {
        let mut t = TensorTerms::new();
        add_into(&mut t, vec![Monomial::one(); self.arity], c.clone());
        t
    }

    fn add(&self, a: &TensorTerms, b: &TensorTerms) -> TensorTerms {
        let mut out = a.clone();
        for (k, c) in b {
            add_into(&mut out, k.clone(), c.clone());
        }
        out
    }

    fn mul(&self, a: &TensorTerms, b: &TensorTerms) -> TensorTerms {
        let mut out = TensorTerms::new();
        for (ka, ca) in a {
            for (kb, cb) in b {
                let key = ka.iter().zip(kb).map(|(x, y)| x.mul(y)).collect();
                add_into(&mut out, key, ca * cb);
            }
        }
        out
    }
}

/// A finite sum of pure tensors of K(BU) elements at a common level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KbuTensor {
    trunc: u32,
    arity: usize,
    terms: TensorTerms,
}

impl KbuTensor {
    pub fn zero(arity: usize, trunc: u32) -> KbuTensor {
        KbuTensor { trunc, arity, terms: TensorTerms::new() }
    }

    /// `x_1 ⊗ x_2 ⊗ ⋯`.
    pub fn pure(factors: &[&KbuElem]) -> Result<KbuTensor> {
        let trunc = factors.first().map(|f| f.trunc).ok_or_else(|| Error::InvalidIndex("empty tensor".into()))?;
        let ring = TensorRing { arity: factors.len() };
        let mut acc = ring.one();
        for (slot, f) in factors.iter().enumerate() {
            f.same_level(factors[0])?;
            let mut t = TensorTerms::new();
            for (m, c) in f.poly.terms() {
                let mut key = vec![Monomial::one(); factors.len()];
                key[slot] = m.clone();
                t.insert(key, c.clone());
            }
            acc = ring.mul(&acc, &t);
        }
        Ok(KbuTensor { trunc, arity: factors.len(), terms: acc })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Monomial>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &KbuTensor) -> Result<KbuTensor> {
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        if self.arity != other.arity {
            return Err(Error::InvalidIndex(format!("tensor arities {} and {}", self.arity, other.arity)));
        }
        let terms = TensorRing { arity: self.arity }.add(&self.terms, &other.terms);
        Ok(KbuTensor { terms, ..self.clone() })
    }

    /// Normal form of a two-fold tensor: one right factor per distinct
    /// left monomial.
    pub fn left_pairs(&self) -> Vec<(Monomial, KbuElem)> {
        let mut grouped: BTreeMap<Monomial, IntPoly> = BTreeMap::new();
        for (k, c) in &self.terms {
            let rest = IntPoly::monomial(Monomial::from_pairs(k[1..].iter().flat_map(|m| m.pairs().iter().copied())), c.clone());
            let slot = grouped.entry(k[0].clone()).or_default();
            *slot = &*slot + &rest;
        }
        grouped.into_iter().map(|(m, p)| (m, KbuElem::raw(p, self.trunc))).collect()
    }

    /// Replaces factor `slot` of every term by the tensor `f(monomial)`.
    pub fn expand_factor(&self, slot: usize, mut f: impl FnMut(&KbuElem) -> KbuTensor) -> KbuTensor {
        let mut out = TensorTerms::new();
        let mut arity = self.arity;
        for (k, c) in &self.terms {
            let image = f(&KbuElem::raw(IntPoly::monomial(k[slot].clone(), 1), self.trunc));
            arity = self.arity - 1 + image.arity;
            for (ik, ic) in &image.terms {
                let mut key = Vec::with_capacity(arity);
                key.extend_from_slice(&k[..slot]);
                key.extend(ik.iter().cloned());
                key.extend_from_slice(&k[slot + 1..]);
                add_into(&mut out, key, c * ic);
            }
        }
        KbuTensor { trunc: self.trunc, arity, terms: out }
    }

    /// Applies `f` to factor `slot` of every term.
    pub fn map_factor(&self, slot: usize, mut f: impl FnMut(&KbuElem) -> KbuElem) -> KbuTensor {
        self.expand_factor(slot, |x| {
            let y = f(x);
            KbuTensor::pure(&[&y]).expect("non-empty")
        })
    }

    /// Multiplies the factors together.
    pub fn contract(&self) -> KbuElem {
        let mut p = IntPoly::zero();
        for (k, c) in &self.terms {
            let m = k.iter().fold(Monomial::one(), |acc, x| acc.mul(x));
            p.add_term(m, c.clone());
        }
        KbuElem::raw(p, self.trunc)
    }
}

impl fmt::Display for KbuTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let parts: Vec<String> = k.iter().map(|m| m.to_string()).collect();
            f.write_str(&parts.join("⊗"))?;
        }
        Ok(())
    }
}
