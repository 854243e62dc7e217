//! Sparse multivariate polynomials over the integers.
//!
//! Variables are tagged with a [`Family`] and a positive index, so the same
//! carrier holds the universal polynomials (`x`, `y`, `e` families), elements
//! of the truncated K(BU) (`λ`), the finite-rank models (`β`, `μ`, `u`) and
//! the line variables used by the splitting principle (`a`, `b`).
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`]; the derived ordering
//! on monomials compares `(family, index, exponent)` triples lexicographically,
//! which fixes the order of every serialised form.

mod json;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use json::{PolyJson, TermJson, FactorJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    X,
    Y,
    E,
    Lambda,
    Beta,
    Mu,
    L,
    A,
    B,
    U,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::X,
        Family::Y,
        Family::E,
        Family::Lambda,
        Family::Beta,
        Family::Mu,
        Family::L,
        Family::A,
        Family::B,
        Family::U,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Family::X => "x",
            Family::Y => "y",
            Family::E => "e",
            Family::Lambda => "λ",
            Family::Beta => "β",
            Family::Mu => "μ",
            Family::L => "l",
            Family::A => "a",
            Family::B => "b",
            Family::U => "u",
        }
    }

    /// Accepts the canonical symbol plus ASCII spellings (`L`, `lambda`,
    /// `beta`, `mu`) for the Greek families.
    pub fn from_symbol(s: &str) -> Option<Family> {
        Some(match s {
            "x" => Family::X,
            "y" => Family::Y,
            "e" => Family::E,
            "λ" | "L" | "lambda" => Family::Lambda,
            "β" | "beta" => Family::Beta,
            "μ" | "mu" => Family::Mu,
            "l" => Family::L,
            "a" => Family::A,
            "b" => Family::B,
            "u" => Family::U,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub family: Family,
    pub index: u32,
}

impl Var {
    pub const fn new(family: Family, index: u32) -> Var {
        Var { family, index }
    }
    pub const fn x(i: u32) -> Var {
        Var::new(Family::X, i)
    }
    pub const fn y(i: u32) -> Var {
        Var::new(Family::Y, i)
    }
    pub const fn e(i: u32) -> Var {
        Var::new(Family::E, i)
    }
    pub const fn lambda(i: u32) -> Var {
        Var::new(Family::Lambda, i)
    }
    pub const fn u() -> Var {
        Var::new(Family::U, 1)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family == Family::U && self.index == 1 {
            f.write_str("u")
        } else {
            write!(f, "{}{}", self.family.symbol(), self.index)
        }
    }
}

/// A product of variables with positive exponents, sorted by variable.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn var_pow(v: Var, e: u32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary `(var, exponent)` pairs, merging
    /// repeated variables and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Monomial {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, family: Family) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| v.family == family)
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn max_index(&self, family: Family) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| v.family == family)
            .map(|(v, _)| v.index)
            .max()
            .unwrap_or(0)
    }

    /// Sum of `index * exponent` over the variables of one family.
    pub fn weight(&self, family: Family) -> u32 {
        self.0
            .iter()
            .filter(|(v, _)| v.family == family)
            .map(|&(v, e)| v.index * e)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Applies `f` to every variable; pairs mapped to the same variable merge.
    pub fn rename(&self, mut f: impl FnMut(Var) -> Var) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (n, (v, e)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A commutative ring in which polynomials can be evaluated.
pub trait Ring {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, c: &BigInt) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn scale(&self, a: &Self::Elem, c: &BigInt) -> Self::Elem {
        self.mul(a, &self.from_int(c))
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }
}

pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, c: &BigInt) -> BigInt {
        c.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
}

/// The untruncated polynomial ring itself.
pub struct Polynomials;

impl Ring for Polynomials {
    type Elem = IntPoly;
    fn zero(&self) -> IntPoly {
        IntPoly::zero()
    }
    fn one(&self) -> IntPoly {
        IntPoly::one()
    }
    fn from_int(&self, c: &BigInt) -> IntPoly {
        IntPoly::constant(c.clone())
    }
    fn add(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a + b
    }
    fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a * b
    }
    fn scale(&self, a: &IntPoly, c: &BigInt) -> IntPoly {
        a.scale(c)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly::default()
    }

    pub fn one() -> IntPoly {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> IntPoly {
        IntPoly::monomial(Monomial::one(), c)
    }

    pub fn var(v: Var) -> IntPoly {
        IntPoly::monomial(Monomial::var(v), 1)
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> IntPoly {
        let mut p = IntPoly::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> IntPoly {
        let mut p = IntPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, removing the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, BigInt)> {
        self.terms.into_iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        Polynomials.pow(self, e)
    }

    /// Keeps only the terms whose monomial satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> IntPoly {
        IntPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn rename(&self, mut f: impl FnMut(Var) -> Var) -> IntPoly {
        IntPoly::from_terms(self.terms.iter().map(|(m, c)| (m.rename(&mut f), c.clone())))
    }

    pub fn max_index(&self, family: Family) -> u32 {
        self.terms.keys().map(|m| m.max_index(family)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Evaluates the polynomial in `ring`, sending each variable to `image(v)`.
    pub fn eval_in<R: Ring>(&self, ring: &R, mut image: impl FnMut(Var) -> R::Elem) -> R::Elem {
        let mut powers: BTreeMap<(Var, u32), R::Elem> = BTreeMap::new();
        let mut bases: BTreeMap<Var, R::Elem> = BTreeMap::new();
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut term = ring.from_int(c);
            for &(v, e) in m.pairs() {
                if !powers.contains_key(&(v, e)) {
                    let base = bases.entry(v).or_insert_with(|| image(v)).clone();
                    powers.insert((v, e), ring.pow(&base, e));
                }
                term = ring.mul(&term, &powers[&(v, e)]);
            }
            acc = ring.add(&acc, &term);
        }
        acc
    }

    /// Substitutes polynomials for variables; unmapped variables are kept.
    pub fn substitute(&self, mut image: impl FnMut(Var) -> Option<IntPoly>) -> IntPoly {
        self.eval_in(&Polynomials, |v| image(v).unwrap_or_else(|| IntPoly::var(v)))
    }

    pub fn eval_integers(&self, mut value: impl FnMut(Var) -> BigInt) -> BigInt {
        self.eval_in(&Integers, |v| value(v))
    }
}

impl From<Var> for IntPoly {
    fn from(v: Var) -> IntPoly {
        IntPoly::var(v)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (mut big, small) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(mut self, rhs: IntPoly) -> IntPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}
