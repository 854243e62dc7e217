//! Exterior algebras over ℤ on indexed generators.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// An integer combination of exterior monomials `g_{i_1} ∧ ⋯ ∧ g_{i_m}`
/// with `i_1 < ⋯ < i_m`; the empty monomial is the unit.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Exterior {
    terms: BTreeMap<Vec<u32>, BigInt>,
}

/// Sorts `idx` and returns the sign of the sorting permutation, or `None`
/// if an index repeats.
pub fn sort_with_sign(idx: &mut [u32]) -> Option<i8> {
    let mut sign = 1i8;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

impl Exterior {
    pub fn zero() -> Exterior {
        Exterior::default()
    }

    pub fn unit(c: impl Into<BigInt>) -> Exterior {
        let mut e = Exterior::zero();
        e.add_term(Vec::new(), c.into());
        e
    }

    pub fn generator(i: u32) -> Exterior {
        let mut e = Exterior::zero();
        e.add_term(vec![i], BigInt::one());
        e
    }

    /// `c · g_{i_1} ∧ ⋯` for indices in any order.
    pub fn monomial(mut idx: Vec<u32>, c: impl Into<BigInt>) -> Exterior {
        let mut e = Exterior::zero();
        if let Some(sign) = sort_with_sign(&mut idx) {
            e.add_term(idx, c.into() * BigInt::from(sign));
        }
        e
    }

    fn add_term(&mut self, idx: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(idx.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn unit_part(&self) -> BigInt {
        self.terms.get(&Vec::new()).cloned().unwrap_or_default()
    }

    /// Coefficients of the single generators.
    pub fn linear_part(&self) -> BTreeMap<u32, BigInt> {
        self.terms
            .iter()
            .filter(|(k, _)| k.len() == 1)
            .map(|(k, c)| (k[0], c.clone()))
            .collect()
    }

    pub fn max_index(&self) -> u32 {
        self.terms.keys().flat_map(|k| k.iter().copied()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Exterior) -> Exterior {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Exterior) -> Exterior {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Exterior {
        self.scale(&-BigInt::one())
    }

    pub fn scale(&self, c: &BigInt) -> Exterior {
        let mut out = Exterior::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn wedge(&self, other: &Exterior) -> Exterior {
        let mut out = Exterior::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                if let Some(sign) = sort_with_sign(&mut idx) {
                    out.add_term(idx, ca * cb * BigInt::from(sign));
                }
            }
        }
        out
    }

    /// The algebra map sending `g_i` to `image(i)`. Images of generators
    /// are expected to be odd, so the result is again anticommutative.
    pub fn map_generators(&self, mut image: impl FnMut(u32) -> Exterior) -> Exterior {
        let mut cache: BTreeMap<u32, Exterior> = BTreeMap::new();
        let mut out = Exterior::zero();
        for (k, c) in &self.terms {
            let mut term = Exterior::unit(c.clone());
            for &i in k {
                let g = cache.entry(i).or_insert_with(|| image(i)).clone();
                term = term.wedge(&g);
            }
            out = out.add(&term);
        }
        out
    }

    /// Renders with the given generator symbol, e.g. `l1∧l3 - 2*l2`.
    pub fn render(&self, symbol: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            if k.is_empty() {
                let _ = write!(s, "{mag}");
                continue;
            }
            if !mag.is_one() {
                let _ = write!(s, "{mag}*");
            }
            let parts: Vec<String> = k.iter().map(|i| format!("{symbol}{i}")).collect();
            s.push_str(&parts.join("∧"));
        }
        s
    }
}
