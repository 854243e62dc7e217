//! Concrete λ-rings used as action oracles, and the finite-rank models of
//! U(n) and BU(n).
//!
//! Every λ-ring model here is a quotient of `ℤ[x_1..x_m, u]`, where each
//! `x_i` is a line class and `ξ = 1 + u` is one more line class, with
//! `u^p = 0` for some `p` (or no `u` at all). `λ_t` of an element is
//! computed by rewriting it as an integer combination of products of line
//! classes, each of which contributes a factor `(1 + L t)^c`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::Exterior;
use crate::poly::{Family, IntPoly, Monomial, Polynomials, Var};
use crate::symmetric::{lambda_of_integer, universal_pij, universal_pk};

/// Largest `λᵏ` any registered model is asked to supply.
pub const MODEL_LAMBDA_LIMIT: u32 = 16;
/// Largest `ij` for which [`LambdaRingModel::check_axioms`] tests `λⁱλʲ = P_{i,j}`.
pub const COMPOSITION_BOUND: u32 = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaRingModel {
    name: String,
    lines: u32,
    /// `Some(p)` means `u` is present with `u^p = 0`.
    u_order: Option<u32>,
}

impl LambdaRingModel {
    fn new(name: String, lines: u32, u_order: Option<u32>) -> LambdaRingModel {
        LambdaRingModel { name, lines, u_order }
    }

    /// The integers, with `λᵏ(n) = C(n, k)`.
    pub fn integers() -> LambdaRingModel {
        LambdaRingModel::new("integers".into(), 0, None)
    }

    /// `ℤ[u]/(u²)`, the K-theory of the 2-sphere.
    pub fn sphere() -> LambdaRingModel {
        LambdaRingModel::new("sphere".into(), 0, Some(2))
    }

    /// `ℤ[u]/(u^{m+1})` with `1 + u` the tautological line class.
    pub fn projective(m: u32) -> LambdaRingModel {
        LambdaRingModel::new(format!("cp:{m}"), 0, Some(m + 1))
    }

    /// `ℤ[x_1..x_m]` with every `x_i` a line class.
    pub fn split(m: u32) -> LambdaRingModel {
        LambdaRingModel::new(format!("split:{m}"), m, None)
    }

    /// `ℤ[x_1..x_m, u]/(u²)`: the split model smashed with a sphere.
    pub fn suspended(m: u32) -> LambdaRingModel {
        LambdaRingModel::new(format!("susp:{m}"), m, Some(2))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lines(&self) -> u32 {
        self.lines
    }

    pub fn has_u(&self) -> bool {
        self.u_order.is_some()
    }

    /// Checks that `a` only uses this model's variables, and reduces it.
    pub fn element(&self, a: &IntPoly) -> Result<IntPoly> {
        for v in a.variables() {
            let ok = match v.family {
                Family::X => v.index >= 1 && v.index <= self.lines,
                Family::U => v.index == 1 && self.u_order.is_some(),
                _ => false,
            };
            if !ok {
                return Err(Error::InvalidIndex(format!("{v} is not a variable of model {}", self.name)));
            }
        }
        Ok(self.reduce(a))
    }

    pub fn reduce(&self, a: &IntPoly) -> IntPoly {
        match self.u_order {
            Some(p) => a.filter(|m| m.exponent(Var::u()) < p),
            None => a.clone(),
        }
    }

    pub fn add(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a + b
    }

    pub fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        self.reduce(&(a * b))
    }

    /// The rank: every line class goes to 1.
    pub fn augmentation(&self, a: &IntPoly) -> BigInt {
        a.eval_integers(|v| if v.family == Family::X { BigInt::one() } else { BigInt::zero() })
    }

    /// `[λ⁰(a), …, λⁿ(a)]`.
    pub fn lambda_sequence(&self, a: &IntPoly, n: u32) -> Result<Vec<IntPoly>> {
        if n > MODEL_LAMBDA_LIMIT {
            return Err(Error::ModelTruncationExceeded { model: self.name.clone(), needed: n, max: MODEL_LAMBDA_LIMIT });
        }
        let a = self.element(a)?;
        // a = Σ c · x^α ξ^i, with u^j = Σ_i C(j, i) (−1)^{j−i} ξ^i.
        let mut lines: BTreeMap<(Monomial, u32), BigInt> = BTreeMap::new();
        for (m, c) in a.terms() {
            let j = m.exponent(Var::u());
            let xpart = Monomial::from_pairs(m.pairs().iter().filter(|(v, _)| v.family == Family::X).copied());
            for i in 0..=j {
                let sign = if (j - i) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                let k = c * lambda_of_integer(&BigInt::from(j), i) * sign;
                let slot = lines.entry((xpart.clone(), i)).or_default();
                *slot += k;
            }
        }
        let xi = IntPoly::one() + IntPoly::var(Var::u());
        let mut series = vec![IntPoly::zero(); n as usize + 1];
        series[0] = IntPoly::one();
        for ((xm, i), c) in lines {
            if c.is_zero() {
                continue;
            }
            let line = self.reduce(&(&IntPoly::monomial(xm, 1) * &xi.pow(i)));
            // (1 + L t)^c = Σ_k C(c, k) L^k t^k
            let mut factor = Vec::with_capacity(n as usize + 1);
            let mut power = IntPoly::one();
            for k in 0..=n {
                factor.push(power.scale(&lambda_of_integer(&c, k)));
                power = self.mul(&power, &line);
            }
            series = self.series_mul(&series, &factor);
        }
        Ok(series)
    }

    fn series_mul(&self, a: &[IntPoly], b: &[IntPoly]) -> Vec<IntPoly> {
        (0..a.len())
            .map(|k| {
                let mut s = IntPoly::zero();
                for i in 0..=k {
                    if !a[i].is_zero() && !b[k - i].is_zero() {
                        s = s + &a[i] * &b[k - i];
                    }
                }
                self.reduce(&s)
            })
            .collect()
    }

    pub fn lambda(&self, k: u32, a: &IntPoly) -> Result<IntPoly> {
        Ok(self.lambda_sequence(a, k)?.pop().expect("non-empty"))
    }

    /// A random element with small coefficients.
    pub fn sample(&self, rng: &mut impl Rng) -> IntPoly {
        let mut out = IntPoly::constant(rng.gen_range(-3..=3));
        let vars: Vec<Var> = (1..=self.lines).map(Var::x).chain(self.u_order.map(|_| Var::u())).collect();
        if vars.is_empty() {
            return out;
        }
        for _ in 0..rng.gen_range(1..=3) {
            let mut m = Monomial::one();
            for _ in 0..rng.gen_range(1..=2) {
                m = m.mul(&Monomial::var(vars[rng.gen_range(0..vars.len())]));
            }
            let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
            out = out + IntPoly::monomial(m, c);
        }
        self.reduce(&out)
    }

    /// Checks the λ-ring axioms on the given elements for `λᵏ`, `k ≤ kmax`;
    /// the composition axiom `λⁱλʲ = P_{i,j}` is checked for `ij ≤ COMPOSITION_BOUND`.
    pub fn check_axioms(&self, samples: &[IntPoly], kmax: u32) -> std::result::Result<(), (String, String)> {
        let depth = kmax.max((kmax * kmax).min(COMPOSITION_BOUND));
        let seqs: Vec<Vec<IntPoly>> = samples
            .iter()
            .map(|a| self.lambda_sequence(a, depth))
            .collect::<Result<_>>()
            .map_err(|e| ("evaluation".to_string(), e.to_string()))?;
        for (a, s) in samples.iter().zip(&seqs) {
            if !s[0].is_constant() || s[0].constant_term() != BigInt::one() || s[1] != self.reduce(a) {
                return Err(("unit".into(), format!("λ⁰/λ¹ at {a}")));
            }
        }
        for (a, sa) in samples.iter().zip(&seqs) {
            for (b, sb) in samples.iter().zip(&seqs) {
                let sum = self.lambda_sequence(&(a + b), kmax).map_err(|e| ("sum".to_string(), e.to_string()))?;
                let prod = self
                    .lambda_sequence(&self.mul(a, b), kmax)
                    .map_err(|e| ("product".to_string(), e.to_string()))?;
                for k in 1..=kmax as usize {
                    let conv = self.series_mul(&sa[..=k], &sb[..=k]).pop().unwrap();
                    if sum[k] != conv {
                        return Err(("sum".into(), format!("λ^{k}({a} + {b})")));
                    }
                    let pk = universal_pk(k as u32).expect("k >= 1");
                    let rhs = self.reduce(&pk.eval_in(&Polynomials, |v| match v.family {
                        Family::X => sa[v.index as usize].clone(),
                        _ => sb[v.index as usize].clone(),
                    }));
                    if prod[k] != rhs {
                        return Err(("product".into(), format!("λ^{k}(({a})·({b}))")));
                    }
                }
            }
        }
        for (a, sa) in samples.iter().zip(&seqs) {
            for j in 1..=kmax {
                let imax = kmax.min(COMPOSITION_BOUND / j);
                if imax == 0 {
                    continue;
                }
                let inner = &sa[j as usize];
                let outer = self.lambda_sequence(inner, imax).map_err(|e| ("composition".to_string(), e.to_string()))?;
                for i in 1..=imax {
                    let pij = universal_pij(i, j).expect("positive indices");
                    let rhs = self.reduce(&pij.eval_in(&Polynomials, |v| sa[v.index as usize].clone()));
                    if outer[i as usize] != rhs {
                        return Err(("composition".into(), format!("λ^{i}(λ^{j}({a}))")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Looks a model up by its CLI name: `integers`, `sphere`, `cp:m`,
/// `split:m`, `susp:m`.
pub fn model_by_name(name: &str) -> Result<LambdaRingModel> {
    let param = |s: &str| -> Result<u32> {
        s.parse::<u32>()
            .ok()
            .filter(|&m| (1..=8).contains(&m))
            .ok_or_else(|| Error::UnknownModel(name.to_string()))
    };
    match name.split_once(':') {
        None => match name {
            "integers" | "z" => Ok(LambdaRingModel::integers()),
            "sphere" => Ok(LambdaRingModel::sphere()),
            _ => Err(Error::UnknownModel(name.to_string())),
        },
        Some(("cp", m)) => Ok(LambdaRingModel::projective(param(m)?)),
        Some(("split", m)) => Ok(LambdaRingModel::split(param(m)?)),
        Some(("susp", m)) => Ok(LambdaRingModel::suspended(param(m)?)),
        _ => Err(Error::UnknownModel(name.to_string())),
    }
}

/// Names of the models registered by [`register_models`].
pub const REGISTERED: [&str; 7] = ["integers", "sphere", "cp:2", "cp:3", "split:2", "split:3", "susp:2"];

/// Builds the standard models, verifying the λ-ring axioms on a fixed set
/// of sample elements for `k ≤ 3`.
pub fn register_models() -> Result<Vec<LambdaRingModel>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6b70);
    REGISTERED
        .iter()
        .map(|name| {
            let model = model_by_name(name)?;
            let samples: Vec<IntPoly> = (0..3).map(|_| model.sample(&mut rng)).collect();
            model
                .check_axioms(&samples, 3)
                .map_err(|(axiom, _)| Error::RegistrationFailure { model: name.to_string(), axiom })?;
            Ok(model)
        })
        .collect()
}

/// An element of `K*(U(n)) = Λ[μ¹_n, …, μⁿ_n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnModelElem {
    rank: u32,
    ext: Exterior,
}

impl UnModelElem {
    pub fn new(rank: u32, ext: Exterior) -> Result<UnModelElem> {
        if rank == 0 {
            return Err(Error::IndexOutOfRange("rank must be positive".into()));
        }
        if ext.max_index() > rank {
            return Err(Error::IndexOutOfRange(format!("μ{} at rank {rank}", ext.max_index())));
        }
        Ok(UnModelElem { rank, ext })
    }

    /// `μᵏ_n`; zero for `k = 0` or `k > n`.
    pub fn mu(rank: u32, k: u32) -> Result<UnModelElem> {
        let ext = if k == 0 || k > rank { Exterior::zero() } else { Exterior::generator(k) };
        UnModelElem::new(rank, ext)
    }

    pub fn one(rank: u32) -> Result<UnModelElem> {
        UnModelElem::new(rank, Exterior::unit(1))
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn ext(&self) -> &Exterior {
        &self.ext
    }

    pub fn add(&self, other: &UnModelElem) -> Result<UnModelElem> {
        self.same_rank(other)?;
        UnModelElem::new(self.rank, self.ext.add(&other.ext))
    }

    pub fn wedge(&self, other: &UnModelElem) -> Result<UnModelElem> {
        self.same_rank(other)?;
        UnModelElem::new(self.rank, self.ext.wedge(&other.ext))
    }

    fn same_rank(&self, other: &UnModelElem) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!("ranks {} and {}", self.rank, other.rank)))
        }
    }
}

impl std::fmt::Display for UnModelElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.ext.render("μ"))
    }
}

/// Restriction along `U(n−1) → U(n)`: `μᵏ ↦ μᵏ + μᵏ⁻¹`, where `μ⁰` is zero
/// so that `lᵏ_n` restricts to `lᵏ_{n−1}`.
pub fn un_restrict(x: &UnModelElem) -> Result<UnModelElem> {
    if x.rank < 2 {
        return Err(Error::RankUnderflow);
    }
    let n = x.rank - 1;
    let gen = |k: u32| if k == 0 || k > n { Exterior::zero() } else { Exterior::generator(k) };
    UnModelElem::new(n, x.ext.map_generators(|k| gen(k).add(&gen(k - 1))))
}

/// `lᵏ_n = Σ_{i<k} C(−n, i) μ^{k−i}_n`, with `μʲ_n = 0` for `j > n`.
pub fn lk_from_mu(n: u32, k: u32) -> Result<UnModelElem> {
    if k == 0 {
        return Err(Error::IndexOutOfRange(format!("l^{k} at rank {n}")));
    }
    let minus_n = -BigInt::from(n);
    let mut ext = Exterior::zero();
    for i in k.saturating_sub(n)..k {
        ext = ext.add(&Exterior::generator(k - i).scale(&lambda_of_integer(&minus_n, i)));
    }
    UnModelElem::new(n, ext)
}

/// An element of `K(BU(n))` as a polynomial in `β¹_n, …, βⁿ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BUnModelElem {
    rank: u32,
    poly: IntPoly,
}

impl BUnModelElem {
    pub fn new(rank: u32, poly: IntPoly) -> Result<BUnModelElem> {
        if rank == 0 {
            return Err(Error::IndexOutOfRange("rank must be positive".into()));
        }
        for v in poly.variables() {
            if v.family != Family::Beta || v.index > rank {
                return Err(Error::IndexOutOfRange(format!("{v} at rank {rank}")));
            }
        }
        Ok(BUnModelElem { rank, poly })
    }

    /// `βᵏ_n`, with `β⁰ = 1` and `βᵏ = 0` for `k > n`.
    pub fn beta(rank: u32, k: u32) -> Result<BUnModelElem> {
        BUnModelElem::new(rank, beta_poly(rank, k))
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }
}

impl std::fmt::Display for BUnModelElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.poly.fmt(f)
    }
}

fn beta_poly(rank: u32, k: u32) -> IntPoly {
    match k {
        0 => IntPoly::one(),
        k if k <= rank => IntPoly::var(Var::new(Family::Beta, k)),
        _ => IntPoly::zero(),
    }
}

/// Restriction along `BU(n) → BU(n+1)`: `βᵏ ↦ βᵏ + βᵏ⁻¹`.
pub fn bun_restrict(x: &BUnModelElem) -> Result<BUnModelElem> {
    if x.rank < 2 {
        return Err(Error::RankUnderflow);
    }
    let n = x.rank - 1;
    let out = x
        .poly
        .substitute(|v| Some(&beta_poly(n, v.index) + &beta_poly(n, v.index - 1)));
    BUnModelElem::new(n, out)
}

/// `λᵏ_n = Σ_{i≤k} C(−n, i) β^{k−i}_n`.
pub fn lambdak_from_beta(n: u32, k: u32) -> Result<BUnModelElem> {
    if n == 0 {
        return Err(Error::IndexOutOfRange("rank must be positive".into()));
    }
    let minus_n = -BigInt::from(n);
    let mut p = IntPoly::zero();
    for i in 0..=k {
        p = p + beta_poly(n, k - i).scale(&lambda_of_integer(&minus_n, i));
    }
    BUnModelElem::new(n, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn model_examples() {
        assert_eq!(LambdaRingModel::integers().lambda(2, &p("3")).unwrap(), p("3"));
        let sphere = LambdaRingModel::sphere();
        assert_eq!(sphere.lambda(2, &p("u")).unwrap(), p("-u"));
        for k in 1..=6 {
            let expected = if k % 2 == 1 { p("u") } else { p("-u") };
            assert_eq!(sphere.lambda(k, &p("u")).unwrap(), expected);
        }
        assert_eq!(LambdaRingModel::split(2).lambda(2, &p("x1 + x2")).unwrap(), p("x1*x2"));
    }

    #[test]
    fn projective_model_reduces_to_sphere() {
        let cp1 = LambdaRingModel::projective(1);
        let sphere = LambdaRingModel::sphere();
        for k in 0..=5 {
            assert_eq!(cp1.lambda(k, &p("2*u - 3")).unwrap(), sphere.lambda(k, &p("2*u - 3")).unwrap());
        }
        // λ_t(ξ − 1) = (1 + ξt)/(1 + t) truncated at u³.
        let cp2 = LambdaRingModel::projective(2);
        assert_eq!(cp2.lambda(2, &p("u")).unwrap(), p("-u"));
        assert_eq!(cp2.lambda(1, &p("u^3 + u")).unwrap(), p("u"));
    }

    #[test]
    fn augmentation_and_validation() {
        let m = LambdaRingModel::suspended(2);
        assert_eq!(m.augmentation(&p("3*x1*x2 - u + 2")), BigInt::from(5));
        assert!(m.element(&p("x3")).is_err());
        assert!(LambdaRingModel::split(2).element(&p("u")).is_err());
        assert_eq!(m.element(&p("u^2 + x1")).unwrap(), p("x1"));
    }

    #[test]
    fn registry() {
        let models = register_models().unwrap();
        assert_eq!(models.len(), REGISTERED.len());
        assert!(matches!(model_by_name("cp:0"), Err(Error::UnknownModel(_))));
        assert!(matches!(model_by_name("torus"), Err(Error::UnknownModel(_))));
        assert_eq!(model_by_name("split:4").unwrap().lines(), 4);
    }

    #[test]
    fn split_samples_pass_and_limit_is_enforced() {
        let m = LambdaRingModel::split(1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let samples: Vec<IntPoly> = (0..4).map(|_| m.sample(&mut rng)).collect();
        assert!(m.check_axioms(&samples, 3).is_ok());
        assert!(LambdaRingModel::sphere().lambda_sequence(&p("u"), MODEL_LAMBDA_LIMIT + 1).is_err());
    }

    #[test]
    fn un_examples() {
        let mu = |n, k| UnModelElem::mu(n, k).unwrap();
        assert_eq!(un_restrict(&mu(3, 2)).unwrap(), mu(2, 2).add(&mu(2, 1)).unwrap());
        assert_eq!(un_restrict(&mu(3, 3)).unwrap(), mu(2, 2));
        assert_eq!(un_restrict(&UnModelElem::one(3).unwrap()).unwrap(), UnModelElem::one(2).unwrap());
        assert!(matches!(un_restrict(&mu(1, 1)), Err(Error::RankUnderflow)));
    }

    #[test]
    fn lk_examples() {
        assert_eq!(lk_from_mu(4, 1).unwrap(), UnModelElem::mu(4, 1).unwrap());
        assert_eq!(lk_from_mu(2, 2).unwrap().to_string(), "-2*μ1 + μ2");
        assert_eq!(un_restrict(&lk_from_mu(3, 2).unwrap()).unwrap(), lk_from_mu(2, 2).unwrap());
        assert_eq!(lk_from_mu(2, 3).unwrap().to_string(), "3*μ1 - 2*μ2");
        assert_eq!(un_restrict(&lk_from_mu(3, 3).unwrap()).unwrap(), lk_from_mu(2, 3).unwrap());
        assert!(matches!(lk_from_mu(2, 0), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn restriction_chains() {
        for n in 3..=6 {
            for k in 1..=n - 2 {
                let twice = un_restrict(&un_restrict(&lk_from_mu(n, k).unwrap()).unwrap()).unwrap();
                assert_eq!(twice, lk_from_mu(n - 2, k).unwrap());
                let twice = bun_restrict(&bun_restrict(&lambdak_from_beta(n, k).unwrap()).unwrap()).unwrap();
                assert_eq!(twice, lambdak_from_beta(n - 2, k).unwrap());
            }
        }
    }

    #[test]
    fn bun_examples() {
        let b = |n, k| BUnModelElem::beta(n, k).unwrap();
        assert_eq!(bun_restrict(&b(3, 2)).unwrap().poly(), &(b(2, 2).poly() + b(2, 1).poly()));
        for n in [1u32, 3, 5] {
            assert_eq!(lambdak_from_beta(n, 1).unwrap().poly(), &(b(n, 1).poly() - &IntPoly::constant(n)));
        }
        for n in 1..=3 {
            assert_eq!(bun_restrict(&lambdak_from_beta(n + 1, 2).unwrap()).unwrap(), lambdak_from_beta(n, 2).unwrap());
        }
    }
}
