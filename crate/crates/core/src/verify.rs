//! Check suites over every module, with seeded random corpora.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evenops::{act, compose_even, identity_op, op_coadd, op_comult, EvenOp};
use crate::kbu::{antipode, coadd, colinear, compose_kbu, comult, cozero, KbuElem};
use crate::loopgrade::{check_looping_axioms, main_relations_check};
use crate::models::{
    bun_restrict, lambdak_from_beta, lk_from_mu, register_models, un_restrict, LambdaRingModel, REGISTERED,
};
use crate::poly::{IntPoly, Monomial, Var};
use crate::report::{Property, Report};
use crate::setzz::{FnZZ, Window};
use crate::symmetric::partitions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Biring,
    Compose,
    Looping,
    Models,
    Main,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Biring, Suite::Compose, Suite::Looping, Suite::Models, Suite::Main];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Biring => "biring",
            Suite::Compose => "compose",
            Suite::Looping => "looping",
            Suite::Models => "models",
            Suite::Main => "main",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckConfig {
    pub trunc: u32,
    pub window: Window,
    pub seed: u64,
    /// Number of random operations (pairs, triples) per corpus.
    pub samples: usize,
}

impl CheckConfig {
    pub fn new(trunc: u32, window: Window, seed: u64) -> CheckConfig {
        CheckConfig { trunc, window, seed, samples: 100 }
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// Runs one suite (or all of them, in order).
pub fn run(suite: Suite, cfg: &CheckConfig) -> Result<Vec<Report>> {
    match suite {
        Suite::All => Suite::EACH.iter().map(|s| run_one(*s, cfg)).collect(),
        s => Ok(vec![run_one(s, cfg)?]),
    }
}

fn run_one(suite: Suite, cfg: &CheckConfig) -> Result<Report> {
    match suite {
        Suite::Biring => check_biring(cfg.trunc),
        Suite::Compose => check_compose(cfg),
        Suite::Looping => check_looping_axioms(cfg.trunc, cfg.window),
        Suite::Models => check_models(cfg),
        Suite::Main => main_relations_check(cfg.trunc, cfg.trunc, cfg.window),
        Suite::All => unreachable!("expanded by run"),
    }
}

/// All monomials in `λ_1..λ_n` of weight `1..=n`.
pub fn monomials_up_to_weight(n: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for w in 1..=n {
        for p in partitions(w, w as usize) {
            let mut m = Monomial::one();
            for part in p {
                m = m.mul(&Monomial::var(Var::lambda(part)));
            }
            out.push(m);
        }
    }
    out
}

fn mono(m: &Monomial, trunc: u32) -> Result<KbuElem> {
    KbuElem::new(IntPoly::monomial(m.clone(), 1), trunc)
}

/// Coassociativity, antipode, co-linear structure and composition laws of
/// K(BU) at truncation `trunc`.
pub fn check_biring(trunc: u32) -> Result<Report> {
    let monos = monomials_up_to_weight(trunc);
    let one = KbuElem::one(trunc)?;
    let mut coadd_assoc = Property::new("coadd-coassociative");
    let mut comult_assoc = Property::new("comult-coassociative");
    let mut antipode_law = Property::new("antipode-law");
    let mut involution = Property::new("antipode-involution");
    for m in &monos {
        let x = mono(m, trunc)?;
        let d = coadd(&x);
        coadd_assoc.record(d.expand_factor(0, coadd) == d.expand_factor(1, coadd), || format!("Δ⁺ at {m}"));
        let d = comult(&x);
        comult_assoc.record(d.expand_factor(0, comult) == d.expand_factor(1, comult), || format!("Δ× at {m}"));
        let unit = one.scale(&cozero(&x));
        let left = coadd(&x).map_factor(0, antipode).contract();
        let right = coadd(&x).map_factor(1, antipode).contract();
        antipode_law.record(left == unit && right == unit, || format!("σ law at {m}"));
        involution.record(antipode(&antipode(&x)) == x, || format!("σσ at {m}"));
    }

    let mut gamma_mult = Property::new("colinear-multiplicative");
    let mut gamma_sigma = Property::new("colinear-minus-one");
    for k in 1..=trunc {
        let x = KbuElem::generator(k, trunc)?;
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                let lhs = colinear(&BigInt::from(a), &colinear(&BigInt::from(b), &x));
                let rhs = colinear(&BigInt::from(a * b), &x);
                gamma_mult.record(lhs == rhs, || format!("γ({a})γ({b}) on λ{k}"));
            }
        }
        gamma_sigma.record(colinear(&-BigInt::one(), &x) == antipode(&x), || format!("γ(−1) on λ{k}"));
    }

    let mut assoc = Property::new("compose-associative");
    let mut unit = Property::new("compose-unit");
    for i in 1..=trunc {
        let li = KbuElem::generator(i, trunc)?;
        let l1 = KbuElem::generator(1, trunc)?;
        unit.record_result(
            compose_kbu(&l1, &li).and_then(|a| compose_kbu(&li, &l1).map(|b| a == li && b == li)),
            || format!("λ1 unit on λ{i}"),
        );
        for j in 1..=trunc / i {
            for k in 1..=trunc / (i * j) {
                let ok = (|| -> Result<bool> {
                    let (a, b, c) = (li.clone(), KbuElem::generator(j, trunc)?, KbuElem::generator(k, trunc)?);
                    Ok(compose_kbu(&compose_kbu(&a, &b)?, &c)? == compose_kbu(&a, &compose_kbu(&b, &c)?)?)
                })();
                assoc.record_result(ok, || format!("(λ{i}∘λ{j})∘λ{k}"));
            }
        }
    }

    let mut projection = Property::new("projection-ring-map");
    let mut rng = ChaCha8Rng::seed_from_u64(u64::from(trunc));
    for _ in 0..50 {
        let x = random_kbu(&mut rng, trunc, trunc, 3, false)?;
        let y = random_kbu(&mut rng, trunc, trunc, 3, false)?;
        let m = rng.gen_range(1..=trunc);
        let ok = (|| -> Result<bool> { Ok(x.mul(&y)?.project(m)? == x.project(m)?.mul(&y.project(m)?)?) })();
        projection.record_result(ok, || format!("π_{m}(({x})·({y}))"));
    }

    let mut coproduct_action = Property::new("coproduct-action");
    let window = Window::new(3)?;
    for name in ["cp:2", "split:2"] {
        let model = crate::models::model_by_name(name)?;
        for m in &monos {
            let r = EvenOp::pure(FnZZ::constant(1), mono(m, trunc)?, window);
            let (add, mul) = (op_coadd(&r), op_comult(&r)?);
            for _ in 0..3 {
                let a = bounded_sample(&model, &mut rng, window);
                let b = bounded_sample(&model, &mut rng, window);
                let ok = (|| -> Result<bool> {
                    let sum_ok = add.act_pair(&model, &a, &b)? == act(&r, &model, &(&a + &b))?;
                    let prod_ok = mul.act_pair(&model, &a, &b)? == act(&r, &model, &model.mul(&a, &b))?;
                    Ok(sum_ok && prod_ok)
                })();
                coproduct_action.record_result(ok, || format!("{m} on {name} at ({a}, {b})"));
            }
        }
    }

    Ok(Report::new(
        "biring",
        vec![
            coadd_assoc,
            comult_assoc,
            antipode_law,
            involution,
            gamma_mult,
            gamma_sigma,
            assoc,
            unit,
            projection,
            coproduct_action,
        ],
    ))
}

/// A model element whose augmentation lies in `[−W/2, W/2]`, so sums and
/// products of two samples stay within reach of small windows.
fn bounded_sample(model: &LambdaRingModel, rng: &mut impl Rng, window: Window) -> IntPoly {
    let half = BigInt::from(window.width() / 2);
    loop {
        let a = model.sample(rng);
        let e = model.augmentation(&a);
        if e <= half && e >= -half.clone() {
            return a;
        }
    }
}

/// A random K(BU) element: up to `terms` monomials of weight at most
/// `weight` with coefficients in `±{1, 2}`, plus a constant unless `augmented`.
pub fn random_kbu(rng: &mut impl Rng, trunc: u32, weight: u32, terms: usize, augmented: bool) -> Result<KbuElem> {
    let mut p = if augmented { IntPoly::zero() } else { IntPoly::constant(rng.gen_range(-2..=2)) };
    let cap = weight.clamp(1, trunc);
    for _ in 0..rng.gen_range(1..=terms.max(1)) {
        let mut m = Monomial::one();
        let mut left = rng.gen_range(1..=cap);
        while left > 0 {
            let k = rng.gen_range(1..=left);
            m = m.mul(&Monomial::var(Var::lambda(k)));
            left -= k;
        }
        p.add_term(m, BigInt::from(*[-2, -1, 1, 2].choose(rng).expect("nonempty")));
    }
    KbuElem::new(p, trunc)
}

/// Random weight bounds `(w₁, …, w_len)` with product at most `trunc`.
///
/// Composites of K(BU) elements of weights `a` and `b` involve `λᵐ` up to
/// `m = ab`; keeping the product within the truncation level means no term
/// is lost, so the action oracle applies exactly.
pub fn weight_split(rng: &mut impl Rng, trunc: u32, len: usize) -> Vec<u32> {
    let mut left = trunc.max(1);
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let w = if i + 1 == len { left } else { rng.gen_range(1..=left) };
        out.push(w);
        left /= w;
    }
    out.shuffle(rng);
    out
}

/// A left operand: one to three summands over indicators, constants,
/// the identity and its square.
pub fn random_left_op(rng: &mut impl Rng, trunc: u32, weight: u32, window: Window) -> Result<EvenOp> {
    let mut summands = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let f = match rng.gen_range(0..5) {
            0 | 1 => FnZZ::chi(rng.gen_range(-3..=3)),
            2 => FnZZ::constant(rng.gen_range(-2..=2)),
            3 => FnZZ::Id,
            _ => FnZZ::Sum(vec![FnZZ::Prod(vec![FnZZ::Id, FnZZ::Id]), FnZZ::constant(-1)]),
        };
        let augmented = rng.gen_bool(0.5);
        summands.push((f, random_kbu(rng, trunc, weight, 2, augmented)?));
    }
    EvenOp::new(summands, trunc, window)
}

/// A right operand whose augmentation stays close to that of its
/// argument: indicators and constants with small constant terms, and at
/// most one `ι ⊗ (1 + …)` summand, in which case constant summands are
/// augmented.
pub fn random_right_op(rng: &mut impl Rng, trunc: u32, weight: u32, window: Window) -> Result<EvenOp> {
    let with_id = rng.gen_bool(0.5);
    let mut summands = Vec::new();
    if with_id {
        let x = random_kbu(rng, trunc, weight, 2, true)?.add(&KbuElem::one(trunc)?)?;
        summands.push((FnZZ::Id, x));
    }
    for _ in 0..rng.gen_range(if with_id { 0..=2 } else { 1..=2 }) {
        if rng.gen_bool(0.5) {
            summands.push((FnZZ::chi(rng.gen_range(-2..=2)), random_kbu(rng, trunc, weight, 2, false)?));
        } else {
            summands.push((FnZZ::constant(rng.gen_range(-1..=1)), random_kbu(rng, trunc, weight, 2, with_id)?));
        }
    }
    EvenOp::new(summands, trunc, window)
}

/// Composition against the action oracle on every registered model, plus
/// the monoid laws.
pub fn check_compose(cfg: &CheckConfig) -> Result<Report> {
    let (n, w) = (cfg.trunc, cfg.window);
    let models = register_models()?;
    let mut rng = cfg.rng(1);
    let mut oracle = Property::new("compose-action-oracle");
    let mut assoc = Property::new("compose-associative");
    let mut left_unit = Property::new("compose-left-unit");
    let mut right_unit = Property::new("compose-right-unit");
    let id = identity_op(n, w)?;
    let elements: Vec<Vec<IntPoly>> = models.iter().map(|m| (0..5).map(|_| bounded_sample(m, &mut rng, w)).collect()).collect();
    for _ in 0..cfg.samples {
        let ws = weight_split(&mut rng, n, 3);
        let r = random_left_op(&mut rng, n, ws[0], w)?;
        let s = random_right_op(&mut rng, n, ws[1], w)?;
        let rs = match compose_even(&r, &s) {
            Ok(rs) => rs,
            Err(e) => {
                oracle.record(false, || format!("({r}) ∘ ({s}): {e}"));
                continue;
            }
        };
        for (model, elems) in models.iter().zip(&elements) {
            for a in elems {
                let ok = (|| -> Result<bool> { Ok(act(&rs, model, a)? == act(&r, model, &act(&s, model, a)?)?) })();
                oracle.record_result(ok, || format!("({r}) ∘ ({s}) on {} at {a}", model.name()));
            }
        }
        left_unit.record_result(compose_even(&id, &s).map(|x| x.equiv(&s)), || format!("ι₀ ∘ ({s})"));
        right_unit.record_result(compose_even(&r, &id).map(|x| x.equiv(&r)), || format!("({r}) ∘ ι₀"));
        let t = random_right_op(&mut rng, n, ws[2], w)?;
        let ok = (|| -> Result<bool> {
            let lhs = compose_even(&rs, &t)?;
            let rhs = compose_even(&r, &compose_even(&s, &t)?)?;
            Ok(lhs.equiv(&rhs))
        })();
        assoc.record_result(ok, || format!("(({r}) ∘ ({s})) ∘ ({t})"));
    }
    Ok(Report::new("compose", vec![oracle, assoc, left_unit, right_unit]))
}

/// λ-ring axioms on every registered model, the sphere suspension fact and
/// the finite-rank restriction identities.
pub fn check_models(cfg: &CheckConfig) -> Result<Report> {
    let mut registration = Property::new("registration");
    let mut axioms = Property::new("lambda-ring-axioms");
    let kmax = cfg.trunc.min(5);
    let mut rng = cfg.rng(2);
    match register_models() {
        Ok(models) => {
            registration.record(models.len() == REGISTERED.len(), || "model count".into());
            for model in &models {
                let samples: Vec<IntPoly> = (0..8).map(|_| model.sample(&mut rng)).collect();
                let r = model.check_axioms(&samples, kmax);
                // One recorded instance per model covers every ordered sample pair.
                axioms.instances += (samples.len() * samples.len()) as u64 - 1;
                axioms.record(r.is_ok(), || {
                    let (axiom, witness) = r.clone().unwrap_err();
                    format!("{}: {axiom} at {witness}", model.name())
                });
            }
        }
        Err(e) => registration.record(false, || e.to_string()),
    }

    let mut sphere = Property::new("sphere-suspension");
    let s = LambdaRingModel::sphere();
    let u = IntPoly::var(Var::u());
    for i in 1..=5u32 {
        let sign = if i % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        sphere.record_result(s.lambda(i, &u).map(|v| v == u.scale(&sign)), || format!("λ^{i}(u)"));
    }

    let mut un = Property::new("un-restriction");
    for n in 2..=6u32 {
        for k in 1..=n {
            let ok = (|| -> Result<bool> { Ok(un_restrict(&lk_from_mu(n, k)?)? == lk_from_mu(n - 1, k)?) })();
            un.record_result(ok, || format!("i*(l^{k}_{n})"));
        }
    }
    let mut bun = Property::new("bun-restriction");
    for n in 1..=6u32 {
        for k in 1..=n {
            let ok = (|| -> Result<bool> { Ok(bun_restrict(&lambdak_from_beta(n + 1, k)?)? == lambdak_from_beta(n, k)?) })();
            bun.record_result(ok, || format!("j*(λ^{k}_{})", n + 1));
        }
    }
    Ok(Report::new("models", vec![registration, axioms, sphere, un, bun]))
}

/// Whether every property of every report passed.
pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(|r| r.passed)
}
