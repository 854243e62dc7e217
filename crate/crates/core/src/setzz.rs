//! The plethory Set(ℤ, ℤ) of integer-valued functions on the integers.
//!
//! Functions are expression trees. Coproducts are only computable on a
//! finite window `[−W, W]`, and come back as sums of indicator tensors
//! `χ_i ⊗ χ_j`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FnZZ {
    Const(BigInt),
    Id,
    /// Indicator of a single integer.
    Chi(BigInt),
    Sum(Vec<FnZZ>),
    Prod(Vec<FnZZ>),
    /// `Compose(f, g)` is `n ↦ f(g(n))`.
    Compose(Box<FnZZ>, Box<FnZZ>),
}

impl FnZZ {
    pub fn constant(c: impl Into<BigInt>) -> FnZZ {
        FnZZ::Const(c.into())
    }

    pub fn chi(d: impl Into<BigInt>) -> FnZZ {
        FnZZ::Chi(d.into())
    }

    pub fn neg_id() -> FnZZ {
        FnZZ::Prod(vec![FnZZ::constant(-1), FnZZ::Id])
    }

    pub fn eval(&self, n: &BigInt) -> BigInt {
        match self {
            FnZZ::Const(c) => c.clone(),
            FnZZ::Id => n.clone(),
            FnZZ::Chi(d) => BigInt::from(u8::from(d == n)),
            FnZZ::Sum(fs) => fs.iter().map(|f| f.eval(n)).sum(),
            FnZZ::Prod(fs) => fs.iter().map(|f| f.eval(n)).product(),
            FnZZ::Compose(f, g) => f.eval(&g.eval(n)),
        }
    }

    pub fn eval_i64(&self, n: i64) -> BigInt {
        self.eval(&BigInt::from(n))
    }

    /// Number of nodes in the expression tree.
    pub fn size(&self) -> usize {
        match self {
            FnZZ::Const(_) | FnZZ::Id | FnZZ::Chi(_) => 1,
            FnZZ::Sum(fs) | FnZZ::Prod(fs) => 1 + fs.iter().map(FnZZ::size).sum::<usize>(),
            FnZZ::Compose(f, g) => 1 + f.size() + g.size(),
        }
    }

    fn depth(&self) -> usize {
        match self {
            FnZZ::Const(_) | FnZZ::Id | FnZZ::Chi(_) => 1,
            FnZZ::Sum(fs) | FnZZ::Prod(fs) => 1 + fs.iter().map(FnZZ::depth).max().unwrap_or(0),
            FnZZ::Compose(f, g) => 1 + f.depth().max(g.depth()),
        }
    }
}

pub fn eval(f: &FnZZ, n: &BigInt) -> BigInt {
    f.eval(n)
}

/// `f ∘ g`, simplifying the identity and indicators of constants.
pub fn fn_compose(f: &FnZZ, g: &FnZZ) -> FnZZ {
    match (f, g) {
        (FnZZ::Id, _) => g.clone(),
        (_, FnZZ::Id) => f.clone(),
        (FnZZ::Const(_), _) => f.clone(),
        (_, FnZZ::Const(c)) => FnZZ::Const(f.eval(c)),
        _ => FnZZ::Compose(Box::new(f.clone()), Box::new(g.clone())),
    }
}

/// ε⁺(f) = f(0).
pub fn fn_cozero(f: &FnZZ) -> BigInt {
    f.eval(&BigInt::zero())
}

/// ε×(f) = f(1).
pub fn fn_counit(f: &FnZZ) -> BigInt {
    f.eval(&BigInt::one())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window(u32);

impl Window {
    pub fn new(w: u32) -> Result<Window> {
        if w == 0 {
            Err(Error::InvalidIndex("window must be at least 1".into()))
        } else {
            Ok(Window(w))
        }
    }

    pub fn width(self) -> u32 {
        self.0
    }

    pub fn contains(self, n: &BigInt) -> bool {
        n.to_i64().is_some_and(|v| v.unsigned_abs() <= u64::from(self.0))
    }

    pub fn points(self) -> impl Iterator<Item = i64> {
        let w = i64::from(self.0);
        -w..=w
    }
}

/// Nonzero values of `f` on the window, in increasing order of argument.
pub fn fn_table(f: &FnZZ, w: Window) -> Vec<(i64, BigInt)> {
    w.points()
        .map(|d| (d, f.eval_i64(d)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// `Σ_{|d| ≤ W} f(d)·χ_d`.
pub fn fn_window_normalise(f: &FnZZ, w: Window) -> FnZZ {
    let terms: Vec<FnZZ> = fn_table(f, w)
        .into_iter()
        .map(|(d, v)| {
            if v.is_one() {
                FnZZ::chi(d)
            } else {
                FnZZ::Prod(vec![FnZZ::Const(v), FnZZ::chi(d)])
            }
        })
        .collect();
    if terms.is_empty() {
        FnZZ::constant(0)
    } else {
        FnZZ::Sum(terms)
    }
}

/// Equality of functions relative to a window.
pub fn fn_agree(f: &FnZZ, g: &FnZZ, w: Window) -> bool {
    w.points().all(|d| f.eval_i64(d) == g.eval_i64(d))
}

/// A finite sum of indicator tensors `χ_{i_1} ⊗ ⋯ ⊗ χ_{i_k}` on a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FnTensor {
    window: Window,
    arity: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl FnTensor {
    pub fn window(&self) -> Window {
        self.window
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigInt> {
        &self.terms
    }

    /// Value of the tensor as a function of `arity` integer arguments.
    pub fn eval_at(&self, args: &[i64]) -> BigInt {
        self.terms.get(args).cloned().unwrap_or_default()
    }

    fn from_fn(window: Window, arity: usize, mut value: impl FnMut(&[i64]) -> BigInt) -> FnTensor {
        let mut terms = BTreeMap::new();
        let mut idx = vec![-i64::from(window.0); arity];
        loop {
            let v = value(&idx);
            if !v.is_zero() {
                terms.insert(idx.clone(), v);
            }
            let mut slot = 0;
            loop {
                if slot == arity {
                    return FnTensor { window, arity, terms };
                }
                if idx[slot] < i64::from(window.0) {
                    idx[slot] += 1;
                    break;
                }
                idx[slot] = -i64::from(window.0);
                slot += 1;
            }
        }
    }

    /// Replaces factor `slot` of each term `χ_i` by the tensor `f(i)`.
    pub fn expand_factor(&self, slot: usize, mut f: impl FnMut(i64) -> FnTensor) -> FnTensor {
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        let mut arity = self.arity;
        for (k, c) in &self.terms {
            let image = f(k[slot]);
            arity = self.arity - 1 + image.arity;
            for (ik, ic) in &image.terms {
                let mut key = k[..slot].to_vec();
                key.extend_from_slice(ik);
                key.extend_from_slice(&k[slot + 1..]);
                let e = terms.entry(key.clone()).or_default();
                *e += c * ic;
                if e.is_zero() {
                    terms.remove(&key);
                }
            }
        }
        FnTensor { window: self.window, arity, terms }
    }
}

impl fmt::Display for FnTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if !c.is_one() {
                write!(f, "({c})*")?;
            }
            let parts: Vec<String> = k.iter().map(|i| format!("χ_{i}")).collect();
            f.write_str(&parts.join("⊗"))?;
        }
        Ok(())
    }
}

/// `Σ f(i+j)·χ_i⊗χ_j` over the window square.
pub fn fn_coadd(f: &FnZZ, w: Window) -> FnTensor {
    FnTensor::from_fn(w, 2, |ij| f.eval_i64(ij[0] + ij[1]))
}

/// `Σ f(i·j)·χ_i⊗χ_j` over the window square.
pub fn fn_comult(f: &FnZZ, w: Window) -> FnTensor {
    FnTensor::from_fn(w, 2, |ij| f.eval_i64(ij[0] * ij[1]))
}

impl fmt::Display for FnZZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: &str, xs: &[FnZZ]| -> fmt::Result {
            write!(f, "({head}")?;
            for x in xs {
                write!(f, " {x}")?;
            }
            f.write_str(")")
        };
        match self {
            FnZZ::Const(c) => write!(f, "(const {c})"),
            FnZZ::Id => f.write_str("id"),
            FnZZ::Chi(d) => write!(f, "(chi {d})"),
            FnZZ::Sum(xs) => list(f, "sum", xs),
            FnZZ::Prod(xs) => list(f, "prod", xs),
            FnZZ::Compose(a, b) => write!(f, "(compose {a} {b})"),
        }
    }
}

const MAX_FN_DEPTH: usize = 128;

impl FromStr for FnZZ {
    type Err = Error;

    /// Parses the prefix form produced by `Display`.
    fn from_str(s: &str) -> Result<FnZZ> {
        let toks = prefix_tokens(s);
        let mut at = 0;
        let f = parse_prefix(&toks, &mut at, 0)?;
        if at != toks.len() {
            return Err(Error::parse(toks[at].0, "trailing input"));
        }
        debug_assert!(f.depth() <= MAX_FN_DEPTH + 1);
        Ok(f)
    }
}

fn prefix_tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if let Some(b) = start.take() {
                out.push((b, &s[b..i]));
            }
            if !c.is_whitespace() {
                out.push((i, &s[i..i + 1]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(b) = start {
        out.push((b, &s[b..]));
    }
    out
}

fn parse_prefix(toks: &[(usize, &str)], at: &mut usize, depth: usize) -> Result<FnZZ> {
    let end = toks.last().map(|t| t.0 + t.1.len()).unwrap_or(0);
    let Some(&(pos, tok)) = toks.get(*at) else {
        return Err(Error::parse(end, "unexpected end of input"));
    };
    *at += 1;
    match tok {
        "id" => return Ok(FnZZ::Id),
        "(" => {}
        _ => return Err(Error::parse(pos, format!("unexpected `{tok}`"))),
    }
    if depth >= MAX_FN_DEPTH {
        return Err(Error::parse(pos, "nesting too deep"));
    }
    let Some(&(hpos, head)) = toks.get(*at) else {
        return Err(Error::parse(end, "unexpected end of input"));
    };
    *at += 1;
    let int = |at: &mut usize| -> Result<BigInt> {
        let Some(&(p, t)) = toks.get(*at) else {
            return Err(Error::parse(end, "expected an integer"));
        };
        *at += 1;
        if t.len() > 1000 {
            return Err(Error::parse(p, "integer literal too long"));
        }
        t.parse().map_err(|_| Error::parse(p, format!("expected an integer, found `{t}`")))
    };
    let f = match head {
        "const" => FnZZ::Const(int(at)?),
        "chi" => FnZZ::Chi(int(at)?),
        "sum" | "prod" => {
            let mut xs = Vec::new();
            while toks.get(*at).is_some_and(|t| t.1 != ")") {
                xs.push(parse_prefix(toks, at, depth + 1)?);
            }
            if head == "sum" { FnZZ::Sum(xs) } else { FnZZ::Prod(xs) }
        }
        "compose" => {
            let a = parse_prefix(toks, at, depth + 1)?;
            let b = parse_prefix(toks, at, depth + 1)?;
            FnZZ::Compose(Box::new(a), Box::new(b))
        }
        _ => return Err(Error::parse(hpos, format!("unknown constructor `{head}`"))),
    };
    match toks.get(*at) {
        Some(&(_, ")")) => {
            *at += 1;
            Ok(f)
        }
        Some(&(p, _)) => Err(Error::parse(p, "expected `)`")),
        None => Err(Error::parse(end, "expected `)`")),
    }
}

/// Commutative rings used to test the complete-orthogonal-idempotents model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SampleRing {
    Integers,
    /// ℤ/n for `n ≥ 2`.
    Mod(u32),
}

impl SampleRing {
    pub fn reduce(self, c: BigInt) -> BigInt {
        match self {
            SampleRing::Integers => c,
            SampleRing::Mod(n) => {
                let n = BigInt::from(n);
                ((c % &n) + &n) % n
            }
        }
    }

    pub fn has_zero_divisors(self) -> bool {
        match self {
            SampleRing::Integers => false,
            SampleRing::Mod(n) => n < 2 || (2..n).any(|d| n % d == 0),
        }
    }
}

/// A family `(x_d)` of complete orthogonal idempotents in a sample ring,
/// i.e. a point of Set(ℤ, ℤ) with coefficients in that ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct COIFamily {
    ring: SampleRing,
    entries: BTreeMap<i64, BigInt>,
}

impl COIFamily {
    pub fn new(ring: SampleRing, entries: impl IntoIterator<Item = (i64, BigInt)>) -> Result<COIFamily> {
        if let SampleRing::Mod(n) = ring {
            if n < 2 {
                return Err(Error::InvalidFamily(format!("ℤ/{n} is not a sample ring")));
            }
        }
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (d, x) in entries {
            let e = map.entry(d).or_default();
            *e = ring.reduce(&*e + x);
        }
        map.retain(|_, x| !x.is_zero());
        let fam = COIFamily { ring, entries: map };
        fam.validate()?;
        Ok(fam)
    }

    /// `δ_{id}`.
    pub fn delta(ring: SampleRing, d: i64) -> Result<COIFamily> {
        COIFamily::new(ring, [(d, BigInt::one())])
    }

    fn validate(&self) -> Result<()> {
        let r = self.ring;
        let total = r.reduce(self.entries.values().sum());
        if !total.is_one() {
            return Err(Error::InvalidFamily(format!("entries sum to {total}, not 1")));
        }
        for (d, x) in &self.entries {
            if r.reduce(x * x) != *x {
                return Err(Error::InvalidFamily(format!("x_{d} = {x} is not idempotent")));
            }
        }
        for (d, x) in &self.entries {
            for (e, y) in self.entries.range(d + 1..) {
                if !r.reduce(x * y).is_zero() {
                    return Err(Error::InvalidFamily(format!("x_{d} x_{e} ≠ 0")));
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> SampleRing {
        self.ring
    }

    pub fn entries(&self) -> &BTreeMap<i64, BigInt> {
        &self.entries
    }

    pub fn get(&self, d: i64) -> BigInt {
        self.entries.get(&d).cloned().unwrap_or_default()
    }

    fn combine(&self, other: &COIFamily, op: impl Fn(i64, i64) -> i64) -> Result<COIFamily> {
        if self.ring != other.ring {
            return Err(Error::InvalidFamily("families over different sample rings".into()));
        }
        let mut out = Vec::new();
        for (i, x) in &self.entries {
            for (j, y) in &other.entries {
                out.push((op(*i, *j), x * y));
            }
        }
        COIFamily::new(self.ring, out)
    }

    /// Evaluates a function at this point: `Σ_d f(d)·x_d`.
    pub fn apply(&self, f: &FnZZ) -> BigInt {
        self.ring.reduce(self.entries.iter().map(|(d, x)| f.eval_i64(*d) * x).sum())
    }
}

/// `π_l(x + y) = Σ_{i+j=l} x_i y_j`.
pub fn coi_add(a: &COIFamily, b: &COIFamily) -> Result<COIFamily> {
    a.combine(b, |i, j| i + j)
}

/// `π_l(x·y) = Σ_{ij=l} x_i y_j`.
pub fn coi_mul(a: &COIFamily, b: &COIFamily) -> Result<COIFamily> {
    a.combine(b, |i, j| i * j)
}

/// `π_l(−x) = x_{−l}`.
pub fn coi_neg(a: &COIFamily) -> COIFamily {
    COIFamily {
        ring: a.ring,
        entries: a.entries.iter().map(|(d, x)| (-d, x.clone())).collect(),
    }
}

/// A random valid family over ℤ/6 with support in `[-range, range]`.
/// The idempotents of ℤ/6 are 0, 1, 3, 4, so a family is either `δ_d` or
/// has `3` at one index and `4` at another.
pub fn random_coi_z6(rng: &mut impl Rng, range: i64) -> COIFamily {
    let ring = SampleRing::Mod(6);
    let a = rng.gen_range(-range..=range);
    let b = rng.gen_range(-range..=range);
    COIFamily::new(ring, [(a, BigInt::from(3)), (b, BigInt::from(4))]).expect("3 + 4 = 1 in ℤ/6 and 3·4 = 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn w(n: u32) -> Window {
        Window::new(n).unwrap()
    }

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(FnZZ::chi(2).eval_i64(2), big(1));
        assert_eq!(FnZZ::Compose(Box::new(FnZZ::Id), Box::new(FnZZ::Id)).eval_i64(5), big(5));
        let sq = FnZZ::Prod(vec![FnZZ::Id, FnZZ::Id]);
        assert_eq!(FnZZ::Compose(Box::new(FnZZ::chi(1)), Box::new(sq)).eval_i64(-1), big(1));
    }

    #[test]
    fn compose_examples() {
        let g = FnZZ::Sum(vec![FnZZ::Id, FnZZ::constant(3)]);
        assert_eq!(fn_compose(&FnZZ::Id, &g), g);
        assert_eq!(fn_compose(&g, &FnZZ::Id), g);
        assert_eq!(fn_compose(&FnZZ::chi(4), &FnZZ::constant(4)), FnZZ::constant(1));
        assert_eq!(fn_compose(&FnZZ::chi(4), &FnZZ::constant(5)), FnZZ::constant(0));
        let h = fn_compose(&FnZZ::chi(2), &g);
        assert_eq!(h.eval_i64(-1), big(1));
    }

    #[test]
    fn window_normalisation() {
        let n = fn_window_normalise(&FnZZ::Id, w(2));
        assert_eq!(n.to_string(), "(sum (prod (const -2) (chi -2)) (prod (const -1) (chi -1)) (chi 1) (prod (const 2) (chi 2)))");
        let one = fn_window_normalise(&FnZZ::constant(1), w(1));
        assert_eq!(one, FnZZ::Sum(vec![FnZZ::chi(-1), FnZZ::chi(0), FnZZ::chi(1)]));
        assert_eq!(fn_window_normalise(&n, w(2)), n);
        assert!(fn_agree(&n, &FnZZ::Id, w(2)));
        assert!(!fn_agree(&n, &FnZZ::Id, w(3)));
        assert_eq!(fn_window_normalise(&FnZZ::chi(9), w(2)), FnZZ::constant(0));
    }

    #[test]
    fn coadd_examples() {
        let t = fn_coadd(&FnZZ::chi(0), w(3));
        assert_eq!(t.eval_at(&[1, -1]), big(1));
        let t = fn_coadd(&FnZZ::chi(2), w(2));
        let keys: Vec<_> = t.terms().keys().cloned().collect();
        assert_eq!(keys, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        let t = fn_coadd(&FnZZ::constant(7), w(2));
        assert!(w(2).points().all(|a| w(2).points().all(|b| t.eval_at(&[a, b]) == big(7))));
    }

    #[test]
    fn comult_examples() {
        assert_eq!(fn_comult(&FnZZ::chi(1), w(2)).eval_at(&[-1, -1]), big(1));
        let t = fn_comult(&FnZZ::Id, w(3));
        for a in w(3).points() {
            for b in w(3).points() {
                assert_eq!(t.eval_at(&[a, b]), big(a * b));
            }
        }
        let t = fn_comult(&FnZZ::chi(4), w(4));
        let keys: Vec<_> = t.terms().keys().cloned().collect();
        assert_eq!(keys, vec![vec![-4, -1], vec![-2, -2], vec![-1, -4], vec![1, 4], vec![2, 2], vec![4, 1]]);
    }

    #[test]
    fn counits() {
        assert_eq!((fn_cozero(&FnZZ::chi(0)), fn_counit(&FnZZ::chi(0))), (big(1), big(0)));
        assert_eq!((fn_cozero(&FnZZ::Id), fn_counit(&FnZZ::Id)), (big(0), big(1)));
        assert_eq!((fn_cozero(&FnZZ::constant(5)), fn_counit(&FnZZ::constant(5))), (big(5), big(5)));
    }

    #[test]
    fn prefix_round_trip() {
        for s in ["id", "(chi -2)", "(const 0)", "(compose (chi 1) (prod id id))", "(sum)", "(sum id (const 3) (prod))"] {
            let f: FnZZ = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        for s in ["", "(", "(chi)", "(chi x)", "(foo 1)", "id id", "(compose id)", "chi 1", "(const 1 2)"] {
            assert!(s.parse::<FnZZ>().is_err(), "{s}");
        }
        let deep = "(compose ".repeat(200) + "id" + &" id)".repeat(200);
        assert!(deep.parse::<FnZZ>().is_err());
    }

    #[test]
    fn coi_identities() {
        for ring in [SampleRing::Integers, SampleRing::Mod(6)] {
            let zero = COIFamily::delta(ring, 0).unwrap();
            let one = COIFamily::delta(ring, 1).unwrap();
            let x = COIFamily::delta(ring, 5).unwrap();
            assert_eq!(coi_add(&zero, &x).unwrap(), x);
            assert_eq!(coi_mul(&one, &x).unwrap(), x);
        }
        let z = SampleRing::Integers;
        let sum = coi_add(&COIFamily::delta(z, 2).unwrap(), &COIFamily::delta(z, -7).unwrap()).unwrap();
        assert_eq!(sum, COIFamily::delta(z, -5).unwrap());
    }

    #[test]
    fn coi_validation() {
        let z6 = SampleRing::Mod(6);
        assert!(COIFamily::new(z6, [(0, big(3)), (1, big(4))]).is_ok());
        assert!(matches!(COIFamily::new(z6, [(0, big(3))]), Err(Error::InvalidFamily(_))));
        assert!(matches!(COIFamily::new(z6, [(0, big(2)), (1, big(5))]), Err(Error::InvalidFamily(_))));
        assert!(matches!(COIFamily::new(SampleRing::Integers, [(0, big(2)), (1, big(-1))]), Err(Error::InvalidFamily(_))));
        assert!(SampleRing::Mod(6).has_zero_divisors());
        assert!(!SampleRing::Mod(7).has_zero_divisors());
    }

    #[test]
    fn random_z6_families_are_valid_and_closed() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = random_coi_z6(&mut rng, 3);
            let b = random_coi_z6(&mut rng, 3);
            coi_add(&a, &b).unwrap();
            coi_mul(&a, &b).unwrap();
            assert_eq!(coi_add(&a, &coi_neg(&a)).unwrap(), COIFamily::delta(SampleRing::Mod(6), 0).unwrap());
        }
    }

    #[test]
    fn apply_is_a_ring_map_on_points() {
        let z6 = SampleRing::Mod(6);
        let a = COIFamily::new(z6, [(2, big(3)), (-1, big(4))]).unwrap();
        assert_eq!(a.apply(&FnZZ::Id), big(2));
        assert_eq!(a.apply(&FnZZ::chi(2)), big(3));
    }
}
