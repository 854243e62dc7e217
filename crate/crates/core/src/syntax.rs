//! One-line operand syntax for even and odd operations.
//!
//! Atoms: `chi(d)`, `id`, `const(c)`, integers, `L<k>` or `λ^kι` (λᵏι), `l<k>` (lᵏ)
//! and `identity` (`1 ⊗ λ¹ι + ι ⊗ 1`). Operators: `+`, `-`, `*`, `⊗`, `∧`
//! and `^` for powers; `∘` separates the factors of a composite.
//! `⊗`, `*` and `∧` share one precedence level above `+`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::evenops::{compose_even, identity_op, EvenOp};
use crate::exterior::Exterior;
use crate::kbu::KbuElem;
use crate::lex::{check_product, Cursor, Tok, MAX_DEPTH, MAX_TERMS};
use crate::loopgrade::{compose_odd, OddOp};
use crate::poly::{IntPoly, Var};
use crate::setzz::{FnZZ, Window};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operand {
    Even(EvenOp),
    Odd(OddOp),
}

impl Operand {
    pub fn parity(&self) -> u8 {
        match self {
            Operand::Even(_) => 0,
            Operand::Odd(_) => 1,
        }
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Even(e) => e.fmt(f),
            Operand::Odd(o) => o.fmt(f),
        }
    }
}

/// Intermediate values; integers and bare functions or polynomials are
/// promoted once the parity is known.
#[derive(Debug, Clone)]
enum Val {
    Int(BigInt),
    Fn(FnZZ),
    Kbu(IntPoly),
    Even(Vec<(FnZZ, IntPoly)>),
    Odd(Exterior),
}

fn fn_sum(f: FnZZ, g: FnZZ) -> FnZZ {
    let mut parts = Vec::new();
    for h in [f, g] {
        match h {
            FnZZ::Sum(hs) => parts.extend(hs),
            h => parts.push(h),
        }
    }
    FnZZ::Sum(parts)
}

fn fn_prod(f: FnZZ, g: FnZZ) -> FnZZ {
    match (f, g) {
        (FnZZ::Const(c), g) | (g, FnZZ::Const(c)) if c.is_one() => g,
        (f, g) => {
            let mut parts = Vec::new();
            for h in [f, g] {
                match h {
                    FnZZ::Prod(hs) => parts.extend(hs),
                    h => parts.push(h),
                }
            }
            FnZZ::Prod(parts)
        }
    }
}

fn as_even(v: Val) -> Option<Vec<(FnZZ, IntPoly)>> {
    Some(match v {
        Val::Int(c) => vec![(FnZZ::Const(c), IntPoly::one())],
        Val::Fn(f) => vec![(f, IntPoly::one())],
        Val::Kbu(p) => vec![(FnZZ::constant(1), p)],
        Val::Even(s) => s,
        Val::Odd(_) => return None,
    })
}

fn as_odd(v: Val) -> Option<Exterior> {
    match v {
        Val::Int(c) => Some(Exterior::unit(c)),
        Val::Odd(e) => Some(e),
        _ => None,
    }
}

fn mismatch(pos: usize) -> Error {
    Error::ParityMismatch(format!("even and odd terms mixed at byte {pos}"))
}

fn add(a: Val, b: Val, pos: usize) -> Result<Val> {
    if size(&a).0 + size(&b).0 > MAX_TERMS {
        return Err(Error::parse(pos, "expression too large"));
    }
    Ok(match (a, b) {
        (Val::Int(x), Val::Int(y)) => Val::Int(x + y),
        (Val::Fn(f), Val::Fn(g)) => Val::Fn(fn_sum(f, g)),
        (Val::Kbu(p), Val::Kbu(q)) => Val::Kbu(p + q),
        (a @ Val::Odd(_), b) | (a, b @ Val::Odd(_)) => {
            let (x, y) = (as_odd(a).ok_or_else(|| mismatch(pos))?, as_odd(b).ok_or_else(|| mismatch(pos))?);
            Val::Odd(x.add(&y))
        }
        (a, b) => {
            let mut s = as_even(a).expect("even");
            s.extend(as_even(b).expect("even"));
            Val::Even(s)
        }
    })
}

fn neg(a: Val) -> Val {
    let m1 = -BigInt::one();
    match a {
        Val::Int(x) => Val::Int(-x),
        Val::Fn(f) => Val::Fn(fn_prod(FnZZ::Const(m1), f)),
        Val::Kbu(p) => Val::Kbu(-p),
        Val::Even(s) => Val::Even(s.into_iter().map(|(f, p)| (f, -p)).collect()),
        Val::Odd(e) => Val::Odd(e.neg()),
    }
}

/// Term count and largest coefficient size, used to bound parser work.
fn size(v: &Val) -> (usize, u64) {
    let poly = |p: &IntPoly| (p.len(), p.terms().map(|(_, c)| c.bits()).max().unwrap_or(0));
    match v {
        Val::Int(c) => (1, c.bits()),
        Val::Fn(f) => (f.size(), 0),
        Val::Kbu(p) => poly(p),
        Val::Even(s) => s.iter().fold((0, 0), |(n, b), (f, p)| {
            let (pn, pb) = poly(p);
            (n + pn.max(1) * f.size(), b.max(pb))
        }),
        Val::Odd(e) => (e.terms().len(), e.terms().values().map(|c| c.bits()).max().unwrap_or(0)),
    }
}

fn mul(a: Val, b: Val, pos: usize) -> Result<Val> {
    let ((an, ab), (bn, bb)) = (size(&a), size(&b));
    check_product(pos, an, bn, ab + bb)?;
    let out = mul_unchecked(a, b, pos)?;
    if size(&out).0 > MAX_TERMS {
        return Err(Error::parse(pos, "expression too large"));
    }
    Ok(out)
}

fn mul_unchecked(a: Val, b: Val, pos: usize) -> Result<Val> {
    Ok(match (a, b) {
        (Val::Int(x), Val::Int(y)) => Val::Int(x * y),
        (Val::Int(c), Val::Odd(e)) | (Val::Odd(e), Val::Int(c)) => Val::Odd(e.scale(&c)),
        (Val::Odd(x), Val::Odd(y)) => Val::Odd(x.wedge(&y)),
        (Val::Odd(_), _) | (_, Val::Odd(_)) => return Err(mismatch(pos)),
        (Val::Fn(f), Val::Fn(g)) => Val::Fn(fn_prod(f, g)),
        (Val::Kbu(p), Val::Kbu(q)) => Val::Kbu(p * q),
        (Val::Int(c), Val::Kbu(p)) | (Val::Kbu(p), Val::Int(c)) => Val::Kbu(p.scale(&c)),
        (Val::Int(c), Val::Fn(f)) | (Val::Fn(f), Val::Int(c)) => Val::Fn(fn_prod(FnZZ::Const(c), f)),
        (a, b) => {
            let (x, y) = (as_even(a).expect("even"), as_even(b).expect("even"));
            let mut out = Vec::new();
            for (f, p) in &x {
                for (g, q) in &y {
                    out.push((fn_prod(f.clone(), g.clone()), p * q));
                }
            }
            Val::Even(out)
        }
    })
}

fn tensor(a: Val, b: Val, pos: usize) -> Result<Val> {
    match (&a, &b) {
        (Val::Int(_) | Val::Fn(_), Val::Int(_) | Val::Kbu(_)) => mul(a, b, pos),
        (Val::Odd(_), _) | (_, Val::Odd(_)) => Err(mismatch(pos)),
        _ => Err(Error::parse(pos, "⊗ expects a function on the left and a λ-polynomial on the right")),
    }
}

struct Parser {
    cur: Cursor,
    trunc: u32,
    window: Window,
}

impl Parser {
    fn sum(&mut self, depth: usize) -> Result<Val> {
        let mut acc = if self.cur.eat(&Tok::Minus) {
            neg(self.product(depth)?)
        } else {
            self.product(depth)?
        };
        loop {
            let pos = self.cur.pos();
            if self.cur.eat(&Tok::Plus) {
                acc = add(acc, self.product(depth)?, pos)?;
            } else if self.cur.eat(&Tok::Minus) {
                acc = add(acc, neg(self.product(depth)?), pos)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn product(&mut self, depth: usize) -> Result<Val> {
        let mut acc = self.power(depth)?;
        loop {
            let pos = self.cur.pos();
            if self.cur.eat(&Tok::Star) || self.cur.eat(&Tok::Wedge) {
                acc = mul(acc, self.power(depth)?, pos)?;
            } else if self.cur.eat(&Tok::Tensor) {
                acc = tensor(acc, self.power(depth)?, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self, depth: usize) -> Result<Val> {
        let base = self.atom(depth)?;
        let pos = self.cur.pos();
        if !self.cur.eat(&Tok::Caret) {
            return Ok(base);
        }
        let e = self.cur.exponent()?;
        let mut acc = Val::Int(BigInt::one());
        for _ in 0..e {
            acc = mul(acc, base.clone(), pos)?;
        }
        Ok(acc)
    }

    fn int_arg(&mut self) -> Result<BigInt> {
        self.cur.expect(&Tok::LParen)?;
        let neg = self.cur.eat(&Tok::Minus);
        let pos = self.cur.pos();
        let v = match self.cur.next() {
            Some(Tok::Int(n)) => n,
            _ => return Err(Error::parse(pos, "expected an integer")),
        };
        self.cur.expect(&Tok::RParen)?;
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self, depth: usize) -> Result<Val> {
        if depth > MAX_DEPTH {
            return Err(Error::parse(self.cur.pos(), "nesting too deep"));
        }
        let pos = self.cur.pos();
        match self.cur.next() {
            Some(Tok::Int(n)) => Ok(Val::Int(n)),
            Some(Tok::LParen) => {
                let v = self.sum(depth + 1)?;
                self.cur.expect(&Tok::RParen)?;
                Ok(v)
            }
            Some(Tok::Minus) => Ok(neg(self.atom(depth + 1)?)),
            Some(Tok::Sym(name, index)) => self.symbol(&name, index, pos),
            _ => Err(Error::parse(pos, "expected an operand")),
        }
    }

    fn symbol(&mut self, name: &str, index: Option<u32>, pos: usize) -> Result<Val> {
        let positive = |k: Option<u32>| match k {
            Some(k) if k >= 1 => Ok(k),
            _ => Err(Error::parse(pos, format!("`{name}` needs an index of at least 1"))),
        };
        match (name, index) {
            ("chi" | "χ" | "chi_" | "χ_", None) => Ok(Val::Fn(FnZZ::Chi(self.int_arg()?))),
            ("χ_" | "chi_", Some(d)) => Ok(Val::Fn(FnZZ::chi(d))),
            ("const", None) => Ok(Val::Fn(FnZZ::Const(self.int_arg()?))),
            ("id" | "ι" | "iota", None) => Ok(Val::Fn(FnZZ::Id)),
            ("identity", None) => {
                let op = identity_op(self.trunc, self.window)?;
                Ok(Val::Even(op.summands().iter().map(|(f, x)| (f.clone(), x.poly().clone())).collect()))
            }
            ("L" | "λ" | "lambda", k) => {
                // `λ^kι` is accepted as a spelling of `λk`.
                let k = match k {
                    None if self.cur.eat(&Tok::Caret) => Some(self.cur.exponent()?),
                    k => k,
                };
                let k = positive(k)?;
                let _ = self.cur.eat(&Tok::Sym("ι".into(), None)) || self.cur.eat(&Tok::Sym("iota".into(), None));
                Ok(Val::Kbu(IntPoly::var(Var::lambda(k))))
            }
            ("l", k) => Ok(Val::Odd(Exterior::generator(positive(k)?))),
            _ => Err(Error::parse(pos, format!("unknown symbol `{name}`"))),
        }
    }
}

fn finish(v: Val, trunc: u32, window: Window) -> Result<Operand> {
    match v {
        Val::Odd(e) => Ok(Operand::Odd(OddOp::new(e, trunc)?)),
        other => {
            let summands = as_even(other)
                .expect("even")
                .into_iter()
                .map(|(f, p)| KbuElem::new(p, trunc).map(|x| (f, x)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Operand::Even(EvenOp::new(summands, trunc, window)?))
        }
    }
}

/// Parses a composite `a ∘ b ∘ …` into its factors.
pub fn parse_factors(s: &str, trunc: u32, window: Window) -> Result<Vec<Operand>> {
    let mut p = Parser { cur: Cursor::new(s)?, trunc, window };
    if p.cur.at_end() {
        return Err(Error::parse(0, "empty operand"));
    }
    let mut out = vec![finish(p.sum(0)?, trunc, window)?];
    while p.cur.eat(&Tok::Compose) {
        out.push(finish(p.sum(0)?, trunc, window)?);
    }
    p.cur.finish()?;
    Ok(out)
}

/// Parses a single operand (no `∘`).
pub fn parse_operand(s: &str, trunc: u32, window: Window) -> Result<Operand> {
    let mut parts = parse_factors(s, trunc, window)?;
    if parts.len() != 1 {
        return Err(Error::parse(0, "expected a single operand, found a composite"));
    }
    Ok(parts.pop().expect("one part"))
}

/// `a ∘ b` for operands of equal parity.
pub fn compose_operands(a: &Operand, b: &Operand) -> Result<Operand> {
    match (a, b) {
        (Operand::Even(r), Operand::Even(s)) => Ok(Operand::Even(compose_even(r, s)?)),
        (Operand::Odd(x), Operand::Odd(y)) => Ok(Operand::Odd(compose_odd(x, y)?)),
        _ => Err(Error::ParityMismatch("composition needs operands of the same parity".into())),
    }
}

/// Parses and evaluates `a ∘ b ∘ …`, composing from the right.
pub fn eval_composite(s: &str, trunc: u32, window: Window) -> Result<Operand> {
    let parts = parse_factors(s, trunc, window)?;
    let mut it = parts.into_iter().rev();
    let mut acc = it.next().expect("nonempty");
    for left in it {
        acc = compose_operands(&left, &acc)?;
    }
    Ok(acc)
}
