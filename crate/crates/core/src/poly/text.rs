use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};

use super::{Family, IntPoly, Var};
use crate::error::{Error, Result};
use crate::lex::{check_product, Cursor, Tok, MAX_DEPTH, MAX_TERMS};

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    /// Parses sums, differences, products, powers and parentheses over
    /// integers and indexed variables such as `x1`, `λ3`, `L3`, `u`.
    fn from_str(s: &str) -> Result<IntPoly> {
        let mut cur = Cursor::new(s)?;
        if cur.at_end() {
            return Err(Error::parse(0, "empty polynomial"));
        }
        let p = sum(&mut cur, 0)?;
        cur.finish()?;
        Ok(p)
    }
}

pub(crate) fn parse_var(name: &str, index: Option<u32>, pos: usize) -> Result<Var> {
    let family = Family::from_symbol(name)
        .ok_or_else(|| Error::parse(pos, format!("unknown variable family `{name}`")))?;
    let index = match (family, index) {
        (Family::U, None) => 1,
        (_, Some(i)) if i >= 1 => i,
        (_, Some(_)) => return Err(Error::parse(pos, "variable indices start at 1")),
        (_, None) => return Err(Error::parse(pos, format!("`{name}` needs an index"))),
    };
    Ok(Var::new(family, index))
}

fn sum(cur: &mut Cursor, depth: usize) -> Result<IntPoly> {
    let mut acc = if cur.eat(&Tok::Minus) {
        -product(cur, depth)?
    } else {
        cur.eat(&Tok::Plus);
        product(cur, depth)?
    };
    loop {
        if cur.eat(&Tok::Plus) {
            acc = acc + product(cur, depth)?;
        } else if cur.eat(&Tok::Minus) {
            acc = acc - product(cur, depth)?;
        } else {
            return Ok(acc);
        }
    }
}

fn product(cur: &mut Cursor, depth: usize) -> Result<IntPoly> {
    let mut acc = power(cur, depth)?;
    loop {
        let pos = cur.pos();
        if !cur.eat(&Tok::Star) {
            return Ok(acc);
        }
        let rhs = power(cur, depth)?;
        acc = guarded_mul(&acc, &rhs, pos)?;
    }
}

fn max_bits(p: &IntPoly) -> u64 {
    p.terms().map(|(_, c)| c.bits()).max().unwrap_or(0)
}

fn guarded_mul(a: &IntPoly, b: &IntPoly, pos: usize) -> Result<IntPoly> {
    check_product(pos, a.len(), b.len(), max_bits(a) + max_bits(b))?;
    let out = a * b;
    if out.len() > MAX_TERMS {
        return Err(Error::parse(pos, "expression too large"));
    }
    Ok(out)
}

fn power(cur: &mut Cursor, depth: usize) -> Result<IntPoly> {
    let base = atom(cur, depth)?;
    let pos = cur.pos();
    if !cur.eat(&Tok::Caret) {
        return Ok(base);
    }
    let e = cur.exponent()?;
    let mut acc = IntPoly::one();
    for _ in 0..e {
        acc = guarded_mul(&acc, &base, pos)?;
    }
    Ok(acc)
}

fn atom(cur: &mut Cursor, depth: usize) -> Result<IntPoly> {
    let pos = cur.pos();
    match cur.next() {
        Some(Tok::Int(n)) => Ok(IntPoly::constant(n)),
        Some(Tok::Sym(name, index)) => Ok(IntPoly::var(parse_var(&name, index, pos)?)),
        Some(Tok::LParen) => {
            if depth >= MAX_DEPTH {
                return Err(Error::parse(pos, "nesting too deep"));
            }
            let inner = sum(cur, depth + 1)?;
            cur.expect(&Tok::RParen)?;
            Ok(inner)
        }
        Some(Tok::Minus) => {
            if depth >= MAX_DEPTH {
                return Err(Error::parse(pos, "nesting too deep"));
            }
            Ok(-atom(cur, depth + 1)?)
        }
        _ => Err(Error::parse(pos, "expected a term")),
    }
}
