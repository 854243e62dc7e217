//! Tokeniser shared by the polynomial and operand parsers.

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Nesting limit for parenthesised input.
pub(crate) const MAX_DEPTH: usize = 128;
/// Largest exponent accepted by the parsers.
pub(crate) const MAX_EXPONENT: u32 = 64;
/// Largest number of terms a parsed value may reach.
pub(crate) const MAX_TERMS: usize = 20_000;
/// Largest coefficient size, in bits, a parsed value may reach.
pub(crate) const MAX_COEFF_BITS: u64 = 1 << 16;

/// Rejects a product whose naive cost or operand size is out of bounds.
pub(crate) fn check_product(pos: usize, a_terms: usize, b_terms: usize, bits: u64) -> Result<()> {
    if a_terms.saturating_mul(b_terms) > MAX_TERMS * 50 || bits > MAX_COEFF_BITS {
        return Err(Error::parse(pos, "expression too large"));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigInt),
    /// Alphabetic name with an optional directly attached decimal index,
    /// e.g. `x12`, `L3`, `u`, `chi`.
    Sym(String, Option<u32>),
    Plus,
    Minus,
    Star,
    Caret,
    Tensor,
    Wedge,
    Compose,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: usize,
}

pub(crate) fn tokenize(input: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '^' => Tok::Caret,
            '⊗' | '@' => Tok::Tensor,
            '∧' | '&' => Tok::Wedge,
            '∘' => Tok::Compose,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            d if d.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if s.len() > 1000 {
                    return Err(Error::parse(pos, "integer literal too long"));
                }
                out.push(Token {
                    tok: Tok::Int(s.parse().expect("digits")),
                    pos,
                });
                continue;
            }
            a if a.is_alphabetic() || a == '_' => {
                let mut name = String::new();
                while let Some(&(_, a)) = chars.peek() {
                    if a.is_alphabetic() || a == '_' {
                        name.push(a);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let mut digits = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let index = if digits.is_empty() {
                    None
                } else {
                    Some(
                        digits
                            .parse::<u32>()
                            .map_err(|_| Error::parse(pos, "index out of range"))?,
                    )
                };
                out.push(Token {
                    tok: Tok::Sym(name, index),
                    pos,
                });
                continue;
            }
            other => return Err(Error::parse(pos, format!("unexpected character {other:?}"))),
        };
        chars.next();
        out.push(Token { tok, pos });
    }
    Ok(out)
}

/// Cursor over a token stream.
pub(crate) struct Cursor {
    toks: Vec<Token>,
    at: usize,
    end: usize,
}

impl Cursor {
    pub fn new(input: &str) -> Result<Cursor> {
        Ok(Cursor {
            toks: tokenize(input)?,
            at: 0,
            end: input.len(),
        })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.tok)
    }

    pub fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.pos).unwrap_or(self.end)
    }

    pub fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.tok.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected {tok:?}")))
        }
    }

    pub fn at_end(&self) -> bool {
        self.at >= self.toks.len()
    }

    pub fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(Error::parse(self.pos(), "trailing input"))
        }
    }

    pub fn exponent(&mut self) -> Result<u32> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Int(n)) => {
                let e: u32 = n
                    .try_into()
                    .map_err(|_| Error::parse(pos, "exponent out of range"))?;
                if e > MAX_EXPONENT {
                    return Err(Error::parse(pos, "exponent too large"));
                }
                Ok(e)
            }
            _ => Err(Error::parse(pos, "expected exponent")),
        }
    }
}
