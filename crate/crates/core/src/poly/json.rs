use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Family, IntPoly, Monomial, Var};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    /// Decimal string; coefficients are unbounded.
    pub coeff: String,
    pub monomial: Vec<FactorJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorJson {
    pub family: String,
    pub index: u32,
    pub exp: u32,
}

impl IntPoly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    coeff: c.to_string(),
                    monomial: m
                        .pairs()
                        .iter()
                        .map(|&(v, e)| FactorJson {
                            family: v.family.symbol().to_string(),
                            index: v.index,
                            exp: e,
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json()).expect("polynomial JSON is always serialisable")
    }

    /// Validates and converts the wire form. Zero coefficients, zero
    /// exponents, repeated variables within a monomial and repeated
    /// monomials are all rejected so that every accepted document is in
    /// canonical form up to term order.
    pub fn from_json(doc: &PolyJson) -> Result<IntPoly> {
        let mut seen = BTreeSet::new();
        let mut out = IntPoly::zero();
        for (n, term) in doc.terms.iter().enumerate() {
            let coeff: BigInt = term
                .coeff
                .parse()
                .map_err(|_| Error::parse(n, format!("bad coefficient {:?}", term.coeff)))?;
            if coeff.is_zero() {
                return Err(Error::parse(n, "zero coefficient"));
            }
            let mut vars = BTreeSet::new();
            let mut pairs = Vec::with_capacity(term.monomial.len());
            for f in &term.monomial {
                let family = Family::from_symbol(&f.family)
                    .ok_or_else(|| Error::parse(n, format!("unknown family {:?}", f.family)))?;
                if f.index == 0 || f.exp == 0 {
                    return Err(Error::parse(n, "indices and exponents must be positive"));
                }
                let v = Var::new(family, f.index);
                if !vars.insert(v) {
                    return Err(Error::parse(n, format!("variable {v} repeated")));
                }
                pairs.push((v, f.exp));
            }
            let m = Monomial::from_pairs(pairs);
            if !seen.insert(m.clone()) {
                return Err(Error::parse(n, format!("monomial {m} repeated")));
            }
            out.add_term(m, coeff);
        }
        Ok(out)
    }

    pub fn from_json_str(s: &str) -> Result<IntPoly> {
        let doc: PolyJson =
            serde_json::from_str(s).map_err(|e| Error::parse(e.column(), e.to_string()))?;
        IntPoly::from_json(&doc)
    }
}
