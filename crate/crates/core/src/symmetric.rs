//! Universal λ-ring polynomials from the splitting principle.
//!
//! Everything here works on the dominant part of a symmetric polynomial:
//! a symmetric polynomial in `n` variables is determined by its coefficients
//! on monomials whose exponent vector is a partition, and the coefficient of
//! `x^ν` in a product `e_{r_1} ⋯ e_{r_k}` is the number of 0-1 matrices with
//! row sums `r` and column sums `ν`. Reduction to the elementary basis is
//! the lexicographic leading-monomial algorithm driven by those counts.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Family, IntPoly, Monomial, Var};

/// A partition stored as non-increasing positive parts.
pub type Partition = Vec<u32>;

/// All partitions of `n` with at most `max_len` parts, in increasing
/// lexicographic order.
pub fn partitions(n: u32, max_len: usize) -> Vec<Partition> {
    fn go(n: u32, max_part: u32, max_len: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            cur.push(p);
            go(n - p, p, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_len, &mut Vec::new(), &mut out);
    out.reverse();
    out
}

pub fn conjugate(p: &[u32]) -> Partition {
    let first = p.first().copied().unwrap_or(0);
    (1..=first)
        .map(|i| p.iter().filter(|&&q| q >= i).count() as u32)
        .collect()
}

fn count_cache() -> &'static Mutex<HashMap<(Vec<u32>, Vec<u32>), BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<(Vec<u32>, Vec<u32>), BigInt>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Number of 0-1 matrices with the given row and column sums.
pub fn count_01_matrices(rows: &[u32], cols: &[u32]) -> BigInt {
    let mut rows: Vec<u32> = rows.iter().copied().filter(|&r| r > 0).collect();
    let mut cols: Vec<u32> = cols.iter().copied().filter(|&c| c > 0).collect();
    rows.sort_unstable_by(|a, b| b.cmp(a));
    cols.sort_unstable_by(|a, b| b.cmp(a));
    if rows.iter().sum::<u32>() != cols.iter().sum::<u32>() {
        return BigInt::zero();
    }
    let key = (rows, cols);
    if let Some(v) = count_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let mut memo = HashMap::new();
    let v = count_rows(&key.0, key.1.clone(), &mut memo);
    count_cache().lock().unwrap().insert(key, v.clone());
    v
}

fn count_rows(rows: &[u32], caps: Vec<u32>, memo: &mut HashMap<(usize, Vec<u32>), BigInt>) -> BigInt {
    let Some((&r, rest)) = rows.split_first() else {
        return if caps.is_empty() { BigInt::one() } else { BigInt::zero() };
    };
    if caps.len() < r as usize || caps.first().copied().unwrap_or(0) as usize > rows.len() {
        return BigInt::zero();
    }
    let key = (rows.len(), caps);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    // Columns with equal remaining capacity are interchangeable.
    let mut groups: Vec<(u32, u32)> = Vec::new();
    for &c in &key.1 {
        match groups.last_mut() {
            Some((val, mult)) if *val == c => *mult += 1,
            _ => groups.push((c, 1)),
        }
    }
    let mut total = BigInt::zero();
    let mut take = vec![0u32; groups.len()];
    distribute(&groups, 0, r, &mut take, &mut |take| {
        let mut weight = BigInt::one();
        let mut next = Vec::with_capacity(key.1.len());
        for (&(val, mult), &t) in groups.iter().zip(take) {
            weight *= binomial(BigInt::from(mult), BigInt::from(t));
            next.extend(std::iter::repeat(val).take((mult - t) as usize));
            if val > 1 {
                next.extend(std::iter::repeat(val - 1).take(t as usize));
            }
        }
        next.sort_unstable_by(|a, b| b.cmp(a));
        total += weight * count_rows(rest, next, memo);
    });
    memo.insert(key, total.clone());
    total
}

fn distribute(groups: &[(u32, u32)], at: usize, left: u32, take: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if at == groups.len() {
        if left == 0 {
            f(take);
        }
        return;
    }
    let remaining_cap: u32 = groups[at..].iter().map(|g| g.1).sum();
    if remaining_cap < left {
        return;
    }
    for t in 0..=groups[at].1.min(left) {
        take[at] = t;
        distribute(groups, at + 1, left - t, take, f);
    }
    take[at] = 0;
}

/// Coefficients carried through the leading-monomial reduction.
trait Coef: Clone {
    fn is_zero(&self) -> bool;
    fn add_scaled(&mut self, other: &Self, k: &BigInt);
    fn scaled(&self, k: &BigInt) -> Self;
}

impl Coef for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_scaled(&mut self, other: &Self, k: &BigInt) {
        *self += other * k;
    }
    fn scaled(&self, k: &BigInt) -> Self {
        self * k
    }
}

type SparseVec = BTreeMap<Partition, BigInt>;

impl Coef for SparseVec {
    fn is_zero(&self) -> bool {
        self.is_empty()
    }
    fn add_scaled(&mut self, other: &Self, k: &BigInt) {
        for (p, c) in other {
            let slot = self.entry(p.clone()).or_default();
            *slot += c * k;
            if Zero::is_zero(slot) {
                self.remove(p);
            }
        }
    }
    fn scaled(&self, k: &BigInt) -> Self {
        if Zero::is_zero(k) {
            return SparseVec::new();
        }
        self.iter().map(|(p, c)| (p.clone(), c * k)).collect()
    }
}

/// Rewrites a dominant part (partition → coefficient) in `nvars` variables as
/// a combination of elementary products, keyed by the multiset of
/// elementary indices in non-increasing order.
fn reduce_dominant<C: Coef>(mut dom: BTreeMap<Partition, C>, nvars: usize) -> BTreeMap<Partition, C> {
    let mut out: BTreeMap<Partition, C> = BTreeMap::new();
    dom.retain(|_, c| !c.is_zero());
    while let Some((mu, c)) = dom.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        let rows = conjugate(&mu);
        let size: u32 = mu.iter().sum();
        for nu in partitions(size, nvars) {
            if nu > mu {
                continue;
            }
            let k = count_01_matrices(&rows, &nu);
            if Zero::is_zero(&k) {
                continue;
            }
            let neg = -k;
            match dom.get_mut(&nu) {
                Some(slot) => {
                    slot.add_scaled(&c, &neg);
                    if slot.is_zero() {
                        dom.remove(&nu);
                    }
                }
                None => {
                    let slot = c.scaled(&neg);
                    if !slot.is_zero() {
                        dom.insert(nu, slot);
                    }
                }
            }
        }
        debug_assert!(!dom.contains_key(&mu));
        match out.get_mut(&rows) {
            Some(slot) => slot.add_scaled(&c, &BigInt::one()),
            None => {
                out.insert(rows, c);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn elementary_monomial(family: Family, indices: &[u32]) -> Monomial {
    Monomial::from_pairs(indices.iter().map(|&i| (Var::new(family, i), 1)))
}

/// Exponent vector of `m` in `x_1..x_n` of `family`, or `None` if it is not
/// non-increasing.
fn dominant_exponents(m: &Monomial, family: Family, n: u32) -> Option<Partition> {
    let exps: Vec<u32> = (1..=n).map(|i| m.exponent(Var::new(family, i))).collect();
    if exps.windows(2).all(|w| w[0] >= w[1]) {
        Some(exps.into_iter().filter(|&e| e > 0).collect())
    } else {
        None
    }
}

/// Writes a symmetric polynomial in `x_1..x_m` in terms of the elementary
/// symmetric polynomials `e_1..e_m`.
pub fn elementary_expand(p: &IntPoly, m: u32) -> Result<IntPoly> {
    for v in p.variables() {
        if v.family != Family::X || v.index > m {
            return Err(Error::InvalidIndex(format!(
                "{v} is not one of x1..x{m}"
            )));
        }
    }
    for i in 1..m {
        let swapped = p.rename(|v| match v.index {
            j if j == i => Var::x(i + 1),
            j if j == i + 1 => Var::x(i),
            _ => v,
        });
        if swapped != *p {
            return Err(Error::NonSymmetricInput(Var::x(i).to_string(), Var::x(i + 1).to_string()));
        }
    }
    let mut dom: BTreeMap<Partition, BigInt> = BTreeMap::new();
    for (mono, c) in p.terms() {
        if let Some(part) = dominant_exponents(mono, Family::X, m) {
            dom.insert(part, c.clone());
        }
    }
    let reduced = reduce_dominant(dom, m as usize);
    Ok(IntPoly::from_terms(
        reduced
            .into_iter()
            .map(|(idx, c)| (elementary_monomial(Family::E, &idx), c)),
    ))
}

fn pk_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn pij_cache() -> &'static Mutex<HashMap<(u32, u32, u32), Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, u32), Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The universal polynomial `P_k(x_1..x_k; y_1..y_k)` with `λ^k(ab) = P_k(λ(a); λ(b))`.
pub fn universal_pk(k: u32) -> Result<Arc<IntPoly>> {
    if k == 0 {
        return Err(Error::InvalidIndex("P_k needs k >= 1".into()));
    }
    Ok(universal_pk_upto(k, k))
}

/// `P_k` modulo `x_i, y_j` for `i, j > level`, computed with `min(k, level)`
/// line variables per alphabet.
pub(crate) fn universal_pk_upto(k: u32, level: u32) -> Arc<IntPoly> {
    let n = k.min(level);
    let key = (k, n);
    if let Some(p) = pk_cache().lock().unwrap().get(&key) {
        return p.clone();
    }
    let parts = partitions(k, n as usize);
    // a-partition → (b-partition → coefficient)
    let mut dom: BTreeMap<Partition, SparseVec> = BTreeMap::new();
    for alpha in &parts {
        for beta in &parts {
            let c = count_01_matrices(alpha, beta);
            if !Zero::is_zero(&c) {
                dom.entry(alpha.clone()).or_default().insert(beta.clone(), c);
            }
        }
    }
    let mut out = IntPoly::zero();
    for (x_idx, b_part) in reduce_dominant(dom, n as usize) {
        let xm = elementary_monomial(Family::X, &x_idx);
        for (y_idx, c) in reduce_dominant(b_part, n as usize) {
            out.add_term(xm.mul(&elementary_monomial(Family::Y, &y_idx)), c);
        }
    }
    let out = Arc::new(out);
    pk_cache().lock().unwrap().insert(key, out.clone());
    out
}

/// The universal polynomial `P_{i,j}(λ_1..λ_{ij})` with `λ^i(λ^j(a)) = P_{i,j}(λ(a))`.
pub fn universal_pij(i: u32, j: u32) -> Result<Arc<IntPoly>> {
    if i == 0 || j == 0 {
        return Err(Error::InvalidIndex("P_{i,j} needs i, j >= 1".into()));
    }
    Ok(universal_pij_upto(i, j, i * j))
}

/// `P_{i,j}` modulo `λ_m` for `m > level`.
pub(crate) fn universal_pij_upto(i: u32, j: u32, level: u32) -> Arc<IntPoly> {
    let n = (i * j).min(level);
    let key = (i, j, n);
    if let Some(p) = pij_cache().lock().unwrap().get(&key) {
        return p.clone();
    }
    let out = if i == 1 {
        if j <= n { IntPoly::var(Var::lambda(j)) } else { IntPoly::zero() }
    } else if j == 1 {
        if i <= n { IntPoly::var(Var::lambda(i)) } else { IntPoly::zero() }
    } else {
        let subsets = j_subsets(n, j);
        let mut dom: BTreeMap<Partition, BigInt> = BTreeMap::new();
        for alpha in partitions(i * j, n as usize) {
            let mut caps = alpha.clone();
            caps.resize(n as usize, 0);
            let c = count_distinct_rows(&subsets, 0, i, &mut caps);
            if c > 0 {
                dom.insert(alpha, BigInt::from(c));
            }
        }
        IntPoly::from_terms(
            reduce_dominant(dom, n as usize)
                .into_iter()
                .map(|(idx, c)| (elementary_monomial(Family::Lambda, &idx), c)),
        )
    };
    let out = Arc::new(out);
    pij_cache().lock().unwrap().insert(key, out.clone());
    out
}

fn j_subsets(n: u32, j: u32) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, j: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == j {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            go(c + 1, n, j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n as usize, j as usize, &mut Vec::new(), &mut out);
    out
}

/// Sets of `rows` distinct subsets (chosen in increasing order from
/// `subsets[from..]`) whose column sums exhaust `caps` exactly.
fn count_distinct_rows(subsets: &[Vec<usize>], from: usize, rows: u32, caps: &mut [u32]) -> u64 {
    if rows == 0 {
        return u64::from(caps.iter().all(|&c| c == 0));
    }
    if caps.iter().any(|&c| c > rows) {
        return 0;
    }
    let mut total = 0;
    for s in from..subsets.len() {
        if subsets[s].iter().all(|&c| caps[c] > 0) {
            for &c in &subsets[s] {
                caps[c] -= 1;
            }
            total += count_distinct_rows(subsets, s + 1, rows - 1, caps);
            for &c in &subsets[s] {
                caps[c] += 1;
            }
        }
    }
    total
}

/// The sum of the monomials of `p` that are linear in the `x` family.
pub fn left_linearise(p: &IntPoly) -> IntPoly {
    p.filter(|m| m.degree_in(Family::X) == 1)
}

/// The `k`-th power sum in terms of `λ_1..λ_k` (Newton's identities).
pub fn newton_psi(k: u32) -> Result<IntPoly> {
    if k == 0 {
        return Err(Error::InvalidIndex("ψ^k needs k >= 1".into()));
    }
    let lam = |i: u32| IntPoly::var(Var::lambda(i));
    let mut psi: Vec<IntPoly> = vec![IntPoly::zero()];
    for n in 1..=k {
        let mut p = lam(n).scale(&BigInt::from(if n % 2 == 1 { n as i64 } else { -(n as i64) }));
        for i in 1..n {
            let term = &lam(i) * &psi[(n - i) as usize];
            p = if i % 2 == 1 { p + term } else { p - term };
        }
        psi.push(p);
    }
    Ok(psi.pop().unwrap())
}

/// Generalised binomial coefficient `n(n-1)⋯(n-k+1)/k!`, i.e. `λ^k(n)`.
pub fn lambda_of_integer(n: &BigInt, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}
