//! Ordered bases of the weight blocks `C_m^(w,h)`.
//!
//! Words are listed in increasing order of their factor lists (compared
//! factor by factor in the canonical generator order). Matrices built
//! against a [`BasisIndex`] are therefore reproducible bit-for-bit.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::chain::{Chain, WedgeWord, WeightSignature};
use crate::error::{Error, Result};
use crate::mvf::{DirectionSet, Generator, MultiIndex};
use crate::rational::Rational;

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc.checked_mul(n - t).expect("binomial overflow") / (t + 1);
    }
    acc
}

/// Number of monomials of degree `b` in `n` variables.
pub fn polynomial_space_dim(n: usize, b: usize) -> u128 {
    binomial((b + n - 1) as u128, (n - 1) as u128)
}

/// Dimension of `g_{i,j}`: `(i+1)`-vector fields with `(j+1)`-homogeneous coefficients.
pub fn generator_space_dim(n: usize, i: i64, j: i64) -> u128 {
    if i < 0 || j < -1 || i as usize >= n {
        return 0;
    }
    binomial(n as u128, (i + 1) as u128) * polynomial_space_dim(n, (j + 1) as usize)
}

/// All exponent vectors of total degree `b` in `n` variables, lexicographically increasing.
fn exponent_vectors(n: usize, b: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, b: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if prefix.len() + 1 == n {
            prefix.push(b);
            out.push(MultiIndex::new(prefix.iter().copied()));
            prefix.pop();
            return;
        }
        for e in 0..=b {
            prefix.push(e);
            rec(n, b - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, b, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Increasing `k`-subsets of `1..=n`, lexicographically.
fn direction_sets(n: usize, k: usize) -> Vec<DirectionSet> {
    fn rec(n: usize, k: usize, next: usize, prefix: &mut Vec<usize>, out: &mut Vec<DirectionSet>) {
        if prefix.len() == k {
            out.push(DirectionSet::new(prefix.iter().copied(), n).expect("valid subset"));
            return;
        }
        for a in next..=n {
            prefix.push(a);
            rec(n, k, a + 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, 1, &mut Vec::new(), &mut out);
    out
}

/// Basis of `g_{i,j}` on n-space in canonical order.
pub fn generators_of_bidegree(n: usize, i: i64, j: i64) -> Vec<Generator> {
    if generator_space_dim(n, i, j) == 0 {
        return Vec::new();
    }
    let alphas = direction_sets(n, (i + 1) as usize);
    let betas = exponent_vectors(n, (j + 1) as u32);
    let mut out = Vec::with_capacity(alphas.len() * betas.len());
    for a in &alphas {
        for b in &betas {
            out.push(Generator::new(a.clone(), b.clone()).expect("in range"));
        }
    }
    out.sort();
    out
}

/// Upper bound on the arity of any nonempty block `C_m^(w,h)`.
///
/// At most `n + w` factors have constant coefficients (`n` even constant
/// vector fields, and each odd-or-higher factor costs weight), at most
/// `n^2 + w` have linear coefficients, and factors of higher degree
/// each consume at least one unit of `h + (number of constants)`.
pub fn arity_bound(n: usize, w: i64, h: i64) -> usize {
    if w < 0 {
        return 0;
    }
    let n = n as i64;
    let constants = n + w;
    let linear = n * n + w;
    let higher = (h + n + w).max(0);
    (constants + linear + higher) as usize
}

/// `dim C_m^(w,h)` by a generating-function count over generator types
/// (exterior powers for even g-degree, symmetric powers for odd).
/// Saturates at `u128::MAX`.
pub fn chain_dim(n: usize, m: usize, w: i64, h: i64) -> u128 {
    if n == 0 || m == 0 || w < 0 || h < -(m as i64) {
        return 0;
    }
    let max_i = w.min(n as i64 - 1);
    let max_j = h + m as i64 - 1;
    // state: (arity, w, h) -> count
    let mut dp: HashMap<(usize, i64, i64), u128> = HashMap::new();
    dp.insert((0, 0, 0), 1);
    for i in 0..=max_i {
        for j in -1..=max_j {
            let d = generator_space_dim(n, i, j);
            if d == 0 {
                continue;
            }
            let mut next = dp.clone();
            for (&(k, wv, hv), &cnt) in &dp {
                let mut r = 1usize;
                while k + r <= m && wv + i * r as i64 <= w {
                    let ways = if i % 2 == 0 {
                        binomial(d, r as u128)
                    } else {
                        binomial(d + r as u128 - 1, r as u128)
                    };
                    if ways == 0 {
                        break;
                    }
                    let (k2, h2) = (k + r, hv + j * r as i64);
                    // each remaining factor lowers h by at most one
                    if h2 - (m - k2) as i64 > h {
                        break;
                    }
                    let slot = next.entry((k2, wv + i * r as i64, h2)).or_insert(0);
                    *slot = slot.saturating_add(cnt.saturating_mul(ways));
                    r += 1;
                }
            }
            dp = next;
        }
    }
    dp.get(&(m, w, h)).copied().unwrap_or(0)
}

/// Largest `m` with `C_m^(w,h)` nonempty (0 when every block is empty).
pub fn max_arity(n: usize, w: i64, h: i64) -> usize {
    (1..=arity_bound(n, w, h)).rev().find(|&m| chain_dim(n, m, w, h) > 0).unwrap_or(0)
}

/// Ordered basis of one weight block with a word-to-position map.
#[derive(Clone, Debug)]
pub struct BasisIndex {
    n: usize,
    signature: WeightSignature,
    words: Vec<WedgeWord>,
    index: HashMap<WedgeWord, usize>,
}

impl BasisIndex {
    /// Builds an index over `words` in the given order. Words must be
    /// distinct and carry `signature`.
    pub fn from_words(n: usize, signature: WeightSignature, words: Vec<WedgeWord>) -> Result<Self> {
        let mut index = HashMap::with_capacity(words.len());
        for (k, w) in words.iter().enumerate() {
            if w.signature() != signature || w.n() != n {
                return Err(Error::WordOutsideBasis(w.to_string()));
            }
            if index.insert(w.clone(), k).is_some() {
                return Err(Error::Parse(format!("duplicate basis word `{w}`")));
            }
        }
        Ok(BasisIndex { n, signature, words, index })
    }

    /// Same words, reversed order.
    pub fn reversed(&self) -> BasisIndex {
        let words: Vec<_> = self.words.iter().rev().cloned().collect();
        BasisIndex::from_words(self.n, self.signature, words).expect("same words")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signature(&self) -> WeightSignature {
        self.signature
    }

    pub fn words(&self) -> &[WedgeWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, word: &WedgeWord) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn word(&self, k: usize) -> &WedgeWord {
        &self.words[k]
    }
}

struct Group {
    i: i64,
    j: i64,
    start: usize,
    end: usize,
}

struct Enumerator {
    gens: Vec<Generator>,
    groups: Vec<Group>,
    group_of: Vec<usize>,
    lookup: HashMap<(i64, i64), usize>,
}

impl Enumerator {
    fn new(n: usize, m: usize, w: i64, h: i64) -> Self {
        let max_i = w.min(n as i64 - 1);
        let max_j = h + m as i64 - 1;
        let mut gens = Vec::new();
        let mut groups = Vec::new();
        let mut group_of = Vec::new();
        let mut lookup = HashMap::new();
        // (|alpha|, |beta|) ascending matches the canonical generator order
        for i in 0..=max_i {
            for j in -1..=max_j {
                let block = generators_of_bidegree(n, i, j);
                if block.is_empty() {
                    continue;
                }
                let start = gens.len();
                gens.extend(block);
                lookup.insert((i, j), groups.len());
                group_of.resize(gens.len(), groups.len());
                groups.push(Group { i, j, start, end: gens.len() });
            }
        }
        Enumerator { gens, groups, group_of, lookup }
    }

    fn dfs(&self, start: usize, k_rem: usize, w_rem: i64, h_rem: i64, stack: &mut Vec<usize>, out: &mut Vec<WedgeWord>) {
        if k_rem == 0 {
            if w_rem == 0 && h_rem == 0 {
                out.push(WedgeWord::from_canonical(stack.iter().map(|&k| self.gens[k].clone()).collect()));
            }
            return;
        }
        if start >= self.gens.len() {
            return;
        }
        if k_rem == 1 {
            if let Some(&gi) = self.lookup.get(&(w_rem, h_rem)) {
                let g = &self.groups[gi];
                for idx in start.max(g.start)..g.end {
                    stack.push(idx);
                    self.dfs(idx, 0, 0, 0, stack, out);
                    stack.pop();
                }
            }
            return;
        }
        for g in &self.groups[self.group_of[start]..] {
            if g.i * k_rem as i64 > w_rem {
                break;
            }
            if g.j > h_rem + k_rem as i64 - 1 {
                continue;
            }
            for idx in start.max(g.start)..g.end {
                let next = if self.gens[idx].is_odd() { idx } else { idx + 1 };
                stack.push(idx);
                self.dfs(next, k_rem - 1, w_rem - g.i, h_rem - g.j, stack, out);
                stack.pop();
            }
        }
    }
}

/// Enumerates every canonical word of `C_m^(w,h)` on n-space, in basis order.
pub fn enumerate_basis(n: usize, m: usize, w: i64, h: i64) -> BasisIndex {
    let signature = WeightSignature { m, w, h };
    let mut words = Vec::new();
    if chain_dim(n, m, w, h) > 0 {
        let e = Enumerator::new(n, m, w, h);
        if m == 1 {
            e.dfs(0, 1, w, h, &mut Vec::new(), &mut words);
        } else {
            // split on the first factor; each branch yields a contiguous sorted run
            let runs: Vec<Vec<WedgeWord>> = (0..e.gens.len())
                .into_par_iter()
                .map(|first| {
                    let g = &e.gens[first];
                    let (i, j) = g.bidegree();
                    let mut out = Vec::new();
                    if i * m as i64 <= w {
                        let next = if g.is_odd() { first } else { first + 1 };
                        let mut stack = vec![first];
                        e.dfs(next, m - 1, w - i, h - j, &mut stack, &mut out);
                    }
                    out
                })
                .collect();
            words = runs.into_iter().flatten().collect();
        }
    }
    let index = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
    BasisIndex { n, signature, words, index }
}

/// Coordinates of `c` in `basis`.
pub fn chain_to_vector(c: &Chain, basis: &BasisIndex) -> Result<Vec<Rational>> {
    let mut v = vec![Rational::zero(); basis.len()];
    for (w, coeff) in c.terms() {
        let k = basis.position(w).ok_or_else(|| Error::WordOutsideBasis(w.to_string()))?;
        v[k] = coeff.clone();
    }
    Ok(v)
}

pub fn vector_to_chain(v: &[Rational], basis: &BasisIndex) -> Result<Chain> {
    if v.len() != basis.len() {
        return Err(Error::DimensionMismatch { left: basis.len(), right: v.len() });
    }
    let mut c = Chain::zero(basis.n());
    for (k, coeff) in v.iter().enumerate() {
        if !coeff.is_zero() {
            c.add_word(coeff.clone(), basis.word(k).clone());
        }
    }
    Ok(c)
}
