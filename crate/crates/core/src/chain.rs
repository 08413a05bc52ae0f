//! Super-wedge words and chains.
//!
//! Factors of a word are kept sorted in the canonical generator order
//! (`|alpha|`, then `|beta|`, then lexicographic). Transposing adjacent
//! factors of g-degrees `x`, `y` costs a sign `-(-1)^(x*y)`: two odd factors
//! commute, every other pair anticommutes, and an even factor squares to zero.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mvf::{DirectionSet, Generator, MultiIndex, MultiVector};
use crate::rational::Rational;

/// `(m, w, h)`: arity, first weight `sum(|alpha_s| - 1)`, second weight `sum(|beta_s| - 1)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct WeightSignature {
    pub m: usize,
    pub w: i64,
    pub h: i64,
}

impl fmt::Display for WeightSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, w={}, h={})", self.m, self.w, self.h)
    }
}

/// Canonical super-wedge word of unit generators.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WedgeWord(Vec<Generator>);

impl WedgeWord {
    pub fn factors(&self) -> &[Generator] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn n(&self) -> usize {
        self.0[0].n()
    }

    pub fn signature(&self) -> WeightSignature {
        weight_signature(self)
    }

    /// Trusts the caller that `factors` is already canonical.
    pub(crate) fn from_canonical(factors: Vec<Generator>) -> Self {
        debug_assert!(factors.windows(2).all(|p| p[0] <= p[1]));
        WedgeWord(factors)
    }

    pub fn into_factors(self) -> Vec<Generator> {
        self.0
    }
}

impl fmt::Display for WedgeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Sign picked up by one adjacent transposition.
#[inline]
fn swap_sign(a: &Generator, b: &Generator) -> i64 {
    if a.is_odd() && b.is_odd() {
        1
    } else {
        -1
    }
}

/// Sorts `factors` into canonical order in place, returning the accumulated
/// sign, or `None` when the word vanishes (a repeated even factor).
pub(crate) fn canonicalize_in_place(factors: &mut [Generator]) -> Option<i64> {
    let mut sign = 1i64;
    for i in 1..factors.len() {
        let mut j = i;
        while j > 0 && factors[j - 1] > factors[j] {
            sign *= swap_sign(&factors[j - 1], &factors[j]);
            factors.swap(j - 1, j);
            j -= 1;
        }
    }
    for pair in factors.windows(2) {
        if pair[0] == pair[1] && !pair[0].is_odd() {
            return None;
        }
    }
    Some(sign)
}

/// Sorts raw factors into canonical order. `Ok(None)` means the word is zero.
pub fn canonicalize_word(raw: Vec<Generator>) -> Result<Option<(i64, WedgeWord)>> {
    if raw.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = raw[0].n();
    if let Some(g) = raw.iter().find(|g| g.n() != n) {
        return Err(Error::DimensionMismatch { left: n, right: g.n() });
    }
    let mut raw = raw;
    Ok(canonicalize_in_place(&mut raw).map(|s| (s, WedgeWord(raw))))
}

pub fn weight_signature(word: &WedgeWord) -> WeightSignature {
    let (w, h) = word
        .0
        .iter()
        .map(Generator::bidegree)
        .fold((0, 0), |(w, h), (i, j)| (w + i, h + j));
    WeightSignature { m: word.arity(), w, h }
}

/// Rational combination of canonical words over n-space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain {
    n: usize,
    terms: BTreeMap<WedgeWord, Rational>,
}

impl Chain {
    pub fn zero(n: usize) -> Self {
        Chain { n, terms: BTreeMap::new() }
    }

    pub fn from_word(coeff: Rational, word: WedgeWord) -> Self {
        let mut c = Chain::zero(word.n());
        c.add_word(coeff, word);
        c
    }

    /// The arity-1 chain of a multivector field.
    pub fn from_multivector(a: &MultiVector) -> Self {
        let mut c = Chain::zero(a.n());
        for t in a.terms() {
            c.add_word(t.coeff, WedgeWord(vec![t.generator]));
        }
        c
    }

    /// `A_1 ^^ ... ^^ A_m` for multivector fields, expanded over monomials.
    pub fn wedge_of(factors: &[MultiVector]) -> Result<Self> {
        let (first, rest) = factors.split_first().ok_or(Error::EmptyWord)?;
        rest.iter()
            .try_fold(Chain::from_multivector(first), |acc, f| wedge_chain(&acc, &Chain::from_multivector(f)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WedgeWord, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &WedgeWord) -> Rational {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn add_word(&mut self, coeff: Rational, word: WedgeWord) {
        debug_assert_eq!(word.n(), self.n);
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    /// Adds `coeff * raw`, canonicalizing the factor list first.
    pub fn add_raw(&mut self, coeff: Rational, mut raw: Vec<Generator>) {
        if coeff.is_zero() || raw.is_empty() {
            return;
        }
        if let Some(s) = canonicalize_in_place(&mut raw) {
            let c = if s == 1 { coeff } else { -coeff };
            self.add_word(c, WedgeWord(raw));
        }
    }

    pub fn add_scaled(&mut self, coeff: &Rational, other: &Chain) {
        if coeff.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_word(c * coeff, w.clone());
        }
    }

    pub fn add(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        out.add_scaled(&Rational::from_integer(-1), other);
        out
    }

    pub fn scale(&self, coeff: &Rational) -> Chain {
        let mut out = Chain::zero(self.n);
        out.add_scaled(coeff, self);
        out
    }

    /// Sub-chain of the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&WedgeWord) -> bool) -> Chain {
        Chain {
            n: self.n,
            terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect(),
        }
    }

    /// Distinct weight signatures present.
    pub fn signatures(&self) -> BTreeSet<WeightSignature> {
        self.terms.keys().map(weight_signature).collect()
    }

    /// The single weight signature of a nonzero homogeneous chain.
    pub fn signature(&self) -> Result<Option<WeightSignature>> {
        let sigs = self.signatures();
        match sigs.len() {
            0 => Ok(None),
            1 => Ok(sigs.into_iter().next()),
            _ => Err(Error::NotHomogeneous),
        }
    }

    /// Canonical text form: one `coeff | factor ; factor ; ...` line per term.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (w, c) in &self.terms {
            s.push_str(&format!("{c} | {w}\n"));
        }
        s
    }

    /// Parses the text form. Blank lines and `#` comments are ignored. A factor
    /// may carry a `c *` prefix, which is folded into the term coefficient.
    /// `n` is taken from the factors, or from `default_n` for an empty chain.
    pub fn from_text(text: &str, default_n: Option<usize>) -> Result<Chain> {
        let mut terms = Vec::new();
        let mut n = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |e: Error| Error::Parse(format!("line {}: {e}", lineno + 1));
            let (c, fs) = line
                .split_once('|')
                .ok_or_else(|| err(Error::Parse("expected `coeff | factors`".into())))?;
            let mut coeff: Rational = c.parse().map_err(err)?;
            let mut factors = Vec::new();
            for f in fs.split(';') {
                let m: crate::mvf::MonomialMV = f.trim().parse().map_err(err)?;
                coeff = coeff * m.coeff;
                factors.push(m.generator);
            }
            let fn_ = factors[0].n();
            if let Some(g) = factors.iter().find(|g| g.n() != fn_) {
                return Err(err(Error::DimensionMismatch { left: fn_, right: g.n() }));
            }
            match n {
                None => n = Some(fn_),
                Some(n0) if n0 != fn_ => return Err(err(Error::DimensionMismatch { left: n0, right: fn_ })),
                _ => {}
            }
            terms.push((coeff, factors));
        }
        let n = n.or(default_n).ok_or_else(|| Error::Parse("empty chain without ambient dimension".into()))?;
        let mut chain = Chain::zero(n);
        for (c, f) in terms {
            chain.add_raw(c, f);
        }
        Ok(chain)
    }

    pub fn to_structured(&self) -> StructuredChain {
        StructuredChain {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| StructuredTerm {
                    coeff: c.clone(),
                    factors: w
                        .0
                        .iter()
                        .map(|g| StructuredFactor {
                            beta: g.beta().exponents().to_vec(),
                            alpha: g.alpha().indices().collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_structured(s: &StructuredChain) -> Result<Chain> {
        let mut chain = Chain::zero(s.n);
        for t in &s.terms {
            let factors = t
                .factors
                .iter()
                .map(|f| {
                    if f.beta.len() != s.n {
                        return Err(Error::DimensionMismatch { left: s.n, right: f.beta.len() });
                    }
                    Generator::new(
                        DirectionSet::new(f.alpha.iter().copied(), s.n)?,
                        MultiIndex::new(f.beta.iter().copied()),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            if factors.is_empty() {
                return Err(Error::EmptyWord);
            }
            chain.add_raw(t.coeff.clone(), factors);
        }
        Ok(chain)
    }

    /// Parses either the structured JSON form or the text form.
    pub fn parse_any(input: &str, default_n: Option<usize>) -> Result<Chain> {
        if input.trim_start().starts_with('{') {
            let s: StructuredChain =
                serde_json::from_str(input).map_err(|e| Error::Parse(format!("json: {e}")))?;
            Chain::from_structured(&s)
        } else {
            Chain::from_text(input, default_n)
        }
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{c} | {w}")?;
        }
        Ok(())
    }
}

impl FromStr for Chain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Chain::parse_any(s, None)
    }
}

/// Structured (JSON) chain form; terms in canonical order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructuredChain {
    pub n: usize,
    pub terms: Vec<StructuredTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructuredTerm {
    pub coeff: Rational,
    pub factors: Vec<StructuredFactor>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructuredFactor {
    pub beta: Vec<u32>,
    pub alpha: Vec<usize>,
}

/// Super-wedge of chains, bilinear.
pub fn wedge_chain(c1: &Chain, c2: &Chain) -> Result<Chain> {
    if c1.n != c2.n {
        return Err(Error::DimensionMismatch { left: c1.n, right: c2.n });
    }
    let mut out = Chain::zero(c1.n);
    for (w1, a) in &c1.terms {
        for (w2, b) in &c2.terms {
            let mut raw = Vec::with_capacity(w1.arity() + w2.arity());
            raw.extend_from_slice(&w1.0);
            raw.extend_from_slice(&w2.0);
            out.add_raw(a * b, raw);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Generator {
        s.parse().unwrap()
    }

    fn mv(s: &str) -> MultiVector {
        s.parse().unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let d1 = g("x[0,0] d[1]");
        let d2 = g("x[0,0] d[2]");
        let (s, w) = canonicalize_word(vec![d2.clone(), d1.clone()]).unwrap().unwrap();
        assert_eq!(s, -1);
        assert_eq!(w.factors(), &[d1.clone(), d2.clone()]);

        let pi = g("x[0,0] d[1,2]");
        let (s, w) = canonicalize_word(vec![pi.clone(), pi.clone()]).unwrap().unwrap();
        assert_eq!(s, 1);
        assert_eq!(w.arity(), 2);

        let x1d1 = g("x[1,0] d[1]");
        assert_eq!(canonicalize_word(vec![x1d1.clone(), x1d1]).unwrap(), None);
        assert_eq!(canonicalize_word(vec![]), Err(Error::EmptyWord));
    }

    #[test]
    fn wedge_chain_examples() {
        let d1 = Chain::from_multivector(&mv("x[0,0] d[1]"));
        let v = Chain::from_multivector(&mv("x[1,0] d[1] + x[0,1] d[2]"));
        let got = wedge_chain(&d1, &v).unwrap();
        let mut want = Chain::zero(2);
        want.add_raw(Rational::one(), vec![g("x[0,0] d[1]"), g("x[1,0] d[1]")]);
        want.add_raw(Rational::one(), vec![g("x[0,0] d[1]"), g("x[0,1] d[2]")]);
        assert_eq!(got, want);

        assert!(wedge_chain(&d1, &d1).unwrap().is_zero());

        let a = Chain::from_multivector(&mv("2 * x[0,0] d[1]"));
        let b = Chain::from_multivector(&mv("3 * x[1,0] d[2]"));
        let got = wedge_chain(&a, &b).unwrap();
        assert_eq!(got.len(), 1);
        let (w, c) = got.terms().next().unwrap();
        assert_eq!(*c, Rational::from_integer(6));
        assert_eq!(w.factors(), &[g("x[0,0] d[1]"), g("x[1,0] d[2]")]);
    }

    #[test]
    fn weight_signature_examples() {
        let w = |f: Vec<&str>| canonicalize_word(f.into_iter().map(g).collect()).unwrap().unwrap().1;
        assert_eq!(w(vec!["x[0,0] d[1]", "x[0,0] d[2]"]).signature(), WeightSignature { m: 2, w: 0, h: -2 });
        assert_eq!(w(vec!["x[1,1] d[1,2]", "x[1,1] d[1,2]"]).signature(), WeightSignature { m: 2, w: 2, h: 2 });
        assert_eq!(w(vec!["x[2,0] d[1]"]).signature(), WeightSignature { m: 1, w: 0, h: 1 });
    }

    #[test]
    fn text_round_trip_and_prefix_folding() {
        let text = "# comment\n2 | 3 * x[0,0] d[1] ; x[1,0] d[2]\n\n-1/2 | x[0,0] d[2] ; x[0,0] d[1]\n";
        let c = Chain::from_text(text, None).unwrap();
        assert_eq!(c.len(), 2);
        let again = Chain::from_text(&c.to_text(), None).unwrap();
        assert_eq!(c, again);
        // d2 ^^ d1 = -(d1 ^^ d2)
        let d12 = canonicalize_word(vec![g("x[0,0] d[1]"), g("x[0,0] d[2]")]).unwrap().unwrap().1;
        assert_eq!(c.coefficient(&d12), Rational::new(1, 2));
    }

    #[test]
    fn structured_round_trip() {
        let c = Chain::from_text("3/4 | x[0,1] d[1] ; x[1,1] d[1,2]\n", None).unwrap();
        let json = serde_json::to_string(&c.to_structured()).unwrap();
        assert_eq!(
            json,
            r#"{"n":2,"terms":[{"coeff":"3/4","factors":[{"beta":[0,1],"alpha":[1]},{"beta":[1,1],"alpha":[1,2]}]}]}"#
        );
        assert_eq!(Chain::parse_any(&json, None).unwrap(), c);
    }

    #[test]
    fn malformed_text_is_rejected() {
        assert!(Chain::from_text("1 x[0,0] d[1]", None).is_err());
        assert!(Chain::from_text("1 | x[0,0] d[1] ; x[0,0,0] d[1]", None).is_err());
        assert!(Chain::from_text("", None).is_err());
        assert!(Chain::from_text("", Some(2)).unwrap().is_zero());
    }
}
