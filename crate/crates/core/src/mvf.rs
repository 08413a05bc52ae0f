//! Polynomial multivector fields on n-space with rational coefficients.
//!
//! A monomial `c * x^beta d_alpha` is stored as a coefficient and a [`Generator`]
//! (the unit monomial `x^beta d_alpha`). The bracket is computed by treating each
//! `d_i` as an odd variable `xi_i`:
//!
//! ```text
//! [P, Q] = sum_i (P <-d/dxi_i)(d/dx_i Q) - (d/dx_i P)(d/dxi_i-> Q)
//! ```
//!
//! with a right derivative in the first slot and a left derivative in the
//! second. On vector fields this is the Lie bracket `XY - YX`, and `[X, f] = X(f)`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Exponent vector `beta = (b_1, ..., b_n)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MultiIndex(SmallVec<[u32; 4]>);

impl MultiIndex {
    pub fn new(exponents: impl IntoIterator<Item = u32>) -> Self {
        MultiIndex(exponents.into_iter().collect())
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(smallvec::smallvec![0; n])
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `|beta|`
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of `x_i`, 1-based.
    pub fn get(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    fn bump(&self, i: usize, by: i32) -> Self {
        let mut out = self.clone();
        let e = &mut out.0[i - 1];
        *e = (*e as i64 + by as i64) as u32;
        out
    }

    fn add(&self, other: &MultiIndex) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Strictly increasing, nonempty set of directions `alpha = (a_1 < ... < a_m)`, 1-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DirectionSet(SmallVec<[u8; 4]>);

impl DirectionSet {
    /// Validates strict increase, nonemptiness and range `1..=n`.
    pub fn new(indices: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let v: SmallVec<[u8; 4]> = indices.into_iter().map(|i| i as u8).collect();
        if v.is_empty() {
            return Err(Error::Parse("empty direction set".into()));
        }
        for (k, &a) in v.iter().enumerate() {
            if a == 0 || a as usize > n {
                return Err(Error::IndexOutOfRange { index: a as usize, n });
            }
            if k > 0 && v[k - 1] >= a {
                return Err(Error::Parse("direction set must be strictly increasing".into()));
            }
        }
        Ok(DirectionSet(v))
    }

    pub fn single(i: usize) -> Self {
        DirectionSet(smallvec::smallvec![i as u8])
    }

    /// `|alpha|`
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|&a| a as usize)
    }

    fn without_pos(&self, pos: usize) -> SmallVec<[u8; 4]> {
        let mut v = self.0.clone();
        v.remove(pos);
        v
    }
}

/// Sign and sorted union of two disjoint increasing index lists; `None` if they meet.
fn merge_directions(a: &[u8], b: &[u8]) -> Option<(i64, SmallVec<[u8; 4]>)> {
    let mut out = SmallVec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                // b[j] jumps over the remaining elements of a
                inversions += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
    Some((sign, out))
}

/// Unit monomial `x^beta d_alpha`.
///
/// Ordered by `|alpha|`, then `|beta|`, then `alpha` and `beta` lexicographically.
/// This is the canonical factor order used for chain words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Generator {
    alpha: DirectionSet,
    beta: MultiIndex,
}

impl Generator {
    pub fn new(alpha: DirectionSet, beta: MultiIndex) -> Result<Self> {
        if let Some(a) = alpha.indices().find(|&a| a > beta.n()) {
            return Err(Error::IndexOutOfRange { index: a, n: beta.n() });
        }
        Ok(Generator { alpha, beta })
    }

    /// Convenience constructor from plain slices; panics on invalid input.
    pub fn from_slices(beta: &[u32], alpha: &[usize]) -> Self {
        let n = beta.len();
        let alpha = DirectionSet::new(alpha.iter().copied(), n).expect("valid direction set");
        Generator { alpha, beta: MultiIndex::new(beta.iter().copied()) }
    }

    /// Constant vector field `d_i` on n-space.
    pub fn coordinate_field(n: usize, i: usize) -> Self {
        Generator { alpha: DirectionSet::single(i), beta: MultiIndex::zero(n) }
    }

    pub fn alpha(&self) -> &DirectionSet {
        &self.alpha
    }

    pub fn beta(&self) -> &MultiIndex {
        &self.beta
    }

    pub fn n(&self) -> usize {
        self.beta.n()
    }

    /// First component of the bidegree, `|alpha| - 1`.
    pub fn g_degree(&self) -> i64 {
        self.alpha.len() as i64 - 1
    }

    /// True when the g-degree is odd (such factors commute under the super-wedge).
    pub fn is_odd(&self) -> bool {
        self.alpha.len().is_multiple_of(2)
    }

    /// `(|alpha| - 1, |beta| - 1)`
    pub fn bidegree(&self) -> (i64, i64) {
        (self.alpha.len() as i64 - 1, self.beta.degree() as i64 - 1)
    }

    /// `x_l * self`.
    pub fn times_coordinate(&self, l: usize) -> Generator {
        Generator { alpha: self.alpha.clone(), beta: self.beta.bump(l, 1) }
    }

    /// Interior wedge product of unit monomials.
    pub fn wedge(&self, other: &Generator) -> Option<(i64, Generator)> {
        let (sign, alpha) = merge_directions(&self.alpha.0, &other.alpha.0)?;
        Some((
            sign,
            Generator { alpha: DirectionSet(alpha), beta: self.beta.add(&other.beta) },
        ))
    }

    /// Schouten bracket of unit monomials, as integer-weighted generators with
    /// like terms merged and zeros dropped.
    pub fn bracket(&self, other: &Generator) -> SmallVec<[(i64, Generator); 8]> {
        let mut out: SmallVec<[(i64, Generator); 8]> = SmallVec::new();
        let mut push = |c: i64, g: Generator| {
            if let Some(slot) = out.iter_mut().find(|(_, h)| *h == g) {
                slot.0 += c;
            } else {
                out.push((c, g));
            }
        };

        let m = self.alpha.len();
        // (P <-d/dxi_i)(d/dx_i Q)
        for (pos, i) in self.alpha.indices().enumerate() {
            let e = other.beta.get(i);
            if e == 0 {
                continue;
            }
            let rest = self.alpha.without_pos(pos);
            if let Some((s, alpha)) = merge_directions(&rest, &other.alpha.0) {
                let sign = if (m - 1 - pos).is_multiple_of(2) { 1 } else { -1 };
                let beta = self.beta.add(&other.beta.bump(i, -1));
                push(sign * s * e as i64, Generator { alpha: DirectionSet(alpha), beta });
            }
        }
        // -(d/dx_i P)(d/dxi_i-> Q)
        for (pos, i) in other.alpha.indices().enumerate() {
            let e = self.beta.get(i);
            if e == 0 {
                continue;
            }
            let rest = other.alpha.without_pos(pos);
            if let Some((s, alpha)) = merge_directions(&self.alpha.0, &rest) {
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                let beta = self.beta.bump(i, -1).add(&other.beta);
                push(-sign * s * e as i64, Generator { alpha: DirectionSet(alpha), beta });
            }
        }
        out.retain(|(c, _)| *c != 0);
        out
    }
}

impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alpha
            .len()
            .cmp(&other.alpha.len())
            .then_with(|| self.beta.degree().cmp(&other.beta.degree()))
            .then_with(|| self.alpha.cmp(&other.alpha))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = T>) -> fmt::Result {
    for (k, x) in items.enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("x[")?;
        write_list(f, self.beta.exponents().iter())?;
        f.write_str("] d[")?;
        write_list(f, self.alpha.indices())?;
        f.write_str("]")
    }
}

fn parse_bracketed<'a>(s: &'a str, tag: &str) -> Result<(&'a str, &'a str)> {
    let s = s.trim_start();
    let body = s
        .strip_prefix(tag)
        .and_then(|r| r.trim_start().strip_prefix('['))
        .ok_or_else(|| Error::Parse(format!("expected `{tag}[` in `{s}`")))?;
    let close = body.find(']').ok_or_else(|| Error::Parse(format!("missing `]` in `{s}`")))?;
    Ok((&body[..close], &body[close + 1..]))
}

fn parse_numbers<T: FromStr>(s: &str) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad integer `{t}`"))))
        .collect()
}

impl FromStr for Generator {
    type Err = Error;

    /// Parses `x[b1,...,bn] d[a1,...,am]`.
    fn from_str(s: &str) -> Result<Self> {
        let (xs, rest) = parse_bracketed(s, "x")?;
        let (ds, rest) = parse_bracketed(rest, "d")?;
        if !rest.trim().is_empty() {
            return Err(Error::Parse(format!("trailing input `{}`", rest.trim())));
        }
        let beta: Vec<u32> = parse_numbers(xs)?;
        if beta.is_empty() {
            return Err(Error::Parse("empty exponent list".into()));
        }
        let alpha: Vec<usize> = parse_numbers(ds)?;
        let n = beta.len();
        Generator::new(DirectionSet::new(alpha, n)?, MultiIndex::new(beta))
    }
}

/// One term `coeff * x^beta d_alpha`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialMV {
    pub coeff: Rational,
    pub generator: Generator,
}

impl MonomialMV {
    pub fn new(coeff: Rational, generator: Generator) -> Self {
        MonomialMV { coeff, generator }
    }

    pub fn beta(&self) -> &MultiIndex {
        self.generator.beta()
    }

    pub fn alpha(&self) -> &DirectionSet {
        self.generator.alpha()
    }

    pub fn bidegree(&self) -> (i64, i64) {
        self.generator.bidegree()
    }
}

impl fmt::Display for MonomialMV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} * {}", self.coeff, self.generator)
    }
}

impl FromStr for MonomialMV {
    type Err = Error;

    /// Parses `c * x[b1,...,bn] d[a1,...,am]`; the `c *` prefix is optional.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('*') {
            Some((c, g)) => Ok(MonomialMV::new(c.parse()?, g.parse()?)),
            None => Ok(MonomialMV::new(Rational::one(), s.parse()?)),
        }
    }
}

/// A polynomial multivector field: terms keyed and ordered by `(alpha, beta)`
/// lexicographically, like terms merged, zero terms dropped.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiVector {
    n: usize,
    terms: BTreeMap<(DirectionSet, MultiIndex), Rational>,
}

impl MultiVector {
    pub fn zero(n: usize) -> Self {
        MultiVector { n, terms: BTreeMap::new() }
    }

    pub fn from_generator(coeff: Rational, g: Generator) -> Self {
        let mut out = MultiVector::zero(g.n());
        out.add_term(coeff, g);
        out
    }

    /// Sum of monomials; all must live on the same n-space.
    pub fn from_monomials(n: usize, terms: impl IntoIterator<Item = MonomialMV>) -> Result<Self> {
        let mut out = MultiVector::zero(n);
        for t in terms {
            if t.generator.n() != n {
                return Err(Error::DimensionMismatch { left: n, right: t.generator.n() });
            }
            out.add_term(t.coeff, t.generator);
        }
        Ok(out)
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

    pub fn add_term(&mut self, coeff: Rational, g: Generator) {
        debug_assert_eq!(g.n(), self.n);
        if coeff.is_zero() {
            return;
        }
        let key = (g.alpha, g.beta);
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = MonomialMV> + '_ {
        self.terms.iter().map(|((a, b), c)| {
            MonomialMV::new(c.clone(), Generator { alpha: a.clone(), beta: b.clone() })
        })
    }

    pub fn scale(&self, c: &Rational) -> MultiVector {
        let mut out = MultiVector::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for ((a, b), v) in &self.terms {
            out.terms.insert((a.clone(), b.clone()), v * c);
        }
        out
    }

    pub fn add(&self, other: &MultiVector) -> Result<MultiVector> {
        check_dims(self.n, other.n)?;
        let mut out = self.clone();
        for t in other.terms() {
            out.add_term(t.coeff, t.generator);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiVector) -> Result<MultiVector> {
        self.add(&other.scale(&Rational::from_integer(-1)))
    }

    /// `(|alpha| - 1, |beta| - 1)` of a nonzero, bihomogeneous field.
    pub fn bidegree(&self) -> Result<(i64, i64)> {
        let mut it = self.terms.keys().map(|(a, b)| (a.len() as i64 - 1, b.degree() as i64 - 1));
        let first = it.next().ok_or(Error::ZeroInput)?;
        if it.any(|d| d != first) {
            return Err(Error::MixedDegree);
        }
        Ok(first)
    }

    /// Multiply every coefficient polynomial by `x_l`.
    pub fn scale_by_coordinate(&self, l: usize) -> Result<MultiVector> {
        if l == 0 || l > self.n {
            return Err(Error::IndexOutOfRange { index: l, n: self.n });
        }
        let mut out = MultiVector::zero(self.n);
        for ((a, b), c) in &self.terms {
            out.terms.insert((a.clone(), b.bump(l, 1)), c.clone());
        }
        Ok(out)
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        Err(Error::DimensionMismatch { left: a, right: b })
    } else {
        Ok(())
    }
}

/// Wedge product of multivector fields, extended bilinearly.
pub fn wedge_mv(a: &MultiVector, b: &MultiVector) -> Result<MultiVector> {
    check_dims(a.n, b.n)?;
    let mut out = MultiVector::zero(a.n);
    for s in a.terms() {
        for t in b.terms() {
            if let Some((sign, g)) = s.generator.wedge(&t.generator) {
                out.add_term(&s.coeff * &t.coeff * Rational::from_integer(sign), g);
            }
        }
    }
    Ok(out)
}

/// Schouten bracket, extended bilinearly over monomials.
pub fn schouten_bracket(a: &MultiVector, b: &MultiVector) -> Result<MultiVector> {
    check_dims(a.n, b.n)?;
    let mut out = MultiVector::zero(a.n);
    for s in a.terms() {
        for t in b.terms() {
            let c = &s.coeff * &t.coeff;
            for (k, g) in s.generator.bracket(&t.generator) {
                out.add_term(&c * &Rational::from_integer(k), g);
            }
        }
    }
    Ok(out)
}

/// Free-function form of [`MultiVector::scale_by_coordinate`].
pub fn scale_by_coordinate(l: usize, a: &MultiVector) -> Result<MultiVector> {
    a.scale_by_coordinate(l)
}

/// Free-function form of [`MultiVector::bidegree`].
pub fn bidegree(a: &MultiVector) -> Result<(i64, i64)> {
    a.bidegree()
}

impl fmt::Display for MultiVector {
    /// Monomials joined by ` + `; the zero field prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, t) in self.terms().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for MultiVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let monos: Vec<MonomialMV> = s
            .split('+')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        let n = monos
            .first()
            .map(|m| m.generator.n())
            .ok_or_else(|| Error::Parse("empty multivector (ambient dimension unknown)".into()))?;
        MultiVector::from_monomials(n, monos)
    }
}
