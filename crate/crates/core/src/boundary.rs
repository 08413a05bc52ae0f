//! The boundary operator on chains and its matrices per weight block.
//!
//! ```text
//! d(A0 ^^ A1 ^^ ... ^^ Am) = -A0 ^^ d(A1 ^^ ... ^^ Am) + A0 . (A1 ^^ ... ^^ Am)
//! A0 . (A1 ^^ ... ^^ Am)   = sum_i (-1)^(a0 * sum_{s<i} a_s) A1 ^^ ... ^^ [A0, Ai] ^^ ... ^^ Am
//! ```
//!
//! with `d` of a single generator equal to zero, so `d(A ^^ B) = [A, B]`.

use rayon::prelude::*;

use crate::basis::{enumerate_basis, BasisIndex};
use crate::chain::{Chain, WedgeWord};
use crate::error::{Error, Result};
use crate::mvf::{Generator, MultiVector};
use crate::rational::Rational;
use crate::sparse::SparseMatrixQ;

type RawTerm = (i64, Vec<Generator>);

fn left_action_raw(a0: &Generator, rest: &[Generator], out: &mut Vec<RawTerm>) {
    let a0_deg = a0.g_degree();
    let mut prefix_deg = 0i64;
    for (i, ai) in rest.iter().enumerate() {
        let sign = if (a0_deg * prefix_deg) % 2 == 0 { 1 } else { -1 };
        for (c, g) in a0.bracket(ai) {
            let mut w = rest.to_vec();
            w[i] = g;
            out.push((sign * c, w));
        }
        prefix_deg += ai.g_degree();
    }
}

fn boundary_raw(factors: &[Generator]) -> Vec<RawTerm> {
    if factors.len() <= 1 {
        return Vec::new();
    }
    let (a0, rest) = factors.split_first().expect("nonempty");
    let mut out: Vec<RawTerm> = boundary_raw(rest)
        .into_iter()
        .map(|(c, mut w)| {
            w.insert(0, a0.clone());
            (-c, w)
        })
        .collect();
    left_action_raw(a0, rest, &mut out);
    out
}

/// Boundary of a single canonical word, times `coeff`, accumulated into `out`.
pub(crate) fn boundary_word_into(word: &WedgeWord, coeff: &Rational, out: &mut Chain) {
    for (c, raw) in boundary_raw(word.factors()) {
        out.add_raw(coeff * &Rational::from_integer(c), raw);
    }
}

pub fn boundary_word(word: &WedgeWord) -> Chain {
    let mut out = Chain::zero(word.n());
    boundary_word_into(word, &Rational::one(), &mut out);
    out
}

pub fn boundary(c: &Chain) -> Chain {
    let mut out = Chain::zero(c.n());
    for (w, coeff) in c.terms() {
        boundary_word_into(w, coeff, &mut out);
    }
    out
}

/// `A0 . word` for `A0` homogeneous in `|alpha|`.
pub fn left_action(a0: &MultiVector, word: &WedgeWord) -> Result<Chain> {
    if a0.n() != word.n() {
        return Err(Error::DimensionMismatch { left: a0.n(), right: word.n() });
    }
    let mut degrees = a0.terms().map(|t| t.alpha().len());
    if let Some(first) = degrees.next() {
        if degrees.any(|d| d != first) {
            return Err(Error::MixedDegree);
        }
    }
    let mut out = Chain::zero(word.n());
    let mut raw = Vec::new();
    for t in a0.terms() {
        raw.clear();
        left_action_raw(&t.generator, word.factors(), &mut raw);
        for (c, w) in raw.drain(..) {
            out.add_raw(&t.coeff * &Rational::from_integer(c), w);
        }
    }
    Ok(out)
}

/// Matrix of `d : C_m^(w,h) -> C_{m-1}^(w,h)` with its bases.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub matrix: SparseMatrixQ,
    pub domain: BasisIndex,
    pub codomain: BasisIndex,
}

/// Column `j` holds the coordinates of `d(domain word j)` in `codomain`.
pub fn boundary_matrix_between(domain: BasisIndex, codomain: BasisIndex) -> Result<BoundaryMatrix> {
    let columns = domain
        .words()
        .par_iter()
        .map(|w| {
            let d = boundary_word(w);
            d.terms()
                .map(|(t, c)| {
                    codomain
                        .position(t)
                        .map(|r| (r, c.clone()))
                        .ok_or_else(|| Error::WeightEscape(format!("d({w}) contains {t}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = SparseMatrixQ::from_columns(codomain.len(), columns);
    Ok(BoundaryMatrix { matrix, domain, codomain })
}

/// `d : C_m^(w,h) -> C_{m-1}^(w,h)`; for `m = 1` the codomain is the empty basis.
pub fn boundary_matrix(n: usize, m: usize, w: i64, h: i64) -> Result<BoundaryMatrix> {
    let domain = enumerate_basis(n, m, w, h);
    let codomain = if m >= 2 {
        enumerate_basis(n, m - 1, w, h)
    } else {
        BasisIndex::from_words(n, crate::chain::WeightSignature { m: 0, w, h }, Vec::new())?
    };
    boundary_matrix_between(domain, codomain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::canonicalize_word;
    use crate::mvf::schouten_bracket;

    fn g(s: &str) -> Generator {
        s.parse().unwrap()
    }

    fn word(fs: &[&str]) -> (i64, WedgeWord) {
        canonicalize_word(fs.iter().map(|s| g(s)).collect()).unwrap().unwrap()
    }

    fn chain(text: &str) -> Chain {
        Chain::from_text(text, None).unwrap()
    }

    #[test]
    fn left_action_examples() {
        let d1: MultiVector = "x[0,0] d[1]".parse().unwrap();
        let (_, w) = word(&["x[1,0] d[2]"]);
        assert_eq!(left_action(&d1, &w).unwrap(), chain("1 | x[0,0] d[2]"));

        let (s, w) = word(&["x[1,0] d[1]", "x[1,0] d[2]"]);
        assert_eq!(s, 1);
        let want = chain("1 | x[0,0] d[1] ; x[1,0] d[2]\n1 | x[1,0] d[1] ; x[0,0] d[2]");
        assert_eq!(left_action(&d1, &w).unwrap(), want);

        let d1_3: MultiVector = "x[0,0,0] d[1]".parse().unwrap();
        let (_, w) = word(&["x[0,0,0] d[2]", "x[0,0,0] d[2,3]"]);
        assert!(left_action(&d1_3, &w).unwrap().is_zero());

        let mixed: MultiVector = "x[0,0] d[1] + x[0,0] d[1,2]".parse().unwrap();
        assert_eq!(left_action(&mixed, &w_of("x[1,0] d[2]")), Err(Error::MixedDegree));
    }

    fn w_of(s: &str) -> WedgeWord {
        word(&[s]).1
    }

    #[test]
    fn boundary_examples() {
        // d(d1 ^^ x1 d1) = [d1, x1 d1] = d1
        let c = chain("1 | x[0,0] d[1] ; x[1,0] d[1]");
        assert_eq!(boundary(&c), chain("1 | x[0,0] d[1]"));
        let a: MultiVector = "x[0,0] d[1]".parse().unwrap();
        let b: MultiVector = "x[1,0] d[1]".parse().unwrap();
        assert_eq!(boundary(&c), Chain::from_multivector(&schouten_bracket(&a, &b).unwrap()));

        assert!(boundary(&chain("1 | x[2,0] d[2]")).is_zero());

        let c = chain("1 | x[0,0] d[1] ; x[0,0] d[2] ; x[1,1] d[1]");
        let want = chain("-1 | x[0,0] d[1] ; x[1,0] d[1]\n1 | x[0,0] d[2] ; x[0,1] d[1]");
        assert_eq!(boundary(&c), want);
    }

    #[test]
    fn three_chain_closed_formula() {
        // -A ^^ [B,C] + [A,B] ^^ C + (-1)^(ab) B ^^ [A,C] on a mixed-degree triple
        let fa = g("x[1,0] d[2]");
        let fb = g("x[0,1] d[1,2]");
        let fc = g("x[2,1] d[1]");
        let (a, b, c) = (
            MultiVector::from_generator(Rational::one(), fa.clone()),
            MultiVector::from_generator(Rational::one(), fb.clone()),
            MultiVector::from_generator(Rational::one(), fc.clone()),
        );
        let ab_sign = Rational::from_integer(if fa.g_degree() * fb.g_degree() % 2 == 0 { 1 } else { -1 });
        let want = Chain::wedge_of(&[a.clone(), schouten_bracket(&b, &c).unwrap()])
            .unwrap()
            .scale(&Rational::from_integer(-1))
            .add(&Chain::wedge_of(&[schouten_bracket(&a, &b).unwrap(), c.clone()]).unwrap())
            .add(&Chain::wedge_of(&[b.clone(), schouten_bracket(&a, &c).unwrap()]).unwrap().scale(&ab_sign));

        let mut raw = Chain::zero(2);
        raw.add_raw(Rational::one(), vec![fa, fb, fc]);
        assert_eq!(boundary(&raw), want);
    }

    #[test]
    fn boundary_matrix_shapes() {
        let bm = boundary_matrix(2, 2, 0, 0).unwrap();
        assert_eq!((bm.matrix.rows(), bm.matrix.cols()), (4, 18));
        let bm = boundary_matrix(1, 2, 1, 0).unwrap();
        assert_eq!(bm.matrix.cols(), 0);
        let bm = boundary_matrix(2, 1, 0, 0).unwrap();
        assert_eq!((bm.matrix.rows(), bm.matrix.cols()), (0, 4));
    }

    #[test]
    fn boundary_squares_to_zero_as_matrices() {
        for (w, h) in [(0, 0), (1, 1), (1, 0), (0, 1)] {
            let d3 = boundary_matrix(2, 3, w, h).unwrap();
            let d2 = boundary_matrix(2, 2, w, h).unwrap();
            assert!(d2.matrix.mul(&d3.matrix).unwrap().is_zero(), "(w,h)=({w},{h})");
        }
    }
}
