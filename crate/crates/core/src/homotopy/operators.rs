//! The operators `phi`, `Phi` and `Psi = d Phi + phi d`.

use rayon::prelude::*;

use super::strata::{classify_type, WordType};
use crate::basis::{enumerate_basis, BasisIndex};
use crate::boundary::{boundary, boundary_word_into};
use crate::chain::{Chain, WedgeWord, WeightSignature};
use crate::error::{Error, Result};
use crate::mvf::Generator;
use crate::rational::Rational;
use crate::sparse::SparseMatrixQ;

fn require_arity(c: &Chain, m: usize) -> Result<()> {
    match c.terms().find(|(w, _)| w.arity() != m) {
        Some((w, _)) => Err(Error::WrongArity { expected: m, found: w.arity() }),
        None => Ok(()),
    }
}

/// `phi(U) = sum_l d_l ^^ (x_l U)` on 1-chains.
pub fn phi_op(u: &Chain) -> Result<Chain> {
    require_arity(u, 1)?;
    let n = u.n();
    let mut out = Chain::zero(n);
    for (w, c) in u.terms() {
        let a = &w.factors()[0];
        for l in 1..=n {
            out.add_raw(c.clone(), vec![Generator::coordinate_field(n, l), a.times_coordinate(l)]);
        }
    }
    Ok(out)
}

fn capital_phi_word_into(word: &WedgeWord, coeff: &Rational, out: &mut Chain) -> Result<()> {
    let kind = classify_type(word)?;
    let n = word.n();
    let [a1, a2] = word.factors() else { unreachable!("arity checked by classify_type") };
    for l in 1..=n {
        let dl = Generator::coordinate_field(n, l);
        let raw = match kind {
            WordType::TR => vec![dl, a1.clone(), a2.times_coordinate(l)],
            WordType::TL => vec![dl, a1.times_coordinate(l), a2.clone()],
        };
        out.add_raw(coeff.clone(), raw);
    }
    Ok(())
}

/// `Phi` on 2-chains, applied to each canonical word by its type.
pub fn capital_phi(u: &Chain) -> Result<Chain> {
    require_arity(u, 2)?;
    let mut out = Chain::zero(u.n());
    for (w, c) in u.terms() {
        capital_phi_word_into(w, c, &mut out)?;
    }
    Ok(out)
}

/// `d Phi` on 2-chains; equals `Psi` on cycles.
pub fn d_capital_phi(u: &Chain) -> Result<Chain> {
    Ok(boundary(&capital_phi(u)?))
}

/// `Psi(U) = d(Phi(U)) + phi(d U)`.
pub fn psi(u: &Chain) -> Result<Chain> {
    require_arity(u, 2)?;
    let mut out = d_capital_phi(u)?;
    out.add_scaled(&Rational::one(), &phi_op(&boundary(u))?);
    Ok(out)
}

/// `Psi` of a single canonical 2-word.
pub fn psi_word(word: &WedgeWord) -> Result<Chain> {
    let n = word.n();
    let mut phi = Chain::zero(n);
    capital_phi_word_into(word, &Rational::one(), &mut phi)?;
    let mut out = boundary(&phi);
    let mut d = Chain::zero(n);
    boundary_word_into(word, &Rational::one(), &mut d);
    out.add_scaled(&Rational::one(), &phi_op(&d)?);
    Ok(out)
}

/// The matrix of `Psi` on `C_2^(w,w)` together with its basis.
#[derive(Clone, Debug)]
pub struct PsiBlock {
    pub n: usize,
    pub w: usize,
    pub basis: BasisIndex,
    pub matrix: SparseMatrixQ,
}

impl PsiBlock {
    pub fn new(n: usize, w: usize) -> Result<Self> {
        let basis = enumerate_basis(n, 2, w as i64, w as i64);
        let columns = basis
            .words()
            .par_iter()
            .map(|word| {
                let image = psi_word(word)?;
                image
                    .terms()
                    .map(|(t, c)| {
                        basis
                            .position(t)
                            .map(|r| (r, c.clone()))
                            .ok_or_else(|| Error::WeightEscape(format!("Psi({word}) contains {t}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let matrix = SparseMatrixQ::from_columns(basis.len(), columns);
        Ok(PsiBlock { n, w, basis, matrix })
    }

    pub fn signature(&self) -> WeightSignature {
        self.basis.signature()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(text: &str) -> Chain {
        Chain::from_text(text, None).unwrap()
    }

    #[test]
    fn phi_examples() {
        let u = chain("1 | x[0,0] d[1]");
        assert_eq!(phi_op(&u).unwrap(), chain("1 | x[0,0] d[1] ; x[1,0] d[1]\n1 | x[0,0] d[2] ; x[0,1] d[1]"));
        assert!(phi_op(&Chain::zero(2)).unwrap().is_zero());
        assert!(phi_op(&chain("1 | x[0,0] d[1] ; x[1,0] d[1]")).is_err());

        let u = chain("1 | x[1,1,0] d[1,3]\n-2 | x[0,0,2] d[2,3]");
        for sig in phi_op(&u).unwrap().signatures() {
            assert_eq!(sig, WeightSignature { m: 2, w: 1, h: 1 });
        }
    }

    #[test]
    fn capital_phi_examples() {
        let u = chain("1 | x[0,0] d[1] ; x[1,1] d[2]");
        let mut want = Chain::zero(2);
        for (l, beta) in [(1usize, [2u32, 1]), (2, [1, 2])] {
            want.add_raw(
                Rational::one(),
                vec![Generator::coordinate_field(2, l), Generator::from_slices(&[0, 0], &[1]), Generator::from_slices(&beta, &[2])],
            );
        }
        assert_eq!(capital_phi(&u).unwrap(), want);

        let u = chain("1 | x[3,0] d[1] ; x[0,0] d[1,2]");
        let mut want = Chain::zero(2);
        for (l, beta) in [(1usize, [4u32, 0]), (2, [3, 1])] {
            want.add_raw(
                Rational::one(),
                vec![Generator::coordinate_field(2, l), Generator::from_slices(&beta, &[1]), Generator::from_slices(&[0, 0], &[1, 2])],
            );
        }
        assert_eq!(capital_phi(&u).unwrap(), want);
        assert!(capital_phi(&Chain::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn psi_eigen_example() {
        let u = chain("1 | x[0,0] d[1] ; x[2,0] d[2]");
        assert_eq!(psi(&u).unwrap(), u.scale(&Rational::from_integer(3)));
    }

    #[test]
    fn psi_block_matches_chain_psi() {
        let block = PsiBlock::new(2, 0).unwrap();
        assert_eq!(block.dim(), 18);
        for (k, word) in block.basis.words().iter().enumerate() {
            let col: Chain = {
                let mut c = Chain::zero(2);
                for (r, v) in block.matrix.column(k) {
                    c.add_word(v.clone(), block.basis.word(*r).clone());
                }
                c
            };
            assert_eq!(col, psi(&Chain::from_word(Rational::one(), word.clone())).unwrap());
        }
    }
}
