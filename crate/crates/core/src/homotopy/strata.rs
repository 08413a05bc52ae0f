//! Strata of the diagonal 2-chain block `C_2^(w,w)`.
//!
//! A canonical 2-word `A1 ^^ A2` sits in the stratum `(a1, b1) = (|alpha_1|, |beta_1|)`,
//! i.e. in `X^{a1}_{b1} ^^ X^{2+w-a1}_{2+w-b1}`. Canonical factor order gives
//! `a1 <= 1 + w/2`, and `b1 <= b2` whenever `a1 = a2`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain::{Chain, WedgeWord};
use crate::error::{Error, Result};

/// Which homotopy rule a 2-word uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WordType {
    /// `|A1|+|B1| < |A2|+|B2|`, or equal sums with `|A1| <= |A2|`.
    TR,
    TL,
}

/// Classifies an arity-2 word by comparing `|A_s| + |B_s|` of its factors.
pub fn classify_type(word: &WedgeWord) -> Result<WordType> {
    let [f1, f2] = word.factors() else {
        return Err(Error::WrongArity { expected: 2, found: word.arity() });
    };
    let s1 = f1.alpha().len() + f1.beta().degree() as usize;
    let s2 = f2.alpha().len() + f2.beta().degree() as usize;
    if s1 < s2 || (s1 == s2 && f1.alpha().len() <= f2.alpha().len()) {
        Ok(WordType::TR)
    } else {
        Ok(WordType::TL)
    }
}

/// Stratum coordinates `(a1, b1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PairStratum {
    pub a1: usize,
    pub b1: usize,
}

impl PairStratum {
    pub const BOTTOM: PairStratum = PairStratum { a1: 1, b1: 0 };

    pub fn new(a1: usize, b1: usize) -> Self {
        PairStratum { a1, b1 }
    }

    /// Stratum of a canonical 2-word.
    pub fn of_word(word: &WedgeWord) -> Result<Self> {
        let [f1, _] = word.factors() else {
            return Err(Error::WrongArity { expected: 2, found: word.arity() });
        };
        Ok(PairStratum { a1: f1.alpha().len(), b1: f1.beta().degree() as usize })
    }

    /// Whether `(a1, b1)` is a representative point for weight `w`.
    pub fn is_representative(&self, w: usize) -> bool {
        let a2 = (2 + w).checked_sub(self.a1);
        let b2 = (2 + w).checked_sub(self.b1);
        match (a2, b2) {
            (Some(a2), Some(b2)) => self.a1 >= 1 && self.a1 <= a2 && (self.a1 < a2 || self.b1 <= b2),
            _ => false,
        }
    }

    /// `TL` iff `a1 + b1 > 2 + w`.
    pub fn word_type(&self, w: usize) -> WordType {
        if self.a1 + self.b1 > 2 + w {
            WordType::TL
        } else {
            WordType::TR
        }
    }
}

impl fmt::Display for PairStratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X[{},{}]", self.a1, self.b1)
    }
}

/// Bookkeeping for the TL diagonals, TR diagonals and horizontal layers of one weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stratification {
    pub w: usize,
    /// `floor(w / 2)`
    pub omega: usize,
    /// number of TL diagonals: `omega + 1` for odd `w`, `omega` for even `w`
    pub omega_e: usize,
}

impl Stratification {
    pub fn new(w: usize) -> Self {
        let omega = w / 2;
        let omega_e = if w % 2 == 1 { omega + 1 } else { omega };
        Stratification { w, omega, omega_e }
    }

    /// All representative strata for weight `w` (independent of n).
    pub fn strata(&self) -> Vec<PairStratum> {
        let mut out = Vec::new();
        for a1 in 1..=1 + self.w / 2 {
            for b1 in 0..=2 + self.w {
                let s = PairStratum::new(a1, b1);
                if s.is_representative(self.w) {
                    out.push(s);
                }
            }
        }
        out
    }

    /// TL diagonal index `l = a1 + b1 - (2 + w)` (`>= 1`), or `None` for TR strata.
    pub fn tl_diagonal(&self, s: PairStratum) -> Option<usize> {
        (s.a1 + s.b1).checked_sub(2 + self.w).filter(|&l| l >= 1)
    }

    /// TR diagonal index `p = a1 + b1`, or `None` for TL strata.
    pub fn tr_diagonal(&self, s: PairStratum) -> Option<usize> {
        (s.word_type(self.w) == WordType::TR).then_some(s.a1 + s.b1)
    }

    /// TR strata above the rectangle: `b1 > 1 + omega_e`.
    pub fn in_roof(&self, s: PairStratum) -> bool {
        s.word_type(self.w) == WordType::TR && s.b1 > 1 + self.omega_e
    }

    pub fn in_rectangle(&self, s: PairStratum) -> bool {
        s.word_type(self.w) == WordType::TR && s.b1 <= 1 + self.omega_e && s.a1 <= self.omega + 1
    }
}

/// The sub-chain of words lying in stratum `s`.
pub fn project_stratum(c: &Chain, s: PairStratum) -> Chain {
    c.filter(|w| PairStratum::of_word(w).ok() == Some(s))
}

/// Strata carrying a nonzero component of an arity-2 chain.
pub fn strata_present(c: &Chain) -> Result<BTreeSet<PairStratum>> {
    c.terms().map(|(w, _)| PairStratum::of_word(w)).collect()
}
