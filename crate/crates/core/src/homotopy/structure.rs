//! Word-by-word checks of the leading behaviour of `Psi`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::operators::psi_word;
use super::strata::{classify_type, strata_present, PairStratum, Stratification, WordType};
use crate::basis::{enumerate_basis, generators_of_bidegree};
use crate::chain::{canonicalize_word, Chain, WedgeWord, WeightSignature};
use crate::error::Result;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiViolation {
    pub word: String,
    pub detail: String,
}

/// Outcome of [`verify_psi_structure`] on one block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiStructureReport {
    pub n: usize,
    pub w: usize,
    pub words: usize,
    pub tr_words: usize,
    pub tl_words: usize,
    pub notes: Vec<String>,
    pub violations: Vec<PsiViolation>,
}

impl PsiStructureReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `n + |B2|` for TR words and `n + |B1|` for TL words.
pub fn leading_scalar(n: usize, w: usize, s: PairStratum) -> i64 {
    match s.word_type(w) {
        WordType::TR => (n + 2 + w - s.b1) as i64,
        WordType::TL => (n + s.b1) as i64,
    }
}

fn allowed_residual_strata(w: usize, s: PairStratum) -> BTreeSet<PairStratum> {
    let mut out = BTreeSet::from([PairStratum::BOTTOM]);
    match s.word_type(w) {
        WordType::TR if s.b1 > 0 => {
            out.insert(PairStratum::new(s.a1, s.b1 - 1));
        }
        WordType::TR => {}
        WordType::TL => {
            out.insert(PairStratum::new(s.a1, s.b1 + 1));
        }
    }
    out
}

fn check_word(n: usize, w: usize, word: &WedgeWord) -> Result<(WordType, Option<String>)> {
    let kind = classify_type(word)?;
    let s = PairStratum::of_word(word)?;
    let want_sig = WeightSignature { m: 2, w: w as i64, h: w as i64 };
    let image = psi_word(word)?;
    if let Some(sig) = image.signatures().into_iter().find(|g| *g != want_sig) {
        return Ok((kind, Some(format!("Psi leaves the block: term in {sig}"))));
    }
    if s.word_type(w) != kind {
        return Ok((kind, Some(format!("type {kind:?} disagrees with stratum {s}"))));
    }
    let lambda = leading_scalar(n, w, s);
    let mut residual = image;
    residual.add_word(Rational::from_integer(-lambda), word.clone());
    let allowed = allowed_residual_strata(w, s);
    let stray: Vec<String> = strata_present(&residual)?
        .into_iter()
        .filter(|t| !allowed.contains(t))
        .map(|t| t.to_string())
        .collect();
    if stray.is_empty() {
        Ok((kind, None))
    } else {
        Ok((kind, Some(format!("{kind:?} word in {s}: Psi - {lambda} leaves residual in {}", stray.join(", ")))))
    }
}

/// Checks, for every basis word of `C_2^(w,w)`, that `Psi(word)` stays in the
/// block and that `Psi(word) - lambda * word` lies in the adjacent stratum
/// (one layer down for TR, one up for TL) plus `X[1,0]`.
pub fn verify_psi_structure(n: usize, w: usize) -> Result<PsiStructureReport> {
    let basis = enumerate_basis(n, 2, w as i64, w as i64);
    let results = basis
        .words()
        .par_iter()
        .map(|word| check_word(n, w, word).map(|(k, v)| (word, k, v)))
        .collect::<Result<Vec<_>>>()?;
    let st = Stratification::new(w);
    let mut report = PsiStructureReport {
        n,
        w,
        words: basis.len(),
        tr_words: 0,
        tl_words: 0,
        notes: Vec::new(),
        violations: Vec::new(),
    };
    for (word, kind, violation) in results {
        match kind {
            WordType::TR => report.tr_words += 1,
            WordType::TL => report.tl_words += 1,
        }
        if let Some(detail) = violation {
            report.violations.push(PsiViolation { word: word.to_string(), detail });
        }
    }
    if st.omega_e == 0 {
        report.notes.push(format!("w = {w}: no TL strata (omega_e = 0), TL check is vacuous"));
    } else if report.tl_words == 0 {
        report.notes.push(format!("n = {n}, w = {w}: TL strata exist but carry no basis words"));
    }
    if report.words == 0 {
        report.notes.push("empty block".into());
    }
    Ok(report)
}

/// Canonical basis words of `C_2^(w,w)` lying in stratum `s`.
pub fn stratum_basis(n: usize, w: usize, s: PairStratum) -> Vec<WedgeWord> {
    if !s.is_representative(w) {
        return Vec::new();
    }
    let (a1, b1) = (s.a1 as i64, s.b1 as i64);
    let (w_, two) = (w as i64, 2i64);
    let first = generators_of_bidegree(n, a1 - 1, b1 - 1);
    let second = generators_of_bidegree(n, two + w_ - a1 - 1, two + w_ - b1 - 1);
    let mut out = BTreeSet::new();
    for f in &first {
        for g in &second {
            if let Ok(Some((_, word))) = canonicalize_word(vec![f.clone(), g.clone()]) {
                if PairStratum::of_word(&word).ok() == Some(s) {
                    out.insert(word);
                }
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenReport {
    pub n: usize,
    pub w: usize,
    pub eigenvalue: i64,
    pub words: usize,
    pub failures: Vec<String>,
}

impl EigenReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `Psi(U) = (n + w + 1) U` on every basis word of `X[1,0]`.
pub fn verify_eigen_lemma(n: usize, w: usize) -> Result<EigenReport> {
    let eigenvalue = (n + w + 1) as i64;
    let words = stratum_basis(n, w, PairStratum::BOTTOM);
    let failures = words
        .par_iter()
        .map(|word| {
            let image = psi_word(word)?;
            let want = Chain::from_word(Rational::from_integer(eigenvalue), word.clone());
            Ok((image != want).then(|| format!("Psi({word}) = {image}")))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(EigenReport { n, w, eigenvalue, words: words.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stratum_bases_partition_the_block() {
        for (n, w) in [(2usize, 0usize), (2, 1), (3, 0)] {
            let basis = enumerate_basis(n, 2, w as i64, w as i64);
            let total: usize = Stratification::new(w).strata().into_iter().map(|s| stratum_basis(n, w, s).len()).sum();
            assert_eq!(total, basis.len(), "n={n} w={w}");
        }
    }

    #[test]
    fn small_blocks_have_the_predicted_structure() {
        let r = verify_psi_structure(2, 0).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.tl_words, 0);
        assert!(r.notes.iter().any(|s| s.contains("vacuous")));

        let r = verify_psi_structure(2, 1).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(r.tl_words > 0);
    }

    #[test]
    fn eigen_lemma_small() {
        for w in 0..=1 {
            let r = verify_eigen_lemma(2, w).unwrap();
            assert!(r.passed(), "{:?}", r.failures);
            assert!(r.words > 0);
        }
    }
}
