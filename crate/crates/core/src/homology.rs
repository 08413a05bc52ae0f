//! Betti numbers and Euler characteristics of the weight blocks.

use serde::{Deserialize, Serialize};

use crate::basis::{enumerate_basis, max_arity, BasisIndex};
use crate::boundary::{boundary, boundary_matrix_between};
use crate::chain::{Chain, WeightSignature};
use crate::error::{Error, Result};
use crate::mvf::MultiVector;
use crate::sparse::rank_exact;

/// Homology of one block `C_m^(w,h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub n: usize,
    pub m: usize,
    pub w: i64,
    pub h: i64,
    pub dim: usize,
    pub dim_prev: usize,
    pub dim_next: usize,
    /// rank of `d : C_m -> C_{m-1}`
    pub rank_out: usize,
    /// rank of `d : C_{m+1} -> C_m`
    pub rank_in: usize,
    pub betti: usize,
}

impl HomologyReport {
    pub const CSV_HEADER: &'static str = "n,m,w,h,dim,rank_out,rank_in,betti";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n, self.m, self.w, self.h, self.dim, self.rank_out, self.rank_in, self.betti
        )
    }

    /// Whether a nonzero value here would contradict a known vanishing result:
    /// off-diagonal blocks, first homology, and second homology on the diagonal.
    pub fn is_guaranteed_zero(&self) -> bool {
        self.w != self.h || self.m == 1 || self.m == 2
    }
}

fn empty_basis(n: usize, m: usize, w: i64, h: i64) -> BasisIndex {
    BasisIndex::from_words(n, WeightSignature { m, w, h }, Vec::new()).expect("empty basis")
}

fn basis_or_empty(n: usize, m: usize, w: i64, h: i64) -> BasisIndex {
    if m == 0 {
        empty_basis(n, 0, w, h)
    } else {
        enumerate_basis(n, m, w, h)
    }
}

/// Betti number of the block with the given bases (any orders).
pub fn betti_with_bases(prev: BasisIndex, cur: BasisIndex, next: BasisIndex) -> Result<HomologyReport> {
    let sig = cur.signature();
    let n = cur.n();
    let (dim_prev, dim, dim_next) = (prev.len(), cur.len(), next.len());
    let rank_out = if dim_prev == 0 || dim == 0 {
        0
    } else {
        rank_exact(&boundary_matrix_between(cur.clone(), prev)?.matrix)
    };
    let rank_in = if dim == 0 || dim_next == 0 {
        0
    } else {
        rank_exact(&boundary_matrix_between(next, cur)?.matrix)
    };
    let betti = (dim - rank_out)
        .checked_sub(rank_in)
        .ok_or_else(|| Error::VerificationFailed(format!("negative Betti number in {sig}")))?;
    Ok(HomologyReport { n, m: sig.m, w: sig.w, h: sig.h, dim, dim_prev, dim_next, rank_out, rank_in, betti })
}

/// `betti = dim ker(d_m) - rank(d_{m+1})` within block `(w, h)`.
pub fn betti(n: usize, m: usize, w: i64, h: i64) -> Result<HomologyReport> {
    if m == 0 {
        return Err(Error::WrongArity { expected: 1, found: 0 });
    }
    betti_with_bases(
        basis_or_empty(n, m - 1, w, h),
        enumerate_basis(n, m, w, h),
        enumerate_basis(n, m + 1, w, h),
    )
}

/// `dim C_0^(w,h)`: the scalars, which sit in the block `(0, 0)` only.
pub fn scalar_dim(w: i64, h: i64) -> usize {
    usize::from(w == 0 && h == 0)
}

/// `sum_m (-1)^m dim C_m^(w,h)` over `0..=M_max`, with the arity-0 scalars
/// included; checks the block at `M_max + 1` really is empty.
pub fn euler_characteristic(n: usize, w: i64, h: i64) -> Result<i64> {
    let top = max_arity(n, w, h);
    let beyond = enumerate_basis(n, top + 1, w, h);
    if !beyond.is_empty() {
        return Err(Error::VerificationFailed(format!(
            "C_{} of (n={n}, w={w}, h={h}) is nonempty beyond the computed maximum arity",
            top + 1
        )));
    }
    let positive: i64 = (1..=top)
        .map(|m| {
            let d = enumerate_basis(n, m, w, h).len() as i64;
            if m % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .sum();
    Ok(scalar_dim(w, h) as i64 + positive)
}

/// True iff `d(pi ^^ pi) = 0`, i.e. `[pi, pi] = 0`.
pub fn is_poisson(pi: &MultiVector) -> Result<bool> {
    if pi.terms().any(|t| t.alpha().len() != 2) {
        return Err(Error::NotBivector);
    }
    if pi.is_zero() {
        return Ok(true);
    }
    let sq = Chain::wedge_of(&[pi.clone(), pi.clone()])?;
    Ok(boundary(&sq).is_zero())
}
