//! Exactness certificates for 2-cycles of weight `(w, w)`.
//!
//! For a cycle `U`, `Psi U = d Phi U`, and `Psi` preserves cycles. If
//! `p(t) = p(0) + t g(t)` annihilates `U` under `Psi` with `p(0) != 0`, then
//! `U = d V` with `V = -(1/p(0)) Phi(g(d Phi) U)`.

use serde::{Deserialize, Serialize};

use super::krylov::{annihilating_polynomial_in, Poly};
use super::operators::{capital_phi, d_capital_phi, psi, PsiBlock};
use crate::boundary::boundary;
use crate::chain::{Chain, StructuredChain, WeightSignature};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockId {
    pub n: usize,
    pub w: usize,
}

/// A cycle `U`, a primitive `V` with `d V = U`, and the annihilator `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessCertificate {
    pub block: BlockId,
    pub u: Chain,
    pub v: Chain,
    pub p: Poly,
}

#[derive(Serialize, Deserialize)]
struct CertificateFile {
    block: BlockId,
    #[serde(rename = "U")]
    u: StructuredChain,
    #[serde(rename = "V")]
    v: StructuredChain,
    p: Vec<String>,
}

impl ExactnessCertificate {
    /// `g` with `p(t) = p(0) + t g(t)`.
    pub fn quotient(&self) -> Poly {
        self.p.split_constant().1
    }

    pub fn to_json(&self) -> String {
        let file = CertificateFile {
            block: self.block,
            u: self.u.to_structured(),
            v: self.v.to_structured(),
            p: self.p.to_strings(),
        };
        serde_json::to_string_pretty(&file).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CertificateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let u = Chain::from_structured(&file.u)?;
        let v = Chain::from_structured(&file.v)?;
        for (name, c) in [("U", &u), ("V", &v)] {
            if c.n() != file.block.n {
                return Err(Error::Parse(format!("{name} lives on {}-space, block says n = {}", c.n(), file.block.n)));
            }
        }
        Ok(ExactnessCertificate { block: file.block, u, v, p: Poly::from_strings(&file.p)? })
    }
}

fn diagonal_block(c: &Chain) -> Result<Option<usize>> {
    match c.signature()? {
        None => Ok(None),
        Some(sig) if sig.m == 2 && sig.w == sig.h && sig.w >= 0 => Ok(Some(sig.w as usize)),
        Some(sig) => Err(Error::WeightEscape(format!("{sig} is not a diagonal 2-chain block"))),
    }
}

/// Certifies a cycle with a prebuilt `Psi` block, so batches share the matrix.
pub fn certify_exact_in(block: &PsiBlock, u: &Chain) -> Result<ExactnessCertificate> {
    if u.n() != block.n {
        return Err(Error::DimensionMismatch { left: block.n, right: u.n() });
    }
    if let Some(w) = diagonal_block(u)? {
        if w != block.w {
            return Err(Error::WeightEscape(format!("chain of weight ({w},{w}) given to block ({0},{0})", block.w)));
        }
    }
    if !boundary(u).is_zero() {
        return Err(Error::NotACycle);
    }
    let id = BlockId { n: block.n, w: block.w };
    if u.is_zero() {
        return Ok(ExactnessCertificate { block: id, u: u.clone(), v: Chain::zero(u.n()), p: Poly::one() });
    }
    let p = annihilating_polynomial_in(block, u)?;
    let (p0, g) = p.split_constant();
    let inv = p0.recip().ok_or_else(|| Error::TheoremViolation("annihilator has zero constant term".into()))?;
    let w = g.apply(u, d_capital_phi)?;
    let v = capital_phi(&w)?.scale(&-inv);
    if boundary(&v) != *u {
        return Err(Error::VerificationFailed("d V differs from U".into()));
    }
    Ok(ExactnessCertificate { block: id, u: u.clone(), v, p })
}

/// Builds `V` with `d V = U` for a 2-cycle `U` of weight `(w, w)`.
/// The zero chain gets block weight 0, `V = 0` and `p = 1`.
pub fn certify_exact(u: &Chain) -> Result<ExactnessCertificate> {
    let w = diagonal_block(u)?.unwrap_or(0);
    if u.is_zero() {
        return Ok(ExactnessCertificate { block: BlockId { n: u.n(), w }, u: u.clone(), v: Chain::zero(u.n()), p: Poly::one() });
    }
    if !boundary(u).is_zero() {
        return Err(Error::NotACycle);
    }
    certify_exact_in(&PsiBlock::new(u.n(), w)?, u)
}

/// Re-verifies a certificate from scratch: block membership, `d V = U`,
/// `p(0) != 0` and `p(Psi) U = 0` with `Psi` evaluated on chains.
pub fn check_certificate(cert: &ExactnessCertificate) -> Result<()> {
    let fail = |msg: String| Err(Error::VerificationFailed(msg));
    let (n, w) = (cert.block.n, cert.block.w as i64);
    for (name, c, m) in [("U", &cert.u, 2usize), ("V", &cert.v, 3)] {
        if c.n() != n {
            return fail(format!("{name} lives on {}-space, block says n = {n}", c.n()));
        }
        let want = WeightSignature { m, w, h: w };
        if let Some(sig) = c.signatures().into_iter().find(|s| *s != want) {
            return fail(format!("{name} has a term in {sig}, expected {want}"));
        }
    }
    if boundary(&cert.v) != cert.u {
        return fail("d V differs from U".into());
    }
    if cert.p.is_zero() || cert.p.constant_term().is_zero() {
        return fail(format!("annihilator {} has zero constant term", cert.p));
    }
    if !cert.p.apply(&cert.u, psi)?.is_zero() {
        return fail(format!("p(Psi) U is nonzero for p = {}", cert.p));
    }
    Ok(())
}
