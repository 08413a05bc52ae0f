//! Rational polynomials and the Krylov minimal annihilator of `Psi` on a chain.

use std::fmt;

use super::operators::PsiBlock;
use crate::basis::chain_to_vector;
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Polynomial in `t` with rational coefficients, stored constant term first.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![Rational::one()])
    }

    /// `t + c`
    pub fn shifted_t(c: Rational) -> Self {
        Poly::from_coeffs(vec![c, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if divisor.is_zero() {
            return Err(Error::ZeroInput);
        }
        let lead_inv = divisor.leading().recip().expect("nonzero leading coefficient");
        let dd = divisor.degree();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![Rational::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let f = &rem[k + dd] * &lead_inv;
            if f.is_zero() {
                continue;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                rem[k + j] -= &(&f * d);
            }
            q[k] = f;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(q), Poly::from_coeffs(rem)))
    }

    /// Whether `self` divides `other` exactly.
    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.divrem(self)?.1.is_zero())
    }

    /// `(p(0), g)` with `p(t) = p(0) + t g(t)`.
    pub fn split_constant(&self) -> (Rational, Poly) {
        let g = if self.0.len() > 1 { Poly::from_coeffs(self.0[1..].to_vec()) } else { Poly::zero() };
        (self.constant_term(), g)
    }

    /// `p(T) x` by Horner's rule for a linear operator `T` on chains.
    pub fn apply(&self, x: &Chain, op: impl Fn(&Chain) -> Result<Chain>) -> Result<Chain> {
        let Some((top, rest)) = self.0.split_last() else {
            return Ok(Chain::zero(x.n()));
        };
        let mut acc = x.scale(top);
        for c in rest.iter().rev() {
            acc = op(&acc)?;
            acc.add_scaled(c, x);
        }
        Ok(acc)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(Rational::to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Poly> {
        items
            .iter()
            .map(|s| s.as_ref().parse::<Rational>())
            .collect::<Result<Vec<_>>>()
            .map(Poly::from_coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c} t")?,
                _ => write!(f, "{c} t^{k}")?,
            }
        }
        Ok(())
    }
}

fn axpy(y: &mut [Rational], a: &Rational, x: &[Rational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi -= &(a * xi);
        }
    }
}

/// Minimal monic `p` with `p(Psi) U = 0`, found from the Krylov sequence
/// `U, Psi U, Psi^2 U, ...` in the coordinates of `block`.
pub fn annihilating_polynomial_in(block: &PsiBlock, u: &Chain) -> Result<Poly> {
    let mut v = chain_to_vector(u, &block.basis)?;
    // reduced Krylov vectors: (pivot, vector, combination of v_0..v_k)
    let mut reduced: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
    for k in 0..=block.dim() {
        let mut r = v.clone();
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        for (piv, rv, rc) in &reduced {
            if r[*piv].is_zero() {
                continue;
            }
            let f = &r[*piv] / &rv[*piv];
            axpy(&mut r, &f, rv);
            axpy(&mut combo, &f, rc);
        }
        match r.iter().position(|x| !x.is_zero()) {
            None => {
                let p = Poly::from_coeffs(combo);
                if p.constant_term().is_zero() {
                    return Err(Error::TheoremViolation(format!("annihilator {p} of a chain in {} has zero constant term", block.signature())));
                }
                return Ok(p);
            }
            Some(piv) => reduced.push((piv, r, combo)),
        }
        v = block.matrix.mul_vec(&v)?;
    }
    Err(Error::VerificationFailed("Krylov sequence did not become dependent".into()))
}

/// [`annihilating_polynomial_in`] on the block of `u`; `1` for `u = 0`.
pub fn annihilating_polynomial(u: &Chain) -> Result<Poly> {
    let Some(sig) = u.signature()? else {
        return Ok(Poly::one());
    };
    if sig.m != 2 || sig.w != sig.h || sig.w < 0 {
        return Err(Error::WeightEscape(format!("{sig} is not a diagonal 2-chain block")));
    }
    let block = PsiBlock::new(u.n(), sig.w as usize)?;
    annihilating_polynomial_in(&block, u)
}
