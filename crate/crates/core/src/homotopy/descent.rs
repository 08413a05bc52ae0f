//! Structured descent: a sequence of shifts `Psi + c` that kills a 2-chain
//! stratum by stratum.
//!
//! TL strata are cleared first, lowest diagonal first. TR strata above the
//! rectangle are then cleared diagonal by diagonal from the top, the rest of
//! the TR region layer by layer from the top, and finally the eigenspace `X[1,0]`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::krylov::Poly;
use super::operators::psi;
use super::strata::{project_stratum, strata_present, PairStratum, Stratification};
use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DescentPhase {
    TlDiagonal,
    RoofDiagonal,
    Layer,
    Bottom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentStep {
    pub phase: DescentPhase,
    pub targets: Vec<PairStratum>,
    /// the shift `c` in `Psi + c`
    pub constant: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentTrace {
    pub steps: Vec<DescentStep>,
}

impl DescentTrace {
    pub fn constants(&self) -> Vec<i64> {
        self.steps.iter().map(|s| s.constant).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// `prod_i (t + c_i)`
pub fn descent_product(constants: &[i64]) -> Poly {
    constants
        .iter()
        .fold(Poly::one(), |acc, &c| acc.mul(&Poly::shifted_t(Rational::from_integer(c))))
}

fn next_step(n: usize, st: &Stratification, present: &BTreeSet<PairStratum>) -> Option<DescentStep> {
    let (n, w) = (n as i64, st.w as i64);
    let tl: Vec<(usize, PairStratum)> = present.iter().filter_map(|&s| st.tl_diagonal(s).map(|l| (l, s))).collect();
    if let Some(&(l, _)) = tl.iter().min_by_key(|(l, _)| *l) {
        let s = tl.iter().filter(|(d, _)| *d == l).map(|(_, s)| *s).min_by_key(|s| s.a1).expect("nonempty");
        return Some(DescentStep {
            phase: DescentPhase::TlDiagonal,
            targets: vec![s],
            constant: -(n + w + 2 + l as i64 - s.a1 as i64),
        });
    }
    let roof: Vec<PairStratum> = present.iter().copied().filter(|&s| st.in_roof(s)).collect();
    if let Some(p) = roof.iter().map(|s| s.a1 + s.b1).max() {
        let s = roof.iter().filter(|s| s.a1 + s.b1 == p).max_by_key(|s| s.a1).copied().expect("nonempty");
        return Some(DescentStep {
            phase: DescentPhase::RoofDiagonal,
            targets: vec![s],
            constant: -(n + 2 + w - p as i64 + s.a1 as i64),
        });
    }
    let rest: Vec<PairStratum> = present.iter().copied().filter(|&s| s != PairStratum::BOTTOM).collect();
    if let Some(b) = rest.iter().map(|s| s.b1).max() {
        return Some(DescentStep {
            phase: DescentPhase::Layer,
            targets: rest.into_iter().filter(|s| s.b1 == b).collect(),
            constant: -(n + w + 2 - b as i64),
        });
    }
    present.contains(&PairStratum::BOTTOM).then(|| DescentStep {
        phase: DescentPhase::Bottom,
        targets: vec![PairStratum::BOTTOM],
        constant: -(n + w + 1),
    })
}

/// Shifts `c_1, ..., c_m` with `(Psi + c_m) ... (Psi + c_1) U = 0`, each
/// step verified to clear its target strata. Since the factors commute the
/// order of application does not matter for the final identity.
pub fn structured_descent(u: &Chain) -> Result<DescentTrace> {
    let Some(sig) = u.signature()? else {
        return Ok(DescentTrace::default());
    };
    if sig.m != 2 || sig.w != sig.h || sig.w < 0 {
        return Err(Error::WeightEscape(format!("{sig} is not a diagonal 2-chain block")));
    }
    let st = Stratification::new(sig.w as usize);
    let bound = 2 * st.strata().len() + st.w + 4;
    let n = u.n();
    let mut trace = DescentTrace::default();
    let mut v = u.clone();
    while !v.is_zero() {
        if trace.len() >= bound {
            return Err(Error::DescentDidNotTerminate(bound));
        }
        let present = strata_present(&v)?;
        let step = next_step(n, &st, &present).expect("nonzero chain has a stratum");
        let mut next = psi(&v)?;
        next.add_scaled(&Rational::from_integer(step.constant), &v);
        for &s in &step.targets {
            if !project_stratum(&next, s).is_zero() {
                return Err(Error::TheoremViolation(format!(
                    "step {:?} with shift {} left a component in {s}",
                    step.phase, step.constant
                )));
            }
        }
        trace.steps.push(step);
        v = next;
    }
    Ok(trace)
}
