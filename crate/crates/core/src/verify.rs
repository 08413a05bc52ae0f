//! Reproducible verification suites and seeded random inputs.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::basis::{chain_dim, enumerate_basis, vector_to_chain, BasisIndex};
use crate::boundary::{boundary, boundary_matrix, boundary_word};
use crate::chain::{Chain, WeightSignature};
use crate::error::Result;
use crate::homotopy::{verify_eigen_lemma, verify_psi_structure};
use crate::mvf::{schouten_bracket, DirectionSet, Generator, MultiIndex, MultiVector};
use crate::rational::Rational;
use crate::sparse::kernel_basis;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Result of one verification suite.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    fn new(suite: &str) -> Self {
        SuiteOutcome { suite: suite.to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: SuiteOutcome) {
        self.cases += other.cases;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}

fn sign(parity: i64) -> Rational {
    Rational::from_integer(if parity.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// A random unit monomial `x^beta d_alpha` on n-space with `|beta| <= max_beta`.
pub fn random_generator<R: Rng>(rng: &mut R, n: usize, max_beta: u32) -> Generator {
    let k = rng.gen_range(1..=n);
    let mut alpha: Vec<usize> = sample(rng, n, k).into_iter().map(|i| i + 1).collect();
    alpha.sort_unstable();
    let degree = rng.gen_range(0..=max_beta);
    let mut beta = vec![0u32; n];
    for _ in 0..degree {
        beta[rng.gen_range(0..n)] += 1;
    }
    Generator::new(DirectionSet::new(alpha, n).expect("valid subset"), MultiIndex::new(beta)).expect("in range")
}

/// A random nonzero rational with small numerator and denominator.
pub fn random_coefficient<R: Rng>(rng: &mut R) -> Rational {
    let mut num = rng.gen_range(-5i64..=4);
    if num >= 0 {
        num += 1;
    }
    Rational::new(num, rng.gen_range(1..=3))
}

pub fn random_monomial<R: Rng>(rng: &mut R, n: usize, max_beta: u32) -> MultiVector {
    let c = random_coefficient(rng);
    MultiVector::from_generator(c, random_generator(rng, n, max_beta))
}

fn g_degree(a: &MultiVector) -> i64 {
    a.terms().next().map(|t| t.generator.g_degree()).unwrap_or(0)
}

/// `[A, B] - (-1)^(1 + ab) [B, A]`
pub fn antisymmetry_defect(a: &MultiVector, b: &MultiVector) -> Result<MultiVector> {
    let s = sign(1 + g_degree(a) * g_degree(b));
    schouten_bracket(a, b)?.sub(&schouten_bracket(b, a)?.scale(&s))
}

/// `(-1)^(ac) [[A,B],C] + (-1)^(ba) [[B,C],A] + (-1)^(cb) [[C,A],B]`
pub fn jacobi_defect(a: &MultiVector, b: &MultiVector, c: &MultiVector) -> Result<MultiVector> {
    let (x, y, z) = (g_degree(a), g_degree(b), g_degree(c));
    let t1 = schouten_bracket(&schouten_bracket(a, b)?, c)?.scale(&sign(x * z));
    let t2 = schouten_bracket(&schouten_bracket(b, c)?, a)?.scale(&sign(y * x));
    let t3 = schouten_bracket(&schouten_bracket(c, a)?, b)?.scale(&sign(z * y));
    t1.add(&t2)?.add(&t3)
}

/// Graded antisymmetry on random pairs and the graded Jacobi identity on
/// random triples of homogeneous monomials with `|beta| <= 4`.
pub fn verify_jacobi(n: usize, cases: usize, seed: u64) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("jacobi");
    let mut rng = rng_from_seed(seed);
    for _ in 0..cases {
        let a = random_monomial(&mut rng, n, 4);
        let b = random_monomial(&mut rng, n, 4);
        let c = random_monomial(&mut rng, n, 4);
        let anti = antisymmetry_defect(&a, &b)?;
        if !anti.is_zero() {
            out.failures.push(format!("antisymmetry fails for A = {a}, B = {b}: defect {anti}"));
        }
        let jac = jacobi_defect(&a, &b, &c)?;
        if !jac.is_zero() {
            out.failures.push(format!("Jacobi fails for A = {a}, B = {b}, C = {c}: defect {jac}"));
        }
        out.cases += 1;
    }
    out.notes.push(format!("n = {n}, seed = {seed}, {cases} pairs and triples"));
    Ok(out)
}

/// `d(d(word)) = 0` for every basis word of `C_m^(w,h)`, `2 <= m <= m_max`.
pub fn verify_dsq(n: usize, w: i64, h: i64, m_max: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("dsq");
    for m in 2..=m_max {
        let basis = enumerate_basis(n, m, w, h);
        for word in basis.words() {
            let dd = boundary(&boundary_word(word));
            if !dd.is_zero() {
                out.failures.push(format!("d(d({word})) = {dd}"));
            }
        }
        out.cases += basis.len();
    }
    Ok(out)
}

/// Enumerated bases match the counting formula, every basis word carries
/// the block signature, and `d` maps each block into the block one arity down.
pub fn verify_weights(n: usize, w: i64, h: i64, m_max: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("weights");
    for m in 1..=m_max {
        let basis = enumerate_basis(n, m, w, h);
        let counted = chain_dim(n, m, w, h);
        if basis.len() as u128 != counted {
            out.failures.push(format!("C_{m}^({w},{h}): enumerated {} words, counted {counted}", basis.len()));
        }
        let want = WeightSignature { m, w, h };
        for word in basis.words() {
            if word.signature() != want {
                out.failures.push(format!("{word} has signature {}, expected {want}", word.signature()));
            }
        }
        if let Err(e) = boundary_matrix(n, m, w, h) {
            out.failures.push(format!("d on C_{m}^({w},{h}): {e}"));
        }
        out.cases += basis.len();
    }
    Ok(out)
}

/// Leading-scalar structure of `Psi` on `C_2^(w,w)` and the eigenvalue on `X[1,0]`.
pub fn verify_psi(n: usize, w: usize) -> Result<SuiteOutcome> {
    let mut out = SuiteOutcome::new("psi");
    let report = verify_psi_structure(n, w)?;
    out.cases += report.words;
    out.notes.extend(report.notes);
    out.failures.extend(report.violations.into_iter().map(|v| format!("{}: {}", v.word, v.detail)));
    let eigen = verify_eigen_lemma(n, w)?;
    out.cases += eigen.words;
    if eigen.words == 0 {
        out.notes.push(format!("n = {n}, w = {w}: stratum X[1,0] is empty"));
    }
    out.failures.extend(eigen.failures.into_iter().map(|f| format!("eigenvalue {} expected: {f}", eigen.eigenvalue)));
    Ok(out)
}

/// The space of 2-cycles of weight `(w, w)` as kernel vectors over the block basis.
pub struct CycleSpace {
    pub basis: BasisIndex,
    pub kernel: Vec<Vec<Rational>>,
}

impl CycleSpace {
    pub fn new(n: usize, w: usize) -> Result<Self> {
        let bm = boundary_matrix(n, 2, w as i64, w as i64)?;
        let kernel = kernel_basis(&bm.matrix);
        Ok(CycleSpace { basis: bm.domain, kernel })
    }

    pub fn dim(&self) -> usize {
        self.kernel.len()
    }

    /// A random nonzero integer combination of the kernel basis, or zero when
    /// the cycle space is trivial.
    pub fn random_cycle<R: Rng>(&self, rng: &mut R) -> Result<Chain> {
        if self.kernel.is_empty() {
            return Ok(Chain::zero(self.basis.n()));
        }
        let mut weights: Vec<i64> = self.kernel.iter().map(|_| rng.gen_range(-3..=3)).collect();
        if weights.iter().all(|&c| c == 0) {
            let k = rng.gen_range(0..weights.len());
            weights[k] = 1;
        }
        let mut v = vec![Rational::zero(); self.basis.len()];
        for (k, c) in self.kernel.iter().zip(&weights) {
            if *c == 0 {
                continue;
            }
            let c = Rational::from_integer(*c);
            for (vi, ki) in v.iter_mut().zip(k) {
                if !ki.is_zero() {
                    *vi += &(&c * ki);
                }
            }
        }
        vector_to_chain(&v, &self.basis)
    }
}

/// A random chain supported on a random subset of the basis of `C_2^(w,w)`.
pub fn random_block_chain<R: Rng>(rng: &mut R, n: usize, w: usize, terms: usize) -> Chain {
    let basis = enumerate_basis(n, 2, w as i64, w as i64);
    let mut c = Chain::zero(n);
    if basis.is_empty() {
        return c;
    }
    for _ in 0..terms {
        let k = rng.gen_range(0..basis.len());
        c.add_word(random_coefficient(rng), basis.word(k).clone());
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_small_inputs() {
        assert!(verify_jacobi(2, 40, DEFAULT_SEED).unwrap().passed());
        assert!(verify_dsq(2, 1, 1, 3).unwrap().passed());
        assert!(verify_weights(2, 1, 0, 3).unwrap().passed());
        let psi = verify_psi(2, 0).unwrap();
        assert!(psi.passed());
        assert!(psi.notes.iter().any(|n| n.contains("vacuous")));
    }

    #[test]
    fn random_cycles_are_cycles_and_reproducible() {
        let space = CycleSpace::new(2, 1).unwrap();
        assert!(space.dim() > 0);
        let a: Vec<Chain> = {
            let mut rng = rng_from_seed(3);
            (0..5).map(|_| space.random_cycle(&mut rng).unwrap()).collect()
        };
        let b: Vec<Chain> = {
            let mut rng = rng_from_seed(3);
            (0..5).map(|_| space.random_cycle(&mut rng).unwrap()).collect()
        };
        assert_eq!(a, b);
        for c in &a {
            assert!(!c.is_zero());
            assert!(boundary(c).is_zero());
        }
    }

    #[test]
    fn odd_pairs_bracket_symmetrically() {
        let a: MultiVector = "x[2,0,0] d[1,2]".parse().unwrap();
        let b: MultiVector = "x[0,0,1] d[1,3]".parse().unwrap();
        let ab = schouten_bracket(&a, &b).unwrap();
        assert!(!ab.is_zero());
        assert_eq!(ab, schouten_bracket(&b, &a).unwrap());
        assert!(antisymmetry_defect(&a, &b).unwrap().is_zero());
    }
}
