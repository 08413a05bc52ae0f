use std::collections::BTreeMap;

use schouten_core::homotopy::{descent_product, psi_word, PsiBlock};
use schouten_core::verify::{random_block_chain, rng_from_seed, CycleSpace};
use schouten_core::{
    annihilating_polynomial, boundary, capital_phi, certify_exact, check_certificate, enumerate_basis,
    project_stratum, psi, structured_descent, Chain, Error, PairStratum, Poly, Rational, Stratification,
    WeightSignature,
};

/// Independent restatement of the diagonal entry of `Psi` on a stratum.
fn scalar_oracle(n: usize, w: usize, s: PairStratum) -> i64 {
    let (n, w, a1, b1) = (n as i64, w as i64, s.a1 as i64, s.b1 as i64);
    if a1 + b1 > 2 + w {
        n + b1
    } else {
        n + 2 + w - b1
    }
}

fn residual_targets(w: usize, s: PairStratum) -> Vec<PairStratum> {
    let mut out = vec![PairStratum::BOTTOM, s];
    if s.a1 + s.b1 > 2 + w {
        out.push(PairStratum::new(s.a1, s.b1 + 1));
    } else if s.b1 > 0 {
        out.push(PairStratum::new(s.a1, s.b1 - 1));
    }
    out
}

fn p(coeffs: &[i64]) -> Poly {
    Poly::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c)).collect())
}

#[test]
fn psi_is_triangular_along_the_strata() {
    for (n, w) in [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1)] {
        for word in enumerate_basis(n, 2, w as i64, w as i64).words() {
            let s = PairStratum::of_word(word).unwrap();
            let image = psi_word(word).unwrap();
            let lambda = scalar_oracle(n, w, s);
            let allowed = residual_targets(w, s);
            for (t, c) in image.terms() {
                let ts = PairStratum::of_word(t).unwrap();
                assert!(allowed.contains(&ts), "Psi({word}) reaches {ts}");
                if t == word && ts != PairStratum::BOTTOM {
                    assert_eq!(*c, Rational::from_integer(lambda), "diagonal entry of {word}");
                }
            }
            if s != PairStratum::BOTTOM {
                assert_eq!(image.coefficient(word), Rational::from_integer(lambda), "{word}");
            }
        }
    }
}

#[test]
fn psi_spectrum_is_the_set_of_stratum_scalars() {
    for (n, w) in [(2, 0), (2, 1), (3, 0)] {
        let block = PsiBlock::new(n, w).unwrap();
        let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
        for word in block.basis.words() {
            let s = PairStratum::of_word(word).unwrap();
            let lambda = if s == PairStratum::BOTTOM {
                (n + w + 1) as i64
            } else {
                scalar_oracle(n, w, s)
            };
            *counts.entry(lambda).or_default() += 1;
        }
        let constants: Vec<i64> = counts.iter().flat_map(|(&l, &k)| std::iter::repeat_n(-l, k)).collect();
        let charpoly = descent_product(&constants);
        let mut rng = rng_from_seed(11);
        for _ in 0..5 {
            let u = random_block_chain(&mut rng, n, w, 6);
            if u.is_zero() {
                continue;
            }
            let killed = charpoly.apply(&u, psi).unwrap();
            assert!(killed.is_zero(), "n={n} w={w}");
        }
    }
}

#[test]
fn stratum_projections_sum_back() {
    let mut rng = rng_from_seed(3);
    for (n, w) in [(2, 1), (2, 2), (3, 1)] {
        let u = random_block_chain(&mut rng, n, w, 12);
        let mut total = Chain::zero(n);
        let strata = Stratification::new(w).strata();
        for s in &strata {
            total.add_scaled(&Rational::one(), &project_stratum(&u, *s));
        }
        assert_eq!(total, u);
        for (a, b) in strata.iter().zip(strata.iter().skip(1)) {
            let overlap = project_stratum(&project_stratum(&u, *a), *b);
            assert!(overlap.is_zero());
        }
    }
}

#[test]
fn psi_is_a_boundary_on_cycles() {
    let mut rng = rng_from_seed(5);
    for (n, w) in [(2, 0), (2, 1), (2, 2), (3, 1)] {
        let space = CycleSpace::new(n, w).unwrap();
        for _ in 0..4 {
            let u = space.random_cycle(&mut rng).unwrap();
            assert!(boundary(&u).is_zero());
            let image = psi(&u).unwrap();
            assert_eq!(image, boundary(&capital_phi(&u).unwrap()));
            assert!(boundary(&image).is_zero());
        }
    }
}

#[test]
fn worked_example_certifies() {
    let seed_word = Chain::from_text("1 | x[0,0] d[1] ; x[1,0] d[1] ; x[1,1] d[2]", Some(2)).unwrap();
    let u = boundary(&seed_word);
    assert_eq!(u.signature().unwrap(), Some(WeightSignature { m: 2, w: 0, h: 0 }));
    let cert = certify_exact(&u).unwrap();
    assert_eq!(cert.block.w, 0);
    assert_eq!(boundary(&cert.v), u);
    assert!(!cert.p.constant_term().is_zero());
    check_certificate(&cert).unwrap();
}

#[test]
fn pi_wedge_pi_has_three_scalars() {
    let pi = Chain::from_text("1 | x[1,1] d[1,2] ; x[1,1] d[1,2]", Some(2)).unwrap();
    assert!(boundary(&pi).is_zero());
    let cert = certify_exact(&pi).unwrap();
    // strata (2,2), (2,1), (2,0) carry the scalars 4, 5, 6
    assert_eq!(cert.p, p(&[-120, 74, -15, 1]));
    assert_eq!(structured_descent(&pi).unwrap().constants(), vec![-4, -5, -6]);
    check_certificate(&cert).unwrap();
}

#[test]
fn random_cycles_certify_and_descent_dominates_krylov() {
    let mut rng = rng_from_seed(17);
    for (n, w) in [(2, 1), (3, 1)] {
        let space = CycleSpace::new(n, w).unwrap();
        assert!(space.dim() > 0);
        for _ in 0..6 {
            let u = space.random_cycle(&mut rng).unwrap();
            let cert = certify_exact(&u).unwrap();
            check_certificate(&cert).unwrap();
            assert_eq!(cert.v.signature().unwrap(), Some(WeightSignature { m: 3, w: w as i64, h: w as i64 }));
            let krylov = annihilating_polynomial(&u).unwrap();
            assert_eq!(krylov, cert.p);
            let trace = structured_descent(&u).unwrap();
            let product = descent_product(&trace.constants());
            assert!(krylov.divides(&product).unwrap());
            assert!(product.apply(&u, psi).unwrap().is_zero());
            let bound = 2 * Stratification::new(w).strata().len() + w + 4;
            assert!(trace.len() <= bound);
        }
    }
}

#[test]
fn non_cycles_are_refused() {
    let u = Chain::from_text("1 | x[0,0] d[1] ; x[2,0] d[2]", Some(2)).unwrap();
    assert!(!boundary(&u).is_zero());
    assert!(matches!(certify_exact(&u), Err(Error::NotACycle)));
}

#[test]
fn zero_cycle_has_trivial_certificate() {
    let cert = certify_exact(&Chain::zero(2)).unwrap();
    assert!(cert.v.is_zero());
    assert_eq!(cert.p, Poly::one());
    check_certificate(&cert).unwrap();
}
