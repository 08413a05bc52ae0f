use schouten_core::basis::{chain_dim, enumerate_basis, max_arity};
use schouten_core::{Generator, WeightSignature};

/// All unit generators on n-space with `|alpha| <= max_a` and `|beta| <= max_b`,
/// built from bitmasks and exponent tuples.
fn all_generators(n: usize, max_a: usize, max_b: u32) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let a = mask.count_ones() as usize;
        if a > max_a {
            continue;
        }
        let mut exps = vec![0u32; n];
        loop {
            let deg: u32 = exps.iter().sum();
            if deg <= max_b {
                out.push((a as i64 - 1, deg as i64 - 1));
            }
            // odometer over 0..=max_b per variable
            let mut k = 0;
            while k < n {
                exps[k] += 1;
                if exps[k] <= max_b {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    out
}

/// Counts m-multisets of generators with total bidegree (w,h), where a
/// generator of even g-degree appears at most once.
fn brute_count(n: usize, m: usize, w: i64, h: i64) -> u128 {
    if w < 0 || m == 0 {
        return 0;
    }
    let max_b = (h + m as i64).max(0) as u32;
    let gens = all_generators(n, (w as usize + 1).min(n), max_b);
    fn rec(gens: &[(i64, i64)], start: usize, left: usize, w: i64, h: i64) -> u128 {
        if left == 0 {
            return u128::from(w == 0 && h == 0);
        }
        // every remaining factor has i >= 0 and j >= -1
        if w < 0 || h < -(left as i64) {
            return 0;
        }
        let mut total = 0;
        for k in start..gens.len() {
            let (i, j) = gens[k];
            let next = if i % 2 == 0 { k + 1 } else { k };
            total += rec(gens, next, left - 1, w - i, h - j);
        }
        total
    }
    rec(&gens, 0, m, w, h)
}

#[test]
fn counting_formula_matches_brute_force() {
    for n in 1..=3usize {
        for m in 1..=4usize {
            for w in 0..=3i64 {
                for h in -4..=4i64 {
                    if n == 3 && m + (w + h).max(0) as usize > 6 {
                        continue;
                    }
                    assert_eq!(chain_dim(n, m, w, h), brute_count(n, m, w, h), "n={n} m={m} w={w} h={h}");
                }
            }
        }
    }
}

#[test]
fn enumeration_matches_counting_formula() {
    for n in 1..=3usize {
        for m in 1..=4usize {
            for w in 0..=3i64 {
                for h in -4..=4i64 {
                    let d = chain_dim(n, m, w, h);
                    if d > 60_000 {
                        continue;
                    }
                    let basis = enumerate_basis(n, m, w, h);
                    assert_eq!(basis.len() as u128, d, "n={n} m={m} w={w} h={h}");
                }
            }
        }
    }
}

#[test]
fn basis_is_strictly_increasing_and_canonical() {
    for (n, m, w, h) in [(2, 2, 0, 0), (2, 3, 1, 1), (3, 2, 1, 0), (2, 4, 2, 2)] {
        let basis = enumerate_basis(n, m, w, h);
        let sig = WeightSignature { m, w, h };
        for pair in basis.words().windows(2) {
            assert!(pair[0] < pair[1]);
        }
        for word in basis.words() {
            assert_eq!(word.signature(), sig);
            let f = word.factors();
            for p in f.windows(2) {
                assert!(p[0] <= p[1]);
                assert!(p[0] != p[1] || p[0].is_odd(), "repeated even factor in {word}");
            }
        }
    }
}

#[test]
fn dims_examples() {
    assert_eq!(enumerate_basis(2, 2, 0, 0).len(), 18);
    assert_eq!(enumerate_basis(2, 1, 0, 0).len(), 4);
    for m in 1..=6 {
        assert!(enumerate_basis(1, m, 1, 0).is_empty());
    }
    assert_eq!(max_arity(1, 1, 0), 0);
    // the block holding pi ^^ pi for pi = x1 x2 d1^d2
    let pi = Generator::from_slices(&[1, 1], &[1, 2]);
    assert!(pi.is_odd());
    let block = enumerate_basis(2, 2, 2, 2);
    assert_eq!(block.len(), 19);
    assert!(block.words().iter().any(|w| w.factors() == [pi.clone(), pi.clone()]));
}

#[test]
fn nothing_beyond_the_maximal_arity() {
    for (n, w, h) in [(1, 0, 0), (2, 0, 0), (2, 1, 1), (2, 0, 1), (2, 1, 0), (3, 0, -1)] {
        let top = max_arity(n, w, h);
        for m in top + 1..=top + 3 {
            assert_eq!(chain_dim(n, m, w, h), 0, "n={n} w={w} h={h} m={m}");
        }
        assert!(enumerate_basis(n, top + 1, w, h).is_empty());
    }
}
