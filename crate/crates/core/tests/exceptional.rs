use std::collections::BTreeSet;

use fourprimes_core::arith::sieve_primes;
use fourprimes_core::exceptional::*;
use fourprimes_core::sieve::{build_decomposition, make_params, SieveParams};
use fourprimes_core::DEFAULT_SIGMA;

/// Sums of four prime squares up to `n_max`, by a nested loop over p₁ ≤ p₂ ≤ p₃ ≤ p₄.
fn quadruple_oracle(n_max: u64) -> Vec<bool> {
    let sq: Vec<u64> = sieve_primes(((n_max as f64).sqrt() as u64).max(2))
        .unwrap()
        .primes()
        .iter()
        .map(|p| p * p)
        .collect();
    let mut hit = vec![false; n_max as usize + 1];
    for (i, &a) in sq.iter().enumerate() {
        for (j, &b) in sq.iter().enumerate().skip(i) {
            if a + b > n_max {
                break;
            }
            for (k, &c) in sq.iter().enumerate().skip(j) {
                if a + b + c > n_max {
                    break;
                }
                for &d in &sq[k..] {
                    if a + b + c + d > n_max {
                        break;
                    }
                    hit[(a + b + c + d) as usize] = true;
                }
            }
        }
    }
    hit
}

#[test]
fn index_examples() {
    let idx = build_two_square_index(10_000).unwrap();
    assert_eq!(idx.values()[0], 8);
    assert!(idx.contains(13));
    let primes = sieve_primes(100).unwrap();
    let mut oracle = BTreeSet::new();
    for &p in primes.primes() {
        for &q in primes.primes() {
            if p * p + q * q <= 10_000 {
                oracle.insert(p * p + q * q);
            }
        }
    }
    assert_eq!(idx.len(), oracle.len());
    assert!(oracle.iter().all(|&s| idx.contains(s)));
}

#[test]
fn representation_examples() {
    let idx = build_two_square_index(10_000).unwrap();
    let r = |n| count_representations(&idx, n).unwrap();
    assert_eq!(r(4).r, 0);
    assert_eq!(r(28).r, 0);
    assert_eq!(r(100).r, 1);
    assert_eq!(r(100).witness, Some([5, 5, 5, 5]));
    assert_eq!(r(52).r, 4);
    assert_eq!(r(52).witness, Some([3, 3, 3, 5]));
    assert!(count_representations(&idx, 20_000).is_err());
}

#[test]
fn scan_matches_oracle() {
    let oracle = quadruple_oracle(10_000);
    for n_max in [1_000u64, 5_000, 10_000] {
        let rep = scan_exceptions(n_max).unwrap();
        let expected: Vec<u64> = (4..=n_max).step_by(24).filter(|&n| !oracle[n as usize]).collect();
        assert_eq!(rep.exceptions, expected, "N = {n_max}");
        assert_eq!(rep.count, rep.exceptions.len());
    }
    let small = scan_exceptions(1000).unwrap();
    assert!(small.exceptions.contains(&4) && small.exceptions.contains(&28));
}

#[test]
fn scan_is_consistent_across_bounds() {
    let big = scan_exceptions(200_000).unwrap();
    for n1 in [1_000u64, 30_000, 123_456] {
        let small = scan_exceptions(n1).unwrap();
        let cut: Vec<u64> = big.exceptions.iter().copied().filter(|&n| n <= n1).collect();
        assert_eq!(small.exceptions, cut);
    }
}

#[test]
fn witnesses_respect_residues_and_exceptions_reverify() {
    let idx = build_two_square_index(1_000_000).unwrap();
    let rep = scan_exceptions(1_000_000).unwrap();
    for n in (4..=1_000_000u64).step_by(24) {
        let probe = probe_representation(&idx, n).unwrap();
        match probe.witness {
            Some(w) => {
                assert_eq!(w.iter().map(|p| p * p).sum::<u64>(), n);
                let all_large = w.iter().all(|&p| p >= 5);
                let three_threes = w[..3] == [3, 3, 3] && w[3] >= 5;
                assert!(all_large || three_threes, "n = {n}: {w:?}");
            }
            None => {
                assert!(rep.exceptions.binary_search(&n).is_ok());
                assert_eq!(count_representations(&idx, n).unwrap().r, 0);
            }
        }
    }
    assert!(rep.mean_probes > 0.0);
}

fn params_for_n(n: f64) -> SieveParams {
    SieveParams::from_n(DEFAULT_SIGMA, n).unwrap()
}

#[test]
fn s12_inequality() {
    let d = build_decomposition(&make_params(DEFAULT_SIGMA, 2000.0).unwrap());
    assert!((d.params.n() - 9e6).abs() < 1e-3);
    let ctx = S12Context::new(&d).unwrap();
    for n in sample_targets(&d.params, 30, 1) {
        let v = ctx.compute(n).unwrap();
        assert!(v.inequality_holds(), "{v:?}");
        assert_eq!(v.quad_count, count_representations_restricted(&d.params, n).unwrap().r);
    }
    let p = 1499u64;
    let w = ctx.compute(4 * p * p).unwrap();
    assert!(w.quad_count >= 1 && w.inequality_holds());
    assert!(ctx.compute(100).is_err());
}

#[test]
fn restricted_counts_cover_the_class() {
    let params = make_params(DEFAULT_SIGMA, 200.0).unwrap();
    let all = restricted_counts(&params).unwrap();
    let big_n = params.n();
    let expected: Vec<u64> = (1..=big_n as u64).filter(|&n| n % 24 == 4 && n as f64 > big_n / 2.0).collect();
    assert_eq!(all.iter().map(|c| c.n).collect::<Vec<_>>(), expected);
    for c in all.iter().step_by(37) {
        assert_eq!(*c, count_representations_restricted(&params, c.n).unwrap());
    }
    assert!(all.iter().any(|c| c.r == 0) && all.iter().any(|c| c.r > 0));
}

#[test]
fn main_term_ratio_in_band() {
    let params = params_for_n(1e8);
    let ctx = MainTermContext::new(&params, MainTermOptions::default()).unwrap();
    for n in sample_targets(&params, 3, 2) {
        let c = ctx.compare(n).unwrap();
        assert!((0.5..=2.0).contains(&c.ratio), "{c:?}");
        assert!((c.ratio / c.ratio_oscillatory - 1.0).abs() < 0.01);
    }
    assert!(ctx.compare(100_000_001).is_err());
}
