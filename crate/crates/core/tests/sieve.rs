use fourprimes_core::arith::{characters_mod, gcd, sieve_primes, SmallestFactorTable};
use fourprimes_core::sieve::*;
use fourprimes_core::DEFAULT_SIGMA;
use proptest::prelude::*;

fn default_decomp(p: f64) -> Decomposition {
    build_decomposition(&make_params(DEFAULT_SIGMA, p).unwrap())
}

fn ids(list: &[SieveTerm]) -> Vec<String> {
    list.iter().map(|t| t.id.to_string()).collect()
}

#[test]
fn term_lists() {
    let d = default_decomp(1e6);
    assert_eq!(
        ids(&d.g1),
        ["psi1", "psi3", "psi5", "psi8", "psi11", "psi12", "psi13g", "psi14", "psi16g", "psi17", "psi18", "psi19g"]
    );
    assert_eq!(ids(&d.b1), ["psi4", "psi16b"]);
    assert_eq!(ids(&d.b2), ["psi10", "psi13b", "psi19b"]);
    assert_eq!(ids(&d.b3), ["psi4", "psi21", "psi26b", "psi29b"]);
    assert_eq!(
        ids(&d.g2),
        ["psi1", "psi3", "psi22", "psi23", "psi24g", "psi26g", "psi27", "psi28", "psi29g"]
    );
    for t in d.b1.iter().chain(&d.b2).chain(&d.b3) {
        assert_eq!(t.sign, 1);
    }
    let split: Vec<u8> = d
        .catalog
        .terms()
        .iter()
        .filter(|t| t.id.part != Part::Whole)
        .map(|t| t.id.index)
        .collect();
    assert_eq!(split, [13, 13, 16, 16, 19, 19, 24, 24, 26, 26, 29, 29]);
}

#[test]
fn term_regions_nonempty_except_psi26_good() {
    let d = default_decomp(1e6);
    for t in d.catalog.terms() {
        assert!(!t.polytope(DEFAULT_SIGMA).is_empty(), "{}", t.id);
    }
    // ψ26 already carries the bad-part condition of ψ24, so its good part is empty.
    let g26 = d.catalog.get(TermId::good(26));
    let b26 = d.catalog.get(TermId::bad(26));
    assert!(g26.rules.iter().any(|r| r.coverage == Coverage::SomeIn));
    assert!(g26.rules.iter().any(|r| r.coverage == Coverage::NoneIn && r.mask == 0b111));
    assert_eq!(b26.rules.len(), 2);
}

#[test]
fn polytope_consequences() {
    let d = default_decomp(1e6);
    let s = DEFAULT_SIGMA;
    // ψ25 forces p₁p₃ ≤ W
    assert!(region_implies_at_most(d.catalog.get(TermId::whole(25)), s, 0b101, 1.0 - 4.0 * s));
    // ψ15 forces p₂p₃ ≤ P^{2/3−2σ} ≤ W
    let psi15 = d.catalog.get(TermId::whole(15));
    assert!(region_implies_at_most(psi15, s, 0b110, 2.0 / 3.0 - 2.0 * s));
    assert!(2.0 / 3.0 - 2.0 * s <= 1.0 - 4.0 * s);
    // and the bound is not vacuous
    assert!(!region_implies_at_most(psi15, s, 0b110, 0.3));
}

#[test]
fn spec_point_values() {
    let d = default_decomp(1e6);
    let primes = sieve_primes(1_000_000).unwrap();
    let p = &d.params;
    let psi1 = d.catalog.get(TermId::whole(1));
    let psi3 = d.catalog.get(TermId::whole(3));
    assert_eq!(eval_term(psi1, 999_983, p, &primes).unwrap(), 1);
    assert_eq!(eval_term(psi3, 505_303, p, &primes).unwrap(), 1);
    assert_eq!(eval_term(psi1, 505_303, p, &primes).unwrap(), 1);
    for m in [500_000u64, 777_778, 999_998] {
        assert_eq!(eval_term(psi1, m, p, &primes).unwrap(), 0);
    }
    let f = primes.factorize(505_303).unwrap();
    for t in &d.g1 {
        let expect = u64::from(t.id == TermId::whole(1) || t.id == TermId::whole(3));
        assert_eq!(t.eval(&f, p), expect, "{}", t.id);
    }
    assert_eq!(eval_rho(&d, 1, 505_303, &primes).unwrap(), 0);
    for q in primes.primes_in(500_000, 1_000_000).iter().step_by(997) {
        assert_eq!(eval_rho(&d, 1, *q, &primes).unwrap(), 1);
        assert_eq!(eval_rho(&d, 2, *q, &primes).unwrap(), 1);
        assert_eq!(eval_rho(&d, 3, *q, &primes).unwrap(), 0);
    }
    assert!(eval_rho(&d, 4, 7, &primes).is_err());
}

fn check_step(d: &Decomposition, range: std::ops::Range<u64>, lhs: TermId, rhs: &[(i64, TermId)]) {
    let spf = SmallestFactorTable::new(range.end).unwrap();
    let p = &d.params;
    for m in range {
        let f = spf.factorize(m).unwrap();
        let l = d.catalog.get(lhs).eval(&f, p) as i64;
        let r: i64 = rhs.iter().map(|&(s, id)| s * d.catalog.get(id).eval(&f, p) as i64).sum();
        assert_eq!(l, r, "{lhs} at m = {m}");
    }
}

#[test]
fn each_buchstab_step_is_exact() {
    let w = TermId::whole;
    let g = TermId::good;
    let b = TermId::bad;
    for p in [1e5, 1e6] {
        let d = default_decomp(p);
        let r = d.params.interval_integers();
        let r = r.start..r.start + 60_000;
        check_step(&d, r.clone(), w(2), &[(1, w(5)), (-1, w(6))]);
        check_step(&d, r.clone(), w(6), &[(1, w(7)), (1, w(8)), (1, w(9)), (1, w(10))]);
        check_step(&d, r.clone(), w(7), &[(1, w(11)), (-1, w(12)), (1, w(13))]);
        check_step(&d, r.clone(), w(9), &[(1, w(14)), (-1, w(15)), (-1, w(16))]);
        check_step(&d, r.clone(), w(15), &[(1, w(17)), (1, w(18)), (-1, w(19))]);
        check_step(&d, r.clone(), w(2), &[(1, w(20)), (1, w(21))]);
        check_step(&d, r.clone(), w(20), &[(1, w(22)), (-1, w(23)), (1, w(24))]);
        check_step(&d, r.clone(), b(24), &[(1, w(25)), (1, w(26))]);
        check_step(&d, r.clone(), w(25), &[(1, w(27)), (-1, w(28)), (1, w(29))]);
        for j in [13, 16, 19, 24, 26, 29] {
            check_step(&d, r.clone(), w(j), &[(1, g(j)), (1, b(j))]);
        }
        check_step(&d, r, g(26), &[]);
    }
}

#[test]
fn identities_small_ranges_and_other_sigmas() {
    for sigma in [0.1501, 0.155, DEFAULT_SIGMA, 0.16, 0.1666] {
        for p in [16.0, 100.0, 5_000.0, 200_000.0] {
            let d = build_decomposition(&make_params(sigma, p).unwrap());
            let hi = (2.0 * p) as u64;
            let rep = verify_identities(&d, 1..hi.min(120_000), Sampling::Full).unwrap();
            assert!(rep.ok(), "sigma {sigma} P {p}: {:?}", &rep.violations[..rep.violations.len().min(3)]);
        }
    }
}

#[test]
fn powers_of_two_vanish() {
    let d = default_decomp(1e6);
    let primes = sieve_primes(1 << 20).unwrap();
    for k in 1..40 {
        let f = primes.factorize(1u64 << k).unwrap();
        assert_eq!(d.eval_all(&f), WeightValues::default());
    }
}

#[test]
fn inequality_on_pairs() {
    let d = default_decomp(1e6);
    let pairs = random_pairs(&d, 2_000, 7);
    let rep = verify_inequality(&d, &pairs).unwrap();
    assert!(rep.ok());
    assert_eq!(rep.checked, 2_000);
    let primes = [999_983u64, 500_009];
    let rep = verify_inequality(&d, &[(primes[0], primes[1]), (600_000, primes[1])]).unwrap();
    assert!(rep.ok());
}

#[test]
fn density_sums() {
    let d = default_decomp(1e6);
    let s = density_sum(&d, 0, 500_000, 1_000_000, None).unwrap();
    assert_eq!(s.sum, 78_498 - 41_538);
    let expect = s.sum as f64 / (500_000.0 / 1e6f64.ln());
    assert!((s.ratio.unwrap() - expect).abs() < 1e-12);
    assert!(density_sum(&d, 3, 500_000, 600_000, None).unwrap().sum >= 0);
    assert!(density_sum(&d, 1, 10, 10, None).is_err());
}

#[test]
fn character_sums() {
    let d = default_decomp(1e5);
    let (u, v) = (50_000, 60_000);
    let trivial = &characters_mod(1).unwrap()[0];
    let cs = char_sum_check(&d, 1, trivial, u, v).unwrap();
    assert_eq!(cs.sum.re, density_sum(&d, 1, u, v, None).unwrap().sum as f64);

    // principal character mod 6 equals the density sum over gcd(m, 6) = 1,
    // which for ρ₁ is the whole sum since ρ₁ lives on z-rough integers.
    let chi0 = characters_mod(6).unwrap().into_iter().find(|c| c.is_principal()).unwrap();
    let primes = sieve_primes(1000).unwrap();
    let restricted: i64 = (u + 1..=v)
        .filter(|&m| gcd(m, 6) == 1)
        .map(|m| eval_rho(&d, 1, m, &primes).unwrap())
        .sum();
    let cs = char_sum_check(&d, 1, &chi0, u, v).unwrap();
    assert!((cs.sum.re - restricted as f64).abs() < 1e-6);

    let chi3 = characters_mod(3).unwrap().into_iter().find(|c| !c.is_principal()).unwrap();
    let cs = char_sum_check(&d, 1, &chi3, u, v).unwrap();
    assert!(cs.ratio < 0.05);
    assert!(char_sum_check(&d, 1, &characters_mod(1009).unwrap()[1], u, v).is_err());
}

#[test]
fn bilinear_classification() {
    let d = default_decomp(1e6);
    let c1 = bilinear_split(&d, 1).unwrap();
    let psi1 = c1.iter().find(|c| c.id == "psi1").unwrap();
    assert_eq!(psi1.kind, SumType::TypeI);
    assert!(psi1.mobius_branches.iter().any(|b| b.kind == SumType::TypeI && b.d_hi <= 0.06));
    let psi8 = c1.iter().find(|c| c.id == "psi8").unwrap();
    assert_eq!(psi8.kind, SumType::TypeII);
    let w = psi8.witnesses.iter().find(|w| w.mask == 0b11).unwrap();
    let s = DEFAULT_SIGMA;
    assert!((w.lo - 2.0 * s).abs() < 1e-9 && (w.hi - (1.0 - 4.0 * s)).abs() < 1e-9);
    for c in c1.iter().filter(|c| c.id != "psi1") {
        assert_eq!(c.kind, SumType::TypeII, "{}", c.id);
    }
    let c3 = bilinear_split(&d, 3).unwrap();
    let psi4 = c3.iter().find(|c| c.id == "psi4").unwrap();
    let w = &psi4.witnesses[0];
    assert!((w.lo - (1.0 - 4.0 * s)).abs() < 1e-9 && (w.hi - 0.5).abs() < 1e-9);
    assert!(bilinear_split(&d, 2).unwrap().iter().filter(|c| c.id != "psi1").all(|c| c.kind == SumType::TypeII));
}

#[test]
fn json_export() {
    let d = default_decomp(1e6);
    let j = d.to_json();
    assert_eq!(j["g1"].as_array().unwrap().len(), 12);
    assert_eq!(j["b3"][2]["id"], "psi26b");
    assert_eq!(j["g1"][1]["sign"], -1);
    assert!(j["b1"][0]["constraints"].as_array().unwrap().len() == 2);
}

#[test]
fn degenerate_params_flagged() {
    let p = make_params(DEFAULT_SIGMA, 20.0).unwrap();
    assert!(p.degenerate);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_semantics_agree(seed in 0u64..u64::MAX) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let primes = sieve_primes(1_000_000).unwrap();
        let d = default_decomp(1e6);
        let lp = d.params.log_p();
        for t in d.catalog.terms().iter().filter(|t| t.arity > 0) {
            for _ in 0..25 {
                let mut tuple: Vec<u64> = (0..t.arity)
                    .map(|_| primes.primes()[rng.gen_range(0..primes.count().min(200))])
                    .collect();
                tuple.sort_unstable_by(|a, b| b.cmp(a));
                let u: Vec<f64> = tuple.iter().map(|&p| (p as f64).ln() / lp).collect();
                let near_tie = t.constraints.iter().any(|c| c.lhs_minus_rhs(&u, DEFAULT_SIGMA).abs() < 1e-9);
                if !near_tie {
                    prop_assert_eq!(t.admits(&tuple, &d.params), t.admits_exponent(&u, DEFAULT_SIGMA));
                }
            }
        }
    }
}
