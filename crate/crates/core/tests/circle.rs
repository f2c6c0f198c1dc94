use num_complex::Complex64;

use fourprimes_core::arith::{gcd, sieve_primes};
use fourprimes_core::circle::*;
use fourprimes_core::sieve::{build_decomposition, density_sum, make_params};
use fourprimes_core::DEFAULT_SIGMA;

#[test]
fn arc_examples() {
    let p: f64 = 1e6;
    let q = p.powf(0.01);
    let c = classify_arc(1.0 / 3.0, p, 3.0).unwrap();
    assert_eq!(c.kind, ArcKind::Major { a: 1, q: 3 });
    let off = classify_arc(1.0 / 3.0 + 2.0 * q / (3.0 * p * p), p, q).unwrap();
    assert_eq!(off.kind, ArcKind::Minor);
    for (a, qq) in [(1i64, 7u64), (3, 10), (17, 9999)] {
        let d = delta(a as f64 / qq as f64, p).unwrap();
        assert!((d - 1.0 / qq as f64).abs() < 1e-9, "{a}/{qq}: {d}");
    }
    assert!(classify_arc(0.5, p, 2.0 * p).is_err());
}

#[test]
fn arc_windows() {
    let p = 1e4;
    // α = 1 lies in the window and on the arc around 1/1
    let c = classify_arc(1.0, p, 10.0).unwrap();
    assert_eq!(c.kind, ArcKind::Major { a: 1, q: 1 });
    let c = classify_arc(-0.75, p, 10.0).unwrap();
    assert!((c.alpha - 0.25).abs() < 1e-15);
    assert_eq!(c.kind, ArcKind::Major { a: 1, q: 4 });
    assert!(!in_auxiliary_minor(0.5, p));
    assert!(in_auxiliary_minor(0.5 + 1e-3, p));
}

fn weights(j: usize, p: f64) -> WeightTable {
    let d = build_decomposition(&make_params(DEFAULT_SIGMA, p).unwrap());
    WeightTable::build(&d, j).unwrap()
}

#[test]
fn exp_sum_examples() {
    let p = 20_000.0;
    let primes = sieve_primes(20_000).unwrap();
    let f0 = exp_sum(&weights(0, p), 0.0);
    let expected = primes.count_up_to(19_999) - primes.count_up_to(9_999);
    assert_eq!(f0, Complex64::new(expected as f64, 0.0));

    for j in 0..4 {
        let t = weights(j, p);
        for alpha in [0.123046875, 0.5 + 2f64.powi(-30), 0.9] {
            let f = exp_sum(&t, alpha);
            assert_eq!(f, exp_sum(&t, alpha - 1.0));
            assert!((f - exp_sum(&t, alpha + 1.0)).norm() <= 1e-6 * p);
            let g = exp_sum(&t, -alpha);
            assert!((f - g.conj()).norm() <= 1e-9 * (1.0 + f.norm()));
        }
    }
}

#[test]
fn exp_sum_at_zero_is_density_sum() {
    let p = 100_000.0;
    let d = build_decomposition(&make_params(DEFAULT_SIGMA, p).unwrap());
    for j in 0..4 {
        let t = WeightTable::build(&d, j).unwrap();
        let s = density_sum(&d, j, 50_000 - 1, 100_000 - 1, None).unwrap();
        assert_eq!(exp_sum(&t, 0.0).re as i64, s.sum, "j = {j}");
        assert_eq!(t.total(), s.sum);
    }
}

#[test]
fn gauss_examples() {
    assert_eq!(gauss_sum(1, 5).unwrap().value, Complex64::new(1.0, 0.0));
    let s3 = gauss_sum(3, 1).unwrap().value;
    assert!((s3 - Complex64::new(-1.0, 3f64.sqrt())).norm() < 1e-12);
    let s4 = gauss_sum(4, 1).unwrap().value;
    assert!((s4 - Complex64::new(0.0, 2.0)).norm() < 1e-12);
    assert!(gauss_sum(0, 1).is_err());
}

#[test]
fn gauss_sum_law_and_symmetry() {
    let primes = sieve_primes(500).unwrap();
    for &p in primes.primes().iter().skip(1) {
        let all = gauss_sums_all(p).unwrap();
        for a in 1..p {
            assert!(((all[a as usize] + 1.0).norm() - (p as f64).sqrt()).abs() <= 1e-9, "p={p}, a={a}");
        }
    }
    for q in 1..60u64 {
        for a in -5..5i64 {
            let s = gauss_sum(q, a).unwrap().value;
            let t = gauss_sum(q, -a).unwrap().value;
            assert!((s - t.conj()).norm() < 1e-9);
            assert!(s.norm() <= (1..=q).filter(|&r| gcd(r, q) == 1).count() as f64 + 1e-9);
        }
    }
}

#[test]
fn gauss_sum_twisted_multiplicativity() {
    // S(q₁q₂, a) = S(q₁, aq₂) S(q₂, aq₁) for coprime q₁, q₂
    for q1 in 2..=40u64 {
        for q2 in 2..=200 / q1 {
            if gcd(q1, q2) != 1 {
                continue;
            }
            for a in [1i64, 2, 5] {
                if gcd(a as u64, q1 * q2) != 1 {
                    continue;
                }
                let lhs = gauss_sum(q1 * q2, a).unwrap().value;
                let rhs = gauss_sum(q1, a * q2 as i64).unwrap().value * gauss_sum(q2, a * q1 as i64).unwrap().value;
                assert!((lhs - rhs).norm() < 1e-8, "q1={q1} q2={q2} a={a}");
                assert!((lhs.norm() - rhs.norm()).abs() < 1e-8);
            }
        }
    }
}

#[test]
fn singular_series_values() {
    for n in [100u64, 148, 1012] {
        let s = singular_series(n, 500, 500).unwrap();
        let f2 = s.local_factors.iter().find(|f| f.p == 2).unwrap();
        let f3 = s.local_factors.iter().find(|f| f.p == 3).unwrap();
        assert_eq!((f2.count, f2.value), (256, 8.0));
        assert_eq!((f3.count, f3.value), (16, 3.0));
        assert!(s.local_factors.iter().all(|f| f.stable != Some(false)));
        assert!(s.admissible && s.euler_value > 1.0, "n = {n}: {}", s.euler_value);
        assert!(s.tail_estimate.is_finite() && s.tail_estimate >= 0.0);
        assert!(s.agreement_gap < 0.05 * s.euler_value, "n = {n}: gap {}", s.agreement_gap);
    }
    assert!(singular_series(100, 50, 500).is_err());
}

#[test]
fn singular_integral_properties() {
    assert_eq!(singular_integral(0.4), 0.0);
    assert_eq!(singular_integral(2.0), 0.0);
    let mass = singular_integral_mass(1e-10);
    assert!((mass.value - TOTAL_MASS).abs() < 1e-8, "mass {}", mass.value);
    for i in 1..=20 {
        let t = 0.5 + 0.5 * i as f64 / 20.0;
        assert!(singular_integral(t) > 0.0);
    }
    let table = build_singular_integral(4001).unwrap();
    assert!((table.mass() - TOTAL_MASS).abs() < 1e-6);
    assert!((table.eval(1.0) - singular_integral(1.0)).abs() < 1e-5);
}

#[test]
fn singular_integral_monte_carlo() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let (t, h, n) = (1.0, 0.01, 2_000_000);
    let hits = (0..n)
        .filter(|_| {
            let s: f64 = (0..4).map(|_| rng.gen_range(1.0 / 3.0..2.0 / 3.0f64).powi(2)).sum();
            (s - t).abs() < h
        })
        .count();
    let estimate = hits as f64 / n as f64 / (2.0 * h) * TOTAL_MASS;
    let exact = singular_integral(t);
    assert!((estimate - exact).abs() < 0.03 * exact, "{estimate} vs {exact}");
}

#[test]
fn singular_integral_oscillatory_agrees() {
    for t in [0.6, 0.85, 1.0] {
        let osc = singular_integral_oscillatory(t, 200.0, 1e-7).unwrap();
        let conv = singular_integral(t);
        assert!((osc.value - conv).abs() < 1e-4, "t={t}: {} vs {conv}", osc.value);
    }
}

#[test]
fn minor_arc_scan_is_deterministic() {
    let t = weights(1, 4096.0);
    let a = minor_arc_scan(&t, DEFAULT_SIGMA, 1000, 11).unwrap();
    let b = minor_arc_scan(&t, DEFAULT_SIGMA, 1000, 11).unwrap();
    assert_eq!(a.max_ratio, b.max_ratio);
    assert_eq!(a.argmax_alpha, b.argmax_alpha);
    assert!(a.max_ratio.is_finite() && a.max_ratio > 0.0);
    assert_eq!(a.samples, 1000);
    assert!(in_auxiliary_minor(a.argmax_alpha, 4096.0));
    assert!(minor_arc_scan(&weights(0, 4096.0), DEFAULT_SIGMA, 10, 0).is_err());
}

#[test]
fn ren_fit_runs() {
    let t = weights(0, 8192.0);
    let r = ren_bound_fit(&t, 200, 3).unwrap();
    assert!(r.fitted_constant.is_finite() && r.fitted_constant > 0.0);
    assert!(r.argmax_delta > 0.0 && r.argmax_delta <= 1.0);
}

fn lp(x: u64, r: f64, s: f64, u: f64, z: f64) -> LemmaParams {
    LemmaParams { x, sigma: DEFAULT_SIGMA, r, s, u, z }
}

#[test]
fn lemma_evaluators_agree_on_degenerate_inputs() {
    let x = 1u64 << 18;
    for alpha in [0.3141592653, 0.01234, 0.7777] {
        for coeffs in [Coefficients::Ones, Coefficients::RandomPhases { seed: 9 }] {
            let l31 = lemma_value(LemmaKind::L31, &lp(x, 0.5, 0.0, 0.0, 0.0), coeffs, alpha).unwrap();
            let l32 = lemma_value(LemmaKind::L32, &lp(x, 0.5, 0.5, 0.0, 0.0), coeffs, alpha).unwrap();
            assert!((l31.value - l32.value).abs() < 1e-9 * (1.0 + l31.value));
            let l31 = lemma_value(LemmaKind::L31, &lp(x, 8.0, 0.0, 0.0, 0.0), coeffs, alpha).unwrap();
            let l32 = lemma_value(LemmaKind::L32, &lp(x, 8.0, 0.5, 0.0, 0.0), coeffs, alpha).unwrap();
            assert!((l31.value - l32.value).abs() < 1e-9 * (1.0 + l31.value));
        }
        let l32 = lemma_value(LemmaKind::L32, &lp(x, 4.0, 3.0, 0.0, 0.0), Coefficients::Ones, alpha).unwrap();
        let l34 = lemma_value(LemmaKind::L34, &lp(x, 4.0, 3.0, 0.0, 2.0), Coefficients::Ones, alpha).unwrap();
        assert!((l32.value - l34.value).abs() < 1e-9 * (1.0 + l32.value));
    }
}

#[test]
fn lemma_hypotheses_are_enforced() {
    let x = 1u64 << 14;
    let msg = |r: fourprimes_core::Result<LemmaReport>| match r {
        Err(fourprimes_core::Error::Domain(m)) => m,
        other => panic!("expected domain error, got {other:?}"),
    };
    assert!(msg(lemma_value(LemmaKind::L31, &lp(x, 1000.0, 0.0, 0.0, 0.0), Coefficients::Ones, 0.3)).contains("X^{1−3σ}"));
    assert!(msg(lemma_value(LemmaKind::L32, &lp(x, 100.0, 10.0, 0.0, 0.0), Coefficients::Ones, 0.3)).contains("RS²"));
    assert!(msg(lemma_value(LemmaKind::L33, &lp(x, 2.0, 0.0, 0.0, 0.0), Coefficients::Ones, 0.3)).contains("X^{2σ}"));
    assert!(msg(lemma_value(LemmaKind::L34, &lp(x, 4.0, 4.0, 0.0, 2.0), Coefficients::Ones, 0.3)).contains("z ≤ X^{1−6σ}"));
    assert!(msg(lemma_value(LemmaKind::Count31, &lp(x, 10.0, 0.0, 5.0, 0.0), Coefficients::Ones, 0.3)).contains("U ≤ X^{2σ}"));
    assert!(matches!("count31".parse::<LemmaKind>(), Ok(LemmaKind::Count31)));
    assert!("L35".parse::<LemmaKind>().is_err());
}

#[test]
fn count31_brute_force() {
    let x = 1u64 << 14;
    let xf = x as f64;
    let p = lp(x, xf.powf(1.0 - 3.0 * DEFAULT_SIGMA) / 2.0, 0.0, xf.powf(2.0 * DEFAULT_SIGMA), 0.0);
    let scan = lemma_experiment(LemmaKind::Count31, &p, Coefficients::Ones, 100, 5).unwrap();
    let again = lemma_experiment(LemmaKind::Count31, &p, Coefficients::Ones, 100, 5).unwrap();
    assert_eq!(scan.max_ratio, again.max_ratio);
    for rep in &scan.reports {
        assert!(in_lemma_minor(rep.alpha, xf, DEFAULT_SIGMA));
        let threshold = p.r * p.r * xf.powf(2.0 * DEFAULT_SIGMA - 2.0);
        let mut count = 0;
        for r in (p.r.floor() as u64 + 1)..=(2.0 * p.r).floor() as u64 {
            for u in (p.u.floor() as u64 + 1)..=(2.0 * p.u).floor() as u64 {
                let y = rep.alpha * (u * r * r) as f64;
                count += ((y - y.round()).abs() < threshold) as u64;
            }
        }
        assert_eq!(rep.value as u64, count, "alpha = {}", rep.alpha);
    }
    assert!(scan.max_ratio <= 10.0);
}

fn legendre(a: i64, p: i64) -> i64 {
    let mut r = 1i64;
    let (mut b, mut e) = (a.rem_euclid(p), (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == p - 1 { -1 } else { r }
}

/// Unit solutions of Σx_i² ≡ n (mod p) from the Gauss-sum expansion of (G(t) − 1)⁴.
fn closed_form_count(n: u64, p: u64) -> u64 {
    let (pi, ni) = (p as i64, n as i64);
    let e = if n.is_multiple_of(p) { pi - 1 } else { -1 };
    let chi_m1 = legendre(-1, pi);
    let mut s = (pi - 1).pow(4) + e * (1 + 6 * chi_m1 * pi + pi * pi);
    if !n.is_multiple_of(p) {
        s -= 4 * legendre(ni, pi) * pi * (1 + chi_m1 * pi);
    }
    assert_eq!(s % pi, 0);
    (s / pi) as u64
}

#[test]
fn local_counts_match_closed_form() {
    for &p in sieve_primes(400).unwrap().primes().iter().skip(2) {
        for n in [100u64, 148, 1012, 4 * p, 28] {
            assert_eq!(local_factor(n, p).count, closed_form_count(n, p), "n={n} p={p}");
        }
    }
}
