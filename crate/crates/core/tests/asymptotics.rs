use fourprimes_core::arith::SmallestFactorTable;
use fourprimes_core::asymptotics::*;
use fourprimes_core::polytope::Polytope;
use fourprimes_core::sieve::{build_decomposition, make_params, Part, TermId};
use fourprimes_core::DEFAULT_SIGMA;

fn psi4_closed_form(sigma: f64) -> f64 {
    (4.0 * sigma / (1.0 - 4.0 * sigma)).ln()
}

#[test]
fn constant_over_cube() {
    let omega = BuchstabTable::new();
    let integral = TermIntegral::constant("cube", Polytope::cube(3, 0.0, 1.0), 1.0);
    let r = integrate(&integral, &omega, 1e-8).unwrap();
    assert!((r.value - 1.0).abs() < 1e-8);
    assert!(r.converged);

    // simplex volume 1/6
    let mut p = Polytope::cube(3, 0.0, 1.0);
    p.add_le(vec![1.0, 1.0, 1.0], 1.0);
    let r = integrate(&TermIntegral::constant("simplex", p, 1.0), &omega, 1e-8).unwrap();
    assert!((r.value - 1.0 / 6.0).abs() < 1e-8);
}

#[test]
fn psi4_and_psi1_closed_forms() {
    let omega = BuchstabTable::new();
    let d = build_decomposition(&make_params(DEFAULT_SIGMA, 1e6).unwrap());
    let psi4 = d.catalog.get(TermId::whole(4));
    let integral = term_to_integral(psi4, DEFAULT_SIGMA).unwrap();
    assert_eq!(integral.dim, 1);
    assert_eq!(integral.kernel, Kernel::Buchstab(Beta::Var(0)));
    let r = integrate(&integral, &omega, 1e-7).unwrap();
    assert!((r.value - psi4_closed_form(DEFAULT_SIGMA)).abs() < 1e-9);
    assert!((r.value - 0.51254).abs() < 1e-5);

    let theta = 1.0 - 6.0 * DEFAULT_SIGMA;
    let psi1 = term_to_integral(d.catalog.get(TermId::whole(1)), DEFAULT_SIGMA).unwrap();
    assert_eq!(psi1.dim, 0);
    let r = integrate(&psi1, &omega, 1e-6).unwrap();
    assert!((r.value - omega.omega(1.0 / theta) / theta).abs() < 1e-12);
}

#[test]
fn d16_region_and_c3_structure() {
    let omega = BuchstabTable::new();
    let d = build_decomposition(&make_params(DEFAULT_SIGMA, 1e6).unwrap());
    let b16 = d.catalog.get(TermId::bad(16));
    let integral = term_to_integral(b16, DEFAULT_SIGMA).unwrap();
    assert_eq!(integral.dim, 3);
    assert_eq!(integral.slabs.len(), 1);
    assert_eq!(integral.slabs[0].mask, 0b111);
    let d16 = integrate(&integral, &omega, 2e-4).unwrap();
    assert!(d16.value > 0.2 && d16.value < 0.2565, "D16 = {}", d16.value);
    let c3: f64 = d.b1.iter().map(|t| term_constant(t, DEFAULT_SIGMA, &omega, 2e-4).unwrap().0.value).sum();
    assert!((c3 - (psi4_closed_form(DEFAULT_SIGMA) + d16.value)).abs() < 1e-9);
}

#[test]
fn split_terms_sum_to_whole() {
    let omega = BuchstabTable::new();
    let d = build_decomposition(&make_params(DEFAULT_SIGMA, 1e6).unwrap());
    let tol = 2e-4;
    for j in [13u8, 16, 24, 26] {
        let v = |id| term_constant(d.catalog.get(id), DEFAULT_SIGMA, &omega, tol).unwrap().0.value;
        let (w, g, b) = (v(TermId::whole(j)), v(TermId::good(j)), v(TermId::bad(j)));
        assert!((w - g - b).abs() <= 2.0 * tol, "psi{j}: {w} vs {g} + {b}");
    }
    let g26 = term_constant(d.catalog.get(TermId::good(26)), DEFAULT_SIGMA, &omega, tol).unwrap().0;
    assert_eq!(g26.value, 0.0);
}

#[test]
fn continuum_buchstab_steps() {
    // The integral of each Buchstab step balances, as the integer identities do.
    let omega = BuchstabTable::new();
    let d = build_decomposition(&make_params(DEFAULT_SIGMA, 1e6).unwrap());
    let tol = 1e-4;
    let v = |i: u8| term_constant(d.catalog.get(TermId::whole(i)), DEFAULT_SIGMA, &omega, tol).unwrap().0.value;
    assert!((v(2) - v(5) + v(6)).abs() < 5.0 * tol);
    assert!((v(6) - v(7) - v(8) - v(9) - v(10)).abs() < 5.0 * tol);
    assert!((v(9) - v(14) + v(15) + v(16)).abs() < 5.0 * tol);
    assert!((v(2) - v(20) - v(21)).abs() < 5.0 * tol);
    // ψ(m, P^{1/2}) has density 1: ψ₁ − ψ₂ − ψ₃ − ψ₄ integrates to 1.
    assert!((v(1) - v(2) - v(3) - v(4) - 1.0).abs() < 5.0 * tol);
}

/// C₃ has slope ≈ 65 near 5/32, so continuity is checked by step refinement.
#[test]
fn c3_continuous_in_sigma() {
    let omega = BuchstabTable::new();
    let c3 = |sigma: f64| -> f64 {
        let d = build_decomposition(&make_params(sigma, 1e6).unwrap());
        d.b1.iter().map(|t| term_constant(t, sigma, &omega, 1e-4).unwrap().0.value).sum()
    };
    for base in [0.1553, 0.15615, 0.15635] {
        let coarse = (c3(base + 1e-3) - c3(base)).abs();
        let fine = (c3(base + 1e-5) - c3(base)).abs();
        assert!(coarse < 0.15, "sigma {base}: step 1e-3 moves C3 by {coarse}");
        assert!(fine < 0.01 && fine < 0.05 * coarse + 1e-3, "sigma {base}: step 1e-5 moves C3 by {fine}");
    }
}

#[test]
fn unresolved_inputs_are_contract_errors() {
    let omega = BuchstabTable::new();
    let err = TermIntegral::from_constraints(
        "bad",
        1,
        &[],
        DEFAULT_SIGMA,
        vec![],
        Kernel::Buchstab(Beta::Var(3)),
        Measure::Logarithmic,
    );
    assert!(matches!(err, Err(fourprimes_core::Error::Contract(_))));
    let integral = TermIntegral::constant("c", Polytope::cube(1, 0.0, 1.0), 1.0);
    assert!(integrate(&integral, &omega, 1e-12).is_err());
}

/// Integral × (P/2)/log P against exact counts over 𝓘 for terms with k ≤ 2.
#[test]
fn consistency_with_exact_counts() {
    let omega = BuchstabTable::new();
    let p = 1e7;
    let d = build_decomposition(&make_params(DEFAULT_SIGMA, p).unwrap());
    let range = d.params.interval_integers();
    let spf = SmallestFactorTable::new(range.end).unwrap();
    let terms: Vec<_> = d
        .catalog
        .terms()
        .iter()
        .filter(|t| t.arity <= 2 && t.id.part == Part::Whole)
        .collect();
    let mut counts = vec![0u64; terms.len()];
    for m in range.clone() {
        let f = spf.factorize(m).unwrap();
        if (f.smallest_prime().unwrap() as f64) < d.params.z {
            continue;
        }
        for (c, t) in counts.iter_mut().zip(&terms) {
            *c += t.eval(&f, &d.params);
        }
    }
    let scale = (range.end - range.start) as f64 / d.params.log_p();
    for (t, &count) in terms.iter().zip(&counts) {
        let c = term_constant(t, DEFAULT_SIGMA, &omega, 1e-4).unwrap().0.value;
        let ratio = c * scale / count as f64;
        assert!((0.5..=2.0).contains(&ratio), "{}: integral {c}, count {count}, ratio {ratio}", t.id);
    }
}
