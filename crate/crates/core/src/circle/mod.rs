//! Circle-method quantities: the arc dissections 𝔐(Q) and 𝔑, the weighted
//! exponential sums f_j, Gauss sums, the singular series 𝔖(n) and singular
//! integral ℑ(t), and empirical checks of the exponential-sum lemmas.

mod arcs;
mod exp_sum;
mod experiments;
mod gauss;
mod singular_integral;
mod singular_series;

pub use arcs::{
    best_approximation_candidates, classify_arc, delta, in_auxiliary_minor, major_approximation, reduce_to_window,
    ArcClassification, ArcKind,
};
pub use exp_sum::{e, exp_sum, exp_sum_rational, fixed_phase, phase_norm, unit_from_phase, WeightTable};
pub use experiments::{
    check_lemma_params, in_lemma_minor, kronecker_points, lemma_experiment, lemma_value, minor_arc_scan,
    ren_bound_fit, Coefficients, LemmaKind, LemmaParams, LemmaReport, LemmaScan, MinorArcReport, RenFitReport,
    MAX_LEMMA_X,
};
pub use gauss::{gauss_sum, gauss_sums_all, unit_square_counts, GaussSumValue, MAX_GAUSS_MODULUS};
pub use singular_integral::{
    archimedean_factor, build_singular_integral, oscillatory_tail_bound, singular_integral, singular_integral_mass,
    singular_integral_oscillatory, singular_integral_with_tol, square_density, two_square_density,
    SingularIntegralFn, SUPPORT, TOTAL_MASS,
};
pub use singular_series::{
    local_count, local_factor, qsum_term, singular_series, LocalFactor, SingularSeriesValue, STABILITY_CHECK_LIMIT,
};
