use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::arcs::{delta, in_auxiliary_minor, major_approximation, reduce_to_window};
use super::exp_sum::{exp_sum, fixed_phase, phase_norm, unit_from_phase, WeightTable};
use crate::arith::{gcd, SmallestFactorTable};
use crate::{Error, Result};

/// Fractional part of the golden ratio, the Kronecker step.
const KRONECKER_STEP: f64 = 0.618_033_988_749_894_9;

/// Low-discrepancy points x₀ + kφ mod 1 in `[lo, 1 + lo)` with x₀ drawn from `seed`.
pub fn kronecker_points(lo: f64, seed: u64) -> impl Iterator<Item = f64> {
    let x0: f64 = ChaCha8Rng::seed_from_u64(seed).gen();
    (0u64..).map(move |k| lo + (x0 + k as f64 * KRONECKER_STEP).fract())
}

#[derive(Debug, Clone, Serialize)]
pub struct MinorArcReport {
    pub j: usize,
    pub p: f64,
    pub sigma: f64,
    pub samples: usize,
    pub rejected: usize,
    pub seed: u64,
    /// max |f_j(α)| / P^{1−σ} over the samples.
    pub max_ratio: f64,
    pub argmax_alpha: f64,
    pub mean_ratio: f64,
}

/// Sample α ∈ 𝔫 and record the largest |f_j(α)|/P^{1−σ}.
pub fn minor_arc_scan(table: &WeightTable, sigma: f64, n_samples: usize, seed: u64) -> Result<MinorArcReport> {
    if !matches!(table.j(), 1 | 2) {
        return Err(Error::Domain(format!("minor-arc scan covers rho_1 and rho_2 only, got j = {}", table.j())));
    }
    if n_samples == 0 {
        return Err(Error::Domain("minor-arc scan needs at least one sample".into()));
    }
    let p = table.p();
    let mut rejected = 0;
    let alphas: Vec<f64> = kronecker_points(p.powf(-4.0 / 3.0), seed)
        .filter(|&a| {
            let keep = in_auxiliary_minor(a, p);
            rejected += !keep as usize;
            keep
        })
        .take(n_samples)
        .collect();
    let scale = p.powf(1.0 - sigma);
    let ratios: Vec<f64> = alphas.par_iter().map(|&a| exp_sum(table, a).norm() / scale).collect();
    let (i_max, &max_ratio) = ratios
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total_cmp(y.1))
        .expect("nonempty");
    Ok(MinorArcReport {
        j: table.j(),
        p,
        sigma,
        samples: alphas.len(),
        rejected,
        seed,
        max_ratio,
        argmax_alpha: alphas[i_max],
        mean_ratio: ratios.iter().sum::<f64>() / ratios.len() as f64,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RenFitReport {
    pub p: f64,
    pub samples: usize,
    pub seed: u64,
    /// max |f_0(α)| / (PΔ(α)^{1/2} + P^{5/6}) over the samples.
    pub fitted_constant: f64,
    pub argmax_alpha: f64,
    pub argmax_delta: f64,
}

/// Fit the constant in |f_0(α)| ≤ c(PΔ(α)^{1/2} + P^{5/6}) over random α ∈ 𝔑.
pub fn ren_bound_fit(table: &WeightTable, n_samples: usize, seed: u64) -> Result<RenFitReport> {
    if table.j() != 0 {
        return Err(Error::Domain(format!("the Ren bound concerns rho_0, got j = {}", table.j())));
    }
    if n_samples == 0 {
        return Err(Error::Domain("Ren fit needs at least one sample".into()));
    }
    let p = table.p();
    let q_max = p.powf(2.0 / 3.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(n_samples);
    while points.len() < n_samples {
        let q = rng.gen_range(1..=q_max.floor() as u64);
        let a = rng.gen_range(0..q);
        if gcd(a, q) != 1 {
            continue;
        }
        let width = q_max / (q as f64 * p * p);
        let alpha = a as f64 / q as f64 + rng.gen_range(-width..=width);
        if let Some(d) = delta(reduce_to_window(alpha, p.powf(-1.99)), p) {
            points.push((alpha, d));
        }
    }
    let tail = p.powf(5.0 / 6.0);
    let ratios: Vec<f64> = points
        .par_iter()
        .map(|&(a, d)| exp_sum(table, a).norm() / (p * d.sqrt() + tail))
        .collect();
    let (i, &c) = ratios.iter().enumerate().max_by(|x, y| x.1.total_cmp(y.1)).expect("nonempty");
    Ok(RenFitReport {
        p,
        samples: n_samples,
        seed,
        fitted_constant: c,
        argmax_alpha: points[i].0,
        argmax_delta: points[i].1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LemmaKind {
    L31,
    L32,
    L33,
    L34,
    Count31,
}

impl std::str::FromStr for LemmaKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "L31" => Ok(LemmaKind::L31),
            "L32" => Ok(LemmaKind::L32),
            "L33" => Ok(LemmaKind::L33),
            "L34" => Ok(LemmaKind::L34),
            "COUNT31" => Ok(LemmaKind::Count31),
            _ => Err(Error::Domain(format!("unknown lemma experiment {s:?}"))),
        }
    }
}

/// Coefficient sequences ξ, η.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Coefficients {
    Ones,
    /// Unimodular coefficients with phases drawn from a keyed ChaCha stream.
    RandomPhases { seed: u64 },
}

impl Coefficients {
    fn value(&self, tag: u64, r: u64, s: u64) -> Complex64 {
        match *self {
            Coefficients::Ones => Complex64::new(1.0, 0.0),
            Coefficients::RandomPhases { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(tag << 62 | r << 31 | s);
                unit_from_phase(rng.gen())
            }
        }
    }
}

/// Dyadic ranges r ∼ R are R < r ≤ 2R; `u` is U for COUNT31.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaParams {
    pub x: u64,
    pub sigma: f64,
    pub r: f64,
    pub s: f64,
    pub u: f64,
    pub z: f64,
}

/// Largest X accepted by the lemma evaluators.
pub const MAX_LEMMA_X: u64 = 1 << 24;

fn dyadic(r: f64) -> std::ops::RangeInclusive<u64> {
    (r.floor() as u64 + 1)..=((2.0 * r).floor() as u64)
}

fn require(ok: bool, condition: &str, p: &LemmaParams) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "lemma hypothesis {condition} violated (X = {}, σ = {}, R = {}, S = {}, U = {}, z = {})",
            p.x, p.sigma, p.r, p.s, p.u, p.z
        )))
    }
}

/// Check the hypotheses of the chosen lemma, with every ≪ read as ≤.
pub fn check_lemma_params(kind: LemmaKind, p: &LemmaParams) -> Result<()> {
    require(p.sigma > 0.0 && p.sigma < 1.0 / 6.0, "0 < σ < 1/6", p)?;
    require(p.x >= 2, "X ≥ 2", p)?;
    if p.x > MAX_LEMMA_X {
        return Err(Error::capacity("lemma experiment X", p.x, MAX_LEMMA_X));
    }
    require(p.r >= 0.5, "R ≥ 1/2", p)?;
    let x = p.x as f64;
    let pow = |e: f64| x.powf(e);
    let s = p.sigma;
    match kind {
        LemmaKind::L31 => require(p.r <= pow(1.0 - 3.0 * s), "R ≪ X^{1−3σ}", p),
        LemmaKind::L32 => {
            require(p.s >= 0.5, "S ≥ 1/2", p)?;
            require(p.r <= pow(1.0 - 3.0 * s), "R ≪ X^{1−3σ}", p)?;
            require(p.r * p.s * p.s <= 0.1 * pow(1.0 - 2.0 * s), "RS² ≤ 0.1X^{1−2σ}", p)
        }
        LemmaKind::L33 => require(pow(2.0 * s) <= p.r && p.r <= pow(1.0 - 4.0 * s), "X^{2σ} ≪ R ≪ X^{1−4σ}", p),
        LemmaKind::L34 => {
            require(p.s >= 0.5, "S ≥ 1/2", p)?;
            require(p.r <= pow(2.0 * s), "R ≤ X^{2σ}", p)?;
            require(p.s <= pow(2.0 * s), "S ≤ X^{2σ}", p)?;
            require(p.r * p.s <= pow(1.0 - 3.0 * s), "RS ≪ X^{1−3σ}", p)?;
            require(p.z <= pow(1.0 - 6.0 * s), "z ≤ X^{1−6σ}", p)
        }
        LemmaKind::Count31 => {
            require(p.u >= 0.5, "U ≥ 1/2", p)?;
            require(
                p.u <= pow(2.0 * s) && pow(2.0 * s) <= p.r && p.r <= pow(1.0 - 3.0 * s),
                "U ≤ X^{2σ} ≤ R ≤ X^{1−3σ}",
                p,
            )
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub kind: LemmaKind,
    pub params: LemmaParams,
    pub alpha: f64,
    /// |Σ| for the sums, the pair count for COUNT31.
    pub value: f64,
    /// X^{1−σ} for the sums, RU^{1/2}X^{−σ} for COUNT31.
    pub bound: f64,
    pub ratio: f64,
}

/// Σ over X < km ≤ 2X of e(α(km)²), m ranging over the integers.
fn tail_sum(k: u64, x: u64, a: u64, rough: Option<(&SmallestFactorTable, f64)>) -> Complex64 {
    let lo = x / k + 1;
    let hi = 2 * x / k;
    (lo..=hi)
        .filter(|&m| rough.is_none_or(|(t, z)| m == 1 || t.smallest_factor(m) as f64 >= z))
        .map(|m| {
            let n = k * m;
            unit_from_phase(n.wrapping_mul(n).wrapping_mul(a))
        })
        .sum()
}

/// Evaluate the left side of the chosen lemma at a single α by direct summation.
pub fn lemma_value(kind: LemmaKind, p: &LemmaParams, coeffs: Coefficients, alpha: f64) -> Result<LemmaReport> {
    check_lemma_params(kind, p)?;
    let x = p.x;
    let a = fixed_phase(alpha);
    let sum_bound = (x as f64).powf(1.0 - p.sigma);
    let (value, bound) = match kind {
        LemmaKind::L31 => {
            let s: Complex64 = dyadic(p.r)
                .into_par_iter()
                .map(|r| coeffs.value(0, r, 1) * tail_sum(r, x, a, None))
                .sum();
            (s.norm(), sum_bound)
        }
        LemmaKind::L32 => {
            let s: Complex64 = dyadic(p.r)
                .into_par_iter()
                .map(|r| {
                    dyadic(p.s)
                        .map(|s| coeffs.value(0, r, s) * tail_sum(r * s, x, a, None))
                        .sum::<Complex64>()
                })
                .sum();
            (s.norm(), sum_bound)
        }
        LemmaKind::L33 => {
            let s: Complex64 = dyadic(p.r)
                .into_par_iter()
                .map(|r| {
                    let inner: Complex64 = (x / r + 1..=2 * x / r)
                        .map(|s| {
                            let n = r * s;
                            coeffs.value(1, s, 1) * unit_from_phase(n.wrapping_mul(n).wrapping_mul(a))
                        })
                        .sum();
                    coeffs.value(0, r, 1) * inner
                })
                .sum();
            (s.norm(), sum_bound)
        }
        LemmaKind::L34 => {
            let (r0, s0) = (*dyadic(p.r).start(), *dyadic(p.s).start());
            let table = SmallestFactorTable::new((2 * x / (r0 * s0).max(1)).max(2))?;
            let s: Complex64 = dyadic(p.r)
                .into_par_iter()
                .map(|r| {
                    dyadic(p.s)
                        .map(|s| {
                            coeffs.value(0, r, 1)
                                * coeffs.value(1, s, 1)
                                * tail_sum(r * s, x, a, Some((&table, p.z)))
                        })
                        .sum::<Complex64>()
                })
                .sum();
            (s.norm(), sum_bound)
        }
        LemmaKind::Count31 => {
            let threshold = p.r * p.r * (x as f64).powf(2.0 * p.sigma - 2.0);
            let count: u64 = dyadic(p.r)
                .into_par_iter()
                .map(|r| {
                    dyadic(p.u)
                        .filter(|&u| phase_norm((u * r * r).wrapping_mul(a)) < threshold)
                        .count() as u64
                })
                .sum();
            (count as f64, p.r * p.u.sqrt() * (x as f64).powf(-p.sigma))
        }
    };
    Ok(LemmaReport {
        kind,
        params: *p,
        alpha,
        value,
        bound,
        ratio: value / bound,
    })
}

/// 𝔪_σ = [QX^{-2}, 1 + QX^{-2}] \ 𝔐(Q) with Q = X^{4σ}, arcs scaled by X.
pub fn in_lemma_minor(alpha: f64, x: f64, sigma: f64) -> bool {
    let q = x.powf(4.0 * sigma);
    let alpha = reduce_to_window(alpha, q / (x * x));
    major_approximation(alpha, x, q).is_none()
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaScan {
    pub kind: LemmaKind,
    pub seed: u64,
    pub rejected: usize,
    pub max_ratio: f64,
    pub argmax_alpha: f64,
    pub reports: Vec<LemmaReport>,
}

/// Run the experiment at `n_samples` Kronecker points of 𝔪_σ.
pub fn lemma_experiment(
    kind: LemmaKind,
    p: &LemmaParams,
    coeffs: Coefficients,
    n_samples: usize,
    seed: u64,
) -> Result<LemmaScan> {
    check_lemma_params(kind, p)?;
    if n_samples == 0 {
        return Err(Error::Domain("lemma experiment needs at least one sample".into()));
    }
    let x = p.x as f64;
    let lo = x.powf(4.0 * p.sigma) / (x * x);
    let mut rejected = 0;
    let alphas: Vec<f64> = kronecker_points(lo, seed)
        .filter(|&a| {
            let keep = in_lemma_minor(a, x, p.sigma);
            rejected += !keep as usize;
            keep
        })
        .take(n_samples)
        .collect();
    let reports = alphas
        .iter()
        .map(|&a| lemma_value(kind, p, coeffs, a))
        .collect::<Result<Vec<_>>>()?;
    let best = reports
        .iter()
        .max_by(|x, y| x.ratio.total_cmp(&y.ratio))
        .expect("nonempty");
    Ok(LemmaScan {
        kind,
        seed,
        rejected,
        max_ratio: best.ratio,
        argmax_alpha: best.alpha,
        reports,
    })
}
