use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::index::TwoSquareIndex;
use super::scan::RepresentationCount;
use crate::arith::sieve_primes;
use crate::circle::{singular_integral, singular_integral_oscillatory, singular_series, WeightTable};
use crate::sieve::{Decomposition, SieveParams};
use crate::{Error, Result};

/// Largest P for the S₁, S₂ evaluation.
pub const MAX_S12_P: f64 = 5000.0;

/// Index over the primes of 𝓘 = [P/2, P), covering pair sums up to 2P².
pub fn interval_index(params: &SieveParams) -> Result<TwoSquareIndex> {
    let range = params.interval_integers();
    let primes = sieve_primes(range.end.max(2))?;
    let hi = range.end - 1;
    TwoSquareIndex::from_primes(primes.primes_in(range.start, range.end), 2 * hi * hi)
}

/// Ordered representations with every p_j ∈ 𝓘.
pub fn count_representations_restricted(params: &SieveParams, n: u64) -> Result<RepresentationCount> {
    let index = interval_index(params)?;
    count_in_interval(&index, n)
}

/// 𝓘-restricted counts for every n ≡ 4 (mod 24) in (N/2, N], from one index.
pub fn restricted_counts(params: &SieveParams) -> Result<Vec<RepresentationCount>> {
    let index = interval_index(params)?;
    let big_n = params.n();
    let lo = (big_n / 2.0).floor() as u64 + 1;
    let first = lo + (4 + 24 - lo % 24) % 24;
    let targets: Vec<u64> = (first..=big_n.floor() as u64).step_by(24).collect();
    targets.par_iter().map(|&n| count_in_interval(&index, n)).collect()
}

fn count_in_interval(index: &TwoSquareIndex, n: u64) -> Result<RepresentationCount> {
    if n > 2 * index.n_max() {
        return Err(Error::capacity("restricted representation target", n, 2 * index.n_max()));
    }
    let mut r = 0;
    let mut witness = None;
    for e in index.entries_up_to(n) {
        let rest = index.ordered_count(n - e.value);
        if rest > 0 {
            r += e.ordered_count as u64 * rest;
            if witness.is_none() {
                let (a, b) = index.witness(e.value).expect("member");
                let (c, d) = index.witness(n - e.value).expect("member");
                let mut w = [a, b, c, d];
                w.sort_unstable();
                witness = Some(w);
            }
        }
    }
    Ok(RepresentationCount { n, r, witness })
}

fn check_target(params: &SieveParams, n: u64) -> Result<()> {
    let big_n = params.n();
    if !(n as f64 > big_n / 2.0 && n as f64 <= big_n) {
        return Err(Error::Domain(format!("n = {n} must lie in (N/2, N] with N = {big_n}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct S12Value {
    pub n: u64,
    pub s1: i64,
    pub s2: i64,
    pub quad_count: u64,
}

impl S12Value {
    /// quad_count ≥ S₁ − S₂.
    pub fn inequality_holds(&self) -> bool {
        self.quad_count as i64 >= self.s1 - self.s2
    }
}

/// Sieve weights ρ₁, ρ₂, ρ₃ on 𝓘 together with the prime pair index.
#[derive(Debug, Clone)]
pub struct S12Context {
    params: SieveParams,
    primes: Vec<u64>,
    index: TwoSquareIndex,
    rho: [Vec<(u64, i64)>; 3],
}

impl S12Context {
    pub fn new(d: &Decomposition) -> Result<Self> {
        let params = d.params;
        if params.p > MAX_S12_P {
            return Err(Error::capacity("S1/S2 interval size P", params.p as u64, MAX_S12_P as u64));
        }
        let index = interval_index(&params)?;
        let range = params.interval_integers();
        let primes = sieve_primes(range.end.max(2))?.primes_in(range.start, range.end).to_vec();
        let table = |j| -> Result<Vec<(u64, i64)>> { Ok(WeightTable::build(d, j)?.nonzero().collect()) };
        Ok(S12Context {
            params,
            primes,
            index,
            rho: [table(1)?, table(2)?, table(3)?],
        })
    }

    pub fn params(&self) -> &SieveParams {
        &self.params
    }

    fn r2(&self, k: i64) -> i64 {
        if k < 0 {
            0
        } else {
            self.index.ordered_count(k as u64) as i64
        }
    }

    fn r3(&self, k: i64) -> i64 {
        self.primes.iter().map(|&p| self.r2(k - (p * p) as i64)).sum()
    }

    /// S₁ = Σ ρ₁(m₁) and S₂ = Σ ρ₃(m₁)ρ₂(m₂) over m₁² + … = n, with the
    /// quadruple count over primes of 𝓘.
    pub fn compute(&self, n: u64) -> Result<S12Value> {
        check_target(&self.params, n)?;
        let n = n as i64;
        let s1 = self.rho[0].par_iter().map(|&(m, w)| w * self.r3(n - (m * m) as i64)).sum();
        let s2 = self.rho[2]
            .par_iter()
            .map(|&(m1, w1)| {
                let rest = n - (m1 * m1) as i64;
                self.rho[1].iter().map(|&(m2, w2)| w1 * w2 * self.r2(rest - (m2 * m2) as i64)).sum::<i64>()
            })
            .sum();
        let quad = self.primes.iter().map(|&p| self.r3(n - (p * p) as i64)).sum::<i64>();
        Ok(S12Value {
            n: n as u64,
            s1,
            s2,
            quad_count: quad as u64,
        })
    }
}

pub fn compute_s1_s2(d: &Decomposition, n: u64) -> Result<S12Value> {
    S12Context::new(d)?.compute(n)
}

/// `count` values n ≡ 4 (mod 24) drawn uniformly from (N/2, N].
pub fn sample_targets(params: &SieveParams, count: usize, seed: u64) -> Vec<u64> {
    let big_n = params.n();
    let lo = (big_n / 2.0).floor() as u64 + 1;
    let hi = big_n.floor() as u64;
    let first = lo + (4 + 24 - lo % 24) % 24;
    let slots = if hi >= first { (hi - first) / 24 + 1 } else { 0 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).filter(|_| slots > 0).map(|_| first + 24 * rng.gen_range(0..slots)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct MainTermComparison {
    pub n: u64,
    pub quad_count: u64,
    pub singular_series: f64,
    pub singular_integral: f64,
    pub singular_integral_oscillatory: f64,
    /// 𝔖(n)ℑ(n/N)N/(log P)⁴.
    pub prediction: f64,
    pub ratio: f64,
    pub ratio_oscillatory: f64,
}

/// Truncations used for the main-term prediction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MainTermOptions {
    pub p_max: u64,
    pub q_max: u64,
    pub gamma_max: f64,
    pub oscillatory_tol: f64,
}

impl Default for MainTermOptions {
    fn default() -> Self {
        MainTermOptions {
            p_max: 1000,
            q_max: 100,
            gamma_max: 200.0,
            oscillatory_tol: 1e-7,
        }
    }
}

/// Compares 𝓘-restricted quadruple counts with the C₀ = 1 main term.
#[derive(Debug, Clone)]
pub struct MainTermContext {
    params: SieveParams,
    index: TwoSquareIndex,
    options: MainTermOptions,
}

impl MainTermContext {
    pub fn new(params: &SieveParams, options: MainTermOptions) -> Result<Self> {
        Ok(MainTermContext {
            params: *params,
            index: interval_index(params)?,
            options,
        })
    }

    pub fn compare(&self, n: u64) -> Result<MainTermComparison> {
        check_target(&self.params, n)?;
        if n % 24 != 4 {
            return Err(Error::Domain(format!("main-term comparison needs n ≡ 4 (mod 24), got {n}")));
        }
        let o = self.options;
        let quad = count_in_interval(&self.index, n)?.r;
        let ss = singular_series(n, o.p_max, o.q_max)?.euler_value;
        let t = n as f64 / self.params.n();
        let si = singular_integral(t);
        let si_osc = singular_integral_oscillatory(t, o.gamma_max, o.oscillatory_tol)?.value;
        let scale = self.params.n() / self.params.log_p().powi(4);
        let prediction = ss * si * scale;
        Ok(MainTermComparison {
            n,
            quad_count: quad,
            singular_series: ss,
            singular_integral: si,
            singular_integral_oscillatory: si_osc,
            prediction,
            ratio: quad as f64 / prediction,
            ratio_oscillatory: quad as f64 / (ss * si_osc * scale),
        })
    }
}

pub fn compare_main_term(params: &SieveParams, n: u64) -> Result<MainTermComparison> {
    MainTermContext::new(params, MainTermOptions::default())?.compare(n)
}
