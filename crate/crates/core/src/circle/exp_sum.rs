use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith::SmallestFactorTable;
use crate::sieve::Decomposition;
use crate::{Error, Result};

const TWO_POW_64: f64 = 18_446_744_073_709_551_616.0;

/// The fractional part of α as a 64-bit fixed-point phase.
pub fn fixed_phase(alpha: f64) -> u64 {
    let frac = alpha - alpha.floor();
    (frac * TWO_POW_64) as u64
}

/// e(x) for x given as a 64-bit fixed-point phase.
pub fn unit_from_phase(phase: u64) -> Complex64 {
    let (s, c) = (TAU * ((phase >> 11) as f64 * f64::EPSILON * 0.5)).sin_cos();
    Complex64::new(c, s)
}

/// e(x) = exp(2πix).
pub fn e(x: f64) -> Complex64 {
    unit_from_phase(fixed_phase(x))
}

/// Distance from x to the nearest integer, for x given as a fixed-point phase.
pub fn phase_norm(phase: u64) -> f64 {
    phase.min(phase.wrapping_neg()) as f64 / TWO_POW_64
}

/// Weights ρ_j(m) on the integers of 𝓘.
#[derive(Debug, Clone)]
pub struct WeightTable {
    j: usize,
    p: f64,
    start: u64,
    weights: Vec<i64>,
}

impl WeightTable {
    pub fn build(d: &Decomposition, j: usize) -> Result<Self> {
        if j > 3 {
            return Err(Error::Domain(format!("rho index must be 0..=3, got {j}")));
        }
        let range = d.params.interval_integers();
        let spf = SmallestFactorTable::new(range.end)?;
        let weights = range
            .clone()
            .into_par_iter()
            .map(|m| d.eval_all(&spf.factorize(m).expect("within table")).rho(j))
            .collect();
        Ok(WeightTable {
            j,
            p: d.params.p,
            start: range.start,
            weights,
        })
    }

    pub fn from_weights(j: usize, p: f64, start: u64, weights: Vec<i64>) -> Self {
        WeightTable { j, p, start, weights }
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn weight(&self, m: u64) -> i64 {
        m.checked_sub(self.start)
            .and_then(|i| self.weights.get(i as usize))
            .copied()
            .unwrap_or(0)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0)
            .map(|(i, &w)| (self.start + i as u64, w))
    }

    /// f_j(0) = Σ_{m∈𝓘} ρ_j(m).
    pub fn total(&self) -> i64 {
        self.weights.iter().sum()
    }
}

/// f_j(α) = Σ_{m∈𝓘} ρ_j(m) e(m²α) by direct summation. The phase m²α mod 1 is
/// formed in 64-bit fixed point, so periodicity and conjugation are exact.
pub fn exp_sum(table: &WeightTable, alpha: f64) -> Complex64 {
    let a = fixed_phase(alpha);
    table
        .nonzero()
        .map(|(m, w)| unit_from_phase(m.wrapping_mul(m).wrapping_mul(a)) * w as f64)
        .sum()
}

/// f_j(a/q) with exact residues m² mod q.
pub fn exp_sum_rational(table: &WeightTable, a: i64, q: u64) -> Complex64 {
    let a = a.rem_euclid(q as i64) as u128;
    let q128 = q as u128;
    table
        .nonzero()
        .map(|(m, w)| {
            let r = (m as u128 * m as u128 % q128) * a % q128;
            Complex64::from_polar(w as f64, TAU * r as f64 / q as f64)
        })
        .sum()
}
