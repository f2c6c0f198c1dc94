use std::ops::Range;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::decomposition::{Decomposition, WeightValues};
use crate::arith::{DirichletCharacter, SmallestFactorTable};
use crate::{Error, Result};

const CHUNK: u64 = 1 << 14;

/// Which integers of a range to visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sampling {
    Full,
    Stride(u64),
    Random { count: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    /// ψ(m, P^{1/2}) ≠ g₁ − b₁ + b₂
    Eq0,
    /// ψ(m, P^{1/2}) ≠ g₂ − b₃
    Eq0a,
    NegativeB1,
    NegativeB2,
    NegativeB3,
    /// ρ_j(m) ≠ 0 although m has a prime factor below P^{0.06}
    Support,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub m: u64,
    pub kind: ViolationKind,
    pub values: WeightValues,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub range: (u64, u64),
    pub checked: u64,
    /// Whether the P^{0.06} support property was checked (needs z ≥ P^{0.06}).
    pub support_checked: bool,
    pub violations: Vec<Violation>,
}

impl IdentityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn sample_points(range: &Range<u64>, sampling: Sampling) -> Vec<u64> {
    match sampling {
        Sampling::Full => range.clone().collect(),
        Sampling::Stride(s) => range.clone().step_by(s.max(1) as usize).collect(),
        Sampling::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v: Vec<u64> = (0..count).map(|_| rng.gen_range(range.clone())).collect();
            v.sort_unstable();
            v
        }
    }
}

fn check_one(d: &Decomposition, m: u64, w: &WeightValues, smallest: Option<u64>, support: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |kind| out.push(Violation { m, kind, values: *w });
    if w.prime_like != w.g1 - w.b1 + w.b2 {
        push(ViolationKind::Eq0);
    }
    if w.prime_like != w.g2 - w.b3 {
        push(ViolationKind::Eq0a);
    }
    if w.b1 < 0 {
        push(ViolationKind::NegativeB1);
    }
    if w.b2 < 0 {
        push(ViolationKind::NegativeB2);
    }
    if w.b3 < 0 {
        push(ViolationKind::NegativeB3);
    }
    let in_interval = (m as f64) >= d.params.interval_lo && (m as f64) < d.params.interval_hi;
    if support && in_interval && (w.g1 != 0 || w.g2 != 0 || w.b1 != 0) {
        if let Some(q) = smallest {
            if (q as f64) < d.params.p.powf(0.06) {
                push(ViolationKind::Support);
            }
        }
    }
    out
}

/// Check (eq0), (eq0a) and b₁, b₂, b₃ ≥ 0 at every sampled m in `range`.
pub fn verify_identities(d: &Decomposition, range: Range<u64>, sampling: Sampling) -> Result<IdentityReport> {
    if range.start < 1 || range.start >= range.end {
        return Err(Error::Domain(format!("bad range {}..{}", range.start, range.end)));
    }
    let spf = SmallestFactorTable::new(range.end - 1)?;
    let points = sample_points(&range, sampling);
    let support = d.params.z >= d.params.p.powf(0.06);
    let violations: Vec<Violation> = points
        .par_chunks(CHUNK as usize)
        .flat_map_iter(|chunk| {
            let spf = &spf;
            chunk.iter().flat_map(move |&m| {
                let f = spf.factorize(m).expect("within table");
                let w = d.eval_all(&f);
                check_one(d, m, &w, f.smallest_prime(), support)
            })
        })
        .collect();
    Ok(IdentityReport {
        range: (range.start, range.end),
        checked: points.len() as u64,
        support_checked: support,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairViolation {
    pub m: u64,
    pub k: u64,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub checked: u64,
    pub violations: Vec<PairViolation>,
}

impl InequalityReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `count` pairs drawn uniformly from 𝓘 × 𝓘.
pub fn random_pairs(d: &Decomposition, count: usize, seed: u64) -> Vec<(u64, u64)> {
    let r = d.params.interval_integers();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (rng.gen_range(r.clone()), rng.gen_range(r.clone()))).collect()
}

/// ψ(m, P^{1/2})ψ(k, P^{1/2}) ≥ ρ₁(m)ψ(k, P^{1/2}) − ρ₃(m)ρ₂(k) at every pair.
pub fn verify_inequality(d: &Decomposition, pairs: &[(u64, u64)]) -> Result<InequalityReport> {
    let top = pairs.iter().map(|&(m, k)| m.max(k)).max().unwrap_or(1).max(1);
    if pairs.iter().any(|&(m, k)| m == 0 || k == 0) {
        return Err(Error::Domain("pairs must be positive".into()));
    }
    let spf = SmallestFactorTable::new(top)?;
    let violations = pairs
        .par_iter()
        .filter_map(|&(m, k)| {
            let wm = d.eval_all(&spf.factorize(m).expect("within table"));
            let wk = d.eval_all(&spf.factorize(k).expect("within table"));
            let lhs = wm.prime_like * wk.prime_like;
            let rhs = wm.g1 * wk.prime_like - wm.b1 * wk.g2;
            (lhs < rhs).then_some(PairViolation { m, k, lhs, rhs })
        })
        .collect();
    Ok(InequalityReport { checked: pairs.len() as u64, violations })
}

/// Σ_{u<m≤v} ρ_j(m) and its ratio to C_j (v − u)/log P.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensitySum {
    pub j: usize,
    pub u: u64,
    pub v: u64,
    pub sum: i64,
    pub main_term: Option<f64>,
    pub ratio: Option<f64>,
}

fn table_over(u: u64, v: u64) -> Result<(SmallestFactorTable, Vec<u64>)> {
    if u >= v {
        return Err(Error::Domain(format!("need u < v, got ({u}, {v}]")));
    }
    Ok((SmallestFactorTable::new(v)?, (u + 1..=v).collect()))
}

/// ρ_j summed over (u, v]; j = 0 sums ψ(m, P^{1/2}) with C₀ = 1.
/// `constant` is C_j, used for the main-term ratio when given.
pub fn density_sum(d: &Decomposition, j: usize, u: u64, v: u64, constant: Option<f64>) -> Result<DensitySum> {
    if j > 3 {
        return Err(Error::Domain(format!("rho index must be 0..=3, got {j}")));
    }
    let (spf, points) = table_over(u, v)?;
    let sum: i64 = points
        .par_chunks(CHUNK as usize)
        .map(|c| {
            c.iter()
                .map(|&m| d.eval_all(&spf.factorize(m).expect("within table")).rho(j))
                .sum::<i64>()
        })
        .sum();
    let constant = if j == 0 { Some(1.0) } else { constant };
    let main_term = constant.map(|c| c * (v - u) as f64 / d.params.log_p());
    Ok(DensitySum { j, u, v, sum, main_term, ratio: main_term.map(|mt| sum as f64 / mt) })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharSum {
    pub j: usize,
    pub modulus: u64,
    pub principal: bool,
    pub sum: Complex64,
    pub abs: f64,
    pub trivial_bound: f64,
    pub ratio: f64,
}

/// Σ_{u<m≤v} ρ_j(m)χ(m).
pub fn char_sum_check(d: &Decomposition, j: usize, chi: &DirichletCharacter, u: u64, v: u64) -> Result<CharSum> {
    if chi.modulus() > 1000 {
        return Err(Error::capacity("character modulus for sum checks", chi.modulus(), 1000));
    }
    if j > 3 {
        return Err(Error::Domain(format!("rho index must be 0..=3, got {j}")));
    }
    let (spf, points) = table_over(u, v)?;
    let sum: Complex64 = points
        .par_chunks(CHUNK as usize)
        .map(|c| {
            c.iter()
                .map(|&m| {
                    let r = d.eval_all(&spf.factorize(m).expect("within table")).rho(j);
                    if r == 0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        chi.value(m) * r as f64
                    }
                })
                .sum::<Complex64>()
        })
        .sum();
    let trivial = (v - u) as f64;
    Ok(CharSum {
        j,
        modulus: chi.modulus(),
        principal: chi.is_principal(),
        sum,
        abs: sum.norm(),
        trivial_bound: trivial,
        ratio: sum.norm() / trivial,
    })
}
