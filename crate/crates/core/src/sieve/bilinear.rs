//! Type I / type II classification of the terms of each ρ_j.

use serde::Serialize;

use super::constraint::{good_exponent_ranges, Coverage};
use super::decomposition::Decomposition;
use super::term::SieveTerm;
use crate::Result;

/// Type II sums need a factor v with P^{0.06} ≤ v ≤ P^{0.94}.
pub const TYPE_II_RANGE: (f64, f64) = (0.06, 0.94);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SumType {
    TypeI,
    TypeII,
}

/// How a witnessing subproduct is confined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessSource {
    /// The exponent range over the whole term region.
    Region,
    /// The good-range condition of a ψ^g part.
    GoodRange,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// Bit i selects p_{i+1}.
    pub mask: u8,
    pub lo: f64,
    pub hi: f64,
    pub source: WitnessSource,
}

/// One branch of ψ₁(m) = Σ_{d | (m, Π)} μ(d), Π = ∏_{p<z} p, by the size of d.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MobiusBranch {
    pub d_lo: f64,
    pub d_hi: f64,
    pub kind: SumType,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermClassification {
    pub id: String,
    pub sign: i8,
    pub kind: SumType,
    pub witnesses: Vec<Witness>,
    pub mobius_branches: Vec<MobiusBranch>,
}

fn inside(lo: f64, hi: f64) -> bool {
    lo >= TYPE_II_RANGE.0 - 1e-12 && hi <= TYPE_II_RANGE.1 + 1e-12
}

fn classify_term(t: &SieveTerm, sigma: f64) -> TermClassification {
    let theta = 1.0 - 6.0 * sigma;
    let id = t.id.to_string();
    if t.arity == 0 {
        let branches = vec![
            MobiusBranch {
                d_lo: 0.0,
                d_hi: TYPE_II_RANGE.0,
                kind: SumType::TypeI,
                note: "v = m/d ≥ P^0.94 and β_v = 1".into(),
            },
            MobiusBranch {
                d_lo: TYPE_II_RANGE.0,
                d_hi: TYPE_II_RANGE.1,
                kind: SumType::TypeII,
                note: "d itself is the type II variable".into(),
            },
            MobiusBranch {
                d_lo: TYPE_II_RANGE.1,
                d_hi: 1.0,
                kind: SumType::TypeII,
                note: format!(
                    "d has all prime factors below z, so it has a divisor in [P^0.06, P^{:.4}]",
                    TYPE_II_RANGE.0 + theta
                ),
            },
        ];
        return TermClassification { id, sign: t.sign, kind: SumType::TypeI, witnesses: vec![], mobius_branches: branches };
    }
    let poly = t.polytope(sigma);
    let mut witnesses = Vec::new();
    for mask in 1u8..(1 << t.arity) {
        let c: Vec<f64> = (0..t.arity).map(|i| (mask >> i & 1) as f64).collect();
        if let Some((lo, hi)) = poly.range(&c) {
            if inside(lo, hi) {
                witnesses.push(Witness { mask, lo, hi, source: WitnessSource::Region });
            }
        }
    }
    for r in t.rules.iter().filter(|r| r.coverage == Coverage::SomeIn) {
        let ranges = good_exponent_ranges(sigma);
        let lo = ranges[0].0.min(ranges[1].0);
        let hi = ranges[0].1.max(ranges[1].1);
        if inside(lo, hi) {
            witnesses.push(Witness { mask: r.mask, lo, hi, source: WitnessSource::GoodRange });
        }
    }
    let kind = if witnesses.is_empty() { SumType::TypeI } else { SumType::TypeII };
    TermClassification { id, sign: t.sign, kind, witnesses, mobius_branches: vec![] }
}

/// Classify each term of ρ_j.
pub fn bilinear_split(d: &Decomposition, j: usize) -> Result<Vec<TermClassification>> {
    Ok(d.rho(j)?.iter().map(|t| classify_term(t, d.params.sigma)).collect())
}

/// Whether the linear region of `t` forces Σ_{i ∈ mask} u_i ≤ bound.
pub fn region_implies_at_most(t: &SieveTerm, sigma: f64, mask: u8, bound: f64) -> bool {
    let c: Vec<f64> = (0..t.arity).map(|i| (mask >> i & 1) as f64).collect();
    match t.polytope(sigma).range(&c) {
        None => true,
        Some((_, hi)) => hi <= bound + 1e-12,
    }
}
