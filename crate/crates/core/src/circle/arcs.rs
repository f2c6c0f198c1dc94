use serde::Serialize;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ArcKind {
    Major { a: i64, q: u64 },
    Minor,
}

/// Position of α in the dissection 𝔐(Q), with Δ(α) = (q + N|qα − a|)^{-1}
/// taken from the auxiliary dissection 𝔑 = 𝔐(P^{2/3}) when α ∈ 𝔑.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArcClassification {
    pub alpha: f64,
    pub kind: ArcKind,
    pub delta: Option<f64>,
}

impl ArcClassification {
    pub fn is_major(&self) -> bool {
        matches!(self.kind, ArcKind::Major { .. })
    }
}

/// Shift α by an integer into `[lo, 1 + lo)`.
pub fn reduce_to_window(alpha: f64, lo: f64) -> f64 {
    alpha - (alpha - lo).floor()
}

/// Convergents and intermediate fractions of α with denominator ≤ `q_max`,
/// in increasing order of denominator. Every best approximation of the first
/// kind appears in this list.
pub fn best_approximation_candidates(alpha: f64, q_max: u64) -> Vec<(i64, u64)> {
    let a0 = alpha.floor();
    let mut out = vec![(a0 as i64, 1), (a0 as i64 + 1, 1)];
    let (mut h_prev, mut k_prev) = (1i64, 0u64);
    let (mut h, mut k) = (a0 as i64, 1u64);
    let mut x = alpha - a0;
    for _ in 0..64 {
        if x <= 0.0 {
            break;
        }
        let inv = 1.0 / x;
        let digit = inv.floor();
        if !digit.is_finite() || digit > 1e15 {
            break;
        }
        let d = digit as u64;
        let t_max = ((q_max.saturating_sub(k_prev)) / k).min(d);
        for t in 1..=t_max {
            out.push((h_prev + t as i64 * h, k_prev + t * k));
        }
        if t_max < d {
            break;
        }
        (h_prev, k_prev, h, k) = (h, k, h_prev + d as i64 * h, k_prev + d * k);
        x = inv - digit;
    }
    out.sort_by_key(|&(_, q)| q);
    out
}

/// The fraction a/q with least q ≤ `q_max` and |α − a/q| ≤ Q/(qP²), if any.
pub fn major_approximation(alpha: f64, p: f64, q_max: f64) -> Option<(i64, u64)> {
    let q_cap = q_max.floor().max(1.0) as u64;
    let p2 = p * p;
    best_approximation_candidates(alpha, q_cap)
        .into_iter()
        .filter(|&(_, q)| q <= q_cap)
        .find(|&(a, q)| (alpha - a as f64 / q as f64).abs() <= q_max / (q as f64 * p2))
}

/// Classify α against 𝔐(Q), after reducing it into [P^{-1.99}, 1 + P^{-1.99}].
pub fn classify_arc(alpha: f64, p: f64, q: f64) -> Result<ArcClassification> {
    if !(q >= 1.0 && q <= p) {
        return Err(Error::Contract(format!("arc parameter Q = {q} must satisfy 1 ≤ Q ≤ P = {p}")));
    }
    if !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha must be finite, got {alpha}")));
    }
    let alpha = reduce_to_window(alpha, p.powf(-1.99));
    let kind = match major_approximation(alpha, p, q) {
        Some((a, q)) => ArcKind::Major { a, q },
        None => ArcKind::Minor,
    };
    Ok(ArcClassification {
        alpha,
        kind,
        delta: delta(alpha, p),
    })
}

/// Δ(α) relative to 𝔑 = 𝔐(P^{2/3}); `None` when α lies in 𝔫.
pub fn delta(alpha: f64, p: f64) -> Option<f64> {
    let n = 2.25 * p * p;
    major_approximation(alpha, p, p.powf(2.0 / 3.0))
        .map(|(a, q)| 1.0 / (q as f64 + n * (q as f64 * alpha - a as f64).abs()))
}

/// Membership in 𝔫 = [P^{-4/3}, 1 + P^{-4/3}] \ 𝔑 after reduction.
pub fn in_auxiliary_minor(alpha: f64, p: f64) -> bool {
    let alpha = reduce_to_window(alpha, p.powf(-4.0 / 3.0));
    major_approximation(alpha, p, p.powf(2.0 / 3.0)).is_none()
}
