use rayon::prelude::*;
use serde::Serialize;

use super::buchstab::BuchstabTable;
use super::integral::{integrate, term_to_integral};
use crate::quadrature::QuadratureResult;
use crate::sieve::{build_decomposition, SieveParams, SieveTerm, Weight};
use crate::Result;

#[derive(Debug, Clone, Serialize)]
pub struct TermContribution {
    pub id: String,
    pub sign: i8,
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
    /// The region was cut down by the ω support condition (1 − Σu)/β ≥ 1.
    pub support_binding: bool,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Constant {
    pub value: f64,
    pub err_estimate: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantsReport {
    pub sigma: f64,
    pub tol: f64,
    pub buchstab_h: f64,
    pub c1: Constant,
    pub c2: Constant,
    pub c3: Constant,
    /// Densities of b₂ and b₃, needed for the identity cross-checks.
    pub c_b2: Constant,
    pub c_b3: Constant,
    /// C₁ − C₂C₃
    pub margin: f64,
    /// C₁ − C₃ + C(b₂) − 1, which vanishes because ψ(m, P^{1/2}) has density 1.
    pub identity_gap_1: f64,
    /// C₂ − C(b₃) − 1
    pub identity_gap_2: f64,
    pub converged: bool,
    pub g1: Vec<TermContribution>,
    pub g2: Vec<TermContribution>,
    pub b1: Vec<TermContribution>,
    pub b2: Vec<TermContribution>,
    pub b3: Vec<TermContribution>,
}

/// Density constant of a single term (unsigned).
pub fn term_constant(term: &SieveTerm, sigma: f64, omega: &BuchstabTable, tol: f64) -> Result<(QuadratureResult, bool)> {
    let integral = term_to_integral(term, sigma)?;
    Ok((integrate(&integral, omega, tol)?, integral.support_binding))
}

fn contributions(terms: &[SieveTerm], sigma: f64, omega: &BuchstabTable, tol: f64) -> Result<Vec<TermContribution>> {
    let per_term = tol / terms.len().max(1) as f64;
    terms
        .par_iter()
        .map(|t| {
            let (r, binding) = term_constant(t, sigma, omega, per_term)?;
            Ok(TermContribution {
                id: t.id.to_string(),
                sign: t.sign,
                value: r.value,
                err_estimate: r.err_estimate,
                evaluations: r.evaluations,
                converged: r.converged,
                support_binding: binding,
            })
        })
        .collect()
}

fn combine(list: &[TermContribution]) -> Constant {
    Constant {
        value: list.iter().map(|c| c.sign as f64 * c.value).sum(),
        err_estimate: list.iter().map(|c| c.err_estimate).sum(),
    }
}

/// C₁, C₂, C₃ (densities of ρ₁ = g₁, ρ₂ = g₂, ρ₃ = b₁) at the given σ.
/// `tol` bounds the quadrature error of each constant.
pub fn compute_constants(params: &SieveParams, tol: f64, omega: &BuchstabTable) -> Result<ConstantsReport> {
    let d = build_decomposition(params);
    let s = params.sigma;
    let g1 = contributions(d.weight(Weight::G1), s, omega, tol)?;
    let g2 = contributions(d.weight(Weight::G2), s, omega, tol)?;
    let b1 = contributions(d.weight(Weight::B1), s, omega, tol)?;
    let b2 = contributions(d.weight(Weight::B2), s, omega, tol)?;
    let b3 = contributions(d.weight(Weight::B3), s, omega, tol)?;
    let (c1, c2, c3, c_b2, c_b3) = (combine(&g1), combine(&g2), combine(&b1), combine(&b2), combine(&b3));
    let converged = [&g1, &g2, &b1, &b2, &b3].iter().all(|l| l.iter().all(|c| c.converged));
    Ok(ConstantsReport {
        sigma: s,
        tol,
        buchstab_h: omega.h,
        c1,
        c2,
        c3,
        c_b2,
        c_b3,
        margin: c1.value - c2.value * c3.value,
        identity_gap_1: c1.value - c3.value + c_b2.value - 1.0,
        identity_gap_2: c2.value - c_b3.value - 1.0,
        converged,
        g1,
        g2,
        b1,
        b2,
        b3,
    })
}
