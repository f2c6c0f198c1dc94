use serde::Serialize;

use super::buchstab::BuchstabTable;
use crate::interval::IntervalSet;
use crate::polytope::Polytope;
use crate::quadrature::{adaptive_gk, QuadratureResult};
use crate::sieve::{good_exponent_ranges, Coverage, ExponentConstraint, InnerSieve, SieveTerm, MAX_VARS};
use crate::{Error, Result};

/// Denominator β of the Buchstab argument (1 − Σu)/β.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Beta {
    Constant(f64),
    /// β = u_i
    Var(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Kernel {
    /// ω((1 − Σu)/β)/β
    Buchstab(Beta),
    Constant(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Measure {
    /// ∏ du_i / u_i
    Logarithmic,
    Lebesgue,
}

/// "Some / no subsum over `mask` lies in `ranges`".
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlabRule {
    pub mask: u8,
    pub coverage: Coverage,
    pub ranges: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TermIntegral {
    pub label: String,
    pub dim: usize,
    #[serde(skip)]
    pub polytope: Polytope,
    pub slabs: Vec<SlabRule>,
    pub kernel: Kernel,
    pub measure: Measure,
    /// The support condition (1 − Σu)/β ≥ 1 cut the region down.
    pub support_binding: bool,
}

impl TermIntegral {
    /// ∫ c over a polytope with Lebesgue measure.
    pub fn constant(label: &str, polytope: Polytope, c: f64) -> Self {
        TermIntegral {
            label: label.to_string(),
            dim: polytope.dim(),
            polytope,
            slabs: Vec::new(),
            kernel: Kernel::Constant(c),
            measure: Measure::Lebesgue,
            support_binding: false,
        }
    }

    /// Integral from raw exponent constraints over u₁..u_k inside [0, 1]^k,
    /// adding the support condition for Buchstab kernels.
    pub fn from_constraints(
        label: &str,
        dim: usize,
        constraints: &[ExponentConstraint],
        sigma: f64,
        slabs: Vec<SlabRule>,
        kernel: Kernel,
        measure: Measure,
    ) -> Result<Self> {
        if dim > MAX_VARS {
            return Err(Error::Contract(format!("{label}: dimension {dim} exceeds {MAX_VARS}")));
        }
        if let Some(s) = slabs.iter().find(|s| s.mask >> dim != 0) {
            return Err(Error::Contract(format!("{label}: slab mask {:#b} outside dimension {dim}", s.mask)));
        }
        let mut poly = Polytope::cube(dim, 0.0, 1.0);
        for c in constraints {
            if c.coeffs[dim..].iter().any(|&a| a != 0) {
                return Err(Error::Contract(format!("{label}: constraint uses a variable beyond {dim}")));
            }
            let a: Vec<f64> = c.coeffs[..dim].iter().map(|&x| x as f64).collect();
            if c.relation.is_upper() {
                poly.add_le(a, c.rhs.at(sigma));
            } else {
                poly.add_ge(a, c.rhs.at(sigma));
            }
        }
        let mut support_binding = false;
        if let Kernel::Buchstab(beta) = kernel {
            // 1 − Σu ≥ β
            let mut a = vec![1.0; dim];
            let b = match beta {
                Beta::Constant(c) => 1.0 - c,
                Beta::Var(i) => {
                    if i >= dim {
                        return Err(Error::Contract(format!("{label}: β = u_{} but dimension is {dim}", i + 1)));
                    }
                    a[i] += 1.0;
                    1.0
                }
            };
            let before = poly.vertices();
            support_binding = before.iter().any(|v| crate::polytope::dot(&a, v) > b + 1e-12);
            poly.add_le(a, b);
        }
        Ok(TermIntegral { label: label.to_string(), dim, polytope: poly, slabs, kernel, measure, support_binding })
    }
}

/// Integral whose value is the density constant of a ψ-term: m ∈ 𝓘 is counted
/// with weight C/log P.
pub fn term_to_integral(term: &SieveTerm, sigma: f64) -> Result<TermIntegral> {
    let theta = 1.0 - 6.0 * sigma;
    let beta = match term.inner {
        InnerSieve::LastVar if term.arity == 0 => {
            return Err(Error::Contract(format!("{}: last-variable sieve without variables", term.id)));
        }
        InnerSieve::LastVar => Beta::Var(term.arity - 1),
        InnerSieve::ZCut | InnerSieve::None => Beta::Constant(theta),
    };
    let ranges: Vec<(f64, f64)> = good_exponent_ranges(sigma).to_vec();
    let slabs = term
        .rules
        .iter()
        .map(|r| SlabRule { mask: r.mask, coverage: r.coverage, ranges: ranges.clone() })
        .collect();
    TermIntegral::from_constraints(
        &term.id.to_string(),
        term.arity,
        &term.constraints,
        sigma,
        slabs,
        Kernel::Buchstab(beta),
        Measure::Logarithmic,
    )
}

/// Linear bounds on u_i in terms of u_0..u_{i-1}: coef·u_i ≤ b − Σ a_j u_j.
#[derive(Debug, Clone)]
struct LevelRow {
    a: Vec<f64>,
    coef: f64,
    b: f64,
}

/// One subset-sum test applied when its highest variable is fixed.
#[derive(Debug, Clone)]
struct SlabCheck {
    rule: usize,
    subset: u8,
}

struct Integrator<'a> {
    integral: &'a TermIntegral,
    omega: &'a BuchstabTable,
    levels: Vec<Vec<LevelRow>>,
    checks: Vec<Vec<SlabCheck>>,
    /// Highest variable of each rule's mask.
    rule_last: Vec<usize>,
    tol: f64,
    max_segments: usize,
}

const NO_VALUE: QuadratureResult = QuadratureResult { value: 0.0, err_estimate: 0.0, evaluations: 0, converged: true };

impl<'a> Integrator<'a> {
    fn new(integral: &'a TermIntegral, omega: &'a BuchstabTable, tol: f64) -> Self {
        let k = integral.dim;
        let mut projections = vec![integral.polytope.clone()];
        for _ in 1..k {
            let next = projections.last().expect("nonempty").project_out_last();
            projections.push(next);
        }
        projections.reverse(); // projections[i] lives in dimension i + 1
        let levels = (0..k)
            .map(|i| {
                projections[i]
                    .rows()
                    .iter()
                    .filter(|r| r.a[i].abs() > 1e-14)
                    .map(|r| LevelRow { a: r.a[..i].to_vec(), coef: r.a[i], b: r.b })
                    .collect()
            })
            .collect();
        let mut checks: Vec<Vec<SlabCheck>> = vec![Vec::new(); k];
        for (ri, rule) in integral.slabs.iter().enumerate() {
            for subset in (1..=rule.mask).filter(|s| s & !rule.mask == 0) {
                let top = 7 - subset.leading_zeros() as usize;
                checks[top].push(SlabCheck { rule: ri, subset });
            }
        }
        let rule_last = integral.slabs.iter().map(|r| 7 - r.mask.leading_zeros() as usize).collect();
        Integrator { integral, omega, levels, checks, rule_last, tol, max_segments: 200 }
    }

    fn range(&self, i: usize, u: &[f64]) -> (f64, f64) {
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for r in &self.levels[i] {
            let rest = r.b - r.a.iter().zip(u).map(|(a, x)| a * x).sum::<f64>();
            let bound = rest / r.coef;
            if r.coef > 0.0 {
                hi = hi.min(bound);
            } else {
                lo = lo.max(bound);
            }
        }
        (lo, hi)
    }

    /// Pieces of the u_i range with the slab state after fixing u_i.
    /// `state` bit r is set once a SomeIn rule r is satisfied.
    fn pieces(&self, i: usize, u: &[f64], state: u32) -> Vec<(IntervalSet, u32)> {
        let (lo, hi) = self.range(i, u);
        let mut base = IntervalSet::interval(lo, hi);
        if base.is_empty() {
            return Vec::new();
        }
        let mut hits: Vec<IntervalSet> = vec![IntervalSet::empty(); self.integral.slabs.len()];
        for c in &self.checks[i] {
            let rule = &self.integral.slabs[c.rule];
            let partial: f64 = (0..i).filter(|j| c.subset >> j & 1 == 1).map(|j| u[j]).sum();
            for &(a, b) in &rule.ranges {
                hits[c.rule] = hits[c.rule].union(&IntervalSet::interval(a - partial, b - partial));
            }
        }
        for (ri, rule) in self.integral.slabs.iter().enumerate() {
            if rule.coverage == Coverage::NoneIn {
                base = base.subtract(&hits[ri]);
            }
        }
        // Split along every SomeIn rule that is still open at this level.
        let mut parts = vec![(base, state)];
        for (ri, rule) in self.integral.slabs.iter().enumerate() {
            if rule.coverage != Coverage::SomeIn || state >> ri & 1 == 1 {
                continue;
            }
            let mut next = Vec::new();
            for (set, st) in parts {
                let yes = set.intersect(&hits[ri]);
                let no = set.subtract(&hits[ri]);
                if !yes.is_empty() {
                    next.push((yes, st | 1 << ri));
                }
                if !no.is_empty() && self.rule_last[ri] > i {
                    next.push((no, st));
                }
            }
            parts = next;
        }
        parts
    }

    fn weight(&self, t: f64) -> f64 {
        match self.integral.measure {
            Measure::Logarithmic => 1.0 / t,
            Measure::Lebesgue => 1.0,
        }
    }

    fn kernel(&self, u: &[f64]) -> f64 {
        match self.integral.kernel {
            Kernel::Constant(c) => c,
            Kernel::Buchstab(beta) => {
                let b = match beta {
                    Beta::Constant(c) => c,
                    Beta::Var(i) => u[i],
                };
                let rest = 1.0 - u.iter().sum::<f64>();
                self.omega.omega(rest / b) / b
            }
        }
    }

    fn mass(&self, a: f64, b: f64) -> f64 {
        match self.integral.measure {
            Measure::Logarithmic => (b / a).ln(),
            Measure::Lebesgue => b - a,
        }
    }

    /// Integral over u_i, …, u_{k−1} with u_0..u_{i−1} fixed, to absolute
    /// tolerance `tol`: half for the rules at this level, half for the
    /// propagated error of the inner levels.
    fn level(&self, i: usize, u: [f64; MAX_VARS], state: u32, tol: f64, parallel: bool) -> QuadratureResult {
        let k = self.integral.dim;
        let pieces: Vec<(f64, f64, u32)> = self
            .pieces(i, &u[..i], state)
            .into_iter()
            .flat_map(|(set, st)| set.parts().iter().map(move |&(a, b)| (a, b, st)).collect::<Vec<_>>())
            .collect();
        let total_mass: f64 = pieces.iter().map(|&(a, b, _)| self.mass(a, b)).sum();
        let mut total = NO_VALUE;
        if !(total_mass > 0.0) {
            return total;
        }
        let inner_tol = 0.5 * tol / total_mass;
        for (a, b, st) in pieces {
            let piece_tol = 0.5 * tol * self.mass(a, b) / total_mass;
            let r = if i + 1 == k {
                self.innermost(i, u, a, b, piece_tol)
            } else {
                let f = |t: f64| {
                    let mut v = u;
                    v[i] = t;
                    self.level(i + 1, v, st, inner_tol, false).scaled(self.weight(t))
                };
                adaptive_gk(f, a, b, piece_tol, self.max_segments, parallel)
            };
            total.add(r);
        }
        total
    }

    fn innermost(&self, i: usize, u: [f64; MAX_VARS], a: f64, b: f64, tol: f64) -> QuadratureResult {
        let r = 1.0 - u[..i].iter().sum::<f64>();
        if let (Kernel::Buchstab(Beta::Var(j)), Measure::Logarithmic) = (self.integral.kernel, self.integral.measure) {
            if j == i {
                // ∫_a^b ω((r − t)/t) dt/t² = ω(r/a)/a − ω(r/b)/b, from (sω(s))′ = ω(s − 1).
                let phi = |t: f64| self.omega.omega(r / t) / t;
                return QuadratureResult::exact(phi(a) - phi(b));
            }
        }
        // Breakpoints where the Buchstab argument crosses 2, 3, 4.
        let mut cuts = vec![a];
        if let Kernel::Buchstab(Beta::Constant(beta)) = self.integral.kernel {
            for j in (2..=4).rev() {
                let t = r - j as f64 * beta;
                if t > a && t < b {
                    cuts.push(t);
                }
            }
        }
        cuts.push(b);
        let mut total = NO_VALUE;
        let window_tol = tol / (cuts.len() - 1) as f64;
        for w in cuts.windows(2) {
            let f = |t: f64| {
                let mut v = u;
                v[i] = t;
                QuadratureResult::exact(self.kernel(&v[..=i]) * self.weight(t))
            };
            total.add(adaptive_gk(f, w[0], w[1], window_tol, self.max_segments, false));
        }
        total
    }
}

/// Integrate a term integral to absolute tolerance `tol`.
pub fn integrate(integral: &TermIntegral, omega: &BuchstabTable, tol: f64) -> Result<QuadratureResult> {
    if !(tol >= 1e-10) {
        return Err(Error::Domain(format!("tolerance {tol} too small")));
    }
    if integral.dim == 0 {
        let inside = integral.polytope.rows().iter().all(|r| r.b >= -1e-12);
        let v = if inside { kernel_at_origin(integral, omega) } else { 0.0 };
        return Ok(QuadratureResult::exact(v));
    }
    let it = Integrator::new(integral, omega, tol);
    let mut r = it.level(0, [0.0; MAX_VARS], 0, it.tol, true);
    r.converged &= r.err_estimate <= tol;
    Ok(r)
}

fn kernel_at_origin(integral: &TermIntegral, omega: &BuchstabTable) -> f64 {
    match integral.kernel {
        Kernel::Constant(c) => c,
        Kernel::Buchstab(Beta::Constant(b)) => omega.omega(1.0 / b) / b,
        Kernel::Buchstab(Beta::Var(_)) => 0.0,
    }
}
