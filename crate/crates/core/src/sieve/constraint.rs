use serde::{Deserialize, Serialize};

use super::params::{Exponent, SieveParams};

/// Maximum number of prime variables in any term.
pub const MAX_VARS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Lt,
    Le,
    Ge,
    Gt,
}

impl Relation {
    pub fn holds(self, lhs: f64, rhs: f64) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }

    /// True for ≤ and <, i.e. the constraint bounds the form from above.
    pub fn is_upper(self) -> bool {
        matches!(self, Relation::Lt | Relation::Le)
    }
}

/// Σ aᵢ·uᵢ (rel) c₀ + c_σ·σ, where uᵢ = log pᵢ / log P.
///
/// At the integer level this reads ∏ pᵢ^{aᵢ} (rel) P^{c₀ + c_σ σ}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentConstraint {
    pub coeffs: [i8; MAX_VARS],
    pub relation: Relation,
    pub rhs: Exponent,
}

impl ExponentConstraint {
    pub fn new(terms: &[(usize, i8)], relation: Relation, rhs: Exponent) -> Self {
        let mut coeffs = [0i8; MAX_VARS];
        for &(i, a) in terms {
            coeffs[i] += a;
        }
        ExponentConstraint { coeffs, relation, rhs }
    }

    /// Index of the last variable the constraint involves.
    pub fn max_var(&self) -> usize {
        self.coeffs.iter().rposition(|&a| a != 0).unwrap_or(0)
    }

    /// Exponent-space test on u = (u₁, …, u_k).
    pub fn holds_exponent(&self, u: &[f64], sigma: f64) -> bool {
        let lhs: f64 = self.coeffs.iter().zip(u).map(|(&a, &x)| a as f64 * x).sum();
        self.relation.holds(lhs, self.rhs.at(sigma))
    }

    /// Signed slack Σaᵢuᵢ − rhs in exponent space.
    pub fn lhs_minus_rhs(&self, u: &[f64], sigma: f64) -> f64 {
        let lhs: f64 = self.coeffs.iter().zip(u).map(|(&a, &x)| a as f64 * x).sum();
        lhs - self.rhs.at(sigma)
    }

    /// Integer-space test on primes p₁, …, p_k against a precomputed P^{rhs}.
    pub fn holds_integer(&self, primes: &[u64], threshold: f64) -> bool {
        let mut num = 1.0f64;
        let mut den = threshold;
        for (&a, &p) in self.coeffs.iter().zip(primes) {
            let pf = p as f64;
            if a > 0 {
                num *= pf.powi(a as i32);
            } else if a < 0 {
                den *= pf.powi(-a as i32);
            }
        }
        self.relation.holds(num, den)
    }

    pub fn threshold(&self, params: &SieveParams) -> f64 {
        if self.rhs == Exponent::ZERO {
            1.0
        } else {
            params.power(self.rhs)
        }
    }
}

/// Whether some, or no, subproduct of the selected variables lies in the
/// good range [V, W] ∪ [P/W, P/V].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coverage {
    SomeIn,
    NoneIn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubproductRule {
    /// Bit i selects variable pᵢ₊₁.
    pub mask: u8,
    pub coverage: Coverage,
}

/// Exponent intervals [2σ, 1−4σ] and [4σ, 1−2σ] of the good range.
pub fn good_exponent_ranges(sigma: f64) -> [(f64, f64); 2] {
    [
        (Exponent::V.at(sigma), Exponent::W.at(sigma)),
        (Exponent::P_OVER_W.at(sigma), Exponent::P_OVER_V.at(sigma)),
    ]
}

impl SubproductRule {
    pub fn max_var(&self) -> usize {
        7 - self.mask.leading_zeros() as usize
    }

    fn subsets(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=self.mask).filter(move |s| s & !self.mask == 0)
    }

    pub fn any_in_integer(&self, primes: &[u64], params: &SieveParams) -> bool {
        self.subsets().any(|s| {
            let prod: f64 = primes
                .iter()
                .enumerate()
                .filter(|(i, _)| s >> i & 1 == 1)
                .map(|(_, &p)| p as f64)
                .product();
            params.in_good_range(prod)
        })
    }

    pub fn any_in_exponent(&self, u: &[f64], sigma: f64) -> bool {
        let ranges = good_exponent_ranges(sigma);
        self.subsets().any(|s| {
            let sum: f64 = u.iter().enumerate().filter(|(i, _)| s >> i & 1 == 1).map(|(_, &x)| x).sum();
            ranges.iter().any(|&(lo, hi)| sum >= lo && sum <= hi)
        })
    }

    pub fn holds_integer(&self, primes: &[u64], params: &SieveParams) -> bool {
        self.any_in_integer(primes, params) == (self.coverage == Coverage::SomeIn)
    }

    pub fn holds_exponent(&self, u: &[f64], sigma: f64) -> bool {
        self.any_in_exponent(u, sigma) == (self.coverage == Coverage::SomeIn)
    }

    /// Nonempty subsets of the mask, each as a bit set.
    pub fn subset_masks(&self) -> Vec<u8> {
        self.subsets().collect()
    }
}
