use std::fmt;

use serde::{Deserialize, Serialize};

use super::constraint::{ExponentConstraint, SubproductRule, MAX_VARS};
use super::params::SieveParams;
use crate::arith::Factorization;
use crate::polytope::Polytope;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    Whole,
    Good,
    Bad,
}

/// Label ψ_j, ψ_j^g or ψ_j^b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermId {
    pub index: u8,
    pub part: Part,
}

impl TermId {
    pub const fn whole(index: u8) -> Self {
        TermId { index, part: Part::Whole }
    }

    pub const fn good(index: u8) -> Self {
        TermId { index, part: Part::Good }
    }

    pub const fn bad(index: u8) -> Self {
        TermId { index, part: Part::Bad }
    }
}

impl fmt::Display for TermId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = match self.part {
            Part::Whole => "",
            Part::Good => "g",
            Part::Bad => "b",
        };
        write!(f, "psi{}{}", self.index, suffix)
    }
}

/// How the cofactor m/(p₁⋯p_k) is sieved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InnerSieve {
    /// ψ(m, z) itself; only for k = 0.
    None,
    /// ψ(cofactor, z).
    ZCut,
    /// ψ(cofactor, p_k).
    LastVar,
}

/// One ψ-term: a sum over decreasing prime chains p₁ > ⋯ > p_k dividing m.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SieveTerm {
    pub id: TermId,
    pub sign: i8,
    pub arity: usize,
    pub constraints: Vec<ExponentConstraint>,
    pub rules: Vec<SubproductRule>,
    pub inner: InnerSieve,
    #[serde(skip)]
    thresholds: Vec<f64>,
}

impl SieveTerm {
    pub fn new(
        id: TermId,
        arity: usize,
        constraints: Vec<ExponentConstraint>,
        rules: Vec<SubproductRule>,
        inner: InnerSieve,
        params: &SieveParams,
    ) -> Self {
        assert!(arity <= MAX_VARS);
        assert_eq!(inner == InnerSieve::None, arity == 0);
        let thresholds = constraints.iter().map(|c| c.threshold(params)).collect();
        SieveTerm { id, sign: 1, arity, constraints, rules, inner, thresholds }
    }

    pub fn with_sign(mut self, sign: i8) -> Self {
        self.sign = sign;
        self
    }

    /// Integer-level membership of a full prime tuple (ignores the cofactor).
    pub fn admits(&self, primes: &[u64], params: &SieveParams) -> bool {
        self.constraints
            .iter()
            .zip(&self.thresholds)
            .all(|(c, &t)| c.holds_integer(primes, t))
            && self.rules.iter().all(|r| r.holds_integer(primes, params))
    }

    /// Exponent-level membership of u = (log p₁, …, log p_k)/log P.
    pub fn admits_exponent(&self, u: &[f64], sigma: f64) -> bool {
        self.constraints.iter().all(|c| c.holds_exponent(u, sigma))
            && self.rules.iter().all(|r| r.holds_exponent(u, sigma))
    }

    /// Closure of the linear part of the region in exponent space, inside [0, 1]^k.
    pub fn polytope(&self, sigma: f64) -> Polytope {
        let mut p = Polytope::cube(self.arity, 0.0, 1.0);
        for c in &self.constraints {
            let a: Vec<f64> = c.coeffs[..self.arity].iter().map(|&x| x as f64).collect();
            let rhs = c.rhs.at(sigma);
            if c.relation.is_upper() {
                p.add_le(a, rhs);
            } else {
                p.add_ge(a, rhs);
            }
        }
        p
    }

    /// Unsigned value at m: the number of admissible chains whose cofactor
    /// passes the inner sieve.
    pub fn eval(&self, m: &Factorization, params: &SieveParams) -> u64 {
        let mut desc: Vec<u64> = m.distinct_primes().collect();
        desc.reverse();
        let mut chain = [0u64; MAX_VARS];
        self.walk(0, 0, &desc, &mut chain, m, params)
    }

    fn walk(
        &self,
        depth: usize,
        start: usize,
        desc: &[u64],
        chain: &mut [u64; MAX_VARS],
        m: &Factorization,
        params: &SieveParams,
    ) -> u64 {
        if depth == self.arity {
            return self.inner_passes(&chain[..depth], m, params) as u64;
        }
        let mut total = 0;
        for j in start..desc.len() {
            chain[depth] = desc[j];
            let prefix = &chain[..=depth];
            let ok = self
                .constraints
                .iter()
                .zip(&self.thresholds)
                .filter(|(c, _)| c.max_var() == depth)
                .all(|(c, &t)| c.holds_integer(prefix, t))
                && self
                    .rules
                    .iter()
                    .filter(|r| r.max_var() == depth)
                    .all(|r| r.holds_integer(prefix, params));
            if ok {
                total += self.walk(depth + 1, j + 1, desc, chain, m, params);
            }
        }
        total
    }

    fn inner_passes(&self, chain: &[u64], m: &Factorization, params: &SieveParams) -> bool {
        let cofactor_min = m
            .factors()
            .iter()
            .find(|&&(p, e)| e > 1 || !chain.contains(&p))
            .map(|&(p, _)| p);
        let Some(q) = cofactor_min else {
            return true;
        };
        match self.inner {
            InnerSieve::None | InnerSieve::ZCut => q as f64 >= params.z,
            InnerSieve::LastVar => q >= *chain.last().expect("LastVar needs a variable"),
        }
    }
}
